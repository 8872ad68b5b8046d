#include "ncbeta/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ncbeta/errors.hpp"
#include "ncbeta/special_functions.hpp"

namespace ncbeta {

namespace {

void require_interior(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) {
    throw InvalidParameter(std::string(what) +
                           ": x must lie strictly inside (0, 1)");
  }
}

double log_beta_pdf(double x, double a, double b) {
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) +
         std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
}

double log_poisson_pmf(long j, double mean) {
  if (mean == 0.0) {
    return j == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  double jd = static_cast<double>(j);
  return -mean + jd * std::log(mean) - std::lgamma(jd + 1.0);
}

double log_binomial_pmf(long i, long n, double p) {
  if (p == 0.0) return i == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p == 1.0) return i == n ? 0.0 : -std::numeric_limits<double>::infinity();
  double id = static_cast<double>(i);
  double nd = static_cast<double>(n);
  return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) -
         std::lgamma(nd - id + 1.0) + id * std::log(p) +
         (nd - id) * std::log1p(-p);
}

}  // namespace

double beta_pdf(double x, double a, double b) {
  require_interior(x, "beta_pdf");
  if (a < 0.0 || b < 0.0) {
    throw InvalidParameter("beta_pdf: shapes must be >= 0");
  }
  if (a == 0.0 || b == 0.0) {
    throw DegenerateParameter(
        "beta_pdf: a zero shape is a point mass with no density");
  }
  return std::exp(log_beta_pdf(x, a, b));
}

double dncb_conditional_density(double x, long m_plus, const DNcBParams& p,
                                const SeriesControl&) {
  require_interior(x, "dncb_conditional_density");
  if (m_plus < 0) {
    throw InvalidParameter("dncb_conditional_density: m_plus must be >= 0");
  }
  double theta1 = p.theta1();
  double density = 0.0;
  for (long i = 0; i <= m_plus; ++i) {
    double lw = log_binomial_pmf(i, m_plus, theta1);
    if (lw == -std::numeric_limits<double>::infinity()) continue;
    double lb = log_beta_pdf(x, p.alpha1 + static_cast<double>(i),
                             p.alpha2 + static_cast<double>(m_plus - i));
    density += std::exp(lw + lb);
  }
  return density;
}

double dncb_density_mixture(double x, const DNcBParams& p,
                            const SeriesControl& ctrl) {
  require_interior(x, "dncb_density_mixture");
  double half_l1 = p.lambda1 / 2.0;
  double half_l2 = p.lambda2 / 2.0;

  std::vector<double> lw1;
  std::vector<double> lw2;

  double sum = 0.0;
  long used = 0;
  int consecutive_small = 0;
  while (used < ctrl.max_terms) {
    long s = used;
    lw1.push_back(log_poisson_pmf(s, half_l1));
    lw2.push_back(log_poisson_pmf(s, half_l2));

    double diag = 0.0;
    for (long j = 0; j <= s; ++j) {
      double lw = lw1[static_cast<size_t>(j)] + lw2[static_cast<size_t>(s - j)];
      if (lw == -std::numeric_limits<double>::infinity()) continue;
      double lb = log_beta_pdf(x, p.alpha1 + static_cast<double>(j),
                               p.alpha2 + static_cast<double>(s - j));
      diag += std::exp(lw + lb);
    }
    sum += diag;
    ++used;

    // diagonals below the Poisson peak are still rising from underflow, so
    // the absolute floor applies only past the bulk of the weight;
    // convergence only counts once mass has arrived
    double threshold = ctrl.rel_tol * sum;
    if (static_cast<double>(s) >= half_l1 + half_l2 &&
        threshold < ctrl.abs_floor) {
      threshold = ctrl.abs_floor;
    }
    if (sum > 0.0 && diag <= threshold) {
      if (++consecutive_small >= 2) return sum;
    } else {
      consecutive_small = 0;
    }
  }
  throw NonConvergence("dncb_density_mixture", ctrl.max_terms);
}

double dncb_density_perturbation(double x, const DNcBParams& p,
                                 const SeriesControl& ctrl) {
  require_interior(x, "dncb_density_perturbation");
  double base = beta_pdf(x, p.alpha1, p.alpha2);
  double u = (p.lambda1 / 2.0) * x;
  double v = (p.lambda2 / 2.0) * (1.0 - x);
  // exp(-lambda+/2) Psi2(..; u, v) assembled from the (u + v)-scaled Psi2 so
  // neither factor overflows for large noncentrality
  double tilt = std::exp(u + v - p.lambda_plus() / 2.0);
  double psi =
      humbert_psi2_scaled(p.alpha_plus(), p.alpha1, p.alpha2, u, v, ctrl);
  return base * tilt * psi;
}

double ncb1_density(double x, double alpha1, double alpha2, double lambda,
                    const SeriesControl& ctrl) {
  require_interior(x, "ncb1_density");
  DNcBParams p(alpha1, alpha2, lambda, 0.0);
  double base = beta_pdf(x, alpha1, alpha2);
  double u = (lambda / 2.0) * x;
  double tilt = std::exp(u - lambda / 2.0);
  double f = kummer_1f1_scaled(p.alpha_plus(), alpha1, u, ctrl);
  return base * tilt * f;
}

}  // namespace ncbeta
