#include "ncbeta/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ncbeta/errors.hpp"
#include "scaled_sum.hpp"

namespace ncbeta {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidParameter(std::string(name) + " must be finite");
  }
}

void require_order(int r) {
  if (r < 1 || r > kMaxMomentOrder) {
    throw OrderOutOfRange("moment order " + std::to_string(r) +
                          " outside [1, " + std::to_string(kMaxMomentOrder) +
                          "]");
  }
}

// log Poisson pmf at j for the given mean; mean = 0 degenerates to a point
// mass at zero.
double log_poisson_pmf(long j, double mean) {
  if (mean == 0.0) {
    return j == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  double jd = static_cast<double>(j);
  return -mean + jd * std::log(mean) - std::lgamma(jd + 1.0);
}

}  // namespace

NcChiSqParams::NcChiSqParams(double g_in, double lambda_in)
    : g(g_in), lambda(lambda_in) {
  require_finite(g, "g");
  require_finite(lambda, "lambda");
  if (g < 0.0) throw InvalidParameter("g must be >= 0");
  if (lambda < 0.0) throw InvalidParameter("lambda must be >= 0");
}

DNcBParams::DNcBParams(double a1, double a2, double l1, double l2)
    : alpha1(a1), alpha2(a2), lambda1(l1), lambda2(l2) {
  require_finite(alpha1, "alpha1");
  require_finite(alpha2, "alpha2");
  require_finite(lambda1, "lambda1");
  require_finite(lambda2, "lambda2");
  if (alpha1 <= 0.0) throw InvalidParameter("alpha1 must be > 0");
  if (alpha2 <= 0.0) throw InvalidParameter("alpha2 must be > 0");
  if (lambda1 < 0.0) throw InvalidParameter("lambda1 must be >= 0");
  if (lambda2 < 0.0) throw InvalidParameter("lambda2 must be >= 0");
}

double DNcBParams::theta1() const {
  double lp = lambda_plus();
  if (lp == 0.0) {
    throw DegenerateParameter(
        "theta1 undefined: lambda1 + lambda2 = 0 has no noncentrality to "
        "split");
  }
  return lambda1 / lp;
}

const char* moment_method_name(MomentMethod m) {
  switch (m) {
    case MomentMethod::kClassic: return "classic";
    case MomentMethod::kStirling: return "stirling";
    case MomentMethod::kZeroDf: return "zero-df";
    case MomentMethod::kClosedForm: return "closed-form";
    case MomentMethod::kFiniteSum: return "finite-sum";
    case MomentMethod::kOneSeries: return "one-series";
    case MomentMethod::kDoubleSeries: return "double-series";
    case MomentMethod::kDefinitional: return "definitional";
    case MomentMethod::kReduced: return "reduced";
  }
  return "unknown";
}

double beta_moment(double alpha1, double alpha2, int r) {
  require_order(r);
  if (alpha1 <= 0.0 || alpha2 <= 0.0) {
    throw InvalidParameter("beta_moment: shapes must be > 0");
  }
  // (alpha1)_r / (alpha1 + alpha2)_r as one running product: every factor is
  // a ratio in (0, 1), so no intermediate can overflow.
  double v = 1.0;
  for (int i = 0; i < r; ++i) {
    double id = static_cast<double>(i);
    v *= (alpha1 + id) / (alpha1 + alpha2 + id);
  }
  return v;
}

double poisson_raw_moment(double mean, int i) {
  if (i < 0) throw InvalidParameter("poisson_raw_moment: order must be >= 0");
  if (mean < 0.0) throw InvalidParameter("poisson_raw_moment: mean must be >= 0");
  if (i == 0) return 1.0;
  double sum = 0.0;
  double pow_mean = 1.0;
  for (int j = 0; j <= i; ++j) {
    sum += to_double(stirling_second(i, j)) * pow_mean;
    pow_mean *= mean;
  }
  return sum;
}

MomentResult ncchisq_moment_classic(const NcChiSqParams& p, int r) {
  require_order(r);
  if (p.g <= 0.0) {
    throw InvalidParameter("classic moment form requires g > 0");
  }
  double h = p.h();
  double half_lambda = p.lambda / 2.0;
  double sum = 0.0;
  double pow_hl = 1.0;
  for (int j = 0; j <= r; ++j) {
    sum += static_cast<double>(binomial_u64(r, j)) * pow_hl *
           pochhammer(h + static_cast<double>(j), r - j);
    pow_hl *= half_lambda;
  }
  return {r, std::ldexp(sum, r), MomentMethod::kClassic, r + 1};
}

MomentResult ncchisq_moment_stirling(const NcChiSqParams& p, int r) {
  require_order(r);
  if (p.g <= 0.0) {
    throw InvalidParameter("stirling moment form requires g > 0");
  }
  double h = p.h();
  double half_lambda = p.lambda / 2.0;
  IntPolynomial poly = rising_poly(r);
  double sum = 0.0;
  for (int i = 0; i <= r; ++i) {
    sum += poly_taylor_coeff(poly, i, h) * poisson_raw_moment(half_lambda, i);
  }
  return {r, std::ldexp(sum, r), MomentMethod::kStirling, r + 1};
}

MomentResult ncchisq_moment_zero_df(const NcChiSqParams& p, int r) {
  require_order(r);
  if (p.g != 0.0) {
    throw InvalidParameter("zero-df moment form requires g = 0");
  }
  double half_lambda = p.lambda / 2.0;
  double sum = 0.0;
  for (int i = 1; i <= r; ++i) {
    sum += to_double(stirling_first_unsigned(r, i)) *
           poisson_raw_moment(half_lambda, i);
  }
  return {r, std::ldexp(sum, r), MomentMethod::kZeroDf, r};
}

MomentResult ncchisq_moment_closed(const NcChiSqParams& p, int r) {
  if (r < 1 || r > 4) {
    throw OrderOutOfRange("closed-form moments cover orders 1 through 4");
  }
  double g = p.g;
  double l = p.lambda;
  double v = 0.0;
  switch (r) {
    case 1:
      v = g + l;
      break;
    case 2:
      v = g * (g + 2.0) + 2.0 * (g + 2.0) * l + l * l;
      break;
    case 3:
      v = g * (g + 2.0) * (g + 4.0) + 3.0 * (g + 2.0) * (g + 4.0) * l +
          3.0 * (g + 4.0) * l * l + l * l * l;
      break;
    case 4:
      v = g * (g + 2.0) * (g + 4.0) * (g + 6.0) +
          4.0 * (g + 2.0) * (g + 4.0) * (g + 6.0) * l +
          6.0 * (g + 4.0) * (g + 6.0) * l * l + 4.0 * (g + 6.0) * l * l * l +
          l * l * l * l;
      break;
  }
  return {r, v, MomentMethod::kClosedForm, 1};
}

MomentResult dncb_moment_sum(const DNcBParams& p, int r,
                             const SeriesControl& ctrl) {
  require_order(r);
  double ap = p.alpha_plus();
  double half_l1 = p.lambda1 / 2.0;
  double half_lp = p.lambda_plus() / 2.0;
  double prefactor = beta_moment(p.alpha1, p.alpha2, r);

  double sum = 0.0;
  long terms = 0;
  double coeff = 1.0;  // C(r,i) (alpha+)_i (lambda1/2)^i / ((alpha1)_i (alpha+ + r)_i)
  for (int i = 0; i <= r; ++i) {
    double id = static_cast<double>(i);
    SeriesValue f = kummer_1f1_scaled_ex(ap + id, ap + static_cast<double>(r) + id,
                                         half_lp, ctrl);
    sum += coeff * f.value;
    terms += 1 + f.terms;
    coeff *= static_cast<double>(r - i) / (id + 1.0) * (ap + id) * half_l1 /
             ((p.alpha1 + id) * (ap + static_cast<double>(r) + id));
  }
  return {r, prefactor * sum, MomentMethod::kFiniteSum, terms};
}

MomentResult dncb_moment_one_series(const DNcBParams& p, int r,
                                    const SeriesControl& ctrl) {
  require_order(r);
  double ap = p.alpha_plus();
  double rd = static_cast<double>(r);
  double half_l1 = p.lambda1 / 2.0;
  double half_l2 = p.lambda2 / 2.0;
  double prefactor = beta_moment(p.alpha1, p.alpha2, r);

  detail::ScaledSum acc;
  double q = 1.0;  // (alpha+)_j (alpha1 + r)_j / ((alpha1)_j (alpha+ + r)_j) (lambda1/2)^j / j!
  long used = 0;
  long kummer_terms = 0;
  int consecutive_small = 0;
  while (used < ctrl.max_terms) {
    double jd = static_cast<double>(used);
    SeriesValue f =
        kummer_1f1_scaled_ex(ap + jd, ap + rd + jd, half_l2, ctrl);
    kummer_terms += f.terms;
    double term = q * f.value;
    acc.sum += term;
    ++used;

    double threshold = ctrl.rel_tol * std::abs(acc.sum);
    if (acc.log_scale == 0.0 && threshold < ctrl.abs_floor) {
      threshold = ctrl.abs_floor;
    }
    if (std::abs(term) <= threshold) {
      if (++consecutive_small >= 2) {
        double series = acc.finish(-half_l1);
        return {r, prefactor * series, MomentMethod::kOneSeries,
                used + kummer_terms};
      }
    } else {
      consecutive_small = 0;
    }

    q *= (ap + jd) * (p.alpha1 + rd + jd) /
         ((p.alpha1 + jd) * (ap + rd + jd)) * half_l1 / (jd + 1.0);
    acc.rescale(q);
  }
  throw NonConvergence("dncb_moment_one_series", ctrl.max_terms);
}

MomentResult dncb_moment_double_series(const DNcBParams& p, int r,
                                       const SeriesControl& ctrl) {
  require_order(r);
  double half_l1 = p.lambda1 / 2.0;
  double half_l2 = p.lambda2 / 2.0;

  // Poisson weights are evaluated one index at a time straight from the log
  // pmf, so a large mean only underflows the negligible far tail, never the
  // working peak near j ~ lambda/2.
  std::vector<double> w1;
  std::vector<double> w2;

  double sum = 0.0;
  long used = 0;
  int consecutive_small = 0;
  while (used < ctrl.max_terms) {
    long s = used;
    w1.push_back(std::exp(log_poisson_pmf(s, half_l1)));
    w2.push_back(std::exp(log_poisson_pmf(s, half_l2)));

    double diag = 0.0;
    for (long j = 0; j <= s; ++j) {
      double wj = w1[static_cast<size_t>(j)];
      double wk = w2[static_cast<size_t>(s - j)];
      if (wj == 0.0 || wk == 0.0) continue;
      diag += wj * wk *
              beta_moment(p.alpha1 + static_cast<double>(j),
                          p.alpha2 + static_cast<double>(s - j), r);
    }
    sum += diag;
    ++used;

    // Below the Poisson peak the diagonals are still rising from underflow,
    // so the absolute floor applies only past the bulk of the weight;
    // convergence only counts once mass has actually arrived.
    double threshold = ctrl.rel_tol * sum;
    if (static_cast<double>(s) >= half_l1 + half_l2 &&
        threshold < ctrl.abs_floor) {
      threshold = ctrl.abs_floor;
    }
    if (sum > 0.0 && diag <= threshold) {
      if (++consecutive_small >= 2) {
        return {r, sum, MomentMethod::kDoubleSeries, used};
      }
    } else {
      consecutive_small = 0;
    }
  }
  throw NonConvergence("dncb_moment_double_series", ctrl.max_terms);
}

double dncb_mean_mixing_weight(const DNcBParams& p, const SeriesControl& ctrl) {
  double half_lp = p.lambda_plus() / 2.0;
  if (half_lp == 0.0) {
    throw DegenerateParameter(
        "mixing weight undefined: lambda1 + lambda2 = 0");
  }
  double ap = p.alpha_plus();
  return kummer_1f1_scaled(ap, ap + 1.0, half_lp, ctrl);
}

double dncb_mean_reduced(const DNcBParams& p, const SeriesControl& ctrl) {
  double w = dncb_mean_mixing_weight(p, ctrl);
  double ap = p.alpha_plus();
  return (p.alpha1 / ap) * w + p.theta1() * (1.0 - w);
}

double dncb_second_moment_reduced(const DNcBParams& p,
                                  const SeriesControl& ctrl) {
  double half_lp = p.lambda_plus() / 2.0;
  if (half_lp == 0.0) {
    throw DegenerateParameter(
        "reduced second moment undefined: lambda1 + lambda2 = 0");
  }
  double ap = p.alpha_plus();
  double a1 = p.alpha1;
  double l1 = p.lambda1;
  double f1 = kummer_1f1_scaled(ap, ap + 2.0, half_lp, ctrl);
  double f2 = kummer_1f1_scaled(ap + 1.0, ap + 3.0, half_lp, ctrl);
  double half_l1_sq = (l1 / 2.0) * (l1 / 2.0);
  double shifted = ap + 1.0 + half_lp;
  double term1 = a1 * (a1 + 1.0) / (ap * (ap + 1.0)) * f1;
  double term2 = (l1 * (a1 + 1.0) / (ap + 1.0) - half_l1_sq / shifted) /
                 (ap + 2.0) * f2;
  double term3 = half_l1_sq / (half_lp * shifted) * (1.0 - f2);
  return term1 + term2 + term3;
}

MomentResult ncb1_moment(double alpha1, double alpha2, double lambda, int r,
                         const SeriesControl& ctrl) {
  MomentResult res =
      dncb_moment_sum(DNcBParams(alpha1, alpha2, lambda, 0.0), r, ctrl);
  res.method = MomentMethod::kFiniteSum;
  return res;
}

MomentResult ncb1_moment_definitional(double alpha1, double alpha2,
                                      double lambda, int r,
                                      const SeriesControl& ctrl) {
  require_order(r);
  DNcBParams p(alpha1, alpha2, lambda, 0.0);
  double ap = p.alpha_plus();
  double rd = static_cast<double>(r);
  SeriesValue f =
      hyp_2f2_scaled_ex(alpha1 + rd, ap, alpha1, ap + rd, lambda / 2.0, ctrl);
  return {r, beta_moment(alpha1, alpha2, r) * f.value,
          MomentMethod::kDefinitional, f.terms};
}

MomentResult ncb2_moment(double alpha1, double alpha2, double lambda, int r,
                         const SeriesControl& ctrl) {
  require_order(r);
  DNcBParams p(alpha1, alpha2, 0.0, lambda);
  double ap = p.alpha_plus();
  double rd = static_cast<double>(r);
  SeriesValue f = kummer_1f1_scaled_ex(ap, ap + rd, lambda / 2.0, ctrl);
  return {r, beta_moment(alpha1, alpha2, r) * f.value,
          MomentMethod::kFiniteSum, f.terms};
}

std::pair<double, double> hyp_2f2_reduction_sides(double a, double b, int n,
                                                  double x,
                                                  const SeriesControl& ctrl) {
  if (!(b > a && a > 0.0)) {
    throw InvalidParameter("hyp_2f2_reduction_sides: requires b > a > 0");
  }
  if (n < 0 || n > 64) {
    throw InvalidParameter("hyp_2f2_reduction_sides: n outside [0, 64]");
  }
  double nd = static_cast<double>(n);
  double lhs = hyp_2f2(a + nd, b, a, b + nd, x, ctrl);
  double rhs = 0.0;
  double coeff = 1.0;  // C(n,i) (b)_i x^i / ((a)_i (b+n)_i)
  for (int i = 0; i <= n; ++i) {
    double id = static_cast<double>(i);
    rhs += coeff * kummer_1f1(b + id, b + nd + id, x, ctrl);
    coeff *= static_cast<double>(n - i) / (id + 1.0) * (b + id) * x /
             ((a + id) * (b + nd + id));
  }
  return {lhs, rhs};
}

std::pair<double, double> dncb_mean_relationship_sides(
    const DNcBParams& p, const SeriesControl& ctrl) {
  double theta1 = p.theta1();
  double lp = p.lambda_plus();
  double lhs = dncb_moment_sum(p, 1, ctrl).value;
  double m_num = ncb1_moment(p.alpha1, p.alpha2, lp, 1, ctrl).value;
  double m_den = ncb2_moment(p.alpha1, p.alpha2, lp, 1, ctrl).value;
  double rhs = theta1 * m_num + (1.0 - theta1) * m_den;
  return {lhs, rhs};
}

}  // namespace ncbeta
