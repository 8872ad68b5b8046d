#pragma once

#include <utility>
#include <vector>

#include "ncbeta/series_control.hpp"
#include "ncbeta/special_functions.hpp"

namespace ncbeta {

// Noncentral chi-squared with g degrees of freedom (g >= 0) and noncentrality
// lambda >= 0.  g = 0 is the zero-degrees-of-freedom family: a point mass at
// zero mixed with the lambda-driven positive part.
struct NcChiSqParams {
  double g = 0.0;
  double lambda = 0.0;

  NcChiSqParams(double g_in, double lambda_in);
  double h() const { return g / 2.0; }
};

// Doubly noncentral beta: X = Y1 / (Y1 + Y2) with independent
// Y1 ~ chi2(2 alpha1, lambda1) and Y2 ~ chi2(2 alpha2, lambda2).
struct DNcBParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  DNcBParams(double a1, double a2, double l1, double l2);
  double alpha_plus() const { return alpha1 + alpha2; }
  double lambda_plus() const { return lambda1 + lambda2; }
  // Probability that a unit of noncentrality lands in the numerator.
  // Undefined when lambda1 + lambda2 = 0.
  double theta1() const;
};

enum class MomentMethod {
  kClassic,        // binomial sum over Poisson-shifted pochhammers
  kStirling,       // derivative expansion against Poisson raw moments
  kZeroDf,         // first-kind Stirling form, g = 0 only
  kClosedForm,     // expanded polynomials in (g, lambda), r <= 4
  kFiniteSum,      // r + 1 Kummer evaluations
  kOneSeries,      // single series with Kummer factors
  kDoubleSeries,   // Poisson-weighted double series (reference oracle)
  kDefinitional,   // 2F2 form
  kReduced,        // simplified mean / second-moment expressions
};

struct MomentResult {
  int order = 0;
  double value = 0.0;
  MomentMethod method = MomentMethod::kClassic;
  long terms_used = 0;
};

const char* moment_method_name(MomentMethod m);

// r-th raw moment of Beta(alpha1, alpha2): (alpha1)_r / (alpha1 + alpha2)_r.
// Requires alpha1 > 0, alpha2 > 0, 1 <= r <= kMaxMomentOrder.
double beta_moment(double alpha1, double alpha2, int r);

// r-th raw moment of a Poisson variable with the given mean, through
// second-kind Stirling numbers.  Moment order 0 returns 1.
double poisson_raw_moment(double mean, int i);

// Noncentral chi-squared raw moments.  classic and stirling require g > 0;
// zero_df requires g = 0; closed covers r <= 4 for any g >= 0.
MomentResult ncchisq_moment_classic(const NcChiSqParams& p, int r);
MomentResult ncchisq_moment_stirling(const NcChiSqParams& p, int r);
MomentResult ncchisq_moment_zero_df(const NcChiSqParams& p, int r);
MomentResult ncchisq_moment_closed(const NcChiSqParams& p, int r);

// Doubly noncentral beta raw moments.
//
// The finite-sum form costs r + 1 scaled Kummer evaluations and is the
// method of choice.  The one-series form trades the finite sum for a single
// infinite series in lambda1.  The double-series form sums the full
// Poisson-weighted lattice by anti-diagonals; it is the slow reference the
// other two are checked against.
MomentResult dncb_moment_sum(const DNcBParams& p, int r,
                             const SeriesControl& ctrl = {});
MomentResult dncb_moment_one_series(const DNcBParams& p, int r,
                                    const SeriesControl& ctrl = {});
MomentResult dncb_moment_double_series(const DNcBParams& p, int r,
                                       const SeriesControl& ctrl = {});

// Weight w = exp(-lambda+/2) 1F1(alpha+; alpha+ + 1; lambda+/2) placing the
// mean on the segment between alpha1/alpha+ and lambda1/lambda+.  Raises
// DegenerateParameter when lambda+ = 0 (the mean is then just the Beta mean).
double dncb_mean_mixing_weight(const DNcBParams& p,
                               const SeriesControl& ctrl = {});

// Simplified first and second raw moments (three Kummer evaluations at
// most).  Both raise DegenerateParameter when lambda+ = 0.
double dncb_mean_reduced(const DNcBParams& p, const SeriesControl& ctrl = {});
double dncb_second_moment_reduced(const DNcBParams& p,
                                  const SeriesControl& ctrl = {});

// Singly noncentral beta (noncentrality in the numerator): the finite-sum
// specialization with lambda2 = 0, and the definitional 2F2 form it must
// match.
MomentResult ncb1_moment(double alpha1, double alpha2, double lambda, int r,
                         const SeriesControl& ctrl = {});
MomentResult ncb1_moment_definitional(double alpha1, double alpha2,
                                      double lambda, int r,
                                      const SeriesControl& ctrl = {});

// Noncentrality in the denominator: a single Kummer factor.
MomentResult ncb2_moment(double alpha1, double alpha2, double lambda, int r,
                         const SeriesControl& ctrl = {});

// Both sides of the reduction of 2F2(a+n, b; a, b+n; x) to a finite sum of
// n + 1 Kummer functions.  Requires b > a > 0 and integer n >= 0.
std::pair<double, double> hyp_2f2_reduction_sides(double a, double b, int n,
                                                  double x,
                                                  const SeriesControl& ctrl = {});

// Both sides of the mean identity: E[DNcB(a1, a2, l1, l2)] against the
// lambda-weighted combination of the two singly noncentral means with
// noncentrality l1 + l2.  Raises DegenerateParameter when l1 + l2 = 0.
std::pair<double, double> dncb_mean_relationship_sides(
    const DNcBParams& p, const SeriesControl& ctrl = {});

}  // namespace ncbeta
