#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ncbeta/series_control.hpp"

namespace ncbeta {

// Exact unsigned integers for combinatorial tables.  128 bits cover every
// order this library accepts (moment orders are capped at kMaxMomentOrder);
// arithmetic is checked and raises ExactOverflow instead of wrapping.
using uint128 = unsigned __int128;

uint128 checked_add(uint128 a, uint128 b);
uint128 checked_mul(uint128 a, uint128 b);
double to_double(uint128 v);

// Largest moment order any routine accepts.  Above this the exact integer
// tables and the binomial weights would start to lose integer exactness.
inline constexpr int kMaxMomentOrder = 32;

// Rising factorial (a)_l = a (a+1) ... (a+l-1), with (a)_0 = 1.
// The convention (0)_0 = 1 and (0)_l = 0 for l >= 1 is honoured exactly.
// Requires l >= 0.
double pochhammer(double a, int l);

// Binomial coefficient, exact for n <= 64 (the largest value used here is
// C(64,32) which still fits in 64 bits).  Requires 0 <= k <= n.
std::uint64_t binomial_u64(int n, int k);

// Stirling number of the second kind S(i, j): partitions of an i-set into j
// non-empty blocks.  Tables grow on demand and are cached; entries that do
// not fit in 128 bits raise ExactOverflow.
uint128 stirling_second(int i, int j);

// Unsigned Stirling number of the first kind |s(r, i)|, computed through the
// triangular recurrence |s(r,i)| = |s(r-1,i-1)| + (r-1) |s(r-1,i)| rather
// than through rising_poly, so the two stay independent cross-checks.
uint128 stirling_first_unsigned(int r, int i);

// Dense polynomial with exact nonnegative integer coefficients, ascending
// powers.  coeffs.back() is nonzero except for the zero polynomial, which is
// represented as the single coefficient {0}.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<uint128> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<uint128>& coeffs() const { return coeffs_; }
  uint128 coeff(int k) const;  // 0 outside [0, degree]

  double eval(double a) const;            // Horner in double
  uint128 eval_exact(uint128 a) const;    // Horner in checked 128-bit

 private:
  std::vector<uint128> coeffs_;
};

// Coefficients of (a)_l as a polynomial in a; these are the unsigned first
// kind Stirling numbers.  rising_poly(0) is the constant polynomial 1.
IntPolynomial rising_poly(int l);

// i-th formal derivative, exact.  poly_derivative(p, 0) returns p unchanged;
// differentiating past the degree yields the zero polynomial.
IntPolynomial poly_derivative(const IntPolynomial& p, int i);

// Scaled Taylor coefficient (1/i!) d^i p / da^i evaluated at a, computed in
// double from the exact coefficients so large orders cannot overflow the
// integer domain.
double poly_taylor_coeff(const IntPolynomial& p, int i, double a);

// (a + b)_l through the binomial-weighted derivative expansion
// sum_i (1/i!) [d^i (a)_l / da^i] b^i.  Equals pochhammer(a + b, l).
double poch_binomial_expansion(double a, double b, int l);

// Vandermonde form (a + b)_n = sum_j C(n,j) (a)_{n-j} (b)_j.
double poch_binomial_sum(double a, double b, int n);

// Value of a truncated series together with the number of terms consumed
// (term groups, for double series).
struct SeriesValue {
  double value = 0.0;
  long terms = 0;
};

// Kummer confluent hypergeometric 1F1(a; b; x) by direct summation.
// b must not be zero or a negative integer.  The plain entry point stays
// finite for large x by routing through the scaled sum internally, so its
// monotonicity in x is preserved up to the point where exp overflows.
SeriesValue kummer_1f1_ex(double a, double b, double x,
                          const SeriesControl& ctrl = {});
double kummer_1f1(double a, double b, double x, const SeriesControl& ctrl = {});

// exp(-x) * 1F1(a; b; x), evaluated without forming either factor, so it
// stays finite for x far beyond the overflow point of 1F1 itself.
SeriesValue kummer_1f1_scaled_ex(double a, double b, double x,
                                 const SeriesControl& ctrl = {});
double kummer_1f1_scaled(double a, double b, double x,
                         const SeriesControl& ctrl = {});

// Generalized hypergeometric 2F2(a1, a2; b1, b2; x), plus the exp(-x) scaled
// companion, with the same conventions as the Kummer pair.
SeriesValue hyp_2f2_ex(double a1, double a2, double b1, double b2, double x,
                       const SeriesControl& ctrl = {});
double hyp_2f2(double a1, double a2, double b1, double b2, double x,
               const SeriesControl& ctrl = {});
SeriesValue hyp_2f2_scaled_ex(double a1, double a2, double b1, double b2,
                              double x, const SeriesControl& ctrl = {});
double hyp_2f2_scaled(double a1, double a2, double b1, double b2, double x,
                      const SeriesControl& ctrl = {});

// Humbert Psi2(a; b1, b2; x, y): double series summed by grouping on the
// second index, terms counted as groups.  Requires x >= 0 and y >= 0.
// Setting y = 0 collapses it to 1F1(a; b1; x), and x = 0 to 1F1(a; b2; y).
SeriesValue humbert_psi2_ex(double a, double b1, double b2, double x, double y,
                            const SeriesControl& ctrl = {});
double humbert_psi2(double a, double b1, double b2, double x, double y,
                    const SeriesControl& ctrl = {});
// exp(-(x + y)) * Psi2(a; b1, b2; x, y).
SeriesValue humbert_psi2_scaled_ex(double a, double b1, double b2, double x,
                                   double y, const SeriesControl& ctrl = {});
double humbert_psi2_scaled(double a, double b1, double b2, double x, double y,
                           const SeriesControl& ctrl = {});

// Residuals of the four contiguous three-term relations satisfied by 1F1:
//   [0]  (b-a) F(a-1;b;x) + (2a-b+x) F(a;b;x) - a F(a+1;b;x)
//   [1]  b(b-1) F(a;b-1;x) + b(1-b-x) F(a;b;x) + x(b-a) F(a;b+1;x)
//   [2]  b(a+x) F(a;b;x) + x(a-b) F(a;b+1;x) - a b F(a+1;b;x)
//   [3]  (a-1+x) F(a;b;x) + (b-a) F(a-1;b;x) + (1-b) F(a;b-1;x)
// Each residual is reported relative to the largest of its three summands,
// so a correct implementation returns values near machine epsilon.
// Relations [1] and [3] need b - 1 to be a valid 1F1 denominator; their slots
// hold NaN when b - 1 is zero or a negative integer.
std::array<double, 4> kummer_recurrence_residuals(double a, double b, double x,
                                                  const SeriesControl& ctrl = {});

}  // namespace ncbeta
