#include "ncbeta/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ncbeta/errors.hpp"
#include "scaled_sum.hpp"

namespace ncbeta {

namespace {

using detail::ScaledSum;

void require_denominator(double b, const char* what) {
  if (b <= 0.0 && b == std::floor(b)) {
    throw InvalidParameter(std::string(what) + ": denominator parameter " +
                           std::to_string(b) +
                           " is zero or a negative integer");
  }
}

// Sums term_0 + term_1 + ... where term_0 = 1 and term_{t+1} = term_t *
// ratio(t).  Stops after two consecutive terms fall below the tolerance;
// raises NonConvergence at the term budget.
template <typename RatioFn>
std::pair<ScaledSum, long> run_ratio_series(RatioFn ratio,
                                            const SeriesControl& ctrl,
                                            const char* what) {
  ScaledSum acc;
  double term = 1.0;
  long used = 0;
  int consecutive_small = 0;
  while (used < ctrl.max_terms) {
    acc.sum += term;
    ++used;
    double threshold = ctrl.rel_tol * std::abs(acc.sum);
    if (acc.log_scale == 0.0 && threshold < ctrl.abs_floor) {
      threshold = ctrl.abs_floor;
    }
    if (std::abs(term) <= threshold) {
      if (++consecutive_small >= 2) {
        return {acc, used};
      }
    } else {
      consecutive_small = 0;
    }
    term *= ratio(static_cast<double>(used - 1));
    acc.rescale(term);
  }
  throw NonConvergence(what, ctrl.max_terms);
}

template <typename RatioFn>
SeriesValue sum_ratio_series(RatioFn ratio, double log_extra,
                             const SeriesControl& ctrl, const char* what) {
  auto [acc, used] = run_ratio_series(ratio, ctrl, what);
  return {acc.finish(log_extra), used};
}

// log |sum * exp(log_scale)| plus the sign, for callers that must combine
// the result with factors that are themselves too large for a double.
struct SignedLog {
  double log_abs;
  int sign;
};

SignedLog to_signed_log(const ScaledSum& acc) {
  if (acc.sum == 0.0) {
    return {-std::numeric_limits<double>::infinity(), 0};
  }
  return {std::log(std::abs(acc.sum)) + acc.log_scale,
          acc.sum < 0.0 ? -1 : 1};
}

SeriesValue kummer_core(double a, double b, double x, const SeriesControl& ctrl,
                        double log_extra, const char* what) {
  require_denominator(b, what);
  auto ratio = [a, b, x](double t) {
    return (a + t) / ((b + t) * (t + 1.0)) * x;
  };
  return sum_ratio_series(ratio, log_extra, ctrl, what);
}

SeriesValue hyp_2f2_core(double a1, double a2, double b1, double b2, double x,
                         const SeriesControl& ctrl, double log_extra,
                         const char* what) {
  require_denominator(b1, what);
  require_denominator(b2, what);
  auto ratio = [a1, a2, b1, b2, x](double t) {
    return (a1 + t) * (a2 + t) / ((b1 + t) * (b2 + t) * (t + 1.0)) * x;
  };
  return sum_ratio_series(ratio, log_extra, ctrl, what);
}

// Double series summed by grouping on the second index: the inner sum over
// the first index is itself a confluent series with the numerator parameter
// shifted by n, so each group is weight_n * F(a + n; b1; x) with
// weight_n = (a)_n y^n / ((b2)_n n!).  Groups are combined through log
// magnitudes because the weight and the confluent factor can each leave the
// double range even though their product never does.
SeriesValue psi2_core(double a, double b1, double b2, double x, double y,
                      const SeriesControl& ctrl, double log_extra,
                      const char* what) {
  require_denominator(b1, what);
  require_denominator(b2, what);
  if (x < 0.0 || y < 0.0) {
    throw InvalidParameter(std::string(what) + ": x and y must be >= 0");
  }

  ScaledSum acc;
  double weight_log = 0.0;
  int weight_sign = 1;
  long used = 0;
  int consecutive_small = 0;
  while (used < ctrl.max_terms) {
    double n = static_cast<double>(used);
    double group = 0.0;
    if (weight_sign != 0) {
      auto ratio = [a, b1, n, x](double t) {
        return (a + n + t) / ((b1 + t) * (t + 1.0)) * x;
      };
      SignedLog inner = to_signed_log(run_ratio_series(ratio, ctrl, what).first);
      // log_extra is folded into every group so the scaled variants stay
      // representable even when each bare group is not.
      group = weight_sign * inner.sign *
              std::exp(weight_log + inner.log_abs + log_extra - acc.log_scale);
    }
    acc.sum += group;
    ++used;

    double threshold = ctrl.rel_tol * std::abs(acc.sum);
    if (acc.log_scale == 0.0 && threshold < ctrl.abs_floor) {
      threshold = ctrl.abs_floor;
    }
    if (std::abs(group) <= threshold) {
      if (++consecutive_small >= 2) {
        return {acc.finish(0.0), used};
      }
    } else {
      consecutive_small = 0;
    }

    double factor = (a + n) * y / ((b2 + n) * (n + 1.0));
    if (factor == 0.0) {
      weight_sign = 0;
    } else {
      weight_log += std::log(std::abs(factor));
      if (factor < 0.0) weight_sign = -weight_sign;
    }
    double dummy = 0.0;
    acc.rescale(dummy);
  }
  throw NonConvergence(what, ctrl.max_terms);
}

}  // namespace

uint128 checked_add(uint128 a, uint128 b) {
  uint128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw ExactOverflow("exact integer addition overflowed 128 bits");
  }
  return r;
}

uint128 checked_mul(uint128 a, uint128 b) {
  uint128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw ExactOverflow("exact integer multiplication overflowed 128 bits");
  }
  return r;
}

double to_double(uint128 v) { return static_cast<double>(v); }

double pochhammer(double a, int l) {
  if (l < 0) throw InvalidParameter("pochhammer: l must be >= 0");
  if (l == 0) return 1.0;
  if (a == 0.0) return 0.0;
  double r = 1.0;
  for (int i = 0; i < l; ++i) r *= a + static_cast<double>(i);
  if (std::isinf(r) && a > 0.0) {
    return std::exp(std::lgamma(a + l) - std::lgamma(a));
  }
  return r;
}

std::uint64_t binomial_u64(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw InvalidParameter("binomial_u64: need 0 <= k <= n");
  }
  if (n > 64) {
    throw InvalidParameter("binomial_u64: n > 64 may not fit in 64 bits");
  }
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(65);
    for (int i = 0; i <= 64; ++i) {
      t[i].resize(static_cast<size_t>(i) + 1);
      t[i][0] = t[i][static_cast<size_t>(i)] = 1;
      for (int j = 1; j < i; ++j) {
        t[i][static_cast<size_t>(j)] = t[i - 1][static_cast<size_t>(j - 1)] +
                                       t[i - 1][static_cast<size_t>(j)];
      }
    }
    return t;
  }();
  return table[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

namespace {

// Growable triangular table shared by both Stirling kinds.  Rows are built
// whole (into a scratch vector) before being published, so a 128-bit
// overflow leaves previously computed rows intact.
class StirlingTable {
 public:
  enum class Kind { kSecond, kFirstUnsigned };

  explicit StirlingTable(Kind kind) : kind_(kind) { rows_.push_back({1}); }

  uint128 at(int n, int k) {
    if (n < 0 || k < 0) {
      throw InvalidParameter("stirling: indices must be >= 0");
    }
    if (k > n) return 0;
    std::scoped_lock lock(mutex_);
    while (static_cast<int>(rows_.size()) <= n) {
      int m = static_cast<int>(rows_.size());
      const auto& prev = rows_.back();
      std::vector<uint128> row(static_cast<size_t>(m) + 1, 0);
      for (int j = 1; j <= m; ++j) {
        uint128 carry = (j <= m - 1) ? prev[static_cast<size_t>(j)] : 0;
        uint128 factor = (kind_ == Kind::kSecond)
                             ? static_cast<uint128>(j)
                             : static_cast<uint128>(m - 1);
        row[static_cast<size_t>(j)] =
            checked_add(prev[static_cast<size_t>(j - 1)],
                        checked_mul(factor, carry));
      }
      rows_.push_back(std::move(row));
    }
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(k)];
  }

 private:
  Kind kind_;
  std::mutex mutex_;
  std::vector<std::vector<uint128>> rows_;
};

}  // namespace

uint128 stirling_second(int i, int j) {
  static StirlingTable table(StirlingTable::Kind::kSecond);
  return table.at(i, j);
}

uint128 stirling_first_unsigned(int r, int i) {
  static StirlingTable table(StirlingTable::Kind::kFirstUnsigned);
  return table.at(r, i);
}

IntPolynomial::IntPolynomial(std::vector<uint128> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0);
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
}

uint128 IntPolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<size_t>(k)];
}

double IntPolynomial::eval(double a) const {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = r * a + to_double(*it);
  }
  return r;
}

uint128 IntPolynomial::eval_exact(uint128 a) const {
  uint128 r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = checked_add(checked_mul(r, a), *it);
  }
  return r;
}

IntPolynomial rising_poly(int l) {
  if (l < 0) throw InvalidParameter("rising_poly: l must be >= 0");
  std::vector<uint128> c{1};
  for (int k = 0; k < l; ++k) {
    std::vector<uint128> next(c.size() + 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = checked_add(next[i + 1], c[i]);
      next[i] = checked_add(next[i],
                            checked_mul(static_cast<uint128>(k), c[i]));
    }
    c = std::move(next);
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial poly_derivative(const IntPolynomial& p, int i) {
  if (i < 0) throw InvalidParameter("poly_derivative: i must be >= 0");
  std::vector<uint128> c = p.coeffs();
  for (int step = 0; step < i; ++step) {
    if (c.size() <= 1) return IntPolynomial({0});
    std::vector<uint128> d(c.size() - 1);
    for (size_t k = 0; k + 1 < c.size(); ++k) {
      d[k] = checked_mul(c[k + 1], static_cast<uint128>(k + 1));
    }
    c = std::move(d);
  }
  return IntPolynomial(std::move(c));
}

double poly_taylor_coeff(const IntPolynomial& p, int i, double a) {
  if (i < 0) throw InvalidParameter("poly_taylor_coeff: i must be >= 0");
  if (i > p.degree()) return 0.0;
  double r = 0.0;
  double pow_a = 1.0;
  // (1/i!) d^i/da^i sum_k c_k a^k = sum_{k >= i} C(k, i) c_k a^{k-i}
  for (int k = i; k <= p.degree(); ++k) {
    r += to_double(p.coeff(k)) * static_cast<double>(binomial_u64(k, i)) *
         pow_a;
    pow_a *= a;
  }
  return r;
}

double poch_binomial_expansion(double a, double b, int l) {
  if (l < 0) throw InvalidParameter("poch_binomial_expansion: l must be >= 0");
  IntPolynomial p = rising_poly(l);
  double sum = 0.0;
  double pow_b = 1.0;
  for (int i = 0; i <= l; ++i) {
    sum += poly_taylor_coeff(p, i, a) * pow_b;
    pow_b *= b;
  }
  return sum;
}

double poch_binomial_sum(double a, double b, int n) {
  if (n < 0) throw InvalidParameter("poch_binomial_sum: n must be >= 0");
  if (n > 64) throw InvalidParameter("poch_binomial_sum: n too large");
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    sum += static_cast<double>(binomial_u64(n, j)) * pochhammer(a, n - j) *
           pochhammer(b, j);
  }
  return sum;
}

SeriesValue kummer_1f1_ex(double a, double b, double x,
                          const SeriesControl& ctrl) {
  return kummer_core(a, b, x, ctrl, 0.0, "kummer_1f1");
}

double kummer_1f1(double a, double b, double x, const SeriesControl& ctrl) {
  return kummer_1f1_ex(a, b, x, ctrl).value;
}

SeriesValue kummer_1f1_scaled_ex(double a, double b, double x,
                                 const SeriesControl& ctrl) {
  return kummer_core(a, b, x, ctrl, -x, "kummer_1f1_scaled");
}

double kummer_1f1_scaled(double a, double b, double x,
                         const SeriesControl& ctrl) {
  return kummer_1f1_scaled_ex(a, b, x, ctrl).value;
}

SeriesValue hyp_2f2_ex(double a1, double a2, double b1, double b2, double x,
                       const SeriesControl& ctrl) {
  return hyp_2f2_core(a1, a2, b1, b2, x, ctrl, 0.0, "hyp_2f2");
}

double hyp_2f2(double a1, double a2, double b1, double b2, double x,
               const SeriesControl& ctrl) {
  return hyp_2f2_ex(a1, a2, b1, b2, x, ctrl).value;
}

SeriesValue hyp_2f2_scaled_ex(double a1, double a2, double b1, double b2,
                              double x, const SeriesControl& ctrl) {
  return hyp_2f2_core(a1, a2, b1, b2, x, ctrl, -x, "hyp_2f2_scaled");
}

double hyp_2f2_scaled(double a1, double a2, double b1, double b2, double x,
                      const SeriesControl& ctrl) {
  return hyp_2f2_scaled_ex(a1, a2, b1, b2, x, ctrl).value;
}

SeriesValue humbert_psi2_ex(double a, double b1, double b2, double x, double y,
                            const SeriesControl& ctrl) {
  return psi2_core(a, b1, b2, x, y, ctrl, 0.0, "humbert_psi2");
}

double humbert_psi2(double a, double b1, double b2, double x, double y,
                    const SeriesControl& ctrl) {
  return humbert_psi2_ex(a, b1, b2, x, y, ctrl).value;
}

SeriesValue humbert_psi2_scaled_ex(double a, double b1, double b2, double x,
                                   double y, const SeriesControl& ctrl) {
  return psi2_core(a, b1, b2, x, y, ctrl, -(x + y), "humbert_psi2_scaled");
}

double humbert_psi2_scaled(double a, double b1, double b2, double x, double y,
                           const SeriesControl& ctrl) {
  return humbert_psi2_scaled_ex(a, b1, b2, x, y, ctrl).value;
}

namespace {

double relative_residual(std::initializer_list<double> summands) {
  double sum = 0.0;
  double largest = 0.0;
  for (double s : summands) {
    sum += s;
    largest = std::max(largest, std::abs(s));
  }
  if (largest == 0.0) return 0.0;
  return std::abs(sum) / largest;
}

}  // namespace

std::array<double, 4> kummer_recurrence_residuals(double a, double b, double x,
                                                  const SeriesControl& ctrl) {
  double f = kummer_1f1(a, b, x, ctrl);
  double f_am = kummer_1f1(a - 1.0, b, x, ctrl);
  double f_ap = kummer_1f1(a + 1.0, b, x, ctrl);
  double f_bp = kummer_1f1(a, b + 1.0, x, ctrl);

  // Relations [1] and [3] shift b downward; they are undefined when b - 1 is
  // zero or a negative integer (the shifted 1F1 does not exist there).
  bool b_down_ok = !(b - 1.0 <= 0.0 && b - 1.0 == std::floor(b - 1.0));
  double f_bm = b_down_ok ? kummer_1f1(a, b - 1.0, x, ctrl)
                          : std::numeric_limits<double>::quiet_NaN();

  std::array<double, 4> r{};
  r[0] = relative_residual({(b - a) * f_am, (2.0 * a - b + x) * f, -a * f_ap});
  r[1] = b_down_ok ? relative_residual({b * (b - 1.0) * f_bm,
                                        b * (1.0 - b - x) * f,
                                        x * (b - a) * f_bp})
                   : std::numeric_limits<double>::quiet_NaN();
  r[2] = relative_residual(
      {b * (a + x) * f, x * (a - b) * f_bp, -a * b * f_ap});
  r[3] = b_down_ok ? relative_residual({(a - 1.0 + x) * f, (b - a) * f_am,
                                        (1.0 - b) * f_bm})
                   : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace ncbeta
