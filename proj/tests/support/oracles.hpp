#pragma once

// Test-side reference implementations, deliberately independent of the
// library's algorithms: direct term-by-term sums in long double, brute-force
// enumeration for combinatorial counts, exact rational arithmetic, and a
// double-exponential quadrature.  Values frozen into the tests were produced
// by these oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracles {

inline long double brute_poch(long double a, int l) {
  long double r = 1.0L;
  for (int i = 0; i < l; ++i) r *= a + i;
  return r;
}

inline long double brute_1f1(long double a, long double b, long double x,
                             int terms = 400) {
  long double sum = 0.0L;
  long double term = 1.0L;
  for (int i = 0; i < terms; ++i) {
    sum += term;
    term *= (a + i) / ((b + i) * (i + 1.0L)) * x;
  }
  return sum;
}

inline long double brute_2f2(long double a1, long double a2, long double b1,
                             long double b2, long double x, int terms = 400) {
  long double sum = 0.0L;
  long double term = 1.0L;
  for (int i = 0; i < terms; ++i) {
    sum += term;
    term *= (a1 + i) * (a2 + i) / ((b1 + i) * (b2 + i) * (i + 1.0L)) * x;
  }
  return sum;
}

inline long double brute_psi2(long double a, long double b1, long double b2,
                              long double x, long double y, int jmax = 120,
                              int kmax = 120) {
  long double sum = 0.0L;
  long double xj = 1.0L;  // x^j / ((b1)_j j!)
  for (int j = 0; j < jmax; ++j) {
    long double yk = 1.0L;  // y^k / ((b2)_k k!)
    for (int k = 0; k < kmax; ++k) {
      sum += brute_poch(a, j + k) * xj * yk;
      yk *= y / ((b2 + k) * (k + 1.0L));
    }
    xj *= x / ((b1 + j) * (j + 1.0L));
  }
  return sum;
}

// Number of partitions of {0, ..., n-1} into exactly k nonempty blocks,
// counted by enumerating restricted growth strings.
inline long long count_set_partitions(int n, int k) {
  std::function<long long(int, int)> rec = [&](int element,
                                               int blocks_used) -> long long {
    if (element == n) return blocks_used == k ? 1 : 0;
    long long total = 0;
    for (int b = 0; b < blocks_used; ++b) total += rec(element + 1, blocks_used);
    total += rec(element + 1, blocks_used + 1);
    return total;
  };
  return rec(0, 0);
}

// Second-kind Stirling number by inclusion-exclusion:
// S(n,k) = (1/k!) sum_t (-1)^t C(k,t) (k-t)^n, exact in signed 128-bit.
inline __int128 stirling2_inclusion_exclusion(int n, int k) {
  auto ipow = [](__int128 base, int e) {
    __int128 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  auto choose = [](int a, int b) {
    __int128 r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  __int128 sum = 0;
  for (int t = 0; t <= k; ++t) {
    __int128 contribution = choose(k, t) * ipow(k - t, n);
    sum += (t % 2 == 0) ? contribution : -contribution;
  }
  __int128 kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  return sum / kfact;
}

// Coefficients of a (a+1) ... (a+r-1) as a polynomial in a, by the one-row
// recurrence (the library builds them by polynomial multiplication instead).
inline std::vector<long long> stirling1_row_by_recurrence(int r) {
  std::vector<long long> row{1};  // row for r = 0
  for (int n = 1; n <= r; ++n) {
    std::vector<long long> next(static_cast<size_t>(n) + 1, 0);
    for (size_t i = 0; i < row.size(); ++i) {
      next[i + 1] += row[i];
      next[i] += static_cast<long long>(n - 1) * row[i];
    }
    row = std::move(next);
  }
  return row;
}

// Coefficients of the rising factorial by direct polynomial multiplication
// in 64-bit integers (the library's first-kind table uses the triangular
// recurrence instead).
inline std::vector<long long> rising_coeffs_by_multiplication(int r) {
  std::vector<long long> c{1};
  for (int k = 0; k < r; ++k) {
    std::vector<long long> next(c.size() + 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] += static_cast<long long>(k) * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// ------------------------------------------------------------ rationals

// Exact fraction over signed 128-bit integers, always normalized.
struct Fraction {
  __int128 num = 0;
  __int128 den = 1;

  Fraction() = default;
  Fraction(long long n) : num(n), den(1) {}
  Fraction(__int128 n, __int128 d) : num(n), den(d) { normalize(); }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den == 0) throw std::runtime_error("Fraction: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Fraction operator+(const Fraction& o) const {
    return Fraction(num * o.den + o.num * den, den * o.den);
  }
  Fraction operator-(const Fraction& o) const {
    return Fraction(num * o.den - o.num * den, den * o.den);
  }
  Fraction operator*(const Fraction& o) const {
    return Fraction(num * o.num, den * o.den);
  }
  bool operator==(const Fraction& o) const {
    return num == o.num && den == o.den;
  }
};

inline Fraction fraction_pow(Fraction base, int e) {
  Fraction r(1);
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

inline Fraction fraction_binomial(long long n, long long k) {
  if (k < 0 || k > n) return Fraction(0);
  Fraction r(1);
  for (long long i = 1; i <= k; ++i) {
    r = r * Fraction(n - k + i, i);
  }
  return r;
}

// Both sides of the binomial-convolution identity
//   sum_k C(alpha+k, k) C(n, k) (x-y)^{n-k} y^k = sum_k C(alpha, k) C(n, k)
//   x^{n-k} y^k
// in exact rational arithmetic.
inline std::pair<Fraction, Fraction> ljunggren_sides(int alpha, int n,
                                                     Fraction x, Fraction y) {
  Fraction lhs(0);
  Fraction rhs(0);
  for (int k = 0; k <= n; ++k) {
    lhs = lhs + fraction_binomial(alpha + k, k) * fraction_binomial(n, k) *
                    fraction_pow(x - y, n - k) * fraction_pow(y, k);
    rhs = rhs + fraction_binomial(alpha, k) * fraction_binomial(n, k) *
                    fraction_pow(x, n - k) * fraction_pow(y, k);
  }
  return {lhs, rhs};
}

// ------------------------------------------------------------ quadrature

// Double-exponential (tanh-sinh) quadrature over (0, 1).  Never evaluates
// the integrand at the endpoints, so integrable endpoint singularities like
// x^(-1/2) are handled.  The integrand receives both x and 1-x, each exact.
inline double integrate01(const std::function<double(double, double)>& f,
                          double rel_tol = 1e-10) {
  const double t_max = 4.0;
  double previous = 0.0;
  for (int level = 2; level <= 12; ++level) {
    double h = t_max / std::pow(2.0, level);
    double sum = 0.0;
    long n = std::lround(t_max / h);
    for (long k = -n; k <= n; ++k) {
      double t = static_cast<double>(k) * h;
      double u = 1.5707963267948966 * std::sinh(t);
      // x and 1-x from opposite-signed exponentials, both full precision
      double ep = std::exp(u);
      double em = std::exp(-u);
      double x = ep / (ep + em);
      double one_minus_x = em / (ep + em);
      if (x < 1e-15 || one_minus_x < 1e-15) continue;
      double w = 1.5707963267948966 * std::cosh(t) /
                 ((ep + em) * (ep + em) / 2.0);
      sum += w * f(x, one_minus_x);
    }
    sum *= h;
    if (level > 3 &&
        std::abs(sum - previous) <= rel_tol * std::max(1.0, std::abs(sum))) {
      return sum;
    }
    previous = sum;
  }
  return previous;
}

// ------------------------------------------------------------ KS tests

// Two-sample Kolmogorov-Smirnov statistic (samples need not be sorted).
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  size_t i = 0;
  size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

inline double ks_two_sample_critical(double c_alpha, size_t n, size_t m) {
  double nd = static_cast<double>(n);
  double md = static_cast<double>(m);
  return c_alpha * std::sqrt((nd + md) / (nd * md));
}

// One-sample KS statistic against the uniform distribution on (0, 1).
inline double ks_uniform(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double d = 0.0;
  double n = static_cast<double>(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    double hi = static_cast<double>(i + 1) / n - values[i];
    double lo = values[i] - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

}  // namespace oracles
