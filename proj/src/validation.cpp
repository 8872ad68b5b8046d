#include "ncbeta/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncbeta/densities.hpp"
#include "ncbeta/errors.hpp"
#include "ncbeta/rng.hpp"
#include "ncbeta/special_functions.hpp"

namespace ncbeta {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double descriptive_moment(std::span<const double> values, int r) {
  if (values.empty()) throw EmptySample("descriptive_moment: empty sample");
  if (r < 1 || r > kMaxMomentOrder) {
    throw OrderOutOfRange("descriptive_moment: order " + std::to_string(r));
  }
  double sum = 0.0;
  for (double v : values) {
    double p = v;
    for (int k = 1; k < r; ++k) p *= v;
    sum += p;
  }
  return sum / static_cast<double>(values.size());
}

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> values) {
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

ZTestResult z_test_two_tailed(std::span<const double> values, double mu0) {
  if (values.size() < 2) {
    throw EmptySample("z_test_two_tailed: need at least two values");
  }
  MeanSd ms = mean_sd(values);
  if (ms.sd == 0.0) {
    throw ZeroVariance("z_test_two_tailed: sample does not vary");
  }
  double n = static_cast<double>(values.size());
  double z = (ms.mean - mu0) / (ms.sd / std::sqrt(n));
  double p = std::erfc(std::abs(z) / std::sqrt(2.0));
  return {z, p};
}

ZTestResult z_test_one_tailed_less(std::span<const double> a,
                                   std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw EmptySample("z_test_one_tailed_less: need at least two values");
  }
  MeanSd ma = mean_sd(a);
  MeanSd mb = mean_sd(b);
  double se = std::sqrt(ma.sd * ma.sd / static_cast<double>(a.size()) +
                        mb.sd * mb.sd / static_cast<double>(b.size()));
  if (se == 0.0) {
    throw ZeroVariance("z_test_one_tailed_less: neither sample varies");
  }
  double z = (ma.mean - mb.mean) / se;
  return {z, normal_cdf(z)};
}

bool ValidationReport::all_above(double alpha) const {
  return std::all_of(rows.begin(), rows.end(),
                     [alpha](const ValidationRow& r) { return r.p > alpha; });
}

namespace {

// Shared spine of the two validation overloads: `draw` produces one variate,
// `theoretical` the formula value for an order.
template <typename Params, typename DrawFn, typename TheoFn>
ValidationReport run_validation(const std::vector<Params>& vecs,
                                const ValidationConfig& cfg, DrawFn draw,
                                TheoFn theoretical,
                                std::vector<double> (*param_row)(const Params&)) {
  if (cfg.n_series < 2) {
    throw InvalidParameter("validation needs at least two series");
  }
  if (cfg.draws_per_series < 1) {
    throw InvalidParameter("validation needs at least one draw per series");
  }
  int max_order = 0;
  for (int r : cfg.orders) {
    if (r < 1 || r > kMaxMomentOrder) {
      throw OrderOutOfRange("validation order " + std::to_string(r));
    }
    max_order = std::max(max_order, r);
  }
  // orders may arrive in any order; the power ladder below needs them sorted
  std::vector<std::pair<int, size_t>> ladder;
  for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
    ladder.emplace_back(cfg.orders[oi], oi);
  }
  std::sort(ladder.begin(), ladder.end());

  ValidationReport report;
  for (size_t vi = 0; vi < vecs.size(); ++vi) {
    const Params& p = vecs[vi];
    // series_moments[oi][si]: descriptive moment of order cfg.orders[oi]
    std::vector<std::vector<double>> series_moments(
        cfg.orders.size(), std::vector<double>(cfg.n_series, 0.0));
    for (int si = 0; si < cfg.n_series; ++si) {
      std::uint64_t stream =
          (static_cast<std::uint64_t>(vi) << 32) | static_cast<std::uint64_t>(si);
      RngStream rng(cfg.seed, stream);
      std::vector<double> sums(cfg.orders.size(), 0.0);
      for (int d = 0; d < cfg.draws_per_series; ++d) {
        double x = draw(p, rng);
        double xp = 1.0;
        size_t k = 0;
        for (int power = 1; power <= max_order; ++power) {
          xp *= x;
          while (k < ladder.size() && ladder[k].first == power) {
            sums[ladder[k].second] += xp;
            ++k;
          }
        }
      }
      for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
        series_moments[oi][static_cast<size_t>(si)] =
            sums[oi] / static_cast<double>(cfg.draws_per_series);
      }
    }
    for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
      int r = cfg.orders[oi];
      double mu0 = theoretical(p, r) * (1.0 + cfg.mu0_relative_bias);
      ZTestResult t = z_test_two_tailed(series_moments[oi], mu0);
      MeanSd ms = mean_sd(series_moments[oi]);
      report.rows.push_back(
          {param_row(p), r, mu0, ms.mean, ms.sd, t.z, t.p});
    }
  }
  return report;
}

std::vector<double> chisq_param_row(const NcChiSqParams& p) {
  return {p.g, p.lambda};
}

std::vector<double> dncb_param_row(const DNcBParams& p) {
  return {p.alpha1, p.alpha2, p.lambda1, p.lambda2};
}

}  // namespace

ValidationReport run_moment_validation(const std::vector<NcChiSqParams>& vecs,
                                       const ValidationConfig& cfg) {
  auto draw = [](const NcChiSqParams& p, RngStream& rng) {
    return sample_ncchisq_mixture(p, rng);
  };
  auto theoretical = [](const NcChiSqParams& p, int r) {
    return p.g > 0.0 ? ncchisq_moment_stirling(p, r).value
                     : ncchisq_moment_zero_df(p, r).value;
  };
  return run_validation(vecs, cfg, draw, theoretical, chisq_param_row);
}

ValidationReport run_moment_validation(const std::vector<DNcBParams>& vecs,
                                       const ValidationConfig& cfg) {
  auto draw = [](const DNcBParams& p, RngStream& rng) {
    return sample_dncb(p, rng).x;
  };
  auto theoretical = [&cfg](const DNcBParams& p, int r) {
    return dncb_moment_sum(p, r, cfg.series).value;
  };
  return run_validation(vecs, cfg, draw, theoretical, dncb_param_row);
}

namespace {

// Keeps timed results alive so the optimizer cannot drop the computation.
volatile double g_timing_sink = 0.0;

}  // namespace

TimingReport run_timing_benchmark(const std::vector<DNcBParams>& vecs,
                                  const ValidationConfig& cfg, MomentFn fast,
                                  MomentFn slow, const std::string& fast_label,
                                  const std::string& slow_label) {
  if (cfg.n_series < 2) {
    throw InvalidParameter("benchmark needs at least two repetitions");
  }
  using clock = std::chrono::steady_clock;
  TimingReport report;
  for (const DNcBParams& p : vecs) {
    double max_rel = 0.0;
    for (int r : cfg.orders) {
      double vf = fast(p, r, cfg.series);
      double vs = slow(p, r, cfg.series);
      double denom = std::max(std::abs(vf), std::abs(vs));
      if (denom > 0.0) {
        max_rel = std::max(max_rel, std::abs(vf - vs) / denom);
      }
    }

    auto run_batch = [&](const MomentFn& fn) {
      double acc = 0.0;
      for (int r : cfg.orders) acc += fn(p, r, cfg.series);
      g_timing_sink = g_timing_sink + acc;
    };
    for (int w = 0; w < 3; ++w) {
      run_batch(fast);
      run_batch(slow);
    }

    std::vector<double> fast_times(static_cast<size_t>(cfg.n_series));
    std::vector<double> slow_times(static_cast<size_t>(cfg.n_series));
    for (int rep = 0; rep < cfg.n_series; ++rep) {
      auto t0 = clock::now();
      run_batch(fast);
      auto t1 = clock::now();
      run_batch(slow);
      auto t2 = clock::now();
      fast_times[static_cast<size_t>(rep)] =
          std::chrono::duration<double>(t1 - t0).count();
      slow_times[static_cast<size_t>(rep)] =
          std::chrono::duration<double>(t2 - t1).count();
    }

    ZTestResult t = z_test_one_tailed_less(fast_times, slow_times);
    MeanSd mf = mean_sd(fast_times);
    MeanSd ms = mean_sd(slow_times);
    double speedup = mf.mean > 0.0 ? ms.mean / mf.mean : 0.0;
    std::vector<double> params = dncb_param_row(p);
    report.rows.push_back({params, fast_label, mf.mean, mf.sd, t.z, t.p,
                           speedup, max_rel});
    report.rows.push_back({params, slow_label, ms.mean, ms.sd, t.z, t.p,
                           speedup, max_rel});
  }
  return report;
}

TimingReport run_timing_benchmark(const std::vector<DNcBParams>& vecs,
                                  const ValidationConfig& cfg) {
  MomentFn fast = [](const DNcBParams& p, int r, const SeriesControl& ctrl) {
    return dncb_moment_sum(p, r, ctrl).value;
  };
  MomentFn slow = [](const DNcBParams& p, int r, const SeriesControl& ctrl) {
    return dncb_moment_one_series(p, r, ctrl).value;
  };
  return run_timing_benchmark(vecs, cfg, fast, slow, "finite-sum",
                              "one-series");
}

namespace {

struct SuiteResult {
  bool ok = true;
  std::string detail;

  void fail(const std::string& d) {
    if (ok) {
      ok = false;
      detail = d;
    }
  }
};

double rel_diff(double a, double b) {
  double denom = std::max(std::abs(a), std::abs(b));
  if (denom == 0.0) return 0.0;
  return std::abs(a - b) / denom;
}

std::string point3(double a, double b, double c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

using KummerFn =
    std::function<double(double, double, double, const SeriesControl&)>;

SuiteResult check_pochhammer_laws(RngStream& rng, int probes) {
  SuiteResult res;
  if (pochhammer(0.0, 0) != 1.0) res.fail("(0)_0 != 1");
  if (pochhammer(0.0, 3) != 0.0) res.fail("(0)_3 != 0");
  if (pochhammer(2.5, 0) != 1.0) res.fail("(a)_0 != 1");
  for (int i = 0; i < probes && res.ok; ++i) {
    double a = rng.uniform_open() * 8.0;
    int l = static_cast<int>(rng.uniform01() * 10.0);
    int m = static_cast<int>(rng.uniform01() * 10.0);
    double split = pochhammer(a, l) * pochhammer(a + l, m);
    if (rel_diff(split, pochhammer(a, l + m)) > 1e-12) {
      res.fail("split law at " + point3(a, l, m));
    }
    double ratio = pochhammer(a, l + 1) / pochhammer(a, l);
    if (rel_diff(ratio, a + l) > 1e-12) {
      res.fail("ratio law at " + point3(a, l, 0));
    }
  }
  return res;
}

SuiteResult check_vandermonde(RngStream& rng, int probes) {
  SuiteResult res;
  for (int i = 0; i < probes && res.ok; ++i) {
    double a = rng.uniform_open() * 10.0;
    double b = rng.uniform_open() * 10.0;
    int n = static_cast<int>(rng.uniform01() * 12.0);
    if (rel_diff(poch_binomial_sum(a, b, n), pochhammer(a + b, n)) > 1e-11) {
      res.fail("vandermonde at " + point3(a, b, n));
    }
  }
  return res;
}

SuiteResult check_derivative_expansion(RngStream& rng, int probes) {
  SuiteResult res;
  for (int i = 0; i < probes && res.ok; ++i) {
    double a = rng.uniform_open() * 10.0;
    double b = rng.uniform_open() * 10.0;
    int l = static_cast<int>(rng.uniform01() * 12.0);
    if (rel_diff(poch_binomial_expansion(a, b, l), pochhammer(a + b, l)) >
        1e-11) {
      res.fail("derivative expansion at " + point3(a, b, l));
    }
  }
  return res;
}

SuiteResult check_stirling_tables() {
  SuiteResult res;
  if (stirling_second(4, 2) != 7) res.fail("S(4,2) != 7");
  if (stirling_first_unsigned(4, 2) != 11) res.fail("|s(4,2)| != 11");
  // m^r = sum_j S(r,j) * m (m-1) ... (m-j+1), exactly in 128-bit integers
  for (int r = 0; r <= 12 && res.ok; ++r) {
    for (uint128 m = 0; m <= 20 && res.ok; ++m) {
      uint128 lhs = 1;
      for (int t = 0; t < r; ++t) lhs = checked_mul(lhs, m);
      uint128 rhs = 0;
      for (int j = 0; j <= r; ++j) {
        uint128 falling = 1;
        if (static_cast<uint128>(j) > m) {
          falling = 0;
        } else {
          for (int t = 0; t < j; ++t) {
            falling = checked_mul(falling, m - static_cast<uint128>(t));
          }
        }
        rhs = checked_add(rhs, checked_mul(stirling_second(r, j), falling));
      }
      if (lhs != rhs) {
        res.fail("second-kind duality at r=" + std::to_string(r));
      }
    }
  }
  // coefficients of (a)_r are the unsigned first-kind numbers
  for (int r = 0; r <= 20 && res.ok; ++r) {
    IntPolynomial p = rising_poly(r);
    for (int i = 0; i <= r; ++i) {
      if (p.coeff(i) != stirling_first_unsigned(r, i)) {
        res.fail("rising coeff mismatch at r=" + std::to_string(r));
      }
    }
    // and the polynomial reproduces the rising product exactly
    for (uint128 m = 1; m <= 10; ++m) {
      uint128 prod = 1;
      for (int t = 0; t < r; ++t) {
        prod = checked_mul(prod, m + static_cast<uint128>(t));
      }
      if (p.eval_exact(m) != prod) {
        res.fail("rising eval mismatch at r=" + std::to_string(r));
      }
    }
  }
  return res;
}

SuiteResult check_kummer_basics(const SeriesControl& ctrl) {
  SuiteResult res;
  if (rel_diff(kummer_1f1(1.3, 2.4, 0.0, ctrl), 1.0) != 0.0) {
    res.fail("1F1(a;b;0) != 1");
  }
  if (rel_diff(kummer_1f1(0.7, 0.7, 1.0, ctrl), std::exp(1.0)) > 1e-14) {
    res.fail("1F1(a;a;1) != e");
  }
  for (double x : {0.5, 5.0, 50.0, 400.0}) {
    double plain = kummer_1f1(1.5, 4.0, x, ctrl);
    double scaled = kummer_1f1_scaled(1.5, 4.0, x, ctrl);
    if (rel_diff(plain, scaled * std::exp(x)) > 1e-12) {
      res.fail("scaled/plain mismatch at x=" + std::to_string(x));
    }
  }
  double prev = 0.0;
  for (double x : {0.0, 0.1, 1.0, 10.0, 100.0, 600.0, 800.0, 1200.0}) {
    double v = kummer_1f1(2.0, 5.0, x, ctrl);
    if (v < prev) res.fail("1F1 not monotone at x=" + std::to_string(x));
    prev = v;
  }
  return res;
}

SuiteResult check_kummer_recurrences(const SeriesControl& ctrl,
                                     const KummerFn& kummer, bool wide) {
  SuiteResult res;
  std::vector<double> xs{0.1, 1.0, 10.0, 50.0};
  if (wide) xs.push_back(200.0);
  for (double a : {0.5, 1.0, 2.5, 7.0}) {
    for (double delta : {0.5, 1.0, 3.0}) {
      double b = a + delta;
      for (double x : xs) {
        double f = kummer(a, b, x, ctrl);
        double f_am = kummer(a - 1.0, b, x, ctrl);
        double f_ap = kummer(a + 1.0, b, x, ctrl);
        double f_bp = kummer(a, b + 1.0, x, ctrl);
        bool b_down_ok =
            !(b - 1.0 <= 0.0 && b - 1.0 == std::floor(b - 1.0));
        double f_bm = b_down_ok ? kummer(a, b - 1.0, x, ctrl) : 0.0;

        auto residual = [](std::initializer_list<double> terms) {
          double sum = 0.0;
          double largest = 0.0;
          for (double t : terms) {
            sum += t;
            largest = std::max(largest, std::abs(t));
          }
          return largest == 0.0 ? 0.0 : std::abs(sum) / largest;
        };

        double r0 = residual(
            {(b - a) * f_am, (2.0 * a - b + x) * f, -a * f_ap});
        double r2 = residual(
            {b * (a + x) * f, x * (a - b) * f_bp, -a * b * f_ap});
        double worst = std::max(r0, r2);
        if (b_down_ok) {
          double r1 = residual({b * (b - 1.0) * f_bm, b * (1.0 - b - x) * f,
                                x * (b - a) * f_bp});
          double r3 = residual({(a - 1.0 + x) * f, (b - a) * f_am,
                                (1.0 - b) * f_bm});
          worst = std::max({worst, r1, r3});
        }
        if (worst > 1e-10) {
          res.fail("recurrence residual " + std::to_string(worst) + " at " +
                   point3(a, b, x));
        }
      }
    }
  }
  return res;
}

SuiteResult check_psi2_collapse(const SeriesControl& ctrl) {
  SuiteResult res;
  for (double x : {0.3, 2.0, 15.0}) {
    double along_x = humbert_psi2(1.8, 1.2, 3.4, x, 0.0, ctrl);
    if (rel_diff(along_x, kummer_1f1(1.8, 1.2, x, ctrl)) > 1e-12) {
      res.fail("psi2 y=0 collapse at x=" + std::to_string(x));
    }
    double along_y = humbert_psi2(1.8, 1.2, 3.4, 0.0, x, ctrl);
    if (rel_diff(along_y, kummer_1f1(1.8, 3.4, x, ctrl)) > 1e-12) {
      res.fail("psi2 x=0 collapse at y=" + std::to_string(x));
    }
  }
  return res;
}

SuiteResult check_chisq_cross(bool wide) {
  SuiteResult res;
  std::vector<double> gs{0.5, 2.0, 4.5, 9.0};
  std::vector<double> ls{0.0, 0.5, 4.0, 20.0};
  if (wide) {
    gs.push_back(30.0);
    ls.push_back(100.0);
  }
  int max_r = wide ? 12 : 8;
  for (double g : gs) {
    for (double l : ls) {
      NcChiSqParams p(g, l);
      for (int r = 1; r <= max_r && res.ok; ++r) {
        double classic = ncchisq_moment_classic(p, r).value;
        double stirling = ncchisq_moment_stirling(p, r).value;
        if (rel_diff(classic, stirling) > 1e-12) {
          res.fail("classic/stirling split at " + point3(g, l, r));
        }
        if (r <= 4) {
          double closed = ncchisq_moment_closed(p, r).value;
          if (rel_diff(classic, closed) > 1e-13) {
            res.fail("classic/closed split at " + point3(g, l, r));
          }
        }
      }
    }
  }
  for (double l : ls) {
    NcChiSqParams p(0.0, l);
    for (int r = 1; r <= 4 && res.ok; ++r) {
      double zero_df = ncchisq_moment_zero_df(p, r).value;
      double closed = ncchisq_moment_closed(p, r).value;
      if (rel_diff(zero_df, closed) > 1e-13) {
        res.fail("zero-df/closed split at " + point3(0.0, l, r));
      }
    }
  }
  return res;
}

SuiteResult check_dncb_cross(const SeriesControl& ctrl, bool wide) {
  SuiteResult res;
  std::vector<DNcBParams> vecs{{0.5, 0.5, 4.0, 4.0},
                               {0.5, 0.5, 4.0, 7.0},
                               {1.0, 1.0, 2.0, 4.0},
                               {2.0, 5.0, 0.5, 7.0}};
  if (wide) {
    vecs.push_back({3.5, 1.25, 12.0, 0.25});
    vecs.push_back({0.75, 4.0, 0.0, 9.0});
  }
  int max_r = wide ? 8 : 6;
  for (const DNcBParams& p : vecs) {
    for (int r = 1; r <= max_r && res.ok; ++r) {
      double finite = dncb_moment_sum(p, r, ctrl).value;
      double one = dncb_moment_one_series(p, r, ctrl).value;
      double dbl = dncb_moment_double_series(p, r, ctrl).value;
      if (rel_diff(finite, one) > 1e-11) {
        res.fail("finite/one-series split at r=" + std::to_string(r));
      }
      if (rel_diff(finite, dbl) > 1e-9) {
        res.fail("finite/double-series split at r=" + std::to_string(r));
      }
      if (!(finite > 0.0 && finite <= 1.0)) {
        res.fail("moment outside (0,1] at r=" + std::to_string(r));
      }
      if (r > 1) {
        double prev = dncb_moment_sum(p, r - 1, ctrl).value;
        if (finite > prev) {
          res.fail("moments not decreasing at r=" + std::to_string(r));
        }
      }
    }
  }
  return res;
}

SuiteResult check_2f2_reduction(RngStream& rng, const SeriesControl& ctrl,
                                int probes) {
  SuiteResult res;
  for (int i = 0; i < probes && res.ok; ++i) {
    double a = rng.uniform_open() * 6.0;
    double b = a + rng.uniform_open() * 6.0 + 1e-3;
    int n = 1 + static_cast<int>(rng.uniform01() * 8.0);
    double x = rng.uniform_open() * 25.0;
    auto [lhs, rhs] = hyp_2f2_reduction_sides(a, b, n, x, ctrl);
    if (rel_diff(lhs, rhs) > 1e-10) {
      res.fail("2F2 reduction at " + point3(a, b, x));
    }
  }
  return res;
}

SuiteResult check_mean_identities(RngStream& rng, const SeriesControl& ctrl,
                                  int probes) {
  SuiteResult res;
  for (int i = 0; i < probes && res.ok; ++i) {
    DNcBParams p(0.2 + rng.uniform_open() * 5.0,
                 0.2 + rng.uniform_open() * 5.0, rng.uniform01() * 8.0,
                 0.01 + rng.uniform01() * 8.0);
    auto [lhs, rhs] = dncb_mean_relationship_sides(p, ctrl);
    if (rel_diff(lhs, rhs) > 1e-11) res.fail("mean relationship");
    double reduced = dncb_mean_reduced(p, ctrl);
    if (rel_diff(reduced, lhs) > 1e-11) res.fail("reduced mean");
    double m2 = dncb_second_moment_reduced(p, ctrl);
    double m2_sum = dncb_moment_sum(p, 2, ctrl).value;
    if (rel_diff(m2, m2_sum) > 1e-11) res.fail("reduced second moment");
    double w = dncb_mean_mixing_weight(p, ctrl);
    if (!(w > 0.0 && w < 1.0)) res.fail("mixing weight outside (0,1)");
    double beta_mean = p.alpha1 / p.alpha_plus();
    double lo = std::min(beta_mean, p.theta1());
    double hi = std::max(beta_mean, p.theta1());
    if (reduced < lo - 1e-12 || reduced > hi + 1e-12) {
      res.fail("mean outside its convex bounds");
    }
  }
  return res;
}

SuiteResult check_special_cases(const SeriesControl& ctrl) {
  SuiteResult res;
  DNcBParams central(1.5, 2.5, 0.0, 0.0);
  for (int r = 1; r <= 4; ++r) {
    if (rel_diff(dncb_moment_sum(central, r, ctrl).value,
                 beta_moment(1.5, 2.5, r)) > 1e-14) {
      res.fail("central reduction at r=" + std::to_string(r));
    }
  }
  for (int r = 1; r <= 4; ++r) {
    double via_dncb = dncb_moment_sum(DNcBParams(2.0, 3.0, 1.5, 0.0), r, ctrl).value;
    double via_ncb1 = ncb1_moment(2.0, 3.0, 1.5, r, ctrl).value;
    double via_def = ncb1_moment_definitional(2.0, 3.0, 1.5, r, ctrl).value;
    if (rel_diff(via_dncb, via_ncb1) != 0.0) {
      res.fail("ncb1 finite-sum split at r=" + std::to_string(r));
    }
    if (rel_diff(via_ncb1, via_def) > 1e-12) {
      res.fail("ncb1 definitional split at r=" + std::to_string(r));
    }
    double via_sum = dncb_moment_sum(DNcBParams(2.0, 3.0, 0.0, 1.5), r, ctrl).value;
    double via_ncb2 = ncb2_moment(2.0, 3.0, 1.5, r, ctrl).value;
    if (rel_diff(via_sum, via_ncb2) > 1e-13) {
      res.fail("ncb2 split at r=" + std::to_string(r));
    }
  }
  return res;
}

}  // namespace

bool run_selfcheck(std::ostream& out, const SelfcheckOptions& opts) {
  SeriesControl ctrl;
  int probes = opts.wide ? 200 : 50;
  RngStream rng(0xD1CEB00CULL, 0);
  KummerFn kummer = [](double a, double b, double x, const SeriesControl& c) {
    return kummer_1f1(a, b, x, c);
  };
  if (opts.kummer_override) kummer = opts.kummer_override;

  struct Suite {
    const char* name;
    SuiteResult result;
  };
  std::vector<Suite> suites;
  suites.push_back({"pochhammer-laws", check_pochhammer_laws(rng, probes)});
  suites.push_back({"pochhammer-vandermonde", check_vandermonde(rng, probes)});
  suites.push_back(
      {"pochhammer-derivative-expansion", check_derivative_expansion(rng, probes)});
  suites.push_back({"stirling-tables", check_stirling_tables()});
  suites.push_back({"kummer-basics", check_kummer_basics(ctrl)});
  suites.push_back(
      {"kummer-recurrences", check_kummer_recurrences(ctrl, kummer, opts.wide)});
  suites.push_back({"psi2-axis-collapse", check_psi2_collapse(ctrl)});
  suites.push_back({"chisq-cross-formulas", check_chisq_cross(opts.wide)});
  suites.push_back({"dncb-cross-formulas", check_dncb_cross(ctrl, opts.wide)});
  suites.push_back(
      {"hyp2f2-reduction", check_2f2_reduction(rng, ctrl, probes)});
  suites.push_back(
      {"mean-identities", check_mean_identities(rng, ctrl, probes)});
  suites.push_back({"special-cases", check_special_cases(ctrl)});

  bool all_ok = true;
  for (const Suite& s : suites) {
    if (s.result.ok) {
      out << "ok   " << s.name << "\n";
    } else {
      out << "FAIL " << s.name << ": " << s.result.detail << "\n";
      all_ok = false;
    }
  }
  return all_ok;
}

}  // namespace ncbeta
