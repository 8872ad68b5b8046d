// Acceptance gate: one pass/fail line per criterion, each with its tolerance
// pinned below.  Exits zero only if every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncbeta/densities.hpp"
#include "ncbeta/moments.hpp"
#include "ncbeta/rng.hpp"
#include "ncbeta/special_functions.hpp"
#include "ncbeta/validation.hpp"
#include "support/oracles.hpp"

using namespace ncbeta;

namespace {

constexpr double kChisqTableRelTol = 1e-12;
constexpr double kDncbTableAbsTol = 5e-6;  // reference values carry 5 decimals
constexpr double kOneSeriesRelTol = 1e-11;
constexpr double kDoubleSeriesRelTol = 1e-9;
constexpr int kReductionProbes = 200;
constexpr double kReductionRelTol = 1e-10;
constexpr double kValidationAlpha = 0.01;
constexpr std::uint64_t kValidationSeed = 20260815;
constexpr int kValidationSeries = 30;
constexpr int kValidationDraws = 10000;
constexpr int kDensityGridPoints = 41;
constexpr double kDensitySplitRelTol = 1e-9;
constexpr double kDensityMassAbsTol = 1e-7;
constexpr int kBenchRepetitions = 30;
constexpr double kBenchAlpha = 0.01;
constexpr double kBenchValueRelTol = 1e-9;
constexpr int kIdentityProbes = 500;
constexpr double kIdentityRelTol = 1e-11;
constexpr double kRecurrenceResidualTol = 1e-10;

const std::vector<NcChiSqParams> kChisqVectors{
    {2.0, 4.0}, {4.5, 2.0}, {3.0, 1.5}, {6.0, 3.5}};
const double kChisqTable[4][4] = {
    {6.0, 56.0, 688.0, 10368.0},
    {6.5, 59.25, 690.125, 9745.5625},
    {4.5, 32.25, 313.125, 3812.0625},
    {9.5, 116.25, 1730.375, 30228.0625},
};

const std::vector<DNcBParams> kDncbVectors{{0.5, 0.5, 4.0, 4.0},
                                           {0.5, 0.5, 4.0, 7.0},
                                           {1.0, 1.0, 2.0, 4.0},
                                           {2.0, 5.0, 0.5, 7.0}};
const double kDncbTable[4][4] = {
    {0.5, 0.33013, 0.24519, 0.19516},
    {0.38833, 0.21345, 0.13759, 0.09788},
    {0.40925, 0.23211, 0.15356, 0.11134},
    {0.21392, 0.06298, 0.02281, 0.00957},
};

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ------------------------------------------------------------ criterion 1

Outcome chisq_table_reproduction() {
  Outcome out;
  double worst = 0.0;
  for (size_t vi = 0; vi < kChisqVectors.size(); ++vi) {
    const NcChiSqParams& p = kChisqVectors[vi];
    for (int r = 1; r <= 4; ++r) {
      double expected = kChisqTable[vi][r - 1];
      for (double got : {ncchisq_moment_classic(p, r).value,
                         ncchisq_moment_stirling(p, r).value,
                         ncchisq_moment_closed(p, r).value}) {
        double err = rel_diff(got, expected);
        worst = std::max(worst, err);
        if (err > kChisqTableRelTol) {
          out.fail("g=" + fmt(p.g) + " r=" + std::to_string(r) + " off by " +
                   fmt(err));
        }
      }
    }
  }
  if (out.ok) out.detail = "48 comparisons, max rel err " + fmt(worst);
  return out;
}

// ------------------------------------------------------------ criterion 2

Outcome dncb_table_and_route_agreement() {
  Outcome out;
  double worst_table = 0.0;
  double worst_route = 0.0;
  for (size_t vi = 0; vi < kDncbVectors.size(); ++vi) {
    const DNcBParams& p = kDncbVectors[vi];
    for (int r = 1; r <= 4; ++r) {
      double dev = std::abs(dncb_moment_sum(p, r).value - kDncbTable[vi][r - 1]);
      worst_table = std::max(worst_table, dev);
      if (dev > kDncbTableAbsTol) {
        out.fail("table value at vector " + std::to_string(vi + 1) +
                 " r=" + std::to_string(r) + " off by " + fmt(dev));
      }
    }
    for (int r = 1; r <= 6; ++r) {
      double finite = dncb_moment_sum(p, r).value;
      double one = dncb_moment_one_series(p, r).value;
      double dbl = dncb_moment_double_series(p, r).value;
      double split_one = rel_diff(finite, one);
      double split_dbl = rel_diff(finite, dbl);
      worst_route = std::max({worst_route, split_one, split_dbl});
      if (split_one > kOneSeriesRelTol || split_dbl > kDoubleSeriesRelTol) {
        out.fail("formula routes split at vector " + std::to_string(vi + 1) +
                 " r=" + std::to_string(r));
      }
    }
  }
  if (out.ok) {
    out.detail = "max table dev " + fmt(worst_table) + ", max route split " +
                 fmt(worst_route);
  }
  return out;
}

// ------------------------------------------------------------ criterion 3

Outcome reduction_identity() {
  Outcome out;
  std::mt19937_64 gen(0xACCE5501);
  std::uniform_real_distribution<double> ad(0.05, 4.0);
  std::uniform_real_distribution<double> gap(0.05, 5.0);
  std::uniform_int_distribution<int> nd(0, 8);
  std::uniform_real_distribution<double> xd(0.01, 50.0);
  double worst = 0.0;
  for (int probe = 0; probe < kReductionProbes; ++probe) {
    double a = ad(gen);
    double b = a + gap(gen);
    int n = nd(gen);
    double x = xd(gen);
    auto [lhs, rhs] = hyp_2f2_reduction_sides(a, b, n, x);
    double err = rel_diff(lhs, rhs);
    worst = std::max(worst, err);
    if (err > kReductionRelTol) {
      out.fail("probe a=" + fmt(a) + " b=" + fmt(b) + " n=" +
               std::to_string(n) + " x=" + fmt(x) + " err " + fmt(err));
    }
  }
  if (out.ok) {
    out.detail = std::to_string(kReductionProbes) +
                 " random probes, max rel err " + fmt(worst);
  }
  return out;
}

// ------------------------------------------------------------ criterion 4

Outcome simulation_validation() {
  Outcome out;
  ValidationConfig cfg;
  cfg.n_series = kValidationSeries;
  cfg.draws_per_series = kValidationDraws;
  cfg.seed = kValidationSeed;

  double min_p = 1.0;
  int rows = 0;
  for (const ValidationReport& report :
       {run_moment_validation(kChisqVectors, cfg),
        run_moment_validation(kDncbVectors, cfg)}) {
    for (const ValidationRow& row : report.rows) {
      ++rows;
      min_p = std::min(min_p, row.p);
      if (row.p <= kValidationAlpha) {
        out.fail("order " + std::to_string(row.order) + " p=" + fmt(row.p));
      }
    }
  }
  if (rows != 32) out.fail("expected 32 rows, saw " + std::to_string(rows));
  if (out.ok) {
    out.detail = "all 32 p-values above " + fmt(kValidationAlpha) + ", min p " +
                 fmt(min_p);
  }
  return out;
}

// ------------------------------------------------------------ criterion 5

Outcome density_representations() {
  Outcome out;
  double worst_split = 0.0;
  double worst_mass = 0.0;
  for (const DNcBParams& p : kDncbVectors) {
    for (int i = 1; i <= kDensityGridPoints; ++i) {
      double x = static_cast<double>(i) / (kDensityGridPoints + 1.0);
      double split =
          rel_diff(dncb_density_mixture(x, p), dncb_density_perturbation(x, p));
      worst_split = std::max(worst_split, split);
      if (split > kDensitySplitRelTol) {
        out.fail("representations split at x=" + fmt(x));
      }
    }
    double mass = oracles::integrate01(
        [&](double x, double) { return dncb_density_mixture(x, p); });
    double dev = std::abs(mass - 1.0);
    worst_mass = std::max(worst_mass, dev);
    if (dev > kDensityMassAbsTol) {
      out.fail("mass " + fmt(mass) + " at vector a1=" + fmt(p.alpha1));
    }
  }
  if (out.ok) {
    out.detail = "max split " + fmt(worst_split) + ", max mass dev " +
                 fmt(worst_mass);
  }
  return out;
}

// ------------------------------------------------------------ criterion 6

Outcome timing_comparison() {
  Outcome out;
  ValidationConfig cfg;
  cfg.n_series = kBenchRepetitions;
  TimingReport report = run_timing_benchmark(kDncbVectors, cfg);
  double lo_speedup = 1e300;
  double hi_speedup = 0.0;
  for (size_t i = 0; i + 1 < report.rows.size(); i += 2) {
    const TimingRow& fast = report.rows[i];
    const TimingRow& slow = report.rows[i + 1];
    lo_speedup = std::min(lo_speedup, fast.speedup);
    hi_speedup = std::max(hi_speedup, fast.speedup);
    if (fast.mean_seconds >= slow.mean_seconds) {
      out.fail("arm order inverted at vector " + std::to_string(i / 2 + 1));
    }
    if (fast.p >= kBenchAlpha) {
      out.fail("p=" + fmt(fast.p) + " at vector " + std::to_string(i / 2 + 1));
    }
    if (fast.speedup <= 1.0) {
      out.fail("speedup " + fmt(fast.speedup) + " at vector " +
               std::to_string(i / 2 + 1));
    }
    if (fast.max_value_rel_diff > kBenchValueRelTol) {
      out.fail("arm values split by " + fmt(fast.max_value_rel_diff));
    }
  }
  if (out.ok) {
    out.detail = "finite sum faster on all vectors, p < " + fmt(kBenchAlpha) +
                 ", speedups " + fmt(lo_speedup) + "x to " + fmt(hi_speedup) +
                 "x";
  }
  return out;
}

// ------------------------------------------------------------ criterion 7

Outcome combinatorial_batch() {
  Outcome out;
  std::mt19937_64 gen(0xACCE5507);
  std::uniform_real_distribution<double> pd(0.05, 8.0);
  std::uniform_int_distribution<int> nd(0, 10);
  double worst = 0.0;
  for (int probe = 0; probe < kIdentityProbes; ++probe) {
    double a = pd(gen);
    double b = pd(gen);
    int n = nd(gen);
    double e1 = rel_diff(poch_binomial_sum(a, b, n), pochhammer(a + b, n));
    double e2 = rel_diff(poch_binomial_expansion(a, b, n), pochhammer(a + b, n));
    worst = std::max({worst, e1, e2});
    if (e1 > kIdentityRelTol || e2 > kIdentityRelTol) {
      out.fail("rising-factorial identity probe a=" + fmt(a) + " b=" + fmt(b));
    }
  }

  for (int r = 1; r <= 12 && out.ok; ++r) {
    for (int m = 0; m <= 20 && out.ok; ++m) {
      uint128 power = 1;
      for (int t = 0; t < r; ++t) power = checked_mul(power, m);
      uint128 sum = 0;
      for (int i = 0; i <= r && i <= m; ++i) {
        uint128 falling = 1;
        for (int t = 0; t < i; ++t) {
          falling = checked_mul(falling, static_cast<uint128>(m - t));
        }
        sum = checked_add(sum, checked_mul(stirling_second(r, i), falling));
      }
      if (sum != power) {
        out.fail("stirling duality broke at r=" + std::to_string(r) +
                 " m=" + std::to_string(m));
      }
    }
  }

  const oracles::Fraction x(5, 2);
  const oracles::Fraction y(1, 3);
  for (int alpha = 0; alpha <= 10 && out.ok; ++alpha) {
    for (int n = 0; n <= 10 && out.ok; ++n) {
      auto [lhs, rhs] = oracles::ljunggren_sides(alpha, n, x, y);
      if (!(lhs == rhs)) {
        out.fail("rational convolution identity broke at alpha=" +
                 std::to_string(alpha) + " n=" + std::to_string(n));
      }
    }
  }

  double worst_res = 0.0;
  for (double a : {0.5, 2.0, 2.5, 7.0}) {
    for (double b : {1.5, 3.0, 8.5}) {
      for (double xx : {0.1, 1.0, 10.0, 100.0}) {
        for (double res : kummer_recurrence_residuals(a, b, xx)) {
          if (std::isnan(res)) continue;
          worst_res = std::max(worst_res, res);
          if (res > kRecurrenceResidualTol) {
            out.fail("recurrence residual " + fmt(res) + " at a=" + fmt(a) +
                     " b=" + fmt(b) + " x=" + fmt(xx));
          }
        }
      }
    }
  }
  if (out.ok) {
    out.detail = "identities exact or within " + fmt(kIdentityRelTol) +
                 ", max residual " + fmt(worst_res);
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"noncentral chi-squared moment table reproduced", chisq_table_reproduction},
      {"doubly noncentral beta moment table and formula routes", dncb_table_and_route_agreement},
      {"series reduction identity on random probes", reduction_identity},
      {"simulation validation of every moment formula", simulation_validation},
      {"density representations agree and integrate to one", density_representations},
      {"finite sum outruns the one-series formula", timing_comparison},
      {"combinatorial identity batch", combinatorial_batch},
  };

  int passed = 0;
  int index = 0;
  const int total = static_cast<int>(sizeof(criteria) / sizeof(criteria[0]));
  for (const Criterion& c : criteria) {
    ++index;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (out.ok) ++passed;
    std::printf("[%s] criterion %d/%d: %s (%s) [%.2f s]\n",
                out.ok ? "PASS" : "FAIL", index, total, c.label,
                out.detail.c_str(), secs);
  }
  std::printf("RESULT: %d/%d criteria passed\n", passed, total);
  return passed == total ? 0 : 1;
}
