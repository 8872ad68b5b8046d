#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ncbeta/moments.hpp"
#include "ncbeta/series_control.hpp"

namespace ncbeta {

// Standard normal CDF through erfc, accurate in both tails.
double normal_cdf(double z);

// r-th raw sample moment (1/n) sum x_i^r.  Raises EmptySample on an empty
// span and OrderOutOfRange outside [1, kMaxMomentOrder].
double descriptive_moment(std::span<const double> values, int r);

struct ZTestResult {
  double z = 0.0;
  double p = 0.0;
};

// Two-tailed one-sample Z test of H0: mean = mu0, with the sample standard
// deviation (n - 1 denominator) as the scale.  Raises ZeroVariance when the
// sample does not vary and EmptySample below two observations.
ZTestResult z_test_two_tailed(std::span<const double> values, double mu0);

// One-tailed two-sample Z test of H0: mean(a) - mean(b) >= 0 against the
// alternative mean(a) < mean(b), with unpooled standard errors.  Small p
// means a is convincingly smaller.
ZTestResult z_test_one_tailed_less(std::span<const double> a,
                                   std::span<const double> b);

struct ValidationConfig {
  int n_series = 30;
  int draws_per_series = 10000;
  std::vector<int> orders{1, 2, 3, 4};
  std::uint64_t seed = 20260815;
  SeriesControl series;
  // Verification hook: shifts every null moment by this relative amount so a
  // test can confirm the harness rejects a wrong theoretical value.
  double mu0_relative_bias = 0.0;
};

struct ValidationRow {
  std::vector<double> params;  // (g, lambda) or (a1, a2, l1, l2)
  int order = 0;
  double theoretical = 0.0;
  double sample_mean = 0.0;
  double sample_sd = 0.0;
  double z = 0.0;
  double p = 0.0;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool all_above(double alpha) const;
};

// Simulation check of the moment formulas: for each parameter vector,
// n_series independent series of draws_per_series draws each, the r-th
// descriptive moment per series, and a two-tailed Z test of those n_series
// values against the formula value.  Stream ids are a fixed function of the
// (vector, series) position, so a given seed always reproduces the report.
ValidationReport run_moment_validation(const std::vector<NcChiSqParams>& vecs,
                                       const ValidationConfig& cfg);
ValidationReport run_moment_validation(const std::vector<DNcBParams>& vecs,
                                       const ValidationConfig& cfg);

// One timed arm of the benchmark: a moment formula under test.
using MomentFn =
    std::function<double(const DNcBParams&, int, const SeriesControl&)>;

struct TimingRow {
  std::vector<double> params;
  std::string label;        // which arm this row times
  double mean_seconds = 0.0;
  double sd_seconds = 0.0;
  double z = 0.0;           // shared across the vector's two rows
  double p = 0.0;
  double speedup = 0.0;     // slow arm mean over fast arm mean
  double max_value_rel_diff = 0.0;  // agreement between the arms' values
};

struct TimingReport {
  std::vector<TimingRow> rows;  // two per parameter vector, fast arm first
};

// Repeated-measurement timing comparison of two moment formulas over the
// given orders.  Each repetition times one full batch (all orders) per arm,
// arms interleaved, after a few unmeasured warmup batches.  The Z test asks
// whether the first arm is at least as slow as the second (small p: first
// arm convincingly faster).
TimingReport run_timing_benchmark(const std::vector<DNcBParams>& vecs,
                                  const ValidationConfig& cfg, MomentFn fast,
                                  MomentFn slow, const std::string& fast_label,
                                  const std::string& slow_label);

// The default arms: the finite-sum formula against the one-series formula.
TimingReport run_timing_benchmark(const std::vector<DNcBParams>& vecs,
                                  const ValidationConfig& cfg);

struct SelfcheckOptions {
  bool wide = false;  // denser grids, more random probes
  // Verification hook: replaces the Kummer evaluator inside the recurrence
  // suite so a fault there is provably detected.
  std::function<double(double, double, double, const SeriesControl&)>
      kummer_override;
};

// Runs every internal consistency suite, printing one line per suite to out.
// Returns true only if every suite passes.
bool run_selfcheck(std::ostream& out, const SelfcheckOptions& opts = {});

}  // namespace ncbeta
