#pragma once

#include <cmath>

namespace ncbeta {
namespace detail {

// Rescaling bound for running sums: far enough below DBL_MAX that a few more
// growing terms cannot overflow before the next rescale check.
constexpr double kRescaleAt = 1e280;
constexpr double kRescaleFactor = 1e-280;

inline double rescale_log() {
  static const double v = std::log(kRescaleAt);
  return v;
}

// Running sum with a separate exponent offset.  The represented value is
// sum * exp(log_scale); rescaling keeps both the sum and the live recurrence
// term inside the double range.
struct ScaledSum {
  double sum = 0.0;
  double log_scale = 0.0;

  void rescale(double& term) {
    if (std::abs(sum) > kRescaleAt || std::abs(term) > kRescaleAt) {
      sum *= kRescaleFactor;
      term *= kRescaleFactor;
      log_scale += rescale_log();
    }
  }

  // sum * exp(log_scale + log_extra)
  double finish(double log_extra) const {
    if (log_scale == 0.0 && log_extra == 0.0) return sum;
    if (log_scale == 0.0) return sum * std::exp(log_extra);
    if (sum == 0.0) return 0.0;
    double mag = std::log(std::abs(sum)) + log_scale + log_extra;
    double v = std::exp(mag);
    return sum < 0.0 ? -v : v;
  }
};

}  // namespace detail
}  // namespace ncbeta
