#pragma once

#include <array>
#include <cstdint>

#include "ncbeta/moments.hpp"

namespace ncbeta {

// Counter-free xoshiro256** stream.  The four state words are derived from
// (seed, stream_id) through independent SplitMix64 chains, so distinct
// stream ids give statistically independent sequences for the same seed and
// identical (seed, stream_id) pairs replay the same draws on any platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform01();      // [0, 1), 53-bit resolution
  double uniform_open();   // (0, 1), safe as a log() argument

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> s_;
};

// Standard normal via Box-Muller (two uniforms per draw, no cached spare, so
// the draw count per call is fixed).
double sample_normal(RngStream& rng);

// Unit-scale gamma by Marsaglia-Tsang squeeze for shape >= 1; smaller shapes
// use the boost Gamma(a) = Gamma(a+1) * U^(1/a).  Requires shape > 0.
double sample_gamma(double shape, RngStream& rng);

// Chi-squared with df >= 0 real; df = 0 is the constant 0.
double sample_chisq(double df, RngStream& rng);

// Beta(a, b) as a gamma ratio.  The degenerate boundaries follow the
// convention Beta(a, 0) = point mass at one and Beta(0, b) = point mass at
// zero; both zero is invalid.
double sample_beta(double a, double b, RngStream& rng);

// Poisson by Knuth's product method, split into chunks for large means so
// the running product never underflows.
long sample_poisson(double mean, RngStream& rng);

// Binomial as n Bernoulli trials (n stays small here: it is a Poisson count).
long sample_binomial(long n, double p, RngStream& rng);

// Noncentral chi-squared as a Poisson mixture of central chi-squares:
// M ~ Poisson(lambda/2), then chi2(g + 2M).
double sample_ncchisq_mixture(const NcChiSqParams& p, RngStream& rng);

// Noncentral chi-squared as chi2(g) plus M independent chi2(2) summands.
// Supports g = 0 (the central part vanishes).
double sample_ncchisq_additive(const NcChiSqParams& p, RngStream& rng);

// Latent mixing variables behind one doubly noncentral beta draw.
struct LatentCounts {
  long m_plus = 0;  // total Poisson count at mean (lambda1 + lambda2) / 2
  long i_star = 0;  // thinned share assigned to the numerator
};

struct DncbDraw {
  double x = 0.0;
  LatentCounts latent;
};

// One doubly noncentral beta draw: M+ ~ Poisson(lambda+/2), a binomial split
// of M+ toward the numerator, then a conditional central Beta.
DncbDraw sample_dncb(const DNcBParams& p, RngStream& rng);

}  // namespace ncbeta
