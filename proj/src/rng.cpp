#include "ncbeta/rng.hpp"

#include <cmath>

#include "ncbeta/errors.hpp"

namespace ncbeta {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t c1 = seed;
  std::uint64_t c2 = stream_id ^ 0xA3EC4E93D0D84532ULL;
  bool all_zero = true;
  for (auto& word : s_) {
    word = splitmix64(c1) ^ splitmix64(c2);
    all_zero = all_zero && word == 0;
  }
  // xoshiro must not start from the all-zero state
  if (all_zero) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_normal(RngStream& rng) {
  double u1 = rng.uniform_open();
  double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double sample_gamma(double shape, RngStream& rng) {
  if (!(shape > 0.0)) {
    throw InvalidParameter("sample_gamma: shape must be > 0");
  }
  if (shape < 1.0) {
    double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(rng.uniform_open(), 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = sample_normal(rng);
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = rng.uniform_open();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_chisq(double df, RngStream& rng) {
  if (df < 0.0) throw InvalidParameter("sample_chisq: df must be >= 0");
  if (df == 0.0) return 0.0;
  return 2.0 * sample_gamma(df / 2.0, rng);
}

double sample_beta(double a, double b, RngStream& rng) {
  if (a < 0.0 || b < 0.0) {
    throw InvalidParameter("sample_beta: shapes must be >= 0");
  }
  if (a == 0.0 && b == 0.0) {
    throw InvalidParameter("sample_beta: both shapes zero");
  }
  if (a == 0.0) return 0.0;
  if (b == 0.0) return 1.0;
  double g1 = sample_gamma(a, rng);
  double g2 = sample_gamma(b, rng);
  return g1 / (g1 + g2);
}

namespace {

// Knuth's method; only sound while exp(-mean) stays normal, so callers split
// large means into chunks.
long poisson_small(double mean, RngStream& rng) {
  double limit = std::exp(-mean);
  long k = 0;
  double product = 1.0;
  do {
    ++k;
    product *= rng.uniform_open();
  } while (product > limit);
  return k - 1;
}

}  // namespace

long sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0)) {
    throw InvalidParameter("sample_poisson: mean must be >= 0");
  }
  if (mean == 0.0) return 0;
  long total = 0;
  // Poisson(m1 + m2) = Poisson(m1) + Poisson(m2) for independent summands
  while (mean > 500.0) {
    total += poisson_small(500.0, rng);
    mean -= 500.0;
  }
  return total + poisson_small(mean, rng);
}

long sample_binomial(long n, double p, RngStream& rng) {
  if (n < 0) throw InvalidParameter("sample_binomial: n must be >= 0");
  if (p < 0.0 || p > 1.0) {
    throw InvalidParameter("sample_binomial: p must be in [0, 1]");
  }
  long count = 0;
  for (long i = 0; i < n; ++i) {
    if (rng.uniform01() < p) ++count;
  }
  return count;
}

double sample_ncchisq_mixture(const NcChiSqParams& p, RngStream& rng) {
  long m = sample_poisson(p.lambda / 2.0, rng);
  return sample_chisq(p.g + 2.0 * static_cast<double>(m), rng);
}

double sample_ncchisq_additive(const NcChiSqParams& p, RngStream& rng) {
  double y = sample_chisq(p.g, rng);
  long m = sample_poisson(p.lambda / 2.0, rng);
  // each noncentral unit contributes a chi2(2), i.e. an Exp(2) variate
  for (long i = 0; i < m; ++i) {
    y += -2.0 * std::log(rng.uniform_open());
  }
  return y;
}

DncbDraw sample_dncb(const DNcBParams& p, RngStream& rng) {
  DncbDraw draw;
  draw.latent.m_plus = sample_poisson(p.lambda_plus() / 2.0, rng);
  draw.latent.i_star =
      p.lambda_plus() > 0.0
          ? sample_binomial(draw.latent.m_plus, p.theta1(), rng)
          : 0;
  double a = p.alpha1 + static_cast<double>(draw.latent.i_star);
  double b = p.alpha2 +
             static_cast<double>(draw.latent.m_plus - draw.latent.i_star);
  draw.x = sample_beta(a, b, rng);
  return draw;
}

}  // namespace ncbeta
