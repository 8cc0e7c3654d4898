#pragma once

// The random model for {n/x}: lattice-uniform variables w_x, their exact
// covariance algebra, central moments of the centered sqrt(n)-truncated sum,
// the gcd/lcm double sum, the model expectation for D(n), and a deterministic
// Monte Carlo sampler.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "divlab/numkernel.hpp"

namespace divlab::stochastic {

// ---------------------------------------------------------------------------
// Deterministic RNG
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// (seed, stream) pair; identical pairs produce identical sample sequences on
/// every platform.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// PCG32 (O'Neill's pcg32 variant: 64-bit LCG state, xorshift-rotate output).
/// Pure integer arithmetic, so sequences are reproducible bit-for-bit across
/// compilers and platforms.
class Pcg32 {
 public:
  Pcg32(std::uint64_t initstate, std::uint64_t initseq) noexcept {
    inc_ = (initseq << 1) | 1u;
    state_ = 0;
    next();
    state_ += initstate;
    next();
  }

  std::uint32_t next() noexcept {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18) ^ old) >> 27);
    const auto rot = static_cast<std::uint32_t>(old >> 59);
    return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31));
  }

  /// Unbiased integer in [0, bound) by threshold rejection.
  std::uint32_t bounded(std::uint32_t bound) noexcept {
    const std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
      const std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

// ---------------------------------------------------------------------------
// Model types
// ---------------------------------------------------------------------------

/// Uniform distribution on {0, 1/x, ..., (x-1)/x}, each point with mass 1/x.
struct LatticeUniform {
  std::uint64_t modulus = 1;

  double mean() const {
    return static_cast<double>(modulus - 1) / (2.0 * static_cast<double>(modulus));
  }
  double variance() const {
    const double m = static_cast<double>(modulus);
    return (m * m - 1.0) / (12.0 * m * m);
  }
  ExactRatio exact_mean() const { return ExactRatio(BigInt(modulus) - 1, BigInt(2) * modulus); }
  ExactRatio exact_variance() const {
    return ExactRatio(BigInt(modulus) * modulus - 1, BigInt(12) * modulus * modulus);
  }
  std::uint64_t support_size() const { return modulus; }
};

// ---------------------------------------------------------------------------
// Covariance of (w_a - 1/2, w_b - 1/2)
// ---------------------------------------------------------------------------

/// Closed form (a,b)/(12[a,b]) - 1/(12ab), equivalently (g^2 - 1)/(12ab).
/// The minus sign matters: at a = b it reduces to the lattice variance
/// (a^2-1)/(12a^2), and cov_period_oracle certifies it pair by pair.
inline ExactRatio cov_analytic(std::uint64_t a, std::uint64_t b) {
  if (a < 1 || b < 1) throw std::invalid_argument("cov_analytic: a, b must be >= 1");
  const std::uint64_t g = gcd(a, b);
  const BigInt l = BigInt(a) / g * b;
  return ExactRatio(BigInt(g), 12 * l) - ExactRatio(BigInt(1), BigInt(12) * a * b);
}

inline constexpr std::uint64_t kPeriodOracleLimit = 1'000'000;

/// Exact covariance by enumeration over one full joint period [a,b]:
///   (1/[a,b]) * sum_{n=1}^{[a,b]} ({n/a} - (a-1)/2a)({n/b} - (b-1)/2b).
/// Denominators are cleared first --
///   ({n/a} - (a-1)/2a)({n/b} - (b-1)/2b) = (2(n mod a)-a+1)(2(n mod b)-b+1)/(4ab)
/// -- so the whole enumeration runs in integer arithmetic.
inline ExactRatio cov_period_oracle(std::uint64_t a, std::uint64_t b) {
  if (a < 1 || b < 1) throw std::invalid_argument("cov_period_oracle: a, b must be >= 1");
  const std::uint64_t period = lcm(a, b);
  if (period > kPeriodOracleLimit) {
    throw std::domain_error("cov_period_oracle: lcm(a, b) = " + std::to_string(period) +
                            " exceeds enumeration limit " + std::to_string(kPeriodOracleLimit));
  }
  const auto ia = static_cast<std::int64_t>(a);
  const auto ib = static_cast<std::int64_t>(b);
  __int128 acc = 0;
  std::int64_t ra = 0;  // n mod a
  std::int64_t rb = 0;  // n mod b
  for (std::uint64_t n = 1; n <= period; ++n) {
    if (++ra == ia) ra = 0;
    if (++rb == ib) rb = 0;
    acc += static_cast<__int128>(2 * ra - ia + 1) * (2 * rb - ib + 1);
  }
  BigInt num;
  // cpp_int has no __int128 constructor on every config; split manually
  const bool neg = acc < 0;
  const unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-acc)
                                    : static_cast<unsigned __int128>(acc);
  num = BigInt(static_cast<std::uint64_t>(mag >> 64));
  num <<= 64;
  num += static_cast<std::uint64_t>(mag);
  if (neg) num = -num;
  return ExactRatio(std::move(num), BigInt(4) * a * b * period);
}

/// Pair (a, b) with its derived data and both covariance routes.
struct CovarianceSpec {
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  std::uint64_t g = 1;
  std::uint64_t l = 1;
  ExactRatio analytic;
  ExactRatio oracle;
};

inline CovarianceSpec make_covariance_spec(std::uint64_t a, std::uint64_t b) {
  CovarianceSpec spec;
  spec.a = a;
  spec.b = b;
  spec.g = gcd(a, b);
  spec.l = lcm(a, b);
  spec.analytic = cov_analytic(a, b);
  spec.oracle = cov_period_oracle(a, b);
  return spec;
}

// ---------------------------------------------------------------------------
// Central moments of sum_{x<=sqrt(n)} (w_x - 1/2)
// ---------------------------------------------------------------------------

/// First central moment: -(1/2) H_{floor(sqrt n)}.
inline double mu1_r(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("mu1_r: n must be >= 1");
  return -harmonic_float(isqrt(n)) / 2.0;
}

inline constexpr std::uint64_t kMu2ExactLimit = 20'000;  // on isqrt(n)

/// Second central moment as the full covariance double sum
/// sum_{x,y<=s} [ (x,y)/(12[x,y]) - 1/(12xy) ], compensated, exploiting
/// symmetry in (x, y).
inline double mu2_r_exact(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("mu2_r_exact: n must be >= 1");
  const std::uint64_t s = isqrt(n);
  if (s > kMu2ExactLimit) {
    throw std::domain_error("mu2_r_exact: isqrt(n) = " + std::to_string(s) +
                            " exceeds limit " + std::to_string(kMu2ExactLimit));
  }
  CompensatedAccumulator acc;
  for (std::uint64_t x = 1; x <= s; ++x) {
    const double xd = static_cast<double>(x);
    acc.add(static_cast<double>(x * x - 1) / (12.0 * xd * xd));
    for (std::uint64_t y = x + 1; y <= s; ++y) {
      const std::uint64_t g = gcd(x, y);
      const double l = static_cast<double>(x / g) * static_cast<double>(y);
      const double cov =
          static_cast<double>(g) / (12.0 * l) - 1.0 / (12.0 * xd * static_cast<double>(y));
      acc.add(2.0 * cov);
    }
  }
  return acc.value();
}

/// Leading-order second moment: floor(sqrt n)/4.
inline double mu2_asymptotic(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("mu2_asymptotic: n must be >= 1");
  return static_cast<double>(isqrt(n)) / 4.0;
}

// ---------------------------------------------------------------------------
// Toth sum T(m) = sum_{a,b<=m} (a,b)/[a,b]
// ---------------------------------------------------------------------------

enum class TothMethod { kBrute, kMobius };

inline constexpr std::uint64_t kTothBruteLimit = 2'000;
inline constexpr std::uint64_t kTothMobiusLimit = 1'000'000;

/// T(m) = sum_{a,b<=m} (a,b)/[a,b].
///
/// kBrute is the direct double loop over (a, b) with (a,b)/[a,b] = g^2/(ab).
///
/// kMobius rests on classing pairs by their gcd. Writing a = g*u, b = g*v
/// with (u, v) = 1 and u, v <= M := floor(m/g), the g^2/(g^2 uv) terms
/// collapse and
///     T(m) = sum_{g<=m} sum_{(u,v)=1; u,v<=M} 1/(uv).
/// The coprimality condition is sieved with sum_{d | k} mu(d) = [k = 1]
/// applied to k = gcd(u, v); grouping u = d*u', v = d*v' gives
///     sum_{(u,v)=1; u,v<=M} 1/(uv) = sum_{d<=M} mu(d)/d^2 * H_{floor(M/d)}^2,
/// which evaluates T(m) in O(m log m) with precomputed harmonic prefixes.
inline double toth_sum(std::uint64_t m, TothMethod method) {
  if (m < 1) throw std::invalid_argument("toth_sum: m must be >= 1");
  if (method == TothMethod::kBrute) {
    if (m > kTothBruteLimit) {
      throw std::domain_error("toth_sum: brute-force m = " + std::to_string(m) +
                              " exceeds limit " + std::to_string(kTothBruteLimit));
    }
    CompensatedAccumulator acc;
    for (std::uint64_t a = 1; a <= m; ++a) {
      for (std::uint64_t b = 1; b <= m; ++b) {
        const std::uint64_t g = gcd(a, b);
        acc.add(static_cast<double>(g * g) /
                (static_cast<double>(a) * static_cast<double>(b)));
      }
    }
    return acc.value();
  }
  if (m > kTothMobiusLimit) {
    throw std::domain_error("toth_sum: mobius m = " + std::to_string(m) + " exceeds limit " +
                            std::to_string(kTothMobiusLimit));
  }
  const MobiusTable mob = mobius_sieve(m);
  std::vector<double> harmonic_prefix(static_cast<std::size_t>(m) + 1, 0.0);
  {
    CompensatedAccumulator h;
    for (std::uint64_t k = 1; k <= m; ++k) {
      h.add(1.0 / static_cast<double>(k));
      harmonic_prefix[static_cast<std::size_t>(k)] = h.value();
    }
  }
  CompensatedAccumulator acc;
  for (std::uint64_t g = 1; g <= m; ++g) {
    const std::uint64_t cap = m / g;
    for (std::uint64_t d = 1; d <= cap; ++d) {
      const int mu = mob.mu(d);
      if (mu == 0) continue;
      const double h = harmonic_prefix[static_cast<std::size_t>(cap / d)];
      acc.add(static_cast<double>(mu) * h * h /
              (static_cast<double>(d) * static_cast<double>(d)));
    }
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Model expectation for D(n)
// ---------------------------------------------------------------------------

/// mu_1[W(n)] = (2n+1) H_{floor(sqrt n)} - floor(sqrt n)^2 - floor(sqrt n) + c.
inline double mu1_w(std::uint64_t n, double c = 1.0 / 12.0) {
  if (n < 1) throw std::invalid_argument("mu1_w: n must be >= 1");
  const std::uint64_t s = isqrt(n);
  const double h = harmonic_float(s);
  const double sd = static_cast<double>(s);
  return (2.0 * static_cast<double>(n) + 1.0) * h - sd * sd - sd + c;
}

/// One Monte Carlo draw of sum_{x<=sqrt(n)} (w_x - (x-1)/(2x)) with the w_x
/// drawn independently as (uniform integer in [0, x))/x.
///
/// The generator state is derived from (seed, n) and the sequence from the
/// stream id, so per-n streams are independent of thread count and schedule.
inline double sample_w_deviation(std::uint64_t n, RngSeed seed) {
  if (n < 1) throw std::invalid_argument("sample_w_deviation: n must be >= 1");
  const std::uint64_t s = isqrt(n);
  if (s >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::domain_error("sample_w_deviation: isqrt(n) exceeds 32-bit draw range");
  }
  Pcg32 rng(splitmix64(seed.seed ^ splitmix64(n)), seed.stream);
  CompensatedAccumulator acc;
  for (std::uint64_t x = 1; x <= s; ++x) {
    const double xd = static_cast<double>(x);
    const double w = static_cast<double>(rng.bounded(static_cast<std::uint32_t>(x))) / xd;
    acc.add(w - static_cast<double>(x - 1) / (2.0 * xd));
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Moment summary
// ---------------------------------------------------------------------------

struct MomentSummary {
  std::uint64_t s = 0;
  double mu1_r = 0.0;        // -(1/2) H_s
  double mu2_r_exact = 0.0;  // covariance double sum
  double mu2_r_asym = 0.0;   // s/4
  double toth = 0.0;         // T(s)
};

inline MomentSummary make_moment_summary(std::uint64_t n) {
  MomentSummary ms;
  ms.s = isqrt(n);
  ms.mu1_r = mu1_r(n);
  ms.mu2_r_exact = mu2_r_exact(n);
  ms.mu2_r_asym = mu2_asymptotic(n);
  ms.toth = toth_sum(ms.s, TothMethod::kMobius);
  return ms;
}

}  // namespace divlab::stochastic
