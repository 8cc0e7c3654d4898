#pragma once

// Divisor summatory function D(n), the Dirichlet remainder, and the
// fractional-part sums over x <= sqrt(n). All functions are pure.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "divlab/numkernel.hpp"

namespace divlab::divisor {

inline constexpr std::uint64_t kBruteLimit = 1'000'000;
inline constexpr std::uint64_t kHyperbolaLimit = 100'000'000'000'000ULL;  // 1e14
inline constexpr std::uint64_t kExactFracLimit = 10'000;                  // on isqrt(n)

/// D(n) = sum_{x<=n} floor(n/x), term by term. Oracle-scale only.
inline std::uint64_t d_brute(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("d_brute: n must be >= 1");
  if (n > kBruteLimit) {
    throw std::domain_error("d_brute: n = " + std::to_string(n) + " exceeds oracle limit " +
                            std::to_string(kBruteLimit));
  }
  std::uint64_t total = 0;
  for (std::uint64_t x = 1; x <= n; ++x) total += n / x;
  return total;
}

/// D(n) by the hyperbola method: 2*sum_{x<=floor(sqrt n)} floor(n/x) - floor(sqrt n)^2,
/// exact in O(sqrt n) divisions. At the 1e14 cap the sum stays below 2^63.
inline std::uint64_t d_hyperbola(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("d_hyperbola: n must be >= 1");
  if (n > kHyperbolaLimit) {
    throw std::overflow_error("d_hyperbola: n = " + std::to_string(n) + " exceeds limit " +
                              std::to_string(kHyperbolaLimit));
  }
  const std::uint64_t s = isqrt(n);
  std::uint64_t sum = 0;
  for (std::uint64_t x = 1; x <= s; ++x) sum += n / x;
  return 2 * sum - s * s;
}

/// Signed Dirichlet remainder D(n) - n ln n - (2 gamma - 1) n. Callers that
/// need the absolute-value convention take |.| themselves; the sign carries
/// real information for the sweep and the frequency tests.
inline double remainder_r(std::uint64_t n) {
  const double nd = static_cast<double>(n);
  const double d = static_cast<double>(d_hyperbola(n));
  return d - nd * std::log(nd) - (2.0 * euler_gamma() - 1.0) * nd;
}

/// F(n) = sum_{x<=floor(sqrt n)} {n/x} as an exact rational; {n/x} = (n mod x)/x.
/// Accumulated over the common denominator lcm(1..s), reduced once.
inline ExactRatio frac_part_sum(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("frac_part_sum: n must be >= 1");
  const std::uint64_t s = isqrt(n);
  if (s > kExactFracLimit) {
    throw std::domain_error("frac_part_sum: isqrt(n) = " + std::to_string(s) +
                            " exceeds exact-mode limit " + std::to_string(kExactFracLimit));
  }
  BigInt den = 1;
  for (std::uint64_t x = 2; x <= s; ++x) {
    den = den / boost::multiprecision::gcd(den, BigInt(x)) * x;
  }
  BigInt num = 0;
  for (std::uint64_t x = 1; x <= s; ++x) num += BigInt(n % x) * (den / x);
  return ExactRatio(std::move(num), std::move(den));
}

/// F(n) in double precision (compensated).
inline double frac_part_sum_float(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("frac_part_sum_float: n must be >= 1");
  const std::uint64_t s = isqrt(n);
  CompensatedAccumulator acc;
  for (std::uint64_t x = 1; x <= s; ++x) {
    acc.add(static_cast<double>(n % x) / static_cast<double>(x));
  }
  return acc.value();
}

/// S(n) = sum_{x<=floor(sqrt n)} ({n/x} - 1/2) = F(n) - floor(sqrt n)/2.
inline double centered_frac_sum(std::uint64_t n) {
  const std::uint64_t s = isqrt(n);
  return frac_part_sum_float(n) - static_cast<double>(s) / 2.0;
}

/// Truncated sawtooth series -(1/pi) sum_{k<=k_max} sin(2 pi k n/x)/k.
/// For x not dividing n the partial sums approach {n/x} - 1/2; when x | n
/// every term vanishes and the series converges to 0, NOT to the
/// fractional-part value -1/2. fourier_remainder reports that gap instead of
/// hiding it.
///
/// The sine argument is reduced exactly: 2 pi k (n/x) == 2 pi ((k*n) mod x)/x,
/// so no precision is lost for large k or n.
inline double fourier_centered_frac(std::uint64_t n, std::uint64_t x, std::uint64_t k_max) {
  if (x < 1 || k_max < 1) throw std::invalid_argument("fourier_centered_frac: x, k_max >= 1");
  const std::uint64_t j = n % x;
  if (j == 0) return 0.0;  // all terms are sin(2 pi k * integer) = 0
  CompensatedAccumulator acc;
  const double inv_x = 1.0 / static_cast<double>(x);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const std::uint64_t kj =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(k % x) * j % x);
    acc.add(std::sin(2.0 * std::numbers::pi * static_cast<double>(kj) * inv_x) /
            static_cast<double>(k));
  }
  return -acc.value() / std::numbers::pi;
}

/// Truncated series for S(n) plus the bookkeeping for divisor terms: each
/// x | n with x <= sqrt(n) contributes 0 to the raw series where the centered
/// fractional part is -1/2.
struct FourierRemainder {
  double raw = 0.0;                 // plain truncated double series
  std::uint64_t divisor_terms = 0;  // count of x <= sqrt(n) with x | n
  double corrected = 0.0;           // raw - divisor_terms/2
};

inline FourierRemainder fourier_remainder(std::uint64_t n, std::uint64_t k_max) {
  if (n < 1) throw std::invalid_argument("fourier_remainder: n must be >= 1");
  const std::uint64_t s = isqrt(n);
  FourierRemainder out;
  CompensatedAccumulator acc;
  for (std::uint64_t x = 1; x <= s; ++x) {
    if (n % x == 0) {
      ++out.divisor_terms;
    } else {
      acc.add(fourier_centered_frac(n, x, k_max));
    }
  }
  out.raw = acc.value();
  out.corrected = out.raw - static_cast<double>(out.divisor_terms) / 2.0;
  return out;
}

/// One n worth of exact-plus-float divisor data.
struct RemainderSample {
  std::uint64_t n = 0;
  std::uint64_t d = 0;       // exact D(n)
  double r = 0.0;            // signed remainder
  double s_centered = 0.0;   // S(n)
  ExactRatio f_raw;          // exact F(n)
};

inline RemainderSample make_remainder_sample(std::uint64_t n) {
  RemainderSample sample;
  sample.n = n;
  sample.d = d_hyperbola(n);
  sample.r = remainder_r(n);
  sample.s_centered = centered_frac_sum(n);
  sample.f_raw = frac_part_sum(n);
  return sample;
}

}  // namespace divlab::divisor
