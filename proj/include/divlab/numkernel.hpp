#pragma once

// Exact and compensated-floating arithmetic primitives shared by the
// divisor, stochastic and experiment layers. Everything here is pure and
// safe for concurrent use; MobiusTable is immutable after construction.

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace divlab {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Integer primitives
// ---------------------------------------------------------------------------

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  return std::gcd(a, b);
}

/// lcm(a, b) = a*b/gcd(a, b), evaluated through a 128-bit intermediate.
/// Throws std::overflow_error instead of wrapping when the result does not
/// fit 64 bits.
inline std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = gcd(a, b);
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(a / g) * static_cast<unsigned __int128>(b);
  if (wide > static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max())) {
    throw std::overflow_error("lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                              ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(wide);
}

/// Floor square root in pure integer arithmetic. Newton iteration started
/// from a power-of-two upper bound converges monotonically onto floor(sqrt n),
/// so perfect squares can never round the wrong way (a float sqrt can).
inline std::uint64_t isqrt(std::uint64_t n) noexcept {
  if (n == 0) return 0;
  std::uint64_t x = std::uint64_t{1} << ((std::bit_width(n) + 1) / 2);
  std::uint64_t y = (x + n / x) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

/// Euler-Mascheroni constant, correct to double precision.
inline constexpr double euler_gamma() noexcept {
  return 0.57721566490153286060651209008240243;
}

// ---------------------------------------------------------------------------
// Compensated floating-point accumulation
// ---------------------------------------------------------------------------

/// Neumaier-compensated accumulator. The accumulated error stays
/// O(eps * sum |terms|) to first order, independent of term count and of
/// whether individual addends dwarf the running sum.
class CompensatedAccumulator {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> terms) noexcept {
  CompensatedAccumulator acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

// ---------------------------------------------------------------------------
// Mobius sieve
// ---------------------------------------------------------------------------

/// mu(k) for 1 <= k <= limit, built with a linear prime sieve.
struct MobiusTable {
  std::uint64_t limit = 0;
  std::vector<std::int8_t> values;  // values[k-1] = mu(k)

  int mu(std::uint64_t k) const { return values[static_cast<std::size_t>(k - 1)]; }
};

inline MobiusTable mobius_sieve(std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("mobius_sieve: limit must be >= 1");
  MobiusTable table;
  table.limit = limit;
  table.values.assign(static_cast<std::size_t>(limit), 0);
  table.values[0] = 1;
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      table.values[i - 1] = -1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > limit) break;
      composite[ip] = true;
      if (i % p == 0) {
        table.values[ip - 1] = 0;  // squared prime factor
        break;
      }
      table.values[ip - 1] = static_cast<std::int8_t>(-table.values[i - 1]);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Exact rationals
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational, kept in lowest terms with a positive
/// denominator after every operation.
class ExactRatio {
 public:
  ExactRatio() = default;
  template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
  ExactRatio(T value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  ExactRatio(BigInt value) : num_(std::move(value)), den_(1) {}
  ExactRatio(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    normalize();
  }

  /// Exact value of a finite double (every finite double is a dyadic
  /// rational). Useful as an oracle for float computations.
  static ExactRatio from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("from_double: non-finite value");
    int exp = 0;
    const double mant = std::frexp(v, &exp);
    // mant * 2^53 is integral for every finite double
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    if (exp >= 0) return ExactRatio(BigInt(scaled) << exp);
    return ExactRatio(BigInt(scaled), BigInt(1) << -exp);
  }

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  ExactRatio& operator+=(const ExactRatio& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  ExactRatio& operator-=(const ExactRatio& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  ExactRatio& operator*=(const ExactRatio& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  ExactRatio& operator/=(const ExactRatio& o) {
    if (o.num_ == 0) throw std::domain_error("ExactRatio: division by zero");
    BigInt new_num = num_ * o.den_;  // temporaries keep self-division correct
    BigInt new_den = den_ * o.num_;
    num_ = std::move(new_num);
    den_ = std::move(new_den);
    normalize();
    return *this;
  }

  friend ExactRatio operator+(ExactRatio a, const ExactRatio& b) { return a += b; }
  friend ExactRatio operator-(ExactRatio a, const ExactRatio& b) { return a -= b; }
  friend ExactRatio operator*(ExactRatio a, const ExactRatio& b) { return a *= b; }
  friend ExactRatio operator/(ExactRatio a, const ExactRatio& b) { return a /= b; }
  ExactRatio operator-() const {
    ExactRatio r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ExactRatio& a, const ExactRatio& b) { return !(a == b); }
  friend bool operator<(const ExactRatio& a, const ExactRatio& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  /// Nearest double: the quotient is scaled so ~64 significant bits survive
  /// before the final rounding, so huge numerators/denominators are fine.
  double to_double() const {
    if (num_ == 0) return 0.0;
    const bool neg = num_ < 0;
    const BigInt a = neg ? BigInt(-num_) : num_;
    const auto ebits = static_cast<std::ptrdiff_t>(boost::multiprecision::msb(a)) -
                       static_cast<std::ptrdiff_t>(boost::multiprecision::msb(den_));
    const std::ptrdiff_t shift = 64 - ebits;
    BigInt q;
    if (shift >= 0) {
      q = (a << shift) / den_;
    } else {
      q = a / (den_ << -shift);
    }
    const double d = std::ldexp(q.convert_to<double>(), -static_cast<int>(shift));
    return neg ? -d : d;
  }

  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) {
      s += "/";
      s += den_.str();
    }
    return s;
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("ExactRatio: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_{0};
  BigInt den_{1};
};

// ---------------------------------------------------------------------------
// Harmonic numbers
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kHarmonicExactLimit = 10'000;

namespace detail {

// sum_{k=lo}^{hi} 1/k as an unreduced (numerator, denominator) pair.
// Splitting the range keeps the partial products balanced; the single
// reduction happens in the ExactRatio constructor at the top.
inline std::pair<BigInt, BigInt> harmonic_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo == hi) return {BigInt(1), BigInt(lo)};
  const std::uint64_t mid = lo + (hi - lo) / 2;
  auto [n1, d1] = harmonic_range(lo, mid);
  auto [n2, d2] = harmonic_range(mid + 1, hi);
  return {n1 * d2 + n2 * d1, d1 * d2};
}

}  // namespace detail

/// Exact H_m = sum_{k<=m} 1/k. Denominators grow like lcm(1..m), hence the
/// hard limit.
inline ExactRatio harmonic_exact(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("harmonic_exact: m must be >= 1");
  if (m > kHarmonicExactLimit) {
    throw std::domain_error("harmonic_exact: m = " + std::to_string(m) + " exceeds limit " +
                            std::to_string(kHarmonicExactLimit));
  }
  auto [num, den] = detail::harmonic_range(1, m);
  return ExactRatio(std::move(num), std::move(den));
}

/// H_m in double precision via compensated ascending summation. The ascending
/// order is part of the contract: every caller that maintains H incrementally
/// reproduces these exact bits.
inline double harmonic_float(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("harmonic_float: m must be >= 1");
  CompensatedAccumulator acc;
  for (std::uint64_t k = 1; k <= m; ++k) acc.add(1.0 / static_cast<double>(k));
  return acc.value();
}

}  // namespace divlab
