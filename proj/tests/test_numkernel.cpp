#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "divlab/numkernel.hpp"

using namespace divlab;

namespace {

// Trial-division Mobius, independent of the sieve.
int mobius_trial(std::uint64_t k) {
  int factors = 0;
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      k /= p;
      ++factors;
      if (k % p == 0) return 0;
    }
  }
  if (k > 1) ++factors;
  return factors % 2 == 0 ? 1 : -1;
}

bool has_square_factor(std::uint64_t k) {
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    if (k % (p * p) == 0) return true;
    while (k % p == 0) k /= p;
  }
  return false;
}

}  // namespace

TEST_CASE("gcd basics") {
  CHECK(gcd(12, 18) == 6);
  CHECK(gcd(1, 7919) == 1);
  CHECK(gcd(360, 360) == 360);
  CHECK(gcd(17, 5) == 1);
}

TEST_CASE("lcm basics and overflow") {
  CHECK(lcm(4, 6) == 12);
  CHECK(lcm(1, 7919) == 7919);
  CHECK(lcm(360, 360) == 360);
  // coprime factors just above 2^32 overflow the 64-bit result
  CHECK_THROWS_AS(lcm((1ull << 40), (1ull << 40) + 1), std::overflow_error);
}

TEST_CASE("gcd * lcm == a * b") {
  std::mt19937_64 rng(20240917);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = rng() % 1'000'000 + 1;
    const std::uint64_t b = rng() % 1'000'000 + 1;
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(gcd(a, b)) * lcm(a, b);
    const unsigned __int128 rhs = static_cast<unsigned __int128>(a) * b;
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("isqrt boundaries") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(100) == 10);
  CHECK(isqrt(10'000'000'000ull) == 100'000);
}

TEST_CASE("isqrt bracket property") {
  for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
    const std::uint64_t s = isqrt(n);
    REQUIRE(s * s <= n);
    REQUIRE((s + 1) * (s + 1) > n);
  }
  std::mt19937_64 rng(321);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = rng();
    const std::uint64_t s = isqrt(n);
    const auto sq = static_cast<unsigned __int128>(s) * s;
    const auto sq1 = static_cast<unsigned __int128>(s + 1) * (s + 1);
    REQUIRE(sq <= n);
    REQUIRE(sq1 > n);
  }
}

TEST_CASE("mobius sieve matches trial division") {
  const MobiusTable table = mobius_sieve(6);
  const std::vector<std::int8_t> expect{1, -1, -1, 0, -1, 1};
  CHECK(table.values == expect);
  CHECK(mobius_sieve(10).mu(4) == 0);

  const MobiusTable big = mobius_sieve(2000);
  for (std::uint64_t k = 1; k <= 2000; ++k) {
    REQUIRE(big.mu(k) == mobius_trial(k));
    REQUIRE((big.mu(k) == 0) == has_square_factor(k));
  }
}

TEST_CASE("mobius Mertens identity") {
  // sum_{k<=L} mu(k) * floor(L/k) counts exactly the single integer 1
  for (std::uint64_t limit : {10ull, 100ull}) {
    const MobiusTable table = mobius_sieve(limit);
    std::int64_t total = 0;
    for (std::uint64_t k = 1; k <= limit; ++k) {
      total += static_cast<std::int64_t>(table.mu(k)) * static_cast<std::int64_t>(limit / k);
    }
    REQUIRE(total == 1);
  }
}

TEST_CASE("harmonic exact values") {
  CHECK(harmonic_exact(1) == ExactRatio(1));
  CHECK(harmonic_exact(3) == ExactRatio(11, 6));
  CHECK_THROWS_AS(harmonic_exact(kHarmonicExactLimit + 1), std::domain_error);
}

TEST_CASE("harmonic float vs asymptotic expansion") {
  const double m = 100'000.0;
  const double h = harmonic_float(100'000);
  const double asym = std::log(m) + euler_gamma() + 1.0 / (2.0 * m) - 1.0 / (12.0 * m * m);
  CHECK(std::abs(h - asym) < 1e-10);
}

TEST_CASE("harmonic exact vs float") {
  for (std::uint64_t m = 1; m <= 200; ++m) {
    const double exact = harmonic_exact(m).to_double();
    const double fl = harmonic_float(m);
    REQUIRE(std::abs(exact - fl) <= 1e-12 * exact);
  }
  for (std::uint64_t m : {1000ull, 5000ull, 10'000ull}) {
    const double exact = harmonic_exact(m).to_double();
    const double fl = harmonic_float(m);
    REQUIRE(std::abs(exact - fl) <= 1e-12 * exact);
  }
}

TEST_CASE("euler gamma constant") {
  CHECK(euler_gamma() > 0.5772156649);
  CHECK(euler_gamma() < 0.5772156650);
  CHECK(std::abs(2.0 * euler_gamma() - 1.0 - 0.15443132980) < 1e-10);
  const double h = harmonic_float(1'000'000);
  CHECK(std::abs(h - std::log(1e6) - euler_gamma()) < 1e-6);
}

TEST_CASE("compensated sum") {
  const std::vector<double> cancel{1e16, 1.0, -1e16};
  CHECK(compensated_sum(cancel) == 1.0);
  CHECK(compensated_sum({}) == 0.0);

  const std::vector<double> tenths(1'000'000, 0.1);
  const double sum = compensated_sum(tenths);
  CHECK(std::abs(sum - 1e5) < 1e-7);
  // exact dyadic oracle: 10^6 times the exact binary value of 0.1
  const ExactRatio exact = ExactRatio::from_double(0.1) * ExactRatio(1'000'000);
  CHECK(std::abs(sum - exact.to_double()) < 1e-9);
}

TEST_CASE("ExactRatio construction and reduction") {
  const ExactRatio half(2, 4);
  CHECK(half.numerator() == 1);
  CHECK(half.denominator() == 2);
  const ExactRatio neg(3, -6);
  CHECK(neg.numerator() == -1);
  CHECK(neg.denominator() == 2);
  CHECK(ExactRatio(0, 17) == ExactRatio(0));
  CHECK_THROWS_AS(ExactRatio(1, 0), std::domain_error);
  CHECK_THROWS_AS(ExactRatio(1) / ExactRatio(0), std::domain_error);
}

TEST_CASE("ExactRatio arithmetic properties") {
  std::mt19937_64 rng(777);
  auto random_ratio = [&] {
    const std::int64_t num = static_cast<std::int64_t>(rng() % 2001) - 1000;
    const std::int64_t den = static_cast<std::int64_t>(rng() % 999) + 1;
    return ExactRatio(num, den);
  };
  for (int i = 0; i < 500; ++i) {
    const ExactRatio a = random_ratio();
    const ExactRatio b = random_ratio();
    const ExactRatio c = random_ratio();
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    // always reduced with positive denominator
    const ExactRatio sum = a + b;
    REQUIRE(sum.denominator() > 0);
    REQUIRE(boost::multiprecision::gcd(
                sum.numerator() < 0 ? BigInt(-sum.numerator()) : sum.numerator(),
                sum.denominator()) == 1);
  }
}

TEST_CASE("ExactRatio self-referential operations") {
  ExactRatio a(3, 7);
  a += a;
  CHECK(a == ExactRatio(6, 7));
  a *= a;
  CHECK(a == ExactRatio(36, 49));
  a /= a;
  CHECK(a == ExactRatio(1));
  ExactRatio b(5, 9);
  b -= b;
  CHECK(b == ExactRatio(0));
}

TEST_CASE("ExactRatio to_double") {
  CHECK(ExactRatio(1, 2).to_double() == 0.5);
  CHECK(ExactRatio(-3, 4).to_double() == -0.75);
  CHECK(ExactRatio(0).to_double() == 0.0);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const auto p = static_cast<std::int64_t>(rng() % 1'000'000) - 500'000;
    const auto q = static_cast<std::int64_t>(rng() % 999'999) + 1;
    const double got = ExactRatio(p, q).to_double();
    const double expect = static_cast<double>(p) / static_cast<double>(q);
    REQUIRE_THAT(got, Catch::Matchers::WithinULP(expect, 1));
  }
}

TEST_CASE("ExactRatio from_double is exact") {
  CHECK(ExactRatio::from_double(0.5) == ExactRatio(1, 2));
  CHECK(ExactRatio::from_double(-0.25) == ExactRatio(-1, 4));
  CHECK(ExactRatio::from_double(3.0) == ExactRatio(3));
  // 0.1 rounds to 3602879701896397 / 2^55
  CHECK(ExactRatio::from_double(0.1) ==
        ExactRatio(BigInt(3602879701896397ll), BigInt(1) << 55));
  CHECK_THROWS_AS(ExactRatio::from_double(std::nan("")), std::invalid_argument);
}
