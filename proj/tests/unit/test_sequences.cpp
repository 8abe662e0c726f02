#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "../support/generators.hpp"
#include "primepot/error.hpp"
#include "primepot/sequences.hpp"

using namespace primepot;
using primepot::testing::Gen;

namespace {

std::vector<std::int64_t> to_vec(const IntegerSequence& s) { return {s.begin(), s.end()}; }

// Offset li via the exponential integral: li(x) - li(2) = Ei(ln x) - Ei(ln 2).
double li_oracle(double x) { return std::expint(std::log(x)) - std::expint(std::log(2.0)); }

std::vector<std::int64_t> naive_lucky(std::int64_t limit) {
  std::vector<std::int64_t> s;
  for (std::int64_t v = 1; v <= limit; v += 2) s.push_back(v);
  for (std::size_t k = 1; k < s.size(); ++k) {
    auto step = static_cast<std::size_t>(s[k]);
    if (step > s.size()) break;
    std::vector<std::int64_t> kept;
    for (std::size_t i = 0; i < s.size(); ++i)
      if ((i + 1) % step != 0) kept.push_back(s[i]);
    s = std::move(kept);
  }
  return s;
}

}  // namespace

TEST_CASE("lucky sieve matches direct elimination") {
  Gen g(11);
  for (int c = 0; c < 40; ++c) {
    auto lim = g.integer(1, 20000);
    CAPTURE(lim);
    REQUIRE(to_vec(sieve_lucky(lim)) == naive_lucky(lim));
  }
}

TEST_CASE("first primes") {
  CHECK(to_vec(first_primes(10)) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(sieve_primes(1).empty());
  CHECK(sieve_primes(100).size() == 25);
  CHECK(first_primes(1000)[999] == 7919);
}

TEST_CASE("lucky numbers") {
  CHECK(to_vec(sieve_lucky(25)) == std::vector<std::int64_t>{1, 3, 7, 9, 13, 15, 21, 25});
  CHECK(to_vec(first_lucky(15)) ==
        std::vector<std::int64_t>{1, 3, 7, 9, 13, 15, 21, 25, 31, 33, 37, 43, 49, 51, 63});
}

TEST_CASE("lucky sieve is stable under a larger limit") {
  Gen g(17);
  for (int c = 0; c < 30; ++c) {
    auto lim = g.integer(2, 3000);
    auto small = sieve_lucky(lim);
    auto big = sieve_lucky(lim + g.integer(1, 3000));
    CAPTURE(lim);
    REQUIRE(small.size() <= big.size());
    CHECK(std::equal(small.begin(), small.end(), big.begin()));
  }
}

TEST_CASE("sequence must be strictly increasing") {
  CHECK_THROWS_AS(IntegerSequence({3, 2}), ValidationError);
  CHECK_THROWS_AS(IntegerSequence({2, 2}), ValidationError);
  CHECK_THROWS_AS(first_primes(3).prefix(4), ValidationError);
}

TEST_CASE("moebius values") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(2) == -1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
  CHECK(moebius(35) == 1);
  CHECK_THROWS_AS(moebius(0), ValidationError);
}

TEST_CASE("moebius is multiplicative on coprime pairs") {
  for (std::int64_t a = 1; a <= 100; ++a)
    for (std::int64_t b = 1; b <= 100; ++b)
      if (std::gcd(a, b) == 1) {
        CAPTURE(a);
        CAPTURE(b);
        REQUIRE(moebius(a * b) == moebius(a) * moebius(b));
      }
}

TEST_CASE("moebius sums to zero over divisors") {
  for (std::int64_t n = 2; n <= 300; ++n) {
    int s = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) s += moebius(d);
    CAPTURE(n);
    REQUIRE(s == 0);
  }
}

TEST_CASE("log integral matches exponential-integral oracle") {
  Gen g(5);
  for (int c = 0; c < 50; ++c) {
    double x = std::exp(g.real(std::log(1.2), std::log(1e7)));
    CAPTURE(x);
    CHECK(log_integral(x) == doctest::Approx(li_oracle(x)).epsilon(1e-9));
  }
  CHECK(log_integral(2.0) == doctest::Approx(0.0));
  CHECK(log_integral(1.5) < 0.0);
}

TEST_CASE("counting estimates") {
  for (double x : {100.0, 1000.0, 10000.0, 100000.0}) {
    auto e = counting_estimates(x, 25);
    CAPTURE(x);
    CHECK(e.exact == static_cast<std::int64_t>(sieve_primes(static_cast<std::int64_t>(x)).size()));
    CHECK(std::abs(e.riemann_r - e.exact) < std::abs(e.li - e.exact));
    if (x >= 1000) CHECK(std::abs(e.li - e.exact) < std::abs(e.gauss - e.exact));
  }
  CHECK(counting_estimates(1000, 25).exact == 168);
}

TEST_CASE("R with one term is li") {
  auto e = counting_estimates(5000, 1);
  CHECK(e.terms_used == 1);
  CHECK(e.riemann_r == doctest::Approx(e.li));
}

TEST_CASE("prime gaps round-trip") {
  Gen g(3);
  for (int c = 0; c < 20; ++c) {
    auto n = static_cast<std::size_t>(g.integer(2, 500));
    auto p = first_primes(n);
    auto gaps = prime_gaps(p);
    REQUIRE(gaps.size() == n - 1);
    std::int64_t v = p[0];
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      v += gaps[i] + 1;
      REQUIRE(v == p[i + 1]);
    }
  }
  CHECK(prime_gaps(first_primes(5)) == std::vector<std::int64_t>{0, 1, 1, 3});
}

TEST_CASE("growth bound") {
  CHECK(check_growth_bound(first_primes(100), 3.0).satisfied);
  auto bad = check_growth_bound(IntegerSequence({1, 100}), 1.0);
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.first_violation.has_value());
  CHECK(*bad.first_violation == 1);
  CHECK(check_growth_bound(first_lucky(100), 3.0).satisfied);
}
