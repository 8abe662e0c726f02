#include "primepot/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "primepot/error.hpp"

namespace primepot {

IntegerSequence::IntegerSequence(std::vector<std::int64_t> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 1) {
      throw ValidationError("sequence values must be >= 1, got " + std::to_string(values_[i]));
    }
    if (i > 0 && values_[i] <= values_[i - 1]) {
      throw ValidationError("sequence must be strictly increasing at position " +
                            std::to_string(i));
    }
  }
}

bool IntegerSequence::contains(std::int64_t v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

std::vector<double> IntegerSequence::as_levels() const {
  return std::vector<double>(values_.begin(), values_.end());
}

IntegerSequence IntegerSequence::prefix(std::size_t count) const {
  if (count > values_.size()) {
    throw ValidationError("requested " + std::to_string(count) + " elements from a sequence of " +
                          std::to_string(values_.size()));
  }
  return IntegerSequence(std::vector<std::int64_t>(values_.begin(), values_.begin() + count));
}

IntegerSequence sieve_primes(std::int64_t limit) {
  if (limit < 2) return {};
  auto const n = static_cast<std::size_t>(limit);
  std::vector<bool> composite(n + 1, false);
  std::vector<std::int64_t> primes;
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<std::int64_t>(p));
    for (std::size_t q = p * p; q <= n; q += p) composite[q] = true;
  }
  return IntegerSequence(std::move(primes));
}

namespace {

// Grows the sieve limit until `count` elements are available.
template <typename Sieve>
IntegerSequence first_n(std::size_t count, Sieve sieve) {
  if (count == 0) return {};
  std::int64_t limit = 16;
  for (;;) {
    auto seq = sieve(limit);
    if (seq.size() >= count) return seq.prefix(count);
    limit *= 2;
  }
}

}  // namespace

IntegerSequence first_primes(std::size_t count) { return first_n(count, sieve_primes); }

IntegerSequence sieve_lucky(std::int64_t limit) {
  if (limit < 1) return {};
  // Survivors live in a Fenwick tree of 0/1 flags over the odd candidates, so
  // the k-th survivor is found and removed in O(log n).
  auto const n = static_cast<std::size_t>((limit + 1) / 2);
  std::vector<std::size_t> tree(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    tree[i] += 1;
    if (auto j = i + (i & (~i + 1)); j <= n) tree[j] += tree[i];
  }
  std::size_t top_bit = 1;
  while (top_bit * 2 <= n) top_bit *= 2;

  auto remove_at = [&](std::size_t i) {
    for (; i <= n; i += i & (~i + 1)) --tree[i];
  };
  // 1-based index of the k-th survivor.
  auto find_kth = [&](std::size_t k) {
    std::size_t pos = 0;
    for (std::size_t b = top_bit; b > 0; b /= 2) {
      if (pos + b <= n && tree[pos + b] < k) {
        pos += b;
        k -= tree[pos];
      }
    }
    return pos + 1;
  };

  std::size_t count = n;
  // Each stage removes every step-th survivor by position, the step being the
  // value of the k-th survivor. Removing from the back keeps earlier
  // positions valid.
  for (std::size_t k = 2; k <= count; ++k) {
    auto const step = static_cast<std::size_t>(2 * find_kth(k) - 1);
    if (step > count) break;
    for (std::size_t pos = count / step * step; pos >= step; pos -= step) remove_at(find_kth(pos));
    count -= count / step;
  }

  std::vector<std::int64_t> survivors;
  survivors.reserve(count);
  for (std::size_t k = 1; k <= count; ++k)
    survivors.push_back(static_cast<std::int64_t>(2 * find_kth(k) - 1));
  return IntegerSequence(std::move(survivors));
}

IntegerSequence first_lucky(std::size_t count) { return first_n(count, sieve_lucky); }

int moebius(std::int64_t n) {
  if (n < 1) throw ValidationError("moebius is defined for n >= 1, got " + std::to_string(n));
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

double log_integral(double x) {
  if (!(x > 1.0)) throw ValidationError("log_integral requires x > 1");
  if (x == 2.0) return 0.0;
  auto integrand = [](double t) { return 1.0 / std::log(t); };
  double const lo = std::min(2.0, x);
  double const hi = std::max(2.0, x);
  double const value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 15, 1e-13);
  return x > 2.0 ? value : -value;
}

CountingEstimates counting_estimates(double x, int terms) {
  if (!(x > 2.0) || !std::isfinite(x)) {
    throw ValidationError("counting_estimates requires finite x > 2");
  }
  if (terms < 1) throw ValidationError("counting_estimates requires terms >= 1");

  CountingEstimates est;
  est.x = x;
  est.exact = static_cast<std::int64_t>(sieve_primes(static_cast<std::int64_t>(std::floor(x))).size());
  est.gauss = x / std::log(x);
  est.li = log_integral(x);

  double r = 0.0;
  int used = 0;
  for (int n = 1; n <= terms; ++n) {
    double const root = std::pow(x, 1.0 / n);
    if (root < 2.0) break;
    ++used;
    int const mu = moebius(n);
    if (mu != 0) r += mu * log_integral(root) / n;
  }
  est.riemann_r = r;
  est.terms_used = used;
  return est;
}

std::vector<std::int64_t> prime_gaps(const IntegerSequence& seq) {
  if (seq.size() < 2) throw ValidationError("prime_gaps needs at least two elements");
  std::vector<std::int64_t> gaps(seq.size() - 1);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) gaps[i] = seq[i + 1] - seq[i] - 1;
  return gaps;
}

GrowthBoundCheck check_growth_bound(const IntegerSequence& seq, double a) {
  if (!(a > 0.0)) throw ValidationError("growth bound constant must be positive");
  GrowthBoundCheck check;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    double const n = static_cast<double>(i + 1);
    double const ratio = static_cast<double>(seq[i]) / (n * n);
    check.max_ratio = std::max(check.max_ratio, ratio);
    if (ratio > a && !check.first_violation) {
      check.satisfied = false;
      check.first_violation = i;
    }
  }
  return check;
}

}  // namespace primepot
