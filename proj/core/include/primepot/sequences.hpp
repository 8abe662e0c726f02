#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace primepot {

/// Strictly increasing sequence of positive integers (primes, lucky numbers,
/// arbitrary target spectra).
class IntegerSequence {
 public:
  IntegerSequence() = default;
  explicit IntegerSequence(std::vector<std::int64_t> values);

  std::span<const std::int64_t> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::int64_t operator[](std::size_t i) const { return values_[i]; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool contains(std::int64_t v) const;
  /// Values as floating-point energy levels.
  std::vector<double> as_levels() const;
  /// First `count` elements; throws if the sequence is shorter.
  IntegerSequence prefix(std::size_t count) const;

  friend bool operator==(const IntegerSequence&, const IntegerSequence&) = default;

 private:
  std::vector<std::int64_t> values_;
};

/// All primes <= limit (Eratosthenes). Empty for limit < 2.
IntegerSequence sieve_primes(std::int64_t limit);
/// The first `count` primes.
IntegerSequence first_primes(std::size_t count);

/// All lucky numbers <= limit. Elimination is by position among the current
/// survivors: every 2nd, then every 3rd (3 being the second survivor), then
/// every 7th, and so on with the next surviving value as the step.
IntegerSequence sieve_lucky(std::int64_t limit);
IntegerSequence first_lucky(std::size_t count);

/// Moebius function. Throws ValidationError for n < 1.
int moebius(std::int64_t n);

/// Offset logarithmic integral: integral of 1/ln t from 2 to x (adaptive
/// Gauss-Kronrod). Negative for x < 2. Requires x > 1.
double log_integral(double x);

struct CountingEstimates {
  double x = 0.0;
  std::int64_t exact = 0;
  double gauss = 0.0;
  double li = 0.0;
  double riemann_r = 0.0;
  int terms_used = 0;
};

/// pi(x) by sieve together with x/ln x, li(x) and the Moebius-weighted
/// series R(x) = sum_{n>=1} mu(n)/n li(x^{1/n}). The series stops at
/// `terms` or as soon as x^{1/n} < 2, whichever comes first.
CountingEstimates counting_estimates(double x, int terms);

/// g(p_n) = p_{n+1} - p_n - 1 for each consecutive pair.
std::vector<std::int64_t> prime_gaps(const IntegerSequence& seq);

struct GrowthBoundCheck {
  bool satisfied = true;
  /// Index assigned to the first element when evaluating e_n <= A n^2.
  int index_base = 1;
  std::optional<std::size_t> first_violation;  // position in the sequence
  double max_ratio = 0.0;                       // max e_n / n^2

  explicit operator bool() const { return satisfied; }
};

/// Checks e_n <= A n^2 with n = 1 for the first element.
GrowthBoundCheck check_growth_bound(const IntegerSequence& seq, double a);

}  // namespace primepot
