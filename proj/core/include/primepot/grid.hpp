#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace primepot {

/// Coefficient c of the kinetic operator -c^2 d^2/dx^2.
///
/// half() is H = -1/2 d^2/dx^2 (the convention in which the Poschl-Teller
/// family -N(N+1)/(2 cosh^2 x) has gaps -n^2/2) and is the default
/// everywhere. unit() is H = -d^2/dx^2.
class KineticScale {
 public:
  constexpr explicit KineticScale(double c) : c_(c) {}

  static constexpr KineticScale half() { return KineticScale(std::numbers::sqrt2 / 2.0); }
  static constexpr KineticScale unit() { return KineticScale(1.0); }

  constexpr double value() const { return c_; }
  constexpr double squared() const { return c_ * c_; }

 private:
  double c_;
};

/// Uniform grid on [-half_width, half_width] with an odd number of nodes, so
/// that x = 0 is the centre node.
class Grid {
 public:
  Grid(double half_width, std::size_t points);

  /// Picks the odd node count whose spacing is closest to `spacing`.
  static Grid with_spacing(double half_width, double spacing);

  double half_width() const { return half_width_; }
  std::size_t points() const { return points_; }
  double spacing() const { return spacing_; }
  std::size_t center() const { return points_ / 2; }
  std::size_t mirror(std::size_t i) const { return points_ - 1 - i; }
  double x(std::size_t i) const;
  std::vector<double> nodes() const;

 private:
  double half_width_;
  std::size_t points_;
  double spacing_;
};

/// Sampled potential V(x) on a symmetric grid plus the value it approaches at
/// both ends of the domain.
class PotentialGrid {
 public:
  PotentialGrid(Grid grid, std::vector<double> values, double asymptote);

  /// Builds an even potential from samples at x >= 0 (centre node first).
  static PotentialGrid from_half_line(const Grid& grid, std::span<const double> half,
                                      double asymptote);

  /// Constant potential; asymptote equals the constant.
  static PotentialGrid constant(const Grid& grid, double value);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  double asymptote() const { return asymptote_; }
  bool even_symmetric() const { return even_; }

  /// Samples at x >= 0, centre node first.
  std::span<const double> half_line() const;

  double min() const;
  double max() const;
  /// Largest |V(x) - asymptote| over the two end nodes.
  double boundary_deviation() const;

  PotentialGrid shifted(double offset) const;

 private:
  Grid grid_;
  std::vector<double> values_;
  double asymptote_;
  bool even_;
};

}  // namespace primepot
