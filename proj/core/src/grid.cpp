#include "primepot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "primepot/error.hpp"

namespace primepot {

Grid::Grid(double half_width, std::size_t points) : half_width_(half_width), points_(points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("grid half_width must be positive and finite");
  }
  if (points < 3 || points % 2 == 0) {
    throw ValidationError("grid needs an odd number of points >= 3, got " +
                          std::to_string(points));
  }
  spacing_ = 2.0 * half_width / static_cast<double>(points - 1);
}

Grid Grid::with_spacing(double half_width, double spacing) {
  if (!(spacing > 0.0) || !(half_width > 0.0)) {
    throw ValidationError("grid spacing and half_width must be positive");
  }
  auto const half_intervals = std::max<long>(1, std::lround(half_width / spacing));
  return Grid(half_width, static_cast<std::size_t>(2 * half_intervals + 1));
}

double Grid::x(std::size_t i) const {
  auto const offset = static_cast<double>(i) - static_cast<double>(center());
  return offset * spacing_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(points_);
  for (std::size_t i = 0; i < points_; ++i) xs[i] = x(i);
  return xs;
}

PotentialGrid::PotentialGrid(Grid grid, std::vector<double> values, double asymptote)
    : grid_(grid), values_(std::move(values)), asymptote_(asymptote), even_(true) {
  if (values_.size() != grid_.points()) {
    throw ValidationError("potential has " + std::to_string(values_.size()) +
                          " samples for a grid of " + std::to_string(grid_.points()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("potential contains non-finite samples");
  }
  for (std::size_t i = 0; i < grid_.center(); ++i) {
    if (values_[i] != values_[grid_.mirror(i)]) {
      even_ = false;
      break;
    }
  }
}

PotentialGrid PotentialGrid::from_half_line(const Grid& grid, std::span<const double> half,
                                            double asymptote) {
  auto const c = grid.center();
  if (half.size() != c + 1) {
    throw ValidationError("half-line samples do not match the grid");
  }
  std::vector<double> values(grid.points());
  for (std::size_t k = 0; k <= c; ++k) {
    values[c + k] = half[k];
    values[c - k] = half[k];
  }
  return PotentialGrid(grid, std::move(values), asymptote);
}

PotentialGrid PotentialGrid::constant(const Grid& grid, double value) {
  return PotentialGrid(grid, std::vector<double>(grid.points(), value), value);
}

std::span<const double> PotentialGrid::half_line() const {
  return std::span<const double>(values_).subspan(grid_.center());
}

double PotentialGrid::min() const { return *std::min_element(values_.begin(), values_.end()); }

double PotentialGrid::max() const { return *std::max_element(values_.begin(), values_.end()); }

double PotentialGrid::boundary_deviation() const {
  return std::max(std::abs(values_.front() - asymptote_), std::abs(values_.back() - asymptote_));
}

PotentialGrid PotentialGrid::shifted(double offset) const {
  std::vector<double> v(values_);
  for (double& x : v) x += offset;
  return PotentialGrid(grid_, std::move(v), asymptote_ + offset);
}

}  // namespace primepot
