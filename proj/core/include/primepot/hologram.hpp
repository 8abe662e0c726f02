#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "primepot/grid.hpp"

namespace primepot {

/// Dense row-major real matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Horizontal strip of `length` pixels on one row of the padded output plane.
struct SignalRegion {
  std::size_t row = 0;
  std::size_t col_begin = 0;
  std::size_t length = 0;
};

/// Affine map between a potential and its signal-region intensity:
/// V = ceiling - scale * I for intensities normalised to unit sum, sampled at
/// `length` points spanning [x_min, x_max] inclusive.
struct TargetMap {
  double ceiling = 0.0;
  double scale = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double asymptote = 0.0;
  std::size_t length = 0;

  double pixel_x(std::size_t j) const;
};

struct HologramTarget {
  std::vector<double> amplitude;  // unit power
  TargetMap map;
};

struct TargetOptions {
  /// Defaults to max V + 10% of (max V - min V).
  std::optional<double> ceiling;
  /// Half-extent of the sampled x range. Defaults to the outermost |x| where
  /// |V - asymptote| exceeds tail_tolerance * (max V - min V).
  std::optional<double> x_extent;
  double tail_tolerance = 1e-3;
};

/// Intensity proportional to ceiling - V(x), resampled to sr_length pixels;
/// amplitude is its square root, normalised to unit power.
HologramTarget potential_to_target(const PotentialGrid& potential, std::size_t sr_length,
                                   const TargetOptions& options = {});

/// Phase-only modulator plane (m x m, radians in [0, 2 pi)) and the target
/// it is optimised for on the 2m x 2m padded output plane.
struct HologramState {
  std::size_t m = 0;
  Matrix phase;
  SignalRegion signal_region;
  std::vector<double> target_amplitude;
  double target_phase = 0.0;
  int steepness_d = 9;

  std::size_t padded_size() const { return 2 * m; }
  void validate() const;
};

/// State with a centred signal region on the central output row. Phase is
/// uniform random from `seed`, or zero when no seed is given. The target is
/// renormalised to unit power.
HologramState make_hologram_state(std::size_t m, std::span<const double> target_amplitude,
                                  int steepness_d = 9,
                                  std::optional<std::uint64_t> seed = std::nullopt);

Matrix uniform_illumination(std::size_t m);
/// exp(-r^2 / w^2) with w = waist_fraction * m, centred on the plane.
Matrix gaussian_illumination(std::size_t m, double waist_fraction);

struct OutputField {
  std::size_t size = 0;
  std::vector<std::complex<double>> data;  // row-major, size x size

  std::complex<double> operator()(std::size_t r, std::size_t c) const { return data[r * size + c]; }
  double power() const;
  Matrix intensity() const;
};

/// Embeds illumination * exp(i phase) centred in the zero-padded plane and
/// applies the unitary centred 2D DFT, so output power equals input power.
OutputField propagate(const HologramState& state, const Matrix& illumination);

/// Same transform applied to an arbitrary m x m modulator field.
OutputField propagate_field(std::size_t m, std::span<const std::complex<double>> modulator);

struct CostGradient {
  double cost = 0.0;
  double overlap = 0.0;
  Matrix gradient;  // dC / d phase, m x m
};

/// C = 10^d (1 - O)^2 with O = sum over the signal region of
/// |target_k| |E_k| / sqrt(P_SR). The gradient is obtained through the
/// inverse transform. Throws NumericalError if the signal region is dark.
CostGradient cost_and_gradient(const HologramState& state, const Matrix& illumination);

struct OptimizeOptions {
  std::size_t max_iters = 500;
  /// Reinitialises the phase uniformly at random before optimising.
  std::optional<std::uint64_t> seed;
  /// Stop once 1 - O falls to this level.
  double deficit_tolerance = 1e-14;
  double armijo = 1e-4;
  std::size_t max_backtracks = 60;
};

struct OptimizeResult {
  HologramState state;
  std::vector<double> cost_history;  // cost before the first and after each accepted step
  std::size_t iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
};

/// Polak-Ribiere (PR+) conjugate gradient with Armijo backtracking. Every
/// accepted step lowers the cost; a failed line search after a steepest
/// descent restart ends the run with line_search_failed set.
OptimizeResult optimize_phase(const HologramState& state, const Matrix& illumination,
                              const OptimizeOptions& options = {});

/// Signal-region intensities normalised to unit sum.
std::vector<double> signal_intensity(const OutputField& field, const SignalRegion& region);

/// || I - T ||_2 / || T ||_2 over the signal region, both normalised to unit
/// sum, with T the squared target amplitude.
double sr_intensity_error(const OutputField& field, const HologramState& state);

/// Fraction of the total output power landing in the signal region.
double sr_power_fraction(const OutputField& field, const SignalRegion& region);

/// Inverts the target map: V = ceiling - scale * I at each pixel,
/// interpolated onto `grid` with a cubic spline and held at the map's
/// asymptote outside [x_min, x_max].
PotentialGrid extract_profile(std::span<const double> sr_intensity, const TargetMap& map,
                              const Grid& grid);
PotentialGrid extract_profile(const OutputField& field, const HologramState& state,
                              const TargetMap& map, const Grid& grid);

}  // namespace primepot
