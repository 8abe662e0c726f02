#include "primepot/susy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "primepot/error.hpp"

namespace primepot {

GapSequence gaps_from_spectrum(std::span<const double> levels) {
  if (levels.size() < 2) {
    throw ValidationError("need at least two levels to build a gap sequence");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i])) throw ValidationError("levels must be finite");
    if (i > 0 && !(levels[i] > levels[i - 1])) {
      throw ValidationError("levels must be strictly increasing (position " + std::to_string(i) +
                            ")");
    }
  }
  GapSequence out;
  out.top_level = levels.back();
  auto const n = levels.size();
  out.gaps.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.gaps[k] = levels[n - 1 - k] - out.top_level;
  return out;
}

namespace {

// Cubic interpolation of V at x_k + h/2 from half-line samples. The even
// reflection V(-x) = V(x) supplies the node left of the origin; the last
// interval uses a one-sided stencil.
double midpoint_value(std::span<const double> v, std::size_t k) {
  auto const n = v.size();
  if (k + 2 < n) {
    double const left = (k == 0) ? v[1] : v[k - 1];
    return (-left + 9.0 * v[k] + 9.0 * v[k + 1] - v[k + 2]) / 16.0;
  }
  if (n >= 4) {
    return 0.0625 * v[k - 2] - 0.3125 * v[k - 1] + 0.9375 * v[k] + 0.3125 * v[k + 1];
  }
  return 0.5 * (v[k] + v[k + 1]);
}

}  // namespace

ChainStep chain_step(const PotentialGrid& prev, double gap, KineticScale kinetic,
                     const ChainOptions& options) {
  if (!prev.even_symmetric()) {
    throw ValidationError("chain_step requires an even potential");
  }
  if (!(gap <= 0.0) || !std::isfinite(gap)) {
    throw ValidationError("chain_step gap must be finite and <= 0");
  }
  auto const& grid = prev.grid();
  auto const half = prev.half_line();
  auto const n = half.size();
  double const h = grid.spacing();
  double const inv_c2 = 1.0 / kinetic.squared();
  std::size_t const renorm = std::max<std::size_t>(1, options.renormalize_every);

  std::vector<double> w(n, 0.0);
  double u = 1.0;
  double du = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double const g0 = (half[k] - gap) * inv_c2;
    double const gm = (midpoint_value(half, k) - gap) * inv_c2;
    double const g1 = (half[k + 1] - gap) * inv_c2;

    double const k1u = du;
    double const k1p = g0 * u;
    double const k2u = du + 0.5 * h * k1p;
    double const k2p = gm * (u + 0.5 * h * k1u);
    double const k3u = du + 0.5 * h * k2p;
    double const k3p = gm * (u + 0.5 * h * k2u);
    double const k4u = du + h * k3p;
    double const k4p = g1 * (u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);

    if (!(u > 0.0) || !std::isfinite(u) || !std::isfinite(du)) {
      throw NumericalError("gap not addable below current ground state: u has a node near x = " +
                           std::to_string(grid.x(grid.center() + k + 1)) +
                           " (gap " + std::to_string(gap) + ")");
    }
    w[k + 1] = -kinetic.value() * du / u;

    if ((k + 1) % renorm == 0 || u > 1e150) {
      double const scale = std::max(std::abs(u), std::abs(du));
      u /= scale;
      du /= scale;
    }
  }

  std::vector<double> next_half(n);
  for (std::size_t k = 0; k < n; ++k) next_half[k] = 2.0 * gap + 2.0 * w[k] * w[k] - half[k];

  SuperpotentialGrid sp{grid, std::vector<double>(grid.points())};
  auto const c = grid.center();
  for (std::size_t k = 0; k < n; ++k) {
    sp.values[c + k] = w[k];
    sp.values[c - k] = -w[k];
  }
  return ChainStep{std::move(sp),
                   PotentialGrid::from_half_line(grid, next_half, prev.asymptote())};
}

std::vector<ChainStep> run_chain(const PotentialGrid& seed, std::span<const double> gaps,
                                 KineticScale kinetic, const ChainOptions& options) {
  std::vector<ChainStep> steps;
  steps.reserve(gaps.size());
  const PotentialGrid* current = &seed;
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    try {
      steps.push_back(chain_step(*current, gaps[k], kinetic, options));
    } catch (const NumericalError& e) {
      throw NumericalError("chain step " + std::to_string(k + 1) + ": " + e.what());
    }
    current = &steps.back().potential;
  }
  return steps;
}

PotentialGrid top_level_seed(const Grid& grid, double binding, KineticScale kinetic) {
  if (binding < 0.0) throw ValidationError("top-level binding must be >= 0");
  if (binding == 0.0) return PotentialGrid::constant(grid, 0.0);
  double const kappa = std::sqrt(binding) / kinetic.value();
  std::vector<double> half(grid.center() + 1);
  for (std::size_t k = 0; k < half.size(); ++k) {
    double const sech = 1.0 / std::cosh(kappa * grid.spacing() * static_cast<double>(k));
    half[k] = binding * (1.0 - 2.0 * sech * sech);
  }
  return PotentialGrid::from_half_line(grid, half, binding);
}

PotentialGrid design_potential(std::span<const double> levels, const Grid& grid,
                               KineticScale kinetic, const DesignOptions& options) {
  auto const spectrum = gaps_from_spectrum(levels);

  // Decay length of the shallowest bound state.
  double const shallowest =
      options.top_binding > 0.0 ? options.top_binding : -spectrum.gaps[1];
  double const decay = kinetic.value() / std::sqrt(shallowest);
  if (grid.half_width() < options.min_efoldings * decay) {
    throw ValidationError("grid half_width " + std::to_string(grid.half_width()) +
                          " is too narrow: the shallowest state needs at least " +
                          std::to_string(options.min_efoldings * decay));
  }

  auto const seed = top_level_seed(grid, options.top_binding, kinetic);
  auto const gaps = std::span<const double>(spectrum.gaps).subspan(1);
  auto steps = run_chain(seed, gaps, kinetic, options.chain);
  return steps.back().potential.shifted(spectrum.top_level);
}

PotentialGrid poschl_teller_reference(int n, const Grid& grid) {
  if (n < 0) throw ValidationError("Poschl-Teller index must be >= 0");
  double const depth = 0.5 * n * (n + 1);
  std::vector<double> half(grid.center() + 1);
  for (std::size_t k = 0; k < half.size(); ++k) {
    double const sech = 1.0 / std::cosh(grid.spacing() * static_cast<double>(k));
    half[k] = -depth * sech * sech;
  }
  return PotentialGrid::from_half_line(grid, half, 0.0);
}

KineticScale calibrate_kinetic_scale(const Grid& grid) {
  auto const reference = poschl_teller_reference(1, grid);
  auto const flat = PotentialGrid::constant(grid, 0.0);
  auto mismatch = [&](double c) {
    auto step = chain_step(flat, -0.5, KineticScale(c));
    double worst = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
      worst = std::max(worst, std::abs(step.potential[i] - reference[i]));
    }
    return worst;
  };
  auto const best = boost::math::tools::brent_find_minima(mismatch, 0.25, 2.0, 40);
  return KineticScale(best.first);
}

}  // namespace primepot
