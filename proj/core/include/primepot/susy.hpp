#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "primepot/grid.hpp"

namespace primepot {

/// Target levels shifted so the highest sits at zero, listed top-down:
/// gaps[0] = 0 > gaps[1] > ... > gaps[N-1].
struct GapSequence {
  std::vector<double> gaps;
  double top_level = 0.0;
};

/// gaps[k] = e_{N-1-k} - e_{N-1}. Requires >= 2 strictly increasing levels.
GapSequence gaps_from_spectrum(std::span<const double> levels);

/// Odd superpotential W(x) sampled on the full grid.
struct SuperpotentialGrid {
  Grid grid;
  std::vector<double> values;
};

struct ChainStep {
  SuperpotentialGrid superpotential;
  PotentialGrid potential;
};

struct ChainOptions {
  /// (u, u') is rescaled by its max norm every this many integration steps.
  std::size_t renormalize_every = 1000;
};

/// Adds one level at `gap` below the spectrum of `prev`.
///
/// Solves c W' - W^2 + V_prev = gap with W(0) = 0 through W = -c u'/u,
/// u'' = (V_prev - gap) u / c^2, u(0) = 1, u'(0) = 0 (classical RK4 on the
/// grid spacing, midpoint potential by cubic interpolation), and returns
/// V_next = 2 gap + 2 W^2 - V_prev. Throws NumericalError if u develops a node,
/// i.e. the gap is not below the current ground state.
ChainStep chain_step(const PotentialGrid& prev, double gap, KineticScale kinetic,
                     const ChainOptions& options = {});

/// Runs chain_step for every gap in order, starting from `seed`.
std::vector<ChainStep> run_chain(const PotentialGrid& seed, std::span<const double> gaps,
                                 KineticScale kinetic, const ChainOptions& options = {});

struct DesignOptions {
  /// Binding energy of the top level below the final asymptote. With 0 the
  /// chain starts from V = 0 and the top level sits exactly at the continuum
  /// threshold; a positive value starts from the one-level well
  /// b (1 - 2 sech^2(sqrt(b) x / c)), whose only bound state is at 0, so the
  /// top level becomes a normalisable state and the asymptote is e_max + b.
  double top_binding = 0.25;
  /// The shallowest state must decay over at least this many e-foldings
  /// inside half_width.
  double min_efoldings = 5.0;
  ChainOptions chain;
};

/// Even potential whose bound-state spectrum is `levels`.
PotentialGrid design_potential(std::span<const double> levels, const Grid& grid,
                               KineticScale kinetic, const DesignOptions& options = {});

/// Seed well used by design_potential for a given top binding (V = 0 when
/// binding is 0).
PotentialGrid top_level_seed(const Grid& grid, double binding, KineticScale kinetic);

/// -N(N+1) / (2 cosh^2 x).
PotentialGrid poschl_teller_reference(int n, const Grid& grid);

/// Finds the kinetic coefficient c for which one chain step from V = 0 with
/// gap -1/2 reproduces -1/cosh^2 x (sup-norm minimisation over c).
KineticScale calibrate_kinetic_scale(const Grid& grid);

}  // namespace primepot
