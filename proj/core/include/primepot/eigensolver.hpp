#pragma once

#include <optional>
#include <span>
#include <vector>

#include "primepot/grid.hpp"

namespace primepot {

/// Ascending bound-state energies of a sampled potential.
struct Spectrum {
  std::vector<double> eigenvalues;
  double continuum_edge = 0.0;
  double kinetic_scale = 0.0;
  std::vector<int> node_counts;
};

struct Eigenstates {
  Spectrum spectrum;
  /// One vector per eigenvalue, sampled on every grid node (zero at the box
  /// ends), normalised to unit trapezoidal norm.
  std::vector<std::vector<double>> vectors;
};

struct SolveOptions {
  /// Eigenvalues must lie below continuum_edge - margin. Defaults to
  /// 1e-3 * (continuum_edge - min V).
  std::optional<double> margin;
};

/// Three-point finite differences for -c^2 d^2/dx^2 + V with Dirichlet ends,
/// diagonalised as a symmetric tridiagonal matrix. continuum_edge is the mean
/// of the two boundary samples.
///
/// Throws NumericalError if spacing^2 * (max V - min V) > 0.1 c^2.
Eigenstates solve_bound_states(const PotentialGrid& potential, KineticScale kinetic,
                               const SolveOptions& options = {});

Spectrum bound_states(const PotentialGrid& potential, KineticScale kinetic,
                      const SolveOptions& options = {});

/// Sign changes of a sampled wavefunction, ignoring samples with
/// |psi| <= 1e-8 max|psi|.
int count_nodes(std::span<const double> psi);

struct DiscrepancyReport {
  std::vector<double> per_level_abs;
  std::vector<double> per_level_frac;
  double rms_frac = 0.0;
  std::vector<bool> rounds_to_target;

  bool all_round() const;
  double max_abs() const;
};

DiscrepancyReport compare_spectrum(std::span<const double> eigenvalues,
                                   std::span<const double> targets);
DiscrepancyReport compare_spectrum(const Spectrum& spectrum, std::span<const double> targets);

}  // namespace primepot
