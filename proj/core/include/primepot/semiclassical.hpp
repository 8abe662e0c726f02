#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "primepot/grid.hpp"

namespace primepot {

/// Smoothed prime density of states: the derivative of the Riemann R
/// function, (1/log E) * sum_{m<=terms} mu(m)/m * E^((1-m)/m).
/// Requires E > 2.
double prime_density_of_states(double energy, int terms = 25);

/// dn/dE as a function of energy.
using DensityOfStates = std::function<double(double)>;

/// Half-profile x(V) of an even potential, V ascending from e0.
struct SemiclassicalProfile {
  std::vector<double> v_values;
  std::vector<double> x_values;
  double e0 = 0.0;
};

struct InversionOptions {
  KineticScale kinetic = KineticScale::half();
  std::size_t panels = 8;
  std::size_t nodes_per_panel = 64;
};

/// x(V) = c * int_{e0}^{V} rho(E) dE / sqrt(V - E), evaluated after the
/// substitution E = V - t^2 as c * int_0^sqrt(V - e0) 2 rho(V - t^2) dt
/// with composite Gauss-Legendre quadrature.
///
/// Samples are uniform in sqrt(V - e0), which keeps x roughly uniform too.
/// Throws ValidationError if v_max <= e0, samples < 2, or rho <= 0 at a
/// quadrature node.
SemiclassicalProfile invert_to_potential(const DensityOfStates& dos, double e0, double v_max,
                                         std::size_t samples, const InversionOptions& options = {});

/// Samples the even potential on `grid`, holding V at the last profile value
/// beyond the profile's reach. Interpolation is monotone cubic in
/// sqrt(V - e0) versus x.
PotentialGrid profile_to_potential(const SemiclassicalProfile& profile, const Grid& grid);

/// (1/pi) * int sqrt(max(E - V, 0)) / c dx over the whole grid.
double wkb_phase(const PotentialGrid& potential, double energy, KineticScale kinetic);

/// Bohr-Sommerfeld level count below `energy`: floor(wkb_phase + 1/2).
long wkb_count(const PotentialGrid& potential, double energy, KineticScale kinetic);

}  // namespace primepot
