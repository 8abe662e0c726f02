#pragma once

#include <string_view>

namespace primepot {

namespace constants {
// CODATA 2018 exact and recommended values, SI.
inline constexpr double planck = 6.62607015e-34;            // J s
inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double boltzmann = 1.380649e-23;           // J / K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass = 86.909180527 * atomic_mass_unit;
}  // namespace constants

/// Atom mass and the dimensionless (l) and physical (L, metres) lengths of
/// the same potential.
struct PhysicalContext {
  double mass = constants::rb87_mass;
  double l = 1.0;
  double L = 1.0;

  void validate() const;
};

/// Looks up a named atom ("rb87", "li6", "na23", "k40", "cs133") or parses a
/// mass in kg.
double mass_from_name(std::string_view name);

struct EnergyScale {
  double joule = 0.0;
  double hertz = 0.0;   // in units of h
  double kelvin = 0.0;  // in units of k_B
};

EnergyScale energy_scale(const PhysicalContext& ctx);

/// Energy of `dimensionless` units in all three forms.
EnergyScale to_physical(const PhysicalContext& ctx, double dimensionless);
double to_dimensionless(const PhysicalContext& ctx, double joule);

/// Physical length L for which one dimensionless unit equals h * hertz.
double length_for_scale(double mass, double l, double hertz);

}  // namespace primepot
