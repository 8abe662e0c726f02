#include "primepot/units.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "primepot/error.hpp"

namespace primepot {

void PhysicalContext::validate() const {
  if (!(mass > 0.0) || !(l > 0.0) || !(L > 0.0) || !std::isfinite(mass) || !std::isfinite(l) ||
      !std::isfinite(L)) {
    throw ValidationError("mass, l and L must be positive and finite");
  }
}

double mass_from_name(std::string_view name) {
  using constants::atomic_mass_unit;
  if (name == "rb87") return constants::rb87_mass;
  if (name == "li6") return 6.0151228874 * atomic_mass_unit;
  if (name == "na23") return 22.9897692820 * atomic_mass_unit;
  if (name == "k40") return 39.963998166 * atomic_mass_unit;
  if (name == "cs133") return 132.905451961 * atomic_mass_unit;
  double mass = 0.0;
  auto const [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), mass);
  if (ec != std::errc() || ptr != name.data() + name.size() || !(mass > 0.0)) {
    throw ValidationError("unknown atom or mass '" + std::string(name) + "'");
  }
  return mass;
}

EnergyScale energy_scale(const PhysicalContext& ctx) { return to_physical(ctx, 1.0); }

EnergyScale to_physical(const PhysicalContext& ctx, double dimensionless) {
  ctx.validate();
  double const ratio = ctx.l / ctx.L;
  double const joule = dimensionless * constants::hbar * constants::hbar / ctx.mass * ratio * ratio;
  return EnergyScale{joule, joule / constants::planck, joule / constants::boltzmann};
}

double to_dimensionless(const PhysicalContext& ctx, double joule) {
  return joule / energy_scale(ctx).joule;
}

double length_for_scale(double mass, double l, double hertz) {
  if (!(mass > 0.0) || !(l > 0.0) || !(hertz > 0.0)) {
    throw ValidationError("mass, l and frequency must be positive");
  }
  return l * constants::hbar / std::sqrt(mass * constants::planck * hertz);
}

}  // namespace primepot
