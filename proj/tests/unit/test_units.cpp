#include <doctest.h>

#include <cmath>

#include "../support/generators.hpp"
#include "primepot/error.hpp"
#include "primepot/units.hpp"

using namespace primepot;
using primepot::testing::Gen;

TEST_CASE("identity configuration") {
  PhysicalContext ctx{.mass = constants::hbar * constants::hbar, .l = 2.0, .L = 2.0};
  auto s = energy_scale(ctx);
  CHECK(s.joule == doctest::Approx(1.0));
  CHECK(s.hertz == doctest::Approx(1.0 / constants::planck));
  CHECK(s.kelvin == doctest::Approx(1.0 / constants::boltzmann));
}

TEST_CASE("rubidium scale and well depth") {
  double l = 20.0;
  double L = length_for_scale(constants::rb87_mass, l, 0.029);
  PhysicalContext ctx{.mass = constants::rb87_mass, .l = l, .L = L};
  CHECK(energy_scale(ctx).hertz == doctest::Approx(0.029).epsilon(1e-12));
  auto depth = to_physical(ctx, 34.0);
  CHECK(depth.kelvin * 1e12 == doctest::Approx(47.0).epsilon(0.01));
}

TEST_CASE("halving the physical length quadruples the scale") {
  Gen g(2);
  for (int c = 0; c < testing::kCases; ++c) {
    PhysicalContext ctx{.mass = g.real(1e-27, 1e-24), .l = g.real(1, 50), .L = g.real(1e-6, 1e-3)};
    auto a = energy_scale(ctx).joule;
    ctx.L /= 2;
    CHECK(energy_scale(ctx).joule == doctest::Approx(4 * a).epsilon(1e-14));
  }
}

TEST_CASE("physical round trip") {
  Gen g(3);
  for (int c = 0; c < testing::kCases; ++c) {
    PhysicalContext ctx{.mass = g.real(1e-27, 1e-24), .l = g.real(1, 50), .L = g.real(1e-6, 1e-3)};
    double e = g.real(-100, 100);
    CHECK(to_dimensionless(ctx, to_physical(ctx, e).joule) == doctest::Approx(e).epsilon(1e-14));
  }
}

TEST_CASE("masses and validation") {
  CHECK(mass_from_name("rb87") == constants::rb87_mass);
  CHECK(mass_from_name("1.5e-25") == 1.5e-25);
  CHECK(mass_from_name("li6") < mass_from_name("cs133"));
  CHECK_THROWS_AS(mass_from_name("unobtainium"), ValidationError);
  CHECK_THROWS_AS(energy_scale(PhysicalContext{.l = -1.0}), ValidationError);
  CHECK_THROWS_AS(energy_scale(PhysicalContext{.mass = 0.0}), ValidationError);
}
