#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support/generators.hpp"
#include "primepot/eigensolver.hpp"
#include "primepot/error.hpp"
#include "primepot/sequences.hpp"
#include "primepot/susy.hpp"

using namespace primepot;
using primepot::testing::Gen;

namespace {

double sup_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("gaps from spectrum") {
  std::vector<double> levels{2, 3, 5, 7};
  auto g = gaps_from_spectrum(levels);
  CHECK(g.top_level == 7.0);
  CHECK(g.gaps == std::vector<double>{0, -2, -4, -5});
  CHECK_THROWS_AS(gaps_from_spectrum(std::vector<double>{1.0}), ValidationError);
  CHECK_THROWS_AS(gaps_from_spectrum(std::vector<double>{1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(gaps_from_spectrum(std::vector<double>{3.0, 1.0}), ValidationError);
}

TEST_CASE("zero gap on a zero potential gives zero") {
  Grid grid = Grid::with_spacing(8, 0.01);
  auto step = chain_step(PotentialGrid::constant(grid, 0.0), 0.0, KineticScale::half());
  for (double w : step.superpotential.values) REQUIRE(std::abs(w) < 1e-12);
  for (double v : step.potential.values()) REQUIRE(std::abs(v) < 1e-12);
}

TEST_CASE("one step from zero is the single-level sech^2 well") {
  Grid grid = Grid::with_spacing(10, 0.01);
  auto step = chain_step(PotentialGrid::constant(grid, 0.0), -0.5, KineticScale::half());
  auto ref = poschl_teller_reference(1, grid);
  CHECK(sup_diff(step.potential.values(), ref.values()) < 1e-8);
  CHECK(step.potential.even_symmetric());
}

TEST_CASE("a gap above the ground state is rejected") {
  Grid grid = Grid::with_spacing(10, 0.01);
  auto pt = poschl_teller_reference(1, grid);
  CHECK_THROWS_AS(chain_step(pt, 0.0, KineticScale::half()), NumericalError);
}

TEST_CASE("chain step satisfies the Riccati equation") {
  Gen g(23);
  Grid grid = Grid::with_spacing(10, 0.01);
  const double h = grid.spacing();
  const auto k = KineticScale::half();
  for (int c = 0; c < 10; ++c) {
    auto levels = g.levels(static_cast<std::size_t>(g.integer(2, 5)), g.real(0, 3), 0.5, 3);
    auto gaps = gaps_from_spectrum(levels).gaps;
    auto chain = run_chain(PotentialGrid::constant(grid, 0.0), gaps, k);
    const PotentialGrid* prev = nullptr;
    PotentialGrid zero = PotentialGrid::constant(grid, 0.0);
    for (std::size_t s = 0; s < chain.size(); ++s) {
      prev = s == 0 ? &zero : &chain[s - 1].potential;
      const auto& w = chain[s].superpotential.values;
      double worst = 0.0;
      double scale = 1.0;
      for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        double dw = (w[i + 1] - w[i - 1]) / (2 * h);
        double res = k.value() * dw - w[i] * w[i] + (*prev)[i] - gaps[s];
        worst = std::max(worst, std::abs(res));
        scale = std::max(scale, std::abs((*prev)[i]) + w[i] * w[i]);
      }
      CAPTURE(c);
      CAPTURE(s);
      CHECK(worst <= 10 * h * h * scale);
    }
  }
}

TEST_CASE("designed potentials are even") {
  Gen g(29);
  Grid grid = Grid::with_spacing(12, 0.01);
  for (int c = 0; c < 10; ++c) {
    auto levels = g.levels(static_cast<std::size_t>(g.integer(2, 6)), g.real(1, 5), 1, 3);
    auto v = design_potential(levels, grid, KineticScale::half());
    CHECK(v.even_symmetric());
    auto vals = v.values();
    for (std::size_t i = 0; i < vals.size(); ++i) REQUIRE(vals[i] == vals[grid.mirror(i)]);
  }
}

TEST_CASE("designed spectrum reproduces random targets") {
  Gen g(31);
  Grid grid = Grid::with_spacing(12, 0.005);
  for (int c = 0; c < 8; ++c) {
    auto levels = g.levels(static_cast<std::size_t>(g.integer(2, 6)), g.real(0, 4), 1, 3);
    auto v = design_potential(levels, grid, KineticScale::half());
    auto spec = bound_states(v, KineticScale::half());
    CAPTURE(c);
    REQUIRE(spec.eigenvalues.size() == levels.size());
    auto rep = compare_spectrum(spec, levels);
    CHECK(rep.max_abs() < 0.01);
  }
}

TEST_CASE("adding a level adds one bound state") {
  Grid grid = Grid::with_spacing(12, 0.005);
  auto k = KineticScale::half();
  std::vector<double> levels{1, 2.5, 4, 6, 7};
  std::size_t prev = 0;
  for (std::size_t n = 2; n <= levels.size(); ++n) {
    std::vector<double> sub(levels.end() - static_cast<long>(n), levels.end());
    auto count = bound_states(design_potential(sub, grid, k), k).eigenvalues.size();
    CHECK(count == n);
    CHECK(count > prev);
    prev = count;
  }
}

TEST_CASE("twenty equally spaced levels give an oscillating well") {
  std::vector<double> levels;
  for (int i = 20; i >= 1; --i) levels.push_back(-static_cast<double>(i));
  Grid grid = Grid::with_spacing(14, 0.005);
  auto v = design_potential(levels, grid, KineticScale::half());
  auto half = v.half_line();
  int extrema = 0;
  for (std::size_t i = 1; i + 1 < half.size(); ++i)
    if ((half[i] - half[i - 1]) * (half[i + 1] - half[i]) < 0) ++extrema;
  CHECK(extrema >= 2);
  auto spec = bound_states(v, KineticScale::half());
  CHECK(compare_spectrum(spec, levels).all_round());
}

TEST_CASE("prime design") {
  Grid grid = Grid::with_spacing(12, 0.005);
  auto levels = first_primes(10).as_levels();
  auto v = design_potential(levels, grid, KineticScale::half());
  CHECK(v.asymptote() == doctest::Approx(29.25));
  CHECK(compare_spectrum(bound_states(v, KineticScale::half()), levels).all_round());
}

TEST_CASE("design rejects single level and undersized grid") {
  Grid grid = Grid::with_spacing(12, 0.01);
  CHECK_THROWS_AS(design_potential(std::vector<double>{3.0}, grid, KineticScale::half()),
                  ValidationError);
  Grid tiny = Grid::with_spacing(1, 0.01);
  CHECK_THROWS(design_potential(std::vector<double>{1, 2, 3}, tiny, KineticScale::half()));
}

TEST_CASE("kinetic calibration") {
  auto k = calibrate_kinetic_scale(Grid::with_spacing(10, 0.01));
  CHECK(k.value() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
}
