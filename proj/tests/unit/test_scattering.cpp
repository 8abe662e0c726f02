#include <doctest.h>

#include <cmath>
#include <complex>

#include "../support/generators.hpp"
#include "primepot/eigensolver.hpp"
#include "primepot/error.hpp"
#include "primepot/scattering.hpp"
#include "primepot/sequences.hpp"
#include "primepot/susy.hpp"

using namespace primepot;
using primepot::testing::Gen;

namespace {

const KineticScale kHalf = KineticScale::half();

PotentialGrid square_barrier(double height, double width, const Grid& grid) {
  std::vector<double> v;
  for (double x : grid.nodes()) v.push_back(std::abs(x) <= width / 2 ? height : 0.0);
  return PotentialGrid(grid, std::move(v), 0.0);
}

}  // namespace

TEST_CASE("free propagation transmits everything") {
  auto v = PotentialGrid::constant(Grid::with_spacing(5, 0.01), 0.0);
  Gen g(1);
  for (int c = 0; c < 20; ++c) {
    auto t = transmission(v, g.real(0.01, 50), kHalf);
    CHECK(t.t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.r == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("flux is conserved for random barriers") {
  Gen g(2);
  Grid grid = Grid::with_spacing(4, 0.01);
  for (int c = 0; c < testing::kCases; ++c) {
    auto v = square_barrier(g.real(0.5, 20), g.real(0.1, 3), grid);
    auto t = transmission(v, g.real(0.05, 30), kHalf);
    CAPTURE(c);
    REQUIRE(std::abs(t.t + t.r - 1.0) < 1e-10);
  }
}

TEST_CASE("transfer matrix has unit-modulus determinant") {
  Gen g(3);
  Grid grid = Grid::with_spacing(3, 0.01);
  for (int c = 0; c < 30; ++c) {
    auto v = square_barrier(g.real(0.5, 8), g.real(0.2, 2), grid);
    auto m = transfer_matrix(v, g.real(0.1, 12), kHalf);
    auto det = m[0] * m[3] - m[1] * m[2];
    CAPTURE(c);
    CHECK(std::abs(std::abs(det) - 1.0) < 1e-9);
  }
}

TEST_CASE("thick barriers do not overflow") {
  Grid grid = Grid::with_spacing(30, 0.01);
  auto v = square_barrier(50, 50, grid);
  auto t = transmission(v, 1.0, kHalf);
  CHECK(std::isfinite(t.t));
  CHECK(t.t < 1e-100);
  CHECK(t.r == doctest::Approx(1.0));
}

TEST_CASE("energy must lie above the leads") {
  auto v = PotentialGrid::constant(Grid::with_spacing(2, 0.01), 1.0);
  CHECK_THROWS_AS(transmission(v, 0.5, kHalf), ValidationError);
}

TEST_CASE("truncation keeps the minimum and re-references to the floor") {
  Grid grid = Grid::with_spacing(12, 0.01);
  auto v = design_potential(first_primes(6).as_levels(), grid, kHalf);
  auto tr = truncate_potential(v, 10.0, {.floor = 10.0});
  CHECK(tr.potential.asymptote() == 0.0);
  CHECK(tr.shift == doctest::Approx(10.0));
  CHECK(tr.potential.min() + tr.shift == doctest::Approx(v.min()));
  CHECK(tr.potential.max() + tr.shift <= 10.0 + 1e-12);
  CHECK(tr.potential.size() < v.size());
}

TEST_CASE("a cutoff above the maximum keeps every sample") {
  Grid grid = Grid::with_spacing(8, 0.01);
  auto v = poschl_teller_reference(2, grid);
  auto tr = truncate_potential(v, v.max() + 1.0, {.floor = v.min()});
  REQUIRE(tr.potential.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    REQUIRE(tr.potential[i] + tr.shift == doctest::Approx(v[i]));
}

TEST_CASE("truncation at 31 preserves every prime level") {
  Grid grid = Grid::with_spacing(12, 0.005);
  auto levels = first_primes(10).as_levels();
  auto v = design_potential(levels, grid, kHalf);
  auto before = bound_states(v, kHalf);
  auto tr = truncate_potential(v, 31.0, {.floor = 31.0});
  auto after = bound_states(tr.potential, kHalf);
  REQUIRE(after.eigenvalues.size() == before.eigenvalues.size());
  for (std::size_t i = 0; i < before.eigenvalues.size(); ++i)
    CHECK(std::abs(after.eigenvalues[i] + tr.shift - before.eigenvalues[i]) < 1e-2);
}

TEST_CASE("clipping the flank leaves deep levels in place") {
  Grid grid = Grid::with_spacing(12, 0.005);
  auto v = design_potential(first_primes(10).as_levels(), grid, kHalf);
  auto before = bound_states(v, kHalf);
  // The plateau gives the re-solved states room to decay before the box wall.
  auto tr = truncate_potential(v, 27.0, {.floor = 27.0, .plateau = 4.0});
  auto after = bound_states(tr.potential, kHalf);
  for (std::size_t i = 0; i < before.eigenvalues.size(); ++i) {
    if (before.eigenvalues[i] > 27.0 - 12.0) break;
    CAPTURE(i);
    CHECK(std::abs(after.eigenvalues[i] + tr.shift - before.eigenvalues[i]) < 1e-2);
  }
}

TEST_CASE("resonances of a truncated lucky well sit at lucky numbers") {
  Grid grid = Grid::with_spacing(12, 0.0025);
  auto levels = first_lucky(10).as_levels();
  auto v = design_potential(levels, grid, kHalf);
  for (double e : levels) {
    if (e > v.asymptote() - 2.0) break;
    double cut = cutoff_for_opacity(v, e, 3.0, kHalf);
    auto tr = truncate_potential(v, cut);
    auto peak = peak_transmission(tr.potential, e - 0.5 - tr.shift, e + 0.5 - tr.shift, kHalf);
    CAPTURE(e);
    CHECK(peak.peak > 0.5);
    CHECK(std::abs(peak.energy + tr.shift - e) < 0.3);
  }
}

TEST_CASE("apparatus composition") {
  Grid g1 = Grid::with_spacing(2, 0.01);
  Grid g2 = Grid::with_spacing(3, 0.01);
  auto a = poschl_teller_reference(1, g1);
  auto b = poschl_teller_reference(2, g2);
  auto ta = truncate_potential(a, 1.0);
  auto tb = truncate_potential(b, 1.0);
  auto c = compose_apparatus(ta.potential, tb.potential, 1.0);
  double expected = (ta.potential.size() - 1) * 0.01 + (tb.potential.size() - 1) * 0.01 + 1.0;
  CHECK(2 * c.grid().half_width() == doctest::Approx(expected).epsilon(0.01));
  CHECK(c.asymptote() == 0.0);
  CHECK_THROWS_AS(compose_apparatus(a, PotentialGrid::constant(g2, 1.0), 0.0), ValidationError);
}

TEST_CASE("lucky-prime filter on small values") {
  LuckyPrimeFilter filter;
  CHECK(filter.test(3));
  CHECK(filter.test(7));
  CHECK(filter.test(13));
  CHECK_FALSE(filter.test(2));
  CHECK_FALSE(filter.test(9));
  CHECK_FALSE(filter.test(4));
}

TEST_CASE("a gap between devices still transmits at true resonances") {
  for (double sep : {1.0, 2.0}) {
    FilterOptions opts;
    opts.separation = sep;
    LuckyPrimeFilter filter(opts);
    for (std::int64_t w : {3, 7, 13}) {
      CAPTURE(w);
      CAPTURE(sep);
      CHECK(filter.peak(w).peak > 0.5);
    }
  }
}

TEST_CASE("filter range is validated") {
  LuckyPrimeFilter filter;
  CHECK_THROWS_AS(filter.test(0), ValidationError);
  CHECK_THROWS_AS(filter.test(1000), ValidationError);
}
