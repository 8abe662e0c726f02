#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "../support/generators.hpp"
#include "primepot/error.hpp"
#include "primepot/hologram.hpp"
#include "primepot/sequences.hpp"
#include "primepot/susy.hpp"

using namespace primepot;
using primepot::testing::Gen;

namespace {

double input_power(const Matrix& illum) {
  double p = 0.0;
  for (double a : illum.data) p += a * a;
  return p;
}

HologramState random_state(Gen& g, std::size_t m, std::size_t sr) {
  std::vector<double> amp;
  for (std::size_t i = 0; i < sr; ++i) amp.push_back(g.real(0.1, 1.0));
  return make_hologram_state(m, amp, 9, static_cast<std::uint64_t>(g.integer(0, 1 << 30)));
}

}  // namespace

TEST_CASE("propagation conserves power") {
  Gen g(7);
  for (int c = 0; c < 20; ++c) {
    auto m = static_cast<std::size_t>(2 * g.integer(2, 20));
    auto s = random_state(g, m, std::min<std::size_t>(m, 8));
    auto illum = c % 2 ? uniform_illumination(m) : gaussian_illumination(m, g.real(0.2, 1.0));
    auto f = propagate(s, illum);
    CAPTURE(m);
    CHECK(std::abs(f.power() - input_power(illum)) <= 1e-10 * input_power(illum));
  }
}

TEST_CASE("flat phase gives the aperture transform") {
  std::size_t m = 16;
  auto s = make_hologram_state(m, std::vector<double>(4, 1.0));
  auto f = propagate(s, uniform_illumination(m));
  // Unitary 2m x 2m transform of an m x m block of ones: peak m^2 / (2m).
  CHECK(std::abs(f(m, m)) == doctest::Approx(static_cast<double>(m * m) / (2 * m)));
  double peak = 0.0;
  for (auto z : f.data) peak = std::max(peak, std::abs(z));
  CHECK(peak == doctest::Approx(std::abs(f(m, m))));
}

TEST_CASE("a linear phase ramp translates the pattern") {
  std::size_t m = 16;
  std::size_t n = 2 * m;
  Gen g(9);
  std::vector<std::complex<double>> base(m * m);
  for (auto& z : base) z = {g.real(0, 1), g.real(0, 1)};
  auto f0 = propagate_field(m, base);
  for (int c = 0; c < 10; ++c) {
    auto kr = g.integer(-5, 5);
    auto kc = g.integer(-5, 5);
    auto ramped = base;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t col = 0; col < m; ++col) {
        double ph = 2 * std::numbers::pi * (static_cast<double>(kr) * r + static_cast<double>(kc) * col) / n;
        ramped[r * m + col] *= std::polar(1.0, ph);
      }
    auto f1 = propagate_field(m, ramped);
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t col = 0; col < n; ++col) {
        auto rs = (r + n + static_cast<std::size_t>(kr + static_cast<std::int64_t>(n))) % n;
        auto cs = (col + n + static_cast<std::size_t>(kc + static_cast<std::int64_t>(n))) % n;
        worst = std::max(worst, std::abs(std::abs(f1(rs, cs)) - std::abs(f0(r, col))));
      }
    CAPTURE(kr);
    CAPTURE(kc);
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("cost is zero when the signal region matches the target") {
  std::size_t m = 16;
  auto s = make_hologram_state(m, std::vector<double>(4, 1.0));
  auto illum = uniform_illumination(m);
  auto f = propagate(s, illum);
  std::vector<double> amp;
  for (std::size_t j = 0; j < s.signal_region.length; ++j)
    amp.push_back(std::abs(f(s.signal_region.row, s.signal_region.col_begin + j)));
  auto matched = make_hologram_state(m, amp);
  auto cg = cost_and_gradient(matched, illum);
  CHECK(cg.overlap == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cg.cost < 1e-12);
  auto res = optimize_phase(matched, illum, {.max_iters = 50, .deficit_tolerance = 1e-12});
  CHECK(res.iterations == 0);
  CHECK(res.converged);
}

TEST_CASE("steepness scales the cost by powers of ten") {
  Gen g(13);
  auto s = random_state(g, 12, 6);
  auto illum = uniform_illumination(12);
  s.steepness_d = 0;
  double c0 = cost_and_gradient(s, illum).cost;
  s.steepness_d = 9;
  CHECK(cost_and_gradient(s, illum).cost == doctest::Approx(c0 * 1e9).epsilon(1e-12));
}

TEST_CASE("gradient agrees with finite differences") {
  Gen g(19);
  for (int c = 0; c < 3; ++c) {
    auto s = random_state(g, 16, 10);
    auto illum = uniform_illumination(16);
    auto cg = cost_and_gradient(s, illum);
    double gmax = 0.0;
    for (double v : cg.gradient.data) gmax = std::max(gmax, std::abs(v));
    const double eps = 1e-4;
    for (int k = 0; k < 40; ++k) {
      auto r = static_cast<std::size_t>(g.integer(0, 15));
      auto col = static_cast<std::size_t>(g.integer(0, 15));
      auto at = [&](double d) {
        auto t = s;
        t.phase(r, col) += d;
        return cost_and_gradient(t, illum).cost;
      };
      double fd = (-at(2 * eps) + 8 * at(eps) - 8 * at(-eps) + at(-2 * eps)) / (12 * eps);
      double a = cg.gradient(r, col);
      CHECK(std::abs(fd - a) <= 1e-5 * std::max(std::abs(a), 1e-3 * gmax));
    }
  }
}

TEST_CASE("dark signal region is a numerical failure") {
  auto s = make_hologram_state(8, std::vector<double>(4, 1.0));
  CHECK_THROWS_AS(cost_and_gradient(s, Matrix(8, 8, 0.0)), NumericalError);
  CHECK_THROWS_AS(propagate(s, uniform_illumination(6)), ValidationError);
}

TEST_CASE("optimizer is deterministic and monotone") {
  std::vector<double> amp;
  for (int j = 0; j < 12; ++j) amp.push_back(1.0 + 0.5 * std::sin(j));
  auto s = make_hologram_state(24, amp, 9, 5);
  auto illum = uniform_illumination(24);
  OptimizeOptions opts{.max_iters = 60, .seed = 99};
  auto a = optimize_phase(s, illum, opts);
  auto b = optimize_phase(s, illum, opts);
  CHECK(a.cost_history == b.cost_history);
  CHECK(a.state.phase.data == b.state.phase.data);
  for (std::size_t i = 1; i < a.cost_history.size(); ++i)
    REQUIRE(a.cost_history[i] <= a.cost_history[i - 1]);
  CHECK(a.cost_history.back() < a.cost_history.front());
}

TEST_CASE("target map") {
  Grid grid = Grid::with_spacing(12, 0.01);
  auto v = design_potential(first_primes(6).as_levels(), grid, KineticScale::half());
  auto t = potential_to_target(v, 80);
  REQUIRE(t.amplitude.size() == 80);
  double p = 0.0;
  for (double a : t.amplitude) p += a * a;
  CHECK(p == doctest::Approx(1.0));
  auto imax = std::max_element(t.amplitude.begin(), t.amplitude.end()) - t.amplitude.begin();
  auto vals = v.values();
  auto imin = std::min_element(vals.begin(), vals.end()) - vals.begin();
  double pixel = (t.map.x_max - t.map.x_min) / 79;
  CHECK(std::abs(std::abs(t.map.pixel_x(static_cast<std::size_t>(imax))) -
                 std::abs(grid.x(static_cast<std::size_t>(imin)))) < 1.5 * pixel);
  CHECK_THROWS_AS(potential_to_target(v, 80, {.ceiling = v.max() - 1.0}), ValidationError);

  std::vector<double> intensity;
  for (double a : t.amplitude) intensity.push_back(a * a);
  auto back = extract_profile(intensity, t.map, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.points(); ++i)
    if (std::abs(grid.x(i)) < t.map.x_max) worst = std::max(worst, std::abs(back[i] - v[i]));
  CHECK(worst < 0.05 * (v.max() - v.min()));
}

TEST_CASE("constant potential gives a uniform target and a flat profile") {
  Grid grid = Grid::with_spacing(4, 0.01);
  auto v = PotentialGrid::constant(grid, 3.0);
  auto t = potential_to_target(v, 20, {.ceiling = 4.0, .x_extent = 3.0});
  for (double a : t.amplitude) CHECK(a == doctest::Approx(t.amplitude[0]));
  std::vector<double> intensity(20, 1.0 / 20);
  auto back = extract_profile(intensity, t.map, grid);
  for (double x : back.values()) CHECK(x == doctest::Approx(3.0));
}

TEST_CASE("random phase does not reproduce the target") {
  Grid grid = Grid::with_spacing(12, 0.01);
  auto v = design_potential(first_primes(10).as_levels(), grid, KineticScale::half());
  auto t = potential_to_target(v, 100);
  auto s = make_hologram_state(64, t.amplitude, 9, 3);
  auto f = propagate(s, uniform_illumination(64));
  CHECK(sr_intensity_error(f, s) > 0.2);
}

TEST_CASE("a long signal region is dimmer per pixel") {
  std::size_t m = 64;
  auto illum = uniform_illumination(m);
  auto mean_intensity = [&](std::size_t len) {
    std::vector<double> amp;
    for (std::size_t j = 0; j < len; ++j) amp.push_back(1.0 + 0.5 * std::sin(0.3 * static_cast<double>(j)));
    auto s = make_hologram_state(m, amp, 9, 4);
    auto r = optimize_phase(s, illum, {.max_iters = 300});
    auto f = propagate(r.state, illum);
    CHECK(sr_intensity_error(f, r.state) < 0.01);
    return sr_power_fraction(f, r.state.signal_region) / static_cast<double>(len);
  };
  CHECK(mean_intensity(120) < 0.5 * mean_intensity(8));
}
