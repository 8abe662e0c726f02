#include "primepot/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <lapacke.h>

#include "primepot/error.hpp"

namespace primepot {

int count_nodes(std::span<const double> psi) {
  double peak = 0.0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  double const dead_band = 1e-8 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : psi) {
    if (std::abs(v) <= dead_band) continue;
    int const sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

Eigenstates solve_bound_states(const PotentialGrid& potential, KineticScale kinetic,
                               const SolveOptions& options) {
  auto const& grid = potential.grid();
  auto const v = potential.values();
  double const h = grid.spacing();
  double const c2 = kinetic.squared();
  double const vmin = potential.min();
  double const vmax = potential.max();

  if (h * h * (vmax - vmin) > 0.1 * c2) {
    double const suggested = std::sqrt(0.1 * c2 / (vmax - vmin));
    throw NumericalError("grid spacing " + std::to_string(h) +
                         " does not resolve the potential; use spacing <= " +
                         std::to_string(suggested));
  }

  double const edge = 0.5 * (v.front() + v.back());
  double const margin = options.margin.value_or(1e-3 * (edge - vmin));

  Eigenstates out;
  out.spectrum.continuum_edge = edge;
  out.spectrum.kinetic_scale = kinetic.value();
  double const upper = edge - margin;
  if (!(upper > vmin)) return out;

  // Interior nodes 1..n-2 are unknowns.
  auto const n = static_cast<lapack_int>(v.size() - 2);
  double const off = -c2 / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> sub(static_cast<std::size_t>(n), off);
  for (lapack_int i = 0; i < n; ++i) diag[i] = v[i + 1] + 2.0 * c2 / (h * h);

  lapack_int found = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  // Gershgorin lower bound keeps the interval half-open at the bottom.
  double const lower = vmin - 1.0;
  std::vector<double> z;
  std::vector<lapack_int> support;
  // Count first to size the eigenvector buffer.
  {
    std::vector<double> d(diag), e(sub);
    std::vector<double> dummy_z(1);
    std::vector<lapack_int> dummy_support(2 * static_cast<std::size_t>(n));
    lapack_int const info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'V', n, d.data(), e.data(),
                                           lower, upper, 0, 0, 0.0, &found, w.data(),
                                           dummy_z.data(), 1, dummy_support.data());
    if (info != 0) throw NumericalError("dstevr failed with info " + std::to_string(info));
  }
  if (found == 0) return out;
  z.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(found) + static_cast<std::size_t>(n));
  support.resize(2 * static_cast<std::size_t>(n));
  {
    std::vector<double> d(diag), e(sub);
    lapack_int m = 0;
    lapack_int const info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'V', n, d.data(), e.data(), lower, upper, 0, 0,
                       0.0, &m, w.data(), z.data(), n, support.data());
    if (info != 0) throw NumericalError("dstevr failed with info " + std::to_string(info));
    found = m;
  }

  double const norm_weight = h;
  for (lapack_int j = 0; j < found; ++j) {
    std::vector<double> psi(v.size(), 0.0);
    double norm = 0.0;
    for (lapack_int i = 0; i < n; ++i) {
      double const value = z[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + i];
      psi[static_cast<std::size_t>(i) + 1] = value;
      norm += value * value;
    }
    // End nodes are zero, so the trapezoid rule reduces to h * sum.
    double const scale = 1.0 / std::sqrt(norm * norm_weight);
    for (double& p : psi) p *= scale;
    out.spectrum.eigenvalues.push_back(w[j]);
    out.spectrum.node_counts.push_back(count_nodes(psi));
    out.vectors.push_back(std::move(psi));
  }
  return out;
}

Spectrum bound_states(const PotentialGrid& potential, KineticScale kinetic,
                      const SolveOptions& options) {
  return solve_bound_states(potential, kinetic, options).spectrum;
}

bool DiscrepancyReport::all_round() const {
  return std::all_of(rounds_to_target.begin(), rounds_to_target.end(), [](bool b) { return b; });
}

double DiscrepancyReport::max_abs() const {
  double worst = 0.0;
  for (double a : per_level_abs) worst = std::max(worst, a);
  return worst;
}

DiscrepancyReport compare_spectrum(std::span<const double> eigenvalues,
                                   std::span<const double> targets) {
  if (eigenvalues.size() != targets.size()) {
    throw ValidationError("spectrum has " + std::to_string(eigenvalues.size()) +
                          " levels but " + std::to_string(targets.size()) + " targets were given");
  }
  DiscrepancyReport report;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    double const diff = eigenvalues[i] - targets[i];
    double const frac = targets[i] != 0.0 ? std::abs(diff / targets[i]) : std::abs(diff);
    report.per_level_abs.push_back(std::abs(diff));
    report.per_level_frac.push_back(frac);
    report.rounds_to_target.push_back(std::nearbyint(eigenvalues[i]) == std::nearbyint(targets[i]));
    sum_sq += frac * frac;
  }
  report.rms_frac = targets.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(targets.size()));
  return report;
}

DiscrepancyReport compare_spectrum(const Spectrum& spectrum, std::span<const double> targets) {
  return compare_spectrum(spectrum.eigenvalues, targets);
}

}  // namespace primepot
