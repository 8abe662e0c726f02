#include "primepot/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "primepot/error.hpp"
#include "primepot/sequences.hpp"

namespace primepot {

namespace {

using cplx = std::complex<double>;

struct State {
  cplx psi;
  cplx dpsi;
};

// Carries (psi, psi') from x + h back to x across a cell of constant
// potential v.
State step_back(State s, double energy, double v, double h, double inv_c2) {
  double const q2 = (energy - v) * inv_c2;
  if (q2 > 0.0) {
    double const q = std::sqrt(q2);
    double const cs = std::cos(q * h);
    double const sn = std::sin(q * h);
    return {s.psi * cs - s.dpsi * (sn / q), s.psi * (q * sn) + s.dpsi * cs};
  }
  if (q2 < 0.0) {
    double const kappa = std::sqrt(-q2);
    double const ch = std::cosh(kappa * h);
    double const sh = std::sinh(kappa * h);
    return {s.psi * ch - s.dpsi * (sh / kappa), -s.psi * (kappa * sh) + s.dpsi * ch};
  }
  return {s.psi - s.dpsi * h, s.dpsi};
}

double lead_wavenumber(const PotentialGrid& potential, double energy, KineticScale kinetic) {
  if (!(energy > potential.asymptote()) || !std::isfinite(energy)) {
    throw ValidationError("scattering energy " + std::to_string(energy) +
                          " must lie above the lead potential " +
                          std::to_string(potential.asymptote()));
  }
  return std::sqrt(energy - potential.asymptote()) / kinetic.value();
}

}  // namespace

TruncatedPotential truncate_potential(const PotentialGrid& potential, double cutoff,
                                      const TruncateOptions& options) {
  if (!(cutoff > potential.min())) {
    throw ValidationError("cutoff " + std::to_string(cutoff) + " lies below the potential minimum " +
                          std::to_string(potential.min()));
  }
  if (options.plateau < 0.0) throw ValidationError("plateau width must be >= 0");
  auto const v = potential.values();
  auto const& grid = potential.grid();
  auto const n = v.size();

  std::size_t lo = 0;
  std::size_t hi = n - 1;
  while (lo < hi && v[lo] >= cutoff) ++lo;
  while (hi > lo && v[hi] >= cutoff) --hi;
  bool const clipped_ends = lo > 0 || hi + 1 < n;
  if (lo > 0) --lo;
  if (hi + 1 < n) ++hi;
  std::size_t pad = 0;
  if (clipped_ends) pad = static_cast<std::size_t>(std::lround(options.plateau / grid.spacing()));

  std::vector<double> kept;
  kept.reserve(hi - lo + 1 + 2 * pad + 1);
  for (std::size_t i = 0; i < pad; ++i) kept.push_back(cutoff);
  for (std::size_t i = lo; i <= hi; ++i) kept.push_back(std::min(v[i], cutoff));
  for (std::size_t i = 0; i < pad; ++i) kept.push_back(cutoff);
  if (kept.size() % 2 == 0) kept.push_back(clipped_ends ? cutoff : kept.back());
  if (kept.size() < 3) throw ValidationError("truncation leaves fewer than three samples");
  for (double& x : kept) x -= options.floor;

  double const half_width = 0.5 * grid.spacing() * static_cast<double>(kept.size() - 1);
  Grid out_grid(half_width, kept.size());
  return TruncatedPotential{PotentialGrid(out_grid, std::move(kept), 0.0), options.floor, cutoff};
}

Transmission transmission(const PotentialGrid& potential, double energy, KineticScale kinetic) {
  double const k = lead_wavenumber(potential, energy, kinetic);
  double const h = potential.grid().spacing();
  double const inv_c2 = 1.0 / kinetic.squared();
  auto const v = potential.values();

  // Outgoing wave e^{ik(x - x_R)} on the right; log_scale tracks rescaling.
  State s{cplx(1.0, 0.0), cplx(0.0, k)};
  double log_scale = 0.0;
  for (std::size_t i = v.size(); i-- > 0;) {
    s = step_back(s, energy, v[i], h, inv_c2);
    double const size = std::max(std::abs(s.psi), std::abs(s.dpsi) / k);
    if (size > 1e100) {
      s.psi /= size;
      s.dpsi /= size;
      log_scale += std::log(size);
    }
  }
  cplx const ik(0.0, k);
  cplx const incident = 0.5 * (s.psi + s.dpsi / ik);
  cplx const reflected = 0.5 * (s.psi - s.dpsi / ik);
  double const a2 = std::norm(incident);
  Transmission out;
  out.t = std::exp(-2.0 * log_scale) / a2;
  out.r = std::norm(reflected) / a2;
  return out;
}

std::array<cplx, 4> transfer_matrix(const PotentialGrid& potential, double energy,
                                    KineticScale kinetic) {
  double const k = lead_wavenumber(potential, energy, kinetic);
  double const h = potential.grid().spacing();
  double const inv_c2 = 1.0 / kinetic.squared();
  auto const v = potential.values();
  cplx const ik(0.0, k);

  std::array<cplx, 4> m{};
  for (int column = 0; column < 2; ++column) {
    State s{cplx(1.0, 0.0), column == 0 ? ik : -ik};
    for (std::size_t i = v.size(); i-- > 0;) s = step_back(s, energy, v[i], h, inv_c2);
    m[column] = 0.5 * (s.psi + s.dpsi / ik);      // row 0: right-moving on the left
    m[2 + column] = 0.5 * (s.psi - s.dpsi / ik);  // row 1: left-moving on the left
  }
  return m;
}

namespace {

Resonance refine_peak(const PotentialGrid& potential, double lo, double hi, KineticScale kinetic) {
  auto neg_log_t = [&](double e) { return -std::log(transmission(potential, e, kinetic).t); };
  auto const best = boost::math::tools::brent_find_minima(neg_log_t, lo, hi, 52);
  return Resonance{best.first, std::exp(-best.second)};
}

}  // namespace

TransmissionScan transmission_scan(const PotentialGrid& potential, std::span<const double> energies,
                                   KineticScale kinetic, const ScanOptions& options) {
  for (std::size_t i = 1; i < energies.size(); ++i) {
    if (!(energies[i] > energies[i - 1])) {
      throw ValidationError("scan energies must be strictly ascending");
    }
  }
  TransmissionScan scan;
  scan.energies.assign(energies.begin(), energies.end());
  scan.t_values.reserve(energies.size());
  scan.r_values.reserve(energies.size());
  for (double e : energies) {
    auto const tr = transmission(potential, e, kinetic);
    scan.t_values.push_back(std::clamp(tr.t, 0.0, 1.0));
    scan.r_values.push_back(std::clamp(tr.r, 0.0, 1.0));
  }
  auto const& t = scan.t_values;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (!(t[i] > t[i - 1] && t[i] > t[i + 1])) continue;
    auto peak = refine_peak(potential, energies[i - 1], energies[i + 1], kinetic);
    if (peak.peak < t[i]) peak = Resonance{energies[i], t[i]};
    if (peak.peak >= options.resonance_threshold) {
      peak.peak = std::min(peak.peak, 1.0);
      scan.resonances.push_back(peak);
    }
  }
  return scan;
}

Resonance peak_transmission(const PotentialGrid& potential, double lo, double hi,
                            KineticScale kinetic, std::size_t samples) {
  if (!(hi > lo)) throw ValidationError("peak_transmission needs lo < hi");
  samples = std::max<std::size_t>(samples, 3);
  std::vector<double> e(samples);
  std::vector<double> t(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    t[i] = transmission(potential, e[i], kinetic).t;
  }
  Resonance best{e[0], t[0]};
  for (std::size_t i = 0; i < samples; ++i) {
    if (t[i] > best.peak) best = Resonance{e[i], t[i]};
    bool const left_ok = i == 0 || t[i] >= t[i - 1];
    bool const right_ok = i + 1 == samples || t[i] >= t[i + 1];
    if (!(left_ok && right_ok)) continue;
    double const a = e[i == 0 ? 0 : i - 1];
    double const b = e[i + 1 == samples ? i : i + 1];
    auto const refined = refine_peak(potential, a, b, kinetic);
    if (refined.peak > best.peak) best = refined;
  }
  best.peak = std::min(best.peak, 1.0);
  return best;
}

PotentialGrid compose_apparatus(const PotentialGrid& a, const PotentialGrid& b, double separation) {
  if (separation < 0.0) throw ValidationError("separation must be >= 0");
  double const h = a.grid().spacing();
  if (std::abs(h - b.grid().spacing()) > 1e-12 * h) {
    throw ValidationError("apparatus parts must share the grid spacing");
  }
  if (std::abs(a.asymptote() - b.asymptote()) > 1e-9) {
    throw ValidationError("apparatus parts have different asymptotes (" +
                          std::to_string(a.asymptote()) + " vs " + std::to_string(b.asymptote()) +
                          ")");
  }
  auto gap = static_cast<std::size_t>(std::lround(separation / h));
  if ((a.size() + gap + b.size()) % 2 == 0) ++gap;

  std::vector<double> values;
  values.reserve(a.size() + gap + b.size());
  values.insert(values.end(), a.values().begin(), a.values().end());
  values.insert(values.end(), gap, a.asymptote());
  values.insert(values.end(), b.values().begin(), b.values().end());
  Grid const grid(0.5 * h * static_cast<double>(values.size() - 1), values.size());
  return PotentialGrid(grid, std::move(values), a.asymptote());
}

bool lucky_prime_test(std::int64_t w, const PotentialGrid& apparatus, KineticScale kinetic,
                      double threshold, double window) {
  double const lo = static_cast<double>(w) - window;
  double const hi = static_cast<double>(w) + window;
  if (!(lo > apparatus.asymptote()) || !(hi < apparatus.max())) {
    throw ValidationError("w = " + std::to_string(w) + " lies outside the apparatus scan range (" +
                          std::to_string(apparatus.asymptote()) + ", " +
                          std::to_string(apparatus.max()) + ")");
  }
  return peak_transmission(apparatus, lo, hi, kinetic).peak > threshold;
}

double cutoff_for_opacity(const PotentialGrid& potential, double energy, double opacity,
                          KineticScale kinetic) {
  if (!(opacity > 0.0)) throw ValidationError("opacity must be positive");
  auto const v = potential.values();
  auto const c = potential.grid().center();
  std::size_t turning = v.size();
  for (std::size_t i = v.size(); i-- > c;) {
    if (v[i] < energy) {
      turning = i;
      break;
    }
  }
  if (turning == v.size()) {
    throw ValidationError("energy " + std::to_string(energy) + " lies below the potential");
  }
  double const h = potential.grid().spacing();

  // Opacity of the right flank once clipped at `cut`: the clipped barrier
  // runs from the outer turning point to the outermost sample below `cut`.
  // It never decreases as `cut` rises.
  auto clipped_opacity = [&](double cut) {
    std::size_t end = v.size() - 1;
    while (end > turning && v[end] >= cut) --end;
    double sum = 0.0;
    for (std::size_t i = turning + 1; i <= std::min(end + 1, v.size() - 1); ++i) {
      sum += std::sqrt(std::max(std::min(v[i], cut) - energy, 0.0));
    }
    return sum * h / kinetic.value();
  };
  // Never clip the bumps enclosed by the outer turning point: that would move
  // the quasi-bound levels instead of only opening the barrier.
  double lo = std::max(energy, *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(c),
                                                 v.begin() + static_cast<std::ptrdiff_t>(turning) + 1));
  if (clipped_opacity(lo) >= opacity) return lo;
  double hi = *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(turning), v.end());
  if (clipped_opacity(hi) < opacity) {
    throw ValidationError("energy " + std::to_string(energy) +
                          " is too close to the continuum to reach opacity " +
                          std::to_string(opacity));
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++iter) {
    double const mid = 0.5 * (lo + hi);
    (clipped_opacity(mid) < opacity ? lo : hi) = mid;
  }
  return hi;
}

LuckyPrimeFilter::LuckyPrimeFilter(const FilterOptions& options)
    : options_(options),
      lucky_(design_potential(first_lucky(options.lucky_count).as_levels(),
                              Grid::with_spacing(options.half_width, options.spacing),
                              options.kinetic, options.design)),
      prime_(design_potential(first_primes(options.prime_count).as_levels(),
                              Grid::with_spacing(options.half_width, options.spacing),
                              options.kinetic, options.design)) {}

double LuckyPrimeFilter::max_testable() const {
  double const top = std::min(lucky_.asymptote(), prime_.asymptote());
  return top - 4.0 * options_.window;
}

PotentialGrid LuckyPrimeFilter::apparatus(std::int64_t w) const {
  auto const energy = static_cast<double>(w);
  if (!(energy - options_.window > 0.0) || energy > max_testable()) {
    throw ValidationError("w = " + std::to_string(w) + " is outside the filter range (0, " +
                          std::to_string(max_testable()) + "]");
  }
  auto cut = [&](const PotentialGrid& device) {
    double const cutoff = cutoff_for_opacity(device, energy, options_.opacity, options_.kinetic);
    return truncate_potential(device, cutoff).potential;
  };
  return compose_apparatus(cut(lucky_), cut(prime_), options_.separation);
}

Resonance LuckyPrimeFilter::peak(std::int64_t w) const {
  auto const g = apparatus(w);
  double const e = static_cast<double>(w);
  return peak_transmission(g, e - options_.window, e + options_.window, options_.kinetic);
}

bool LuckyPrimeFilter::test(std::int64_t w) const {
  return lucky_prime_test(w, apparatus(w), options_.kinetic, options_.threshold, options_.window);
}

}  // namespace primepot
