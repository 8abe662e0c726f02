#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "primepot/grid.hpp"
#include "primepot/susy.hpp"

namespace primepot {

struct TruncateOptions {
  /// Energy of the free leads outside the kept region. Energies are
  /// re-referenced so that the leads sit at 0.
  double floor = 0.0;
  /// Extra width kept beyond the outermost crossing, filled with the cutoff.
  double plateau = 0.0;
};

struct TruncatedPotential {
  PotentialGrid potential;  // asymptote 0
  double shift = 0.0;       // original energy = scattering energy + shift
  double cutoff = 0.0;
};

/// Clips V at `cutoff` and keeps the region out to the outermost node where
/// V < cutoff (plus an optional plateau); beyond it the potential drops to
/// free leads at `floor`. A cutoff above max V keeps every sample unchanged.
TruncatedPotential truncate_potential(const PotentialGrid& potential, double cutoff,
                                      const TruncateOptions& options = {});

struct Transmission {
  double t = 0.0;  // |t|^2
  double r = 0.0;  // |r|^2
};

/// Transmission through piecewise-constant cells (one cell of width h per
/// node) between leads at potential.asymptote(). The state is propagated
/// from the transmitted side with periodic rescaling, so thick barriers do
/// not overflow. Requires energy > asymptote.
Transmission transmission(const PotentialGrid& potential, double energy, KineticScale kinetic);

/// Full 2x2 transfer matrix in the lead plane-wave basis, mapping
/// (right-moving, left-moving) amplitudes on the right to those on the left.
/// No rescaling; intended for moderate potentials.
std::array<std::complex<double>, 4> transfer_matrix(const PotentialGrid& potential, double energy,
                                                    KineticScale kinetic);

struct Resonance {
  double energy = 0.0;
  double peak = 0.0;
};

struct TransmissionScan {
  std::vector<double> energies;
  std::vector<double> t_values;
  std::vector<double> r_values;
  std::vector<Resonance> resonances;
};

struct ScanOptions {
  /// Refined local maxima at or above this transmission are reported.
  double resonance_threshold = 0.5;
};

TransmissionScan transmission_scan(const PotentialGrid& potential, std::span<const double> energies,
                                   KineticScale kinetic, const ScanOptions& options = {});

/// Maximum of T over [lo, hi]: a uniform scan whose local maxima are refined
/// by Brent's method, so resonances narrower than the scan step are found.
Resonance peak_transmission(const PotentialGrid& potential, double lo, double hi,
                            KineticScale kinetic, std::size_t samples = 201);

/// A, a flat gap of `separation` at the common asymptote, then B.
PotentialGrid compose_apparatus(const PotentialGrid& a, const PotentialGrid& b, double separation);

/// True iff max T over [w - window, w + window] exceeds `threshold`.
bool lucky_prime_test(std::int64_t w, const PotentialGrid& apparatus, KineticScale kinetic,
                      double threshold = 0.5, double window = 0.5);

/// Lowest cutoff at which the truncated copy of `potential` gives the level
/// at `energy` a WKB barrier opacity of `opacity`: the integral of
/// sqrt(min(V, cutoff) - energy) / c across the clipped right flank. The
/// result never clips the bumps enclosed by the outer turning point.
double cutoff_for_opacity(const PotentialGrid& potential, double energy, double opacity,
                          KineticScale kinetic);

struct FilterOptions {
  std::size_t lucky_count = 20;
  std::size_t prime_count = 20;
  double half_width = 12.0;
  double spacing = 0.0025;
  KineticScale kinetic = KineticScale::half();
  DesignOptions design;
  /// Barrier opacity applied to the tested energy when choosing each
  /// device's cutoff.
  double opacity = 3.0;
  /// The devices touch by default. A flat gap between them forms a cavity
  /// whose modes transmit fully at energies that are not levels of either
  /// device.
  double separation = 0.0;
  double threshold = 0.5;
  double window = 0.5;
};

/// The composite lucky-then-prime transmission filter. Both devices are
/// designed once; each query truncates them at cutoffs tuned to the
/// queried energy.
class LuckyPrimeFilter {
 public:
  explicit LuckyPrimeFilter(const FilterOptions& options = {});

  const PotentialGrid& lucky_device() const { return lucky_; }
  const PotentialGrid& prime_device() const { return prime_; }
  const FilterOptions& options() const { return options_; }

  /// Largest w the devices can certify.
  double max_testable() const;
  PotentialGrid apparatus(std::int64_t w) const;
  /// Peak composite transmission in the window around w.
  Resonance peak(std::int64_t w) const;
  bool test(std::int64_t w) const;

 private:
  FilterOptions options_;
  PotentialGrid lucky_;
  PotentialGrid prime_;
};

}  // namespace primepot
