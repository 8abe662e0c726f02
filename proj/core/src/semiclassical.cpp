#include "primepot/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

// Boost 1.74's pchip calls isnan unqualified; make std::isnan visible to it.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "primepot/error.hpp"
#include "primepot/sequences.hpp"

namespace primepot {

double prime_density_of_states(double energy, int terms) {
  if (!(energy > 2.0) || !std::isfinite(energy)) {
    throw ValidationError("density of states needs E > 2, got " + std::to_string(energy));
  }
  if (terms < 1) throw ValidationError("terms must be >= 1");
  double sum = 0.0;
  for (int m = 1; m <= terms; ++m) {
    int const mu = moebius(m);
    if (mu == 0) continue;
    sum += mu / static_cast<double>(m) * std::pow(energy, (1.0 - m) / m);
  }
  return sum / std::log(energy);
}

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  auto const deg = static_cast<int>(n);
  for (double z : boost::math::legendre_p_zeros<double>(deg)) {
    double const dp = boost::math::legendre_p_prime(deg, z);
    double const w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes.push_back(z);
    rule.weights.push_back(w);
    if (z != 0.0) {
      rule.nodes.push_back(-z);
      rule.weights.push_back(w);
    }
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

SemiclassicalProfile invert_to_potential(const DensityOfStates& dos, double e0, double v_max,
                                         std::size_t samples, const InversionOptions& options) {
  if (!(v_max > e0)) throw ValidationError("v_max must exceed e0");
  if (samples < 2) throw ValidationError("need at least 2 samples");
  if (options.panels < 1 || options.nodes_per_panel < 1) {
    throw ValidationError("quadrature needs at least one panel and one node");
  }
  auto const& rule = gauss_legendre(options.nodes_per_panel);
  double const s_max = std::sqrt(v_max - e0);

  SemiclassicalProfile profile;
  profile.e0 = e0;
  profile.v_values.resize(samples);
  profile.x_values.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    double const s = s_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    double const v = i + 1 == samples ? v_max : e0 + s * s;
    double sum = 0.0;
    double const panel = s / static_cast<double>(options.panels);
    for (std::size_t p = 0; s > 0.0 && p < options.panels; ++p) {
      double const mid = (static_cast<double>(p) + 0.5) * panel;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double const t = mid + 0.5 * panel * rule.nodes[q];
        double const e = v - t * t;
        double const rho = dos(e);
        if (!(rho > 0.0) || !std::isfinite(rho)) {
          throw ValidationError("density of states is not positive at E = " + std::to_string(e));
        }
        sum += rule.weights[q] * 2.0 * rho;
      }
    }
    profile.v_values[i] = v;
    profile.x_values[i] = options.kinetic.value() * 0.5 * panel * sum;
  }
  for (std::size_t i = 1; i < samples; ++i) {
    if (!(profile.x_values[i] > profile.x_values[i - 1])) {
      throw NumericalError("inverted profile is not strictly increasing near V = " +
                           std::to_string(profile.v_values[i]));
    }
  }
  return profile;
}

PotentialGrid profile_to_potential(const SemiclassicalProfile& profile, const Grid& grid) {
  auto const n = profile.v_values.size();
  if (n < 2 || profile.x_values.size() != n) {
    throw ValidationError("profile needs matching x and V arrays of length >= 2");
  }
  std::vector<double> xs(profile.x_values);
  std::vector<double> ss(n);
  for (std::size_t i = 0; i < n; ++i) ss[i] = std::sqrt(std::max(profile.v_values[i] - profile.e0, 0.0));
  double const x_end = xs.back();
  double const v_end = profile.v_values.back();

  std::vector<double> half(grid.center() + 1);
  if (n >= 4) {
    boost::math::interpolators::pchip spline(std::move(xs), std::move(ss));
    for (std::size_t k = 0; k < half.size(); ++k) {
      double const x = static_cast<double>(k) * grid.spacing();
      if (x >= x_end) {
        half[k] = v_end;
      } else {
        double const s = spline(x);
        half[k] = profile.e0 + s * s;
      }
    }
  } else {
    for (std::size_t k = 0; k < half.size(); ++k) {
      double const x = static_cast<double>(k) * grid.spacing();
      auto const it = std::upper_bound(xs.begin(), xs.end(), x);
      if (it == xs.end()) {
        half[k] = v_end;
        continue;
      }
      auto const j = static_cast<std::size_t>(it - xs.begin());
      double const f = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
      double const s = ss[j - 1] + f * (ss[j] - ss[j - 1]);
      half[k] = profile.e0 + s * s;
    }
  }
  return PotentialGrid::from_half_line(grid, half, v_end);
}

double wkb_phase(const PotentialGrid& potential, double energy, KineticScale kinetic) {
  auto const v = potential.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double const k = std::sqrt(std::max(energy - v[i], 0.0));
    sum += (i == 0 || i + 1 == v.size()) ? 0.5 * k : k;
  }
  return sum * potential.grid().spacing() / (kinetic.value() * std::numbers::pi);
}

long wkb_count(const PotentialGrid& potential, double energy, KineticScale kinetic) {
  return static_cast<long>(std::floor(wkb_phase(potential, energy, kinetic) + 0.5));
}

}  // namespace primepot
