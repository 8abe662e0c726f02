#include "primepot/hologram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include <fftw3.h>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "primepot/error.hpp"

namespace primepot {

namespace {

using cplx = std::complex<double>;

// Cached FFTW plans keyed by (size, direction). Planning is not thread safe,
// execution with the new-array interface is.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto const key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  auto* buf = fftw_alloc_complex(n * n);
  auto const dim = static_cast<int>(n);
  fftw_plan p = fftw_plan_dft_2d(dim, dim, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (p == nullptr) throw NumericalError("FFTW could not plan a transform of size " + std::to_string(n));
  plans.emplace(key, p);
  return p;
}

// Swaps quadrants of an even-sized square array (fftshift == ifftshift).
void quadrant_swap(std::vector<cplx>& a, std::size_t n) {
  std::size_t const h = n / 2;
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t const c2 = (c + h) % n;
      std::swap(a[r * n + c], a[(r + h) * n + c2]);
    }
  }
}

// Unitary centred 2D DFT in place; sign = FFTW_FORWARD or FFTW_BACKWARD.
void centred_dft(std::vector<cplx>& a, std::size_t n, int sign) {
  quadrant_swap(a, n);
  auto* ptr = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(plan_for(n, sign), ptr, ptr);
  quadrant_swap(a, n);
  double const norm = 1.0 / static_cast<double>(n);
  for (auto& z : a) z *= norm;
}

std::size_t embed_offset(std::size_t m) { return m / 2; }

std::vector<cplx> modulator_field(const HologramState& state, const Matrix& illumination) {
  std::vector<cplx> z(state.m * state.m);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::polar(illumination.data[i], state.phase.data[i]);
  return z;
}

void check_illumination(const HologramState& state, const Matrix& illumination) {
  if (illumination.rows != state.m || illumination.cols != state.m) {
    throw ValidationError("illumination must be " + std::to_string(state.m) + " x " +
                          std::to_string(state.m));
  }
  for (double a : illumination.data) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("illumination must be non-negative");
  }
}

double linear_sample(const PotentialGrid& potential, double x) {
  auto const& g = potential.grid();
  double const pos = (x + g.half_width()) / g.spacing();
  if (pos <= 0.0) return potential[0];
  auto const last = static_cast<double>(potential.size() - 1);
  if (pos >= last) return potential[potential.size() - 1];
  auto const i = static_cast<std::size_t>(pos);
  double const f = pos - static_cast<double>(i);
  return (1.0 - f) * potential[i] + f * potential[i + 1];
}

}  // namespace

double TargetMap::pixel_x(std::size_t j) const {
  if (length < 2) return 0.5 * (x_min + x_max);
  return x_min + (x_max - x_min) * static_cast<double>(j) / static_cast<double>(length - 1);
}

HologramTarget potential_to_target(const PotentialGrid& potential, std::size_t sr_length,
                                   const TargetOptions& options) {
  if (sr_length < 2) throw ValidationError("signal region needs at least 2 pixels");
  double const vmax = potential.max();
  double const vmin = potential.min();
  double const range = vmax - vmin;
  double const ceiling = options.ceiling.value_or(range > 0.0 ? vmax + 0.1 * range : vmax + 1.0);
  if (ceiling < vmax) {
    throw ValidationError("ceiling " + std::to_string(ceiling) + " lies below max V " +
                          std::to_string(vmax));
  }

  auto const& grid = potential.grid();
  double extent = grid.half_width();
  if (options.x_extent) {
    extent = *options.x_extent;
    if (!(extent > 0.0)) throw ValidationError("x extent must be positive");
  } else if (range > 0.0) {
    double const tol = options.tail_tolerance * range;
    double outer = 0.0;
    for (std::size_t i = 0; i < potential.size(); ++i) {
      if (std::abs(potential[i] - potential.asymptote()) > tol) {
        outer = std::max(outer, std::abs(grid.x(i)));
      }
    }
    if (outer > 0.0) extent = std::min(outer, grid.half_width());
  }

  HologramTarget out;
  out.map.ceiling = ceiling;
  out.map.x_min = -extent;
  out.map.x_max = extent;
  out.map.asymptote = potential.asymptote();
  out.map.length = sr_length;
  std::vector<double> intensity(sr_length);
  double total = 0.0;
  for (std::size_t j = 0; j < sr_length; ++j) {
    intensity[j] = ceiling - linear_sample(potential, out.map.pixel_x(j));
    total += intensity[j];
  }
  if (!(total > 0.0)) throw ValidationError("target intensity vanishes: raise the ceiling");
  out.map.scale = total;
  out.amplitude.resize(sr_length);
  for (std::size_t j = 0; j < sr_length; ++j) out.amplitude[j] = std::sqrt(intensity[j] / total);
  return out;
}

void HologramState::validate() const {
  if (m < 2 || m % 2 != 0) throw ValidationError("modulator size m must be even and >= 2");
  if (phase.rows != m || phase.cols != m) throw ValidationError("phase matrix must be m x m");
  auto const n = padded_size();
  auto const& sr = signal_region;
  if (sr.length == 0 || sr.row == 0 || sr.row + 1 >= n || sr.col_begin == 0 ||
      sr.col_begin + sr.length >= n) {
    throw ValidationError("signal region must lie strictly inside the output plane");
  }
  if (target_amplitude.size() != sr.length) {
    throw ValidationError("target has " + std::to_string(target_amplitude.size()) +
                          " pixels for a signal region of " + std::to_string(sr.length));
  }
  double power = 0.0;
  for (double a : target_amplitude) {
    if (!(a >= 0.0)) throw ValidationError("target amplitude must be non-negative");
    power += a * a;
  }
  if (std::abs(power - 1.0) > 1e-9) throw ValidationError("target amplitude must have unit power");
}

HologramState make_hologram_state(std::size_t m, std::span<const double> target_amplitude,
                                  int steepness_d, std::optional<std::uint64_t> seed) {
  HologramState s;
  s.m = m;
  s.steepness_d = steepness_d;
  s.phase = Matrix(m, m, 0.0);
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    for (double& p : s.phase.data) p = dist(rng);
  }
  auto const n = 2 * m;
  auto const len = target_amplitude.size();
  if (len + 2 > n) {
    throw ValidationError("signal region of " + std::to_string(len) +
                          " pixels does not fit strictly inside a " + std::to_string(n) +
                          "-pixel output plane");
  }
  s.signal_region = SignalRegion{m, (n - len) / 2, len};
  double power = 0.0;
  for (double a : target_amplitude) power += a * a;
  if (!(power > 0.0)) throw ValidationError("target amplitude is identically zero");
  s.target_amplitude.reserve(len);
  for (double a : target_amplitude) s.target_amplitude.push_back(a / std::sqrt(power));
  s.validate();
  return s;
}

Matrix uniform_illumination(std::size_t m) { return Matrix(m, m, 1.0); }

Matrix gaussian_illumination(std::size_t m, double waist_fraction) {
  if (!(waist_fraction > 0.0)) throw ValidationError("waist fraction must be positive");
  Matrix out(m, m);
  double const w = waist_fraction * static_cast<double>(m);
  double const c = 0.5 * static_cast<double>(m - 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t col = 0; col < m; ++col) {
      double const dx = static_cast<double>(col) - c;
      double const dy = static_cast<double>(r) - c;
      out(r, col) = std::exp(-(dx * dx + dy * dy) / (w * w));
    }
  }
  return out;
}

double OutputField::power() const {
  double p = 0.0;
  for (auto const& z : data) p += std::norm(z);
  return p;
}

Matrix OutputField::intensity() const {
  Matrix out(size, size);
  for (std::size_t i = 0; i < data.size(); ++i) out.data[i] = std::norm(data[i]);
  return out;
}

OutputField propagate_field(std::size_t m, std::span<const std::complex<double>> modulator) {
  if (modulator.size() != m * m) throw ValidationError("modulator field must be m x m");
  if (m < 2 || m % 2 != 0) throw ValidationError("modulator size m must be even and >= 2");
  auto const n = 2 * m;
  OutputField out;
  out.size = n;
  out.data.assign(n * n, cplx(0.0, 0.0));
  auto const off = embed_offset(m);
  for (std::size_t r = 0; r < m; ++r) {
    std::copy_n(modulator.begin() + static_cast<std::ptrdiff_t>(r * m), m,
                out.data.begin() + static_cast<std::ptrdiff_t>((r + off) * n + off));
  }
  centred_dft(out.data, n, FFTW_FORWARD);
  return out;
}

OutputField propagate(const HologramState& state, const Matrix& illumination) {
  state.validate();
  check_illumination(state, illumination);
  auto const z = modulator_field(state, illumination);
  return propagate_field(state.m, z);
}

namespace {

CostGradient evaluate(const HologramState& state, const Matrix& illumination, bool want_gradient) {
  auto const m = state.m;
  auto const n = state.padded_size();
  auto const z = modulator_field(state, illumination);
  auto field = propagate_field(m, z);

  auto const& sr = state.signal_region;
  double power = 0.0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < sr.length; ++k) {
    auto const e = field(sr.row, sr.col_begin + k);
    power += std::norm(e);
    weighted += state.target_amplitude[k] * std::abs(e);
  }
  if (!(power > 0.0)) throw NumericalError("signal region receives no power");
  double const root = std::sqrt(power);
  double const overlap = weighted / root;
  double const scale = std::pow(10.0, state.steepness_d);
  CostGradient out;
  out.overlap = overlap;
  out.cost = scale * (1.0 - overlap) * (1.0 - overlap);
  if (!want_gradient) return out;

  // G = dO/dE* on the signal region, zero elsewhere; pulled back through the
  // adjoint (inverse) transform.
  std::vector<cplx> g(n * n, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < sr.length; ++k) {
    auto const idx = sr.row * n + sr.col_begin + k;
    auto const e = field.data[idx];
    double const mag = std::abs(e);
    double const ratio = mag > 0.0 ? state.target_amplitude[k] / mag : 0.0;
    g[idx] = e * (ratio - overlap / root) / root;
  }
  centred_dft(g, n, FFTW_BACKWARD);

  out.gradient = Matrix(m, m);
  auto const off = embed_offset(m);
  double const factor = -2.0 * scale * (1.0 - overlap);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      auto const zj = z[r * m + c];
      auto const gj = g[(r + off) * n + c + off];
      double const d_overlap = -std::imag(zj * std::conj(gj));
      out.gradient(r, c) = factor * d_overlap;
    }
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

CostGradient cost_and_gradient(const HologramState& state, const Matrix& illumination) {
  state.validate();
  check_illumination(state, illumination);
  return evaluate(state, illumination, true);
}

OptimizeResult optimize_phase(const HologramState& initial, const Matrix& illumination,
                              const OptimizeOptions& options) {
  if (options.max_iters < 1) throw ValidationError("max_iters must be >= 1");
  initial.validate();
  check_illumination(initial, illumination);

  OptimizeResult result;
  result.state = initial;
  auto& state = result.state;
  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    for (double& p : state.phase.data) p = dist(rng);
  }

  auto current = evaluate(state, illumination, true);
  result.cost_history.push_back(current.cost);
  std::vector<double> grad = current.gradient.data;
  std::vector<double> dir(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) dir[i] = -grad[i];
  double step = 0.0;

  auto done = [&](const CostGradient& cg) { return 1.0 - cg.overlap <= options.deficit_tolerance; };
  if (done(current)) {
    result.converged = true;
    return result;
  }

  HologramState trial = state;
  bool restarted = true;
  while (result.iterations < options.max_iters) {
    double slope = dot(grad, dir);
    if (!(slope < 0.0)) {
      for (std::size_t i = 0; i < grad.size(); ++i) dir[i] = -grad[i];
      slope = -dot(grad, grad);
      restarted = true;
    }
    if (slope == 0.0) {
      result.converged = true;
      break;
    }
    double dir_max = 0.0;
    for (double d : dir) dir_max = std::max(dir_max, std::abs(d));
    // First trial moves the largest pixel by at most 0.5 rad; later ones
    // start from twice the previous accepted step.
    double alpha = step > 0.0 ? 2.0 * step : 0.5 / dir_max;
    alpha = std::min(alpha, std::numbers::pi / dir_max);

    bool accepted = false;
    CostGradient next;
    for (std::size_t b = 0; b < options.max_backtracks; ++b) {
      for (std::size_t i = 0; i < dir.size(); ++i) {
        double p = state.phase.data[i] + alpha * dir[i];
        p = std::fmod(p, 2.0 * std::numbers::pi);
        if (p < 0.0) p += 2.0 * std::numbers::pi;
        trial.phase.data[i] = p;
      }
      next = evaluate(trial, illumination, false);
      if (next.cost <= current.cost + options.armijo * alpha * slope && next.cost < current.cost) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (restarted) {
        result.line_search_failed = true;
        break;
      }
      for (std::size_t i = 0; i < grad.size(); ++i) dir[i] = -grad[i];
      restarted = true;
      step = 0.0;
      continue;
    }

    std::swap(state.phase, trial.phase);
    trial.phase = state.phase;
    next = evaluate(state, illumination, true);
    ++result.iterations;
    result.cost_history.push_back(next.cost);
    step = alpha;

    auto const& g_new = next.gradient.data;
    double num = 0.0;
    for (std::size_t i = 0; i < g_new.size(); ++i) num += g_new[i] * (g_new[i] - grad[i]);
    double const beta = std::max(0.0, num / dot(grad, grad));
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = -g_new[i] + beta * dir[i];
    restarted = beta == 0.0;
    grad = g_new;
    current = std::move(next);
    if (done(current)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<double> signal_intensity(const OutputField& field, const SignalRegion& region) {
  if (region.row >= field.size || region.col_begin + region.length > field.size) {
    throw ValidationError("signal region lies outside the field");
  }
  std::vector<double> out(region.length);
  double total = 0.0;
  for (std::size_t k = 0; k < region.length; ++k) {
    out[k] = std::norm(field(region.row, region.col_begin + k));
    total += out[k];
  }
  if (!(total > 0.0)) throw NumericalError("signal region receives no power");
  for (double& v : out) v /= total;
  return out;
}

double sr_intensity_error(const OutputField& field, const HologramState& state) {
  auto const got = signal_intensity(field, state.signal_region);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) {
    double const t = state.target_amplitude[k] * state.target_amplitude[k];
    num += (got[k] - t) * (got[k] - t);
    den += t * t;
  }
  return std::sqrt(num / den);
}

double sr_power_fraction(const OutputField& field, const SignalRegion& region) {
  double sr = 0.0;
  for (std::size_t k = 0; k < region.length; ++k) sr += std::norm(field(region.row, region.col_begin + k));
  return sr / field.power();
}

PotentialGrid extract_profile(std::span<const double> sr_intensity, const TargetMap& map,
                              const Grid& grid) {
  if (sr_intensity.size() != map.length || map.length < 4) {
    throw ValidationError("intensity row has " + std::to_string(sr_intensity.size()) +
                          " pixels, map expects " + std::to_string(map.length) + " (>= 4)");
  }
  double total = 0.0;
  for (double v : sr_intensity) {
    if (!(v >= 0.0)) throw ValidationError("intensities must be non-negative");
    total += v;
  }
  if (!(total > 0.0)) throw ValidationError("intensity row is dark");
  std::vector<double> pixels(map.length);
  for (std::size_t j = 0; j < map.length; ++j) {
    pixels[j] = map.ceiling - map.scale * sr_intensity[j] / total;
  }
  double const h = (map.x_max - map.x_min) / static_cast<double>(map.length - 1);
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline(pixels.begin(), pixels.end(),
                                                                    map.x_min, h);
  std::vector<double> values(grid.points());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double const x = grid.x(i);
    values[i] = (x < map.x_min || x > map.x_max) ? map.asymptote : spline(x);
  }
  return PotentialGrid(grid, std::move(values), map.asymptote);
}

PotentialGrid extract_profile(const OutputField& field, const HologramState& state,
                              const TargetMap& map, const Grid& grid) {
  return extract_profile(signal_intensity(field, state.signal_region), map, grid);
}

}  // namespace primepot
