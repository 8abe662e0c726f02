#include "primepot/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "primepot/error.hpp"
#include "primepot/io.hpp"
#include "primepot/sequences.hpp"
#include "primepot/susy.hpp"

namespace primepot {

namespace {

std::string_view trim(std::string_view s) {
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  Int v{};
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("config key '" + std::string(key) + "': not an integer: '" +
                          std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "on" || text == "1") return true;
  if (text == "false" || text == "off" || text == "0") return false;
  throw ValidationError("config key '" + std::string(key) + "': not a boolean: '" +
                        std::string(text) + "'");
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("stage ") + name + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("stage ") + name + ": " + e.what());
  }
}

}  // namespace

SequenceSpec SequenceSpec::parse(std::string_view text) {
  text = trim(text);
  auto const colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("sequence spec must be primes:N, lucky:N or file:PATH, got '" +
                          std::string(text) + "'");
  }
  auto const kind = text.substr(0, colon);
  auto const arg = text.substr(colon + 1);
  SequenceSpec spec;
  if (kind == "file") {
    if (arg.empty()) throw ValidationError("file: sequence spec needs a path");
    spec.kind = Kind::file;
    spec.path = std::string(arg);
    return spec;
  }
  if (kind == "primes") {
    spec.kind = Kind::primes;
  } else if (kind == "lucky") {
    spec.kind = Kind::lucky;
  } else {
    throw ValidationError("unknown sequence kind '" + std::string(kind) + "'");
  }
  spec.count = parse_integer<std::size_t>("sequence", arg);
  if (spec.count < 2) throw ValidationError("sequence needs at least 2 levels");
  return spec;
}

std::string SequenceSpec::to_string() const {
  switch (kind) {
    case Kind::primes:
      return "primes:" + std::to_string(count);
    case Kind::lucky:
      return "lucky:" + std::to_string(count);
    case Kind::file:
      return "file:" + path;
  }
  return {};
}

std::vector<double> SequenceSpec::levels() const {
  switch (kind) {
    case Kind::primes:
      return first_primes(count).as_levels();
    case Kind::lucky:
      return first_lucky(count).as_levels();
    case Kind::file: {
      std::ifstream in(path);
      if (!in) throw ValidationError("cannot open level file " + path);
      return read_levels(in);
    }
  }
  return {};
}

const std::vector<std::string>& PipelineConfig::keys() {
  static const std::vector<std::string> k = {
      "sequence", "half_width", "spacing", "kinetic",    "top_binding", "hologram",
      "holo_m",   "holo_sr",    "holo_d",  "holo_iters", "seed",        "output_dir"};
  return k;
}

void PipelineConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "sequence") {
    sequence = std::string(value);
  } else if (key == "half_width") {
    half_width = parse_double(value);
  } else if (key == "spacing") {
    spacing = parse_double(value);
  } else if (key == "kinetic") {
    kinetic = std::string(value);
  } else if (key == "top_binding") {
    top_binding = parse_double(value);
  } else if (key == "hologram") {
    hologram = parse_bool(key, value);
  } else if (key == "holo_m") {
    holo_m = parse_integer<std::size_t>(key, value);
  } else if (key == "holo_sr") {
    holo_sr = parse_integer<std::size_t>(key, value);
  } else if (key == "holo_d") {
    holo_d = parse_integer<int>(key, value);
  } else if (key == "holo_iters") {
    holo_iters = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "output_dir") {
    output_dir = std::string(value);
  } else {
    throw ValidationError("unknown config key '" + std::string(key) + "'");
  }
}

std::string PipelineConfig::get(std::string_view key) const {
  if (key == "sequence") return sequence;
  if (key == "half_width") return format_double(half_width);
  if (key == "spacing") return format_double(spacing);
  if (key == "kinetic") return kinetic;
  if (key == "top_binding") return format_double(top_binding);
  if (key == "hologram") return hologram ? "true" : "false";
  if (key == "holo_m") return std::to_string(holo_m);
  if (key == "holo_sr") return std::to_string(holo_sr);
  if (key == "holo_d") return std::to_string(holo_d);
  if (key == "holo_iters") return std::to_string(holo_iters);
  if (key == "seed") return std::to_string(seed);
  if (key == "output_dir") return output_dir;
  throw ValidationError("unknown config key '" + std::string(key) + "'");
}

std::string PipelineConfig::to_text() const {
  std::string out;
  for (auto const& k : keys()) out += k + " = " + get(k) + "\n";
  return out;
}

PipelineConfig PipelineConfig::from_text(std::string_view text) {
  PipelineConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto const nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto const hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto const eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

void PipelineConfig::validate() const {
  (void)SequenceSpec::parse(sequence);
  (void)parse_kinetic(kinetic);
  if (!(half_width > 0.0) || !(spacing > 0.0) || spacing >= half_width) {
    throw ValidationError("need 0 < spacing < half_width");
  }
  if (top_binding < 0.0) throw ValidationError("top_binding must be >= 0");
  if (hologram) {
    if (holo_m < 2 || holo_m % 2 != 0) throw ValidationError("holo_m must be even and >= 2");
    if (holo_sr < 4 || holo_sr + 2 > 2 * holo_m) {
      throw ValidationError("holo_sr must be >= 4 and fit inside the 2m output plane");
    }
    if (holo_iters < 1) throw ValidationError("holo_iters must be >= 1");
  }
  if (output_dir.empty()) throw ValidationError("output_dir must not be empty");
}

std::string HologramMeta::to_json() const {
  nlohmann::json j = {{"m", m},
                      {"sr_row", region.row},
                      {"sr_col_begin", region.col_begin},
                      {"sr_length", region.length},
                      {"ceiling", map.ceiling},
                      {"scale", map.scale},
                      {"x_min", map.x_min},
                      {"x_max", map.x_max},
                      {"asymptote", map.asymptote}};
  return j.dump(2) + "\n";
}

HologramMeta HologramMeta::from_json(std::string_view text) {
  try {
    auto const j = nlohmann::json::parse(text);
    HologramMeta meta;
    meta.m = j.at("m").get<std::size_t>();
    meta.region.row = j.at("sr_row").get<std::size_t>();
    meta.region.col_begin = j.at("sr_col_begin").get<std::size_t>();
    meta.region.length = j.at("sr_length").get<std::size_t>();
    meta.map.ceiling = j.at("ceiling").get<double>();
    meta.map.scale = j.at("scale").get<double>();
    meta.map.x_min = j.at("x_min").get<double>();
    meta.map.x_max = j.at("x_max").get<double>();
    meta.map.asymptote = j.at("asymptote").get<double>();
    meta.map.length = meta.region.length;
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed hologram metadata: ") + e.what());
  }
}

PipelineReport run_pipeline(const PipelineConfig& config) {
  stage("config", [&] {
    config.validate();
    return 0;
  });
  auto const kinetic = parse_kinetic(config.kinetic);
  auto const targets = stage("sequence", [&] { return SequenceSpec::parse(config.sequence).levels(); });
  auto const grid = stage("grid", [&] { return Grid::with_spacing(config.half_width, config.spacing); });

  DesignOptions design;
  design.top_binding = config.top_binding;
  auto potential = stage("design", [&] { return design_potential(targets, grid, kinetic, design); });
  auto designed = stage("solve", [&] { return bound_states(potential, kinetic); });

  std::optional<HologramOutcome> holo;
  Spectrum final_spectrum = designed;
  if (config.hologram) {
    holo = stage("hologram", [&] {
      auto const target = potential_to_target(potential, config.holo_sr);
      auto const state = make_hologram_state(config.holo_m, target.amplitude, config.holo_d);
      auto const illum = uniform_illumination(config.holo_m);
      OptimizeOptions opt;
      opt.max_iters = config.holo_iters;
      opt.seed = config.seed;
      auto result = optimize_phase(state, illum, opt);
      auto const field = propagate(result.state, illum);
      auto recovered = extract_profile(field, result.state, target.map, grid);
      return HologramOutcome{HologramMeta{config.holo_m, result.state.signal_region, target.map},
                             std::move(result.cost_history),
                             result.iterations,
                             sr_intensity_error(field, result.state),
                             result.line_search_failed,
                             result.state.phase,
                             field.intensity(),
                             std::move(recovered)};
    });
    final_spectrum = stage("solve recovered", [&] { return bound_states(holo->recovered, kinetic); });
  }

  auto discrepancy = stage("compare", [&] {
    if (final_spectrum.eigenvalues.size() != targets.size()) {
      throw NumericalError("found " + std::to_string(final_spectrum.eigenvalues.size()) +
                           " bound states for " + std::to_string(targets.size()) + " targets");
    }
    return compare_spectrum(final_spectrum, targets);
  });
  return PipelineReport{targets,        std::move(potential), std::move(designed),
                        final_spectrum, std::move(discrepancy), std::move(holo)};
}

namespace {

nlohmann::json spectrum_json(const Spectrum& s) {
  return nlohmann::json{{"eigenvalues", s.eigenvalues},
                        {"continuum_edge", s.continuum_edge},
                        {"kinetic_scale", s.kinetic_scale},
                        {"node_counts", s.node_counts}};
}

std::string csv(const PotentialGrid& p) {
  std::ostringstream out;
  write_potential_csv(out, p);
  return out.str();
}

std::string csv(const Matrix& m) {
  std::ostringstream out;
  write_matrix_csv(out, m);
  return out.str();
}

}  // namespace

std::map<std::string, std::string> render_pipeline_outputs(const PipelineConfig& config,
                                                           const PipelineReport& report) {
  std::map<std::string, std::string> files;
  files["config.txt"] = config.to_text();
  files["potential.csv"] = csv(report.potential);
  files["spectrum.json"] = spectrum_json(report.designed).dump(2) + "\n";

  auto const& d = report.discrepancy;
  nlohmann::json rep = {{"sequence", config.sequence},
                        {"eigenvalues", report.final_spectrum.eigenvalues},
                        {"continuum_edge", report.final_spectrum.continuum_edge},
                        {"targets", report.targets},
                        {"per_level_abs", d.per_level_abs},
                        {"per_level_frac", d.per_level_frac},
                        {"rms_frac", d.rms_frac},
                        {"rounds_to_target", d.rounds_to_target},
                        {"all_round", d.all_round()},
                        {"source", report.hologram ? "hologram" : "design"}};
  if (report.hologram) {
    auto const& h = *report.hologram;
    rep["hologram"] = {{"iterations", h.iterations},
                       {"final_cost", h.cost_history.back()},
                       {"sr_intensity_error", h.sr_error},
                       {"line_search_failed", h.line_search_failed}};
    files["cost_history.json"] = nlohmann::json(h.cost_history).dump() + "\n";
    files["phase.csv"] = csv(h.phase);
    files["intensity.csv"] = csv(h.intensity);
    files["recovered_potential.csv"] = csv(h.recovered);
    files["hologram_meta.json"] = h.meta.to_json();
  }
  files["report.json"] = rep.dump(2) + "\n";
  return files;
}

}  // namespace primepot
