// primepot command-line tool.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "primepot/eigensolver.hpp"
#include "primepot/error.hpp"
#include "primepot/hologram.hpp"
#include "primepot/io.hpp"
#include "primepot/pipeline.hpp"
#include "primepot/scattering.hpp"
#include "primepot/semiclassical.hpp"
#include "primepot/sequences.hpp"
#include "primepot/susy.hpp"
#include "primepot/units.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace primepot;

namespace {

// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

PotentialGrid load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return read_potential_csv(in);
}

std::string potential_csv(const PotentialGrid& p) {
  std::ostringstream out;
  write_potential_csv(out, p);
  return out.str();
}

std::string matrix_csv(const Matrix& m) {
  std::ostringstream out;
  write_matrix_csv(out, m);
  return out.str();
}

std::string sequence_text(const IntegerSequence& seq, bool as_json) {
  if (as_json) return json(seq.values()).dump() + "\n";
  std::string out;
  for (auto v : seq.values()) out += std::to_string(v) + "\n";
  return out;
}

// --- sequences ---

void add_sequence_command(CLI::App& app, const char* name, const char* about,
                          IntegerSequence (*sieve)(std::int64_t),
                          IntegerSequence (*first)(std::size_t)) {
  auto* cmd = app.add_subcommand(name, about);
  struct Opts {
    std::optional<std::int64_t> limit;
    std::optional<std::size_t> count;
    bool json = false;
  };
  auto opts = std::make_shared<Opts>();
  auto* limit = cmd->add_option("--limit", opts->limit, "All values <= limit");
  auto* count = cmd->add_option("--count", opts->count, "The first N values");
  limit->excludes(count);
  cmd->add_flag("--json", opts->json, "Print a JSON array instead of one value per line");
  cmd->callback([opts, sieve, first] {
    if (!opts->limit && !opts->count) throw ValidationError("give --limit or --count");
    auto const seq = opts->limit ? sieve(*opts->limit) : first(*opts->count);
    std::cout << sequence_text(seq, opts->json);
  });
}

void add_pi_command(CLI::App& app) {
  auto* cmd = app.add_subcommand("pi", "Prime counting function and its smooth estimates");
  auto x = std::make_shared<double>(0.0);
  auto terms = std::make_shared<int>(25);
  cmd->add_option("--x", *x, "Argument x > 2")->required();
  cmd->add_option("--terms", *terms, "Maximum number of terms in R(x)")->capture_default_str();
  cmd->callback([x, terms] {
    auto const est = counting_estimates(*x, *terms);
    json j = {{"x", est.x},         {"exact", est.exact},         {"gauss", est.gauss},
              {"li", est.li},       {"riemann_r", est.riemann_r}, {"terms_used", est.terms_used}};
    std::cout << j.dump(2) << "\n";
  });
}

// --- design / solve ---

struct GridOpts {
  double half_width = 12.0;
  double spacing = 0.005;
  std::string kinetic = "half";
};

void add_grid_options(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--half-width", g.half_width, "Half width of the symmetric grid")
      ->capture_default_str();
  cmd->add_option("--spacing", g.spacing, "Grid spacing")->capture_default_str();
  cmd->add_option("--kinetic", g.kinetic, "Kinetic convention: half, unit or a number c")
      ->capture_default_str();
}

void add_design_command(CLI::App& app) {
  auto* cmd = app.add_subcommand("design", "Build the even potential with a prescribed spectrum");
  struct Opts {
    std::string levels;
    GridOpts grid;
    double top_binding = 0.25;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--levels", o->levels, "primes:N, lucky:N or file:PATH")->required();
  add_grid_options(cmd, o->grid);
  cmd->add_option("--top-binding", o->top_binding, "Binding of the top level below the asymptote")
      ->capture_default_str();
  cmd->add_option("--out", o->out, "Output CSV (x,V); stdout if omitted");
  cmd->callback([o] {
    auto const levels = SequenceSpec::parse(o->levels).levels();
    auto const grid = Grid::with_spacing(o->grid.half_width, o->grid.spacing);
    DesignOptions d;
    d.top_binding = o->top_binding;
    auto const pot = design_potential(levels, grid, parse_kinetic(o->grid.kinetic), d);
    emit(o->out, potential_csv(pot));
  });
}

void add_solve_command(CLI::App& app) {
  auto* cmd = app.add_subcommand("solve", "Bound states of a potential CSV");
  struct Opts {
    std::string input;
    std::string kinetic = "half";
    std::string targets;
    std::string json_out;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("potential", o->input, "Potential CSV (x,V)")->required();
  cmd->add_option("--kinetic", o->kinetic, "half, unit or a number c")->capture_default_str();
  cmd->add_option("--targets", o->targets, "Compare with primes:N, lucky:N or file:PATH");
  cmd->add_option("--json", o->json_out, "Report path; stdout if omitted");
  cmd->callback([o] {
    auto const pot = load_potential(o->input);
    auto const spec = bound_states(pot, parse_kinetic(o->kinetic));
    json j = {{"eigenvalues", spec.eigenvalues},
              {"continuum_edge", spec.continuum_edge},
              {"node_counts", spec.node_counts}};
    if (!o->targets.empty()) {
      auto const targets = SequenceSpec::parse(o->targets).levels();
      if (targets.size() != spec.eigenvalues.size()) {
        throw NumericalError("found " + std::to_string(spec.eigenvalues.size()) +
                             " bound states for " + std::to_string(targets.size()) + " targets");
      }
      auto const rep = compare_spectrum(spec, targets);
      j["targets"] = targets;
      j["per_level_frac"] = rep.per_level_frac;
      j["rms_frac"] = rep.rms_frac;
      j["rounds_to_target"] = rep.rounds_to_target;
    }
    emit(o->json_out, j.dump(2) + "\n");
  });
}

// --- semiclassical ---

void add_semiclassical_command(CLI::App& app) {
  auto* cmd = app.add_subcommand("semiclassical", "Prime potential from the smoothed density of states");
  struct Opts {
    double e0 = 2.0;
    double vmax = 100.0;
    std::size_t samples = 400;
    int terms = 25;
    GridOpts grid;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  o->grid.half_width = 40.0;
  o->grid.spacing = 0.01;
  cmd->add_option("--e0", o->e0, "Lower integration limit (> 2)")->capture_default_str();
  cmd->add_option("--vmax", o->vmax, "Top of the profile")->capture_default_str();
  cmd->add_option("--samples", o->samples, "Profile samples")->capture_default_str();
  cmd->add_option("--terms", o->terms, "Terms of the density series")->capture_default_str();
  add_grid_options(cmd, o->grid);
  cmd->add_option("--out", o->out, "Output CSV (x,V); stdout if omitted");
  cmd->callback([o] {
    if (!(o->e0 >= 2.0)) throw ValidationError("--e0 must be >= 2");
    InversionOptions inv;
    inv.kinetic = parse_kinetic(o->grid.kinetic);
    int const terms = o->terms;
    auto const profile = invert_to_potential(
        [terms](double e) { return prime_density_of_states(e, terms); }, o->e0, o->vmax,
        o->samples, inv);
    auto const grid = Grid::with_spacing(o->grid.half_width, o->grid.spacing);
    if (profile.x_values.back() > grid.half_width()) {
      throw ValidationError("profile reaches x = " + format_double(profile.x_values.back()) +
                            "; increase --half-width");
    }
    auto const pot = profile_to_potential(profile, grid);
    emit(o->out, potential_csv(pot));
    std::cerr << "wkb_count(" << format_double(o->vmax)
              << ") = " << wkb_count(pot, o->vmax, inv.kinetic) << ", pi("
              << format_double(o->vmax) << ") = "
              << sieve_primes(static_cast<std::int64_t>(o->vmax)).size() << "\n";
  });
}

// --- scattering ---

void add_scatter_command(CLI::App& app) {
  auto* cmd = app.add_subcommand("scatter", "Transmission scan through a potential");
  struct Opts {
    std::string input;
    double emin = 0.0;
    double emax = 0.0;
    std::size_t steps = 1000;
    std::optional<double> cutoff;
    double floor = 0.0;
    std::string kinetic = "half";
    std::string json_out;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("potential", o->input, "Potential CSV (x,V)")->required();
  cmd->add_option("--emin", o->emin, "Lowest energy (above the leads)")->required();
  cmd->add_option("--emax", o->emax, "Highest energy")->required();
  cmd->add_option("--steps", o->steps, "Number of energies")->capture_default_str();
  cmd->add_option("--cutoff", o->cutoff, "Truncate the potential at this energy first");
  cmd->add_option("--floor", o->floor, "Lead energy after truncation")->capture_default_str();
  cmd->add_option("--kinetic", o->kinetic, "half, unit or a number c")->capture_default_str();
  cmd->add_option("--json", o->json_out, "Scan path; stdout if omitted");
  cmd->callback([o] {
    auto pot = load_potential(o->input);
    double shift = 0.0;
    if (o->cutoff) {
      TruncateOptions t;
      t.floor = o->floor;
      auto tr = truncate_potential(pot, *o->cutoff, t);
      shift = tr.shift;
      pot = std::move(tr.potential);
    }
    if (o->steps < 2 || !(o->emax > o->emin)) throw ValidationError("need emax > emin and steps >= 2");
    std::vector<double> energies(o->steps);
    for (std::size_t i = 0; i < o->steps; ++i) {
      energies[i] = o->emin + (o->emax - o->emin) * static_cast<double>(i) /
                                  static_cast<double>(o->steps - 1) - shift;
    }
    if (!(energies.front() > pot.asymptote())) {
      throw ValidationError("scan energies must lie above the lead potential");
    }
    auto const scan = transmission_scan(pot, energies, parse_kinetic(o->kinetic));
    std::vector<double> e_out(scan.energies);
    for (double& e : e_out) e += shift;
    json res = json::array();
    for (auto const& r : scan.resonances) res.push_back({{"energy", r.energy + shift}, {"peak", r.peak}});
    json j = {{"energies", e_out}, {"T", scan.t_values}, {"R", scan.r_values}, {"resonances", res}};
    emit(o->json_out, j.dump(2) + "\n");
  });
}

void add_filter_command(CLI::App& app) {
  auto* cmd = app.add_subcommand("filter", "Lucky-prime transmission filter");
  struct Opts {
    std::vector<std::int64_t> w;
    std::optional<std::string> range;
    FilterOptions f;
  };
  auto o = std::make_shared<Opts>();
  auto* w = cmd->add_option("--w", o->w, "Integer(s) to test");
  auto* range = cmd->add_option("--range", o->range, "Test every integer in LO:HI");
  w->excludes(range);
  cmd->add_option("--lucky-count", o->f.lucky_count, "Levels in the lucky device")->capture_default_str();
  cmd->add_option("--prime-count", o->f.prime_count, "Levels in the prime device")->capture_default_str();
  cmd->add_option("--opacity", o->f.opacity, "Barrier opacity at the tested energy")->capture_default_str();
  cmd->add_option("--separation", o->f.separation, "Gap between the devices")->capture_default_str();
  cmd->add_option("--spacing", o->f.spacing, "Grid spacing of the devices")->capture_default_str();
  cmd->add_option("--threshold", o->f.threshold, "Transmission threshold")->capture_default_str();
  cmd->callback([o] {
    std::vector<std::int64_t> ws = o->w;
    if (o->range) {
      auto const colon = o->range->find(':');
      if (colon == std::string::npos) throw ValidationError("--range must be LO:HI");
      auto const lo = static_cast<std::int64_t>(parse_double(o->range->substr(0, colon)));
      auto const hi = static_cast<std::int64_t>(parse_double(o->range->substr(colon + 1)));
      for (auto v = lo; v <= hi; ++v) ws.push_back(v);
    }
    if (ws.empty()) throw ValidationError("give --w or --range");
    for (auto v : ws) {
      if (v < 1) throw ValidationError("w must be positive");
    }
    LuckyPrimeFilter filter(o->f);
    json out = json::array();
    for (auto v : ws) {
      auto const peak = filter.peak(v);
      out.push_back({{"w", v},
                     {"peak_transmission", peak.peak},
                     {"peak_energy", peak.energy},
                     {"lucky_prime", peak.peak > o->f.threshold}});
    }
    std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
  });
}

// --- hologram ---

void add_holo_command(CLI::App& app) {
  auto* holo = app.add_subcommand("holo", "Simulated phase-only hologram");
  holo->require_subcommand(1);

  auto* synth = holo->add_subcommand("synth", "Optimise a modulator phase for a potential");
  struct SynthOpts {
    std::string input;
    std::size_t m = 64;
    std::size_t sr = 100;
    int d = 9;
    std::size_t iters = 500;
    std::uint64_t seed = 1;
    std::vector<std::string> out;
    std::string meta;
    std::string history;
  };
  auto s = std::make_shared<SynthOpts>();
  synth->add_option("potential", s->input, "Potential CSV (x,V)")->required();
  synth->add_option("--m", s->m, "Modulator size (m x m)")->capture_default_str();
  synth->add_option("--sr", s->sr, "Signal-region length in pixels")->capture_default_str();
  synth->add_option("--d", s->d, "Cost steepness exponent")->capture_default_str();
  synth->add_option("--iters", s->iters, "Maximum CG iterations")->capture_default_str();
  synth->add_option("--seed", s->seed, "Seed of the random initial phase")->capture_default_str();
  synth->add_option("--out", s->out, "phase.csv,intensity.csv")->delimiter(',')->expected(2)->required();
  synth->add_option("--meta", s->meta, "Target-map JSON (default: <intensity>.meta.json)");
  synth->add_option("--history", s->history, "Cost history JSON");
  synth->callback([s] {
    auto const pot = load_potential(s->input);
    auto const target = potential_to_target(pot, s->sr);
    auto const state = make_hologram_state(s->m, target.amplitude, s->d);
    auto const illum = uniform_illumination(s->m);
    OptimizeOptions opt;
    opt.max_iters = s->iters;
    opt.seed = s->seed;
    auto const result = optimize_phase(state, illum, opt);
    auto const field = propagate(result.state, illum);
    HologramMeta meta{s->m, result.state.signal_region, target.map};
    auto const phase_csv = matrix_csv(result.state.phase);
    auto const intensity_csv = matrix_csv(field.intensity());
    write_file(s->out[0], phase_csv);
    write_file(s->out[1], intensity_csv);
    write_file(s->meta.empty() ? s->out[1] + ".meta.json" : s->meta, meta.to_json());
    if (!s->history.empty()) write_file(s->history, json(result.cost_history).dump() + "\n");
    json summary = {{"iterations", result.iterations},
                    {"final_cost", result.cost_history.back()},
                    {"sr_intensity_error", sr_intensity_error(field, result.state)},
                    {"line_search_failed", result.line_search_failed}};
    std::cout << summary.dump(2) << "\n";
  });

  auto* extract = holo->add_subcommand("extract", "Recover the potential from an output intensity");
  struct ExtractOpts {
    std::string input;
    std::string meta;
    std::string out;
    double half_width = 12.0;
    double spacing = 0.005;
  };
  auto e = std::make_shared<ExtractOpts>();
  extract->add_option("intensity", e->input, "Output-plane intensity CSV")->required();
  extract->add_option("--meta", e->meta, "Target-map JSON (default: <intensity>.meta.json)");
  extract->add_option("--out", e->out, "Recovered potential CSV; stdout if omitted");
  extract->add_option("--half-width", e->half_width, "Output grid half width")->capture_default_str();
  extract->add_option("--spacing", e->spacing, "Output grid spacing")->capture_default_str();
  extract->callback([e] {
    auto const meta = HologramMeta::from_json(read_file(e->meta.empty() ? e->input + ".meta.json" : e->meta));
    std::ifstream in(e->input);
    if (!in) throw ValidationError("cannot open " + e->input);
    auto const intensity = read_matrix_csv(in);
    auto const& sr = meta.region;
    if (intensity.rows != 2 * meta.m || intensity.cols != 2 * meta.m) {
      throw ValidationError("intensity matrix does not match the 2m x 2m output plane");
    }
    OutputField field;
    field.size = intensity.rows;
    field.data.resize(intensity.data.size());
    for (std::size_t i = 0; i < field.data.size(); ++i) field.data[i] = std::sqrt(std::max(intensity.data[i], 0.0));
    auto const row = signal_intensity(field, sr);
    auto const pot = extract_profile(row, meta.map, Grid::with_spacing(e->half_width, e->spacing));
    emit(e->out, potential_csv(pot));
  });
}

// --- units ---

void add_units_command(CLI::App& app) {
  auto* cmd = app.add_subcommand("units", "Physical energy per dimensionless unit");
  struct Opts {
    std::string mass = "rb87";
    double l = 1.0;
    double L = 1.0;
    std::optional<double> value;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--mass", o->mass, "rb87, li6, na23, k40, cs133 or a mass in kg")->capture_default_str();
  cmd->add_option("--l", o->l, "Dimensionless length of the potential")->required();
  cmd->add_option("--L", o->L, "Physical length in metres")->required();
  cmd->add_option("--value", o->value, "Also convert this dimensionless energy");
  cmd->callback([o] {
    PhysicalContext ctx{mass_from_name(o->mass), o->l, o->L};
    auto const s = energy_scale(ctx);
    json j = {{"scale_J", s.joule}, {"scale_hHz", s.hertz}, {"scale_kBK", s.kelvin}};
    if (o->value) {
      auto const v = to_physical(ctx, *o->value);
      j["value"] = {{"dimensionless", *o->value}, {"J", v.joule}, {"hHz", v.hertz}, {"kBK", v.kelvin}};
    }
    std::cout << j.dump(2) << "\n";
  });
}

// --- pipeline ---

void add_pipeline_command(CLI::App& app, int& exit_code) {
  auto* cmd = app.add_subcommand("pipeline", "Design, optional hologram, solve and compare");
  struct Opts {
    std::string config;
    std::vector<std::string> set;
    std::optional<std::string> sequence;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    bool hologram = false;
    bool write_config = false;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--config", o->config, "key = value config file");
  cmd->add_option("--set", o->set, "Override a config entry: key=value (repeatable)");
  cmd->add_option("--sequence", o->sequence, "primes:N, lucky:N or file:PATH");
  cmd->add_option("--output-dir", o->output_dir, "Directory for the outputs");
  cmd->add_option("--seed", o->seed, "Hologram seed");
  cmd->add_flag("--hologram", o->hologram, "Enable the hologram stage");
  cmd->add_flag("--print-config", o->write_config, "Print the effective config and exit");
  cmd->callback([o, &exit_code] {
    PipelineConfig cfg;
    if (!o->config.empty()) cfg = PipelineConfig::from_text(read_file(o->config));
    for (auto const& kv : o->set) {
      auto const eq = kv.find('=');
      if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o->sequence) cfg.sequence = *o->sequence;
    if (o->output_dir) cfg.output_dir = *o->output_dir;
    if (o->seed) cfg.seed = *o->seed;
    if (o->hologram) cfg.hologram = true;
    if (o->write_config) {
      cfg.validate();
      std::cout << cfg.to_text();
      return;
    }
    auto const report = run_pipeline(cfg);
    auto const files = render_pipeline_outputs(cfg, report);
    fs::create_directories(cfg.output_dir);
    for (auto const& [name, content] : files) write_file(fs::path(cfg.output_dir) / name, content);
    std::cout << files.at("report.json");
    if (!report.all_round()) exit_code = 2;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum potentials with prescribed integer spectra"};
  app.require_subcommand(1);
  int exit_code = 0;

  add_sequence_command(app, "primes", "Prime numbers", sieve_primes, first_primes);
  add_sequence_command(app, "lucky", "Lucky numbers", sieve_lucky, first_lucky);
  add_pi_command(app);
  add_design_command(app);
  add_solve_command(app);
  add_semiclassical_command(app);
  add_scatter_command(app);
  add_filter_command(app);
  add_holo_command(app);
  add_units_command(app);
  add_pipeline_command(app, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
