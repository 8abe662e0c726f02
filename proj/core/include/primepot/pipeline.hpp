#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primepot/eigensolver.hpp"
#include "primepot/hologram.hpp"

namespace primepot {

/// "primes:N", "lucky:N" or "file:PATH" (one level per line).
struct SequenceSpec {
  enum class Kind { primes, lucky, file };
  Kind kind = Kind::primes;
  std::size_t count = 0;
  std::string path;

  static SequenceSpec parse(std::string_view text);
  std::string to_string() const;
  std::vector<double> levels() const;
};

/// Settings for one design -> (hologram) -> solve -> compare run. Stored as
/// flat `key = value` lines; see keys() for the accepted names.
struct PipelineConfig {
  std::string sequence = "primes:10";
  double half_width = 12.0;
  double spacing = 0.005;
  std::string kinetic = "half";
  double top_binding = 0.25;
  bool hologram = false;
  std::size_t holo_m = 64;
  std::size_t holo_sr = 100;
  int holo_d = 9;
  std::size_t holo_iters = 500;
  std::uint64_t seed = 1;
  std::string output_dir = "pipeline_out";

  static const std::vector<std::string>& keys();
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;

  std::string to_text() const;
  /// Later lines win; unknown keys and malformed values are rejected.
  static PipelineConfig from_text(std::string_view text);

  void validate() const;
};

/// What `holo extract` needs to turn an output-plane intensity back into a
/// potential.
struct HologramMeta {
  std::size_t m = 0;
  SignalRegion region;
  TargetMap map;

  std::string to_json() const;
  static HologramMeta from_json(std::string_view text);
};

struct HologramOutcome {
  HologramMeta meta;
  std::vector<double> cost_history;
  std::size_t iterations = 0;
  double sr_error = 0.0;
  bool line_search_failed = false;
  Matrix phase;
  Matrix intensity;
  PotentialGrid recovered;
};

struct PipelineReport {
  std::vector<double> targets;
  PotentialGrid potential;
  Spectrum designed;
  /// Spectrum the comparison is made on: the designed potential, or the one
  /// recovered from the simulated hologram when that stage is enabled.
  Spectrum final_spectrum;
  DiscrepancyReport discrepancy;
  std::optional<HologramOutcome> hologram;

  bool all_round() const { return discrepancy.all_round(); }
};

/// Runs every stage in memory. Stage failures are rethrown with the stage
/// name prefixed, keeping their ValidationError / NumericalError type. A
/// level-count mismatch between spectrum and targets is a NumericalError.
PipelineReport run_pipeline(const PipelineConfig& config);

/// File name -> content for everything the run produces. Output is a pure
/// function of the report and config, so identical runs are byte-identical.
std::map<std::string, std::string> render_pipeline_outputs(const PipelineConfig& config,
                                                           const PipelineReport& report);

}  // namespace primepot
