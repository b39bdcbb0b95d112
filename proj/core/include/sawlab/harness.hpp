#pragma once

// Experiment orchestration: lattice-vs-continuum comparisons, the
// eight-versus-five check, configuration, registry and report output.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sawlab/curve.hpp"
#include "sawlab/error.hpp"
#include "sawlab/stats.hpp"

namespace sawlab::harness {

/// Symmetric max-min distance between the sample point sets.
double curve_hausdorff(const PlanarCurve& a, const PlanarCurve& b);

/// Scale-invariant functionals of a curve from 0 in the upper half-plane,
/// read off up to its first exit from the half-disk of radius R.
///   exit_angle:   arg of the exit point, in [0, pi]
///   rightmost:    max Re over the curve before exit, divided by R
///   passes_right: 1 if iR/2 lies on the left of the curve, i.e. the
///                 segment from iR/2 to -R/2 is crossed an even number of
///                 times
struct ScaleFunctionals {
  bool reached = false;
  double exit_angle = 0.0;
  double rightmost = 0.0;
  double passes_right = 0.0;
};
ScaleFunctionals scale_functionals(std::span<const Complex> points, double R);

struct TestRow {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_a = 0, n_b = 0;
};

struct EstimateRow {
  std::string name;
  EstimateWithError estimate;
  double prediction = 0.0;
  bool has_prediction = false;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Raw samples, one JSON document per line.
struct RawLog {
  std::string name;
  std::vector<std::string> lines;
};

struct ComparisonReport {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::map<std::string, double> params;
  std::vector<TestRow> tests;
  std::vector<EstimateRow> estimates;
  std::vector<Table> tables;
  std::vector<RawLog> raw;
  std::vector<std::string> notes;
  bool flagged = false;

  /// Lookup by name; throws InvalidArgument when absent.
  const TestRow& test(const std::string& name) const;
  const EstimateRow& estimate(const std::string& name) const;
};

/// Half-plane SAWs (pivot chain) against chordal SLE traces on the three
/// scale functionals.
struct SawSleConfig {
  int saw_length = 10000;
  double saw_radius = 300.5;     ///< lattice units
  std::size_t saw_samples = 10000;
  std::size_t saw_thin = 1000;   ///< pivot proposals between samples
  std::vector<double> kappas{8.0 / 3.0, 6.0};
  std::size_t sle_samples = 10000;
  double sle_T = 4.0;
  int sle_N = 600;
  double sle_radius = 1.0;
  std::uint64_t seed = 1;
  bool keep_raw = false;
};
ComparisonReport saw_vs_sle_comparison(const SawSleConfig& config);

/// Split-halves null test of one SAW sample on the three functionals.
ComparisonReport saw_split_halves(const SawSleConfig& config);

/// Avoidance of a slit by eight independent SLE_{8/3} traces, by five
/// independent excursions, and the closed form Phi'(0)^5.
struct EightFiveConfig {
  double x0 = -1.0, h = 1.0;
  std::size_t sle_count = 10000;
  double sle_T = 16.0;
  int sle_N = 2400;
  double sle_t_min = 1e-3;
  std::size_t excursion_count = 10000;
  std::uint64_t seed = 1;
};
ComparisonReport eight_vs_five(const EightFiveConfig& config);

/// Malformed configuration; `field` names the offending entry.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& what)
      : InvalidArgument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::string id;
  std::uint64_t seed = 1;
  std::map<std::string, double> params;
  std::string out;  ///< output directory; not part of the hash
};

/// {"experiment": id, "seed": s, "out": dir, "params": {name: number, ...}};
/// every field optional, unknown fields rejected.
ExperimentConfig parse_config(const std::string& json_text);

struct ExperimentInfo {
  std::string id;
  std::string title;
  int criterion = 0;  ///< 0 for experiments outside the acceptance set
  std::map<std::string, double> defaults;
};

const std::vector<ExperimentInfo>& experiment_catalog();
const ExperimentInfo& find_experiment(const std::string& id);

/// Runs a registered experiment with defaults overridden by config.params.
/// Unknown ids and parameter names raise ConfigError.
ComparisonReport run_experiment(const ExperimentConfig& config);

/// FNV-1a 64 of the canonical (id, seed, params) encoding, as hex.
std::string config_hash(const ExperimentConfig& config);

/// Deterministic JSON rendering of the report.
std::string report_json(const ComparisonReport& report);

/// Writes report.json, tables/<name>.csv and raw/<name>.jsonl under `dir`,
/// each through a temporary file and a rename.
void write_report(const ComparisonReport& report,
                  const std::filesystem::path& dir);

/// Library version string.
std::string version();

}  // namespace sawlab::harness
