// File formats and report serialization.
//
// Edge list:
//   # comments and blank lines are ignored
//   n 4            first non-comment line: node count
//   0 1 2.0        src dst weight, 0-indexed, whitespace separated
//
// Time series: CSV with header `t,<columns>`; complex components are split
// into re_<name>,im_<name>. Doubles are printed in shortest round-trip form.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oscnet/dynamics.hpp"
#include "oscnet/echo.hpp"
#include "oscnet/graph.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

using json = nlohmann::json;

// Throws Error{ParseError} (with line number) for malformed text. Graph
// validation errors keep their kind and name the line ("SelfLoop: at line 2").
WeightedDigraph parse_graph(std::istream& in);
WeightedDigraph load_graph(const std::filesystem::path& path);

enum class Dynamics { Wave, Boson, Fermion, Echo };

std::string_view to_string(Dynamics d) noexcept;

struct EchoBlock {
  std::vector<std::size_t> cluster;
  double w_sat = 1.0;
  double lock_tol = kDefaultLockTol;
  double dwell = kDefaultDwell;
};

struct ScenarioConfig {
  std::filesystem::path graph_path;
  Dynamics dynamics = Dynamics::Wave;
  double dt = 1e-3;
  double t_end = 0.0;
  std::size_t record_every = 10;
  Scheme scheme = Scheme::RK4;
  // Inline object, or the contents of the JSON file it named.
  std::optional<json> initial;
  std::optional<EchoBlock> echo;
  std::optional<std::uint64_t> seed;

  IntegratorConfig integrator() const;
};

// Relative paths inside the document resolve against base_dir.
// Throws Error{ParseError, MissingKey, InvalidValue}.
ScenarioConfig parse_config(const json& doc, const std::filesystem::path& base_dir);
ScenarioConfig load_config(const std::filesystem::path& path);

// Initial states. Explicit `initial` wins; otherwise a seed draws every real
// and imaginary component uniformly from [-1, 1]; otherwise Error{MissingKey}.
//   wave:            {"x": [...], "v": [...]}     (v defaults to zeros)
//   boson / fermion: {"re": [...], "im": [...]}   (2n interleaved entries)
//   echo:            the fermion keys plus optional
//                    {"theta_plus": [re, im], "theta_minus": [re, im]}
RealState resolve_wave_initial(const ScenarioConfig& cfg, std::size_t n);
DoubledState resolve_doubled_initial(const ScenarioConfig& cfg, std::size_t n);
PhaseState resolve_phase_initial(const ScenarioConfig& cfg);

// Human-readable provenance of the initial state for output metadata.
std::string describe_initial(const ScenarioConfig& cfg);

struct TimeSeriesTable {
  std::vector<std::string> columns;  // excluding the leading t column
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  json meta = json::object();
};

TimeSeriesTable to_table(const RealTrajectory& traj);
// Doubled states are named xhat_k, projected/node states x_k.
TimeSeriesTable to_table(const ComplexTrajectory& traj);
// t, Re/Im theta+-, C+-, s, amplitudes.
TimeSeriesTable to_table(const PhaseTrajectory& traj, const EchoParams& p);

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view name);

std::string format_double(double v);

void write_csv(const TimeSeriesTable& table, std::ostream& out);
json table_to_json(const TimeSeriesTable& table);
// Throws Error{IoError}.
void write_timeseries(const TimeSeriesTable& table, const std::filesystem::path& path,
                      OutputFormat format);
TimeSeriesTable read_csv(std::istream& in);
TimeSeriesTable read_timeseries_csv(const std::filesystem::path& path);

json to_json(const Spectrum& spec);
json to_json(const PatternReport& rep);
json to_json(const SqrtResult& res, bool include_matrix);
json to_json(const SyncReport& rep);
json to_json(const EchoParams& p);
json to_json(const ScenarioReport& rep);

void write_json(const json& doc, const std::filesystem::path& path);

}  // namespace oscnet
