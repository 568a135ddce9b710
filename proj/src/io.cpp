#include "oscnet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <system_error>

#include "oscnet/errors.hpp"

namespace oscnet {

namespace fs = std::filesystem;

namespace {

// Dense n x n storage caps what is reasonable to load.
constexpr std::size_t kMaxNodes = 10000;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\v\f");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> parse_index(std::string_view tok) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view tok) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why);
}

std::string printable(std::string_view tok) {
  std::string out;
  for (char c : tok.substr(0, 32)) {
    out += std::isprint(static_cast<unsigned char>(c)) ? c : '?';
  }
  return out;
}

// Typed JSON accessors that report InvalidValue instead of nlohmann exceptions.
double get_number(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) {
    throw Error(ErrorKind::InvalidValue, std::string("'") + key + "' must be a number");
  }
  return v.get<double>();
}

std::size_t get_count(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw Error(ErrorKind::InvalidValue,
                std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_string()) {
    throw Error(ErrorKind::InvalidValue, std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> get_reals(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_array()) {
    throw Error(ErrorKind::InvalidValue, std::string("'") + key + "' must be an array");
  }
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) {
      throw Error(ErrorKind::InvalidValue, std::string("'") + key + "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "file not found: " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorKind::ParseError, "malformed JSON in " + path.string());
  }
  return doc;
}

// Portable [-1, 1) draws from a 64-bit Mersenne Twister.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : gen_(seed) {}
  double next() {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  }

 private:
  std::mt19937_64 gen_;
};

void require_length(std::size_t got, std::size_t want, const char* key) {
  if (got != want) {
    throw Error(ErrorKind::InvalidValue, std::string("'") + key + "' has " + std::to_string(got) +
                                             " entries, expected " + std::to_string(want));
  }
}

cdouble get_phase(const json& doc, const char* key) {
  const std::vector<double> v = get_reals(doc, key);
  require_length(v.size(), 2, key);
  return {v[0], v[1]};
}

json meta_json(const TrajectoryMeta& m) {
  return {{"equation", std::string(to_string(m.equation))},
          {"projected", m.projected},
          {"graph_fingerprint", m.graph_fingerprint},
          {"dt", m.dt},
          {"record_every", m.record_every},
          {"scheme", std::string(to_string(m.scheme))}};
}

json complex_json(cdouble z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json mask_json(const Mask& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string row;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row += m(i, j) ? '1' : '0';
    rows.push_back(row);
  }
  return rows;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

WeightedDigraph parse_graph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto toks = split_ws(line);
    if (!n) {
      if (toks.size() != 2 || toks[0] != "n") {
        parse_fail(line_no, "expected header 'n <count>'");
      }
      const auto count = parse_index(toks[1]);
      if (!count || *count == 0) parse_fail(line_no, "node count must be a positive integer");
      if (*count > kMaxNodes) {
        parse_fail(line_no, "node count " + std::to_string(*count) + " exceeds limit " +
                                std::to_string(kMaxNodes));
      }
      n = count;
      continue;
    }
    if (toks.size() != 3) parse_fail(line_no, "expected 'src dst weight'");
    const auto src = parse_index(toks[0]);
    const auto dst = parse_index(toks[1]);
    const auto w = parse_real(toks[2]);
    if (!src) parse_fail(line_no, "bad source index '" + printable(toks[0]) + "'");
    if (!dst) parse_fail(line_no, "bad target index '" + printable(toks[1]) + "'");
    if (!w) parse_fail(line_no, "bad weight '" + printable(toks[2]) + "'");
    edges.push_back({*src, *dst, *w});
    edge_lines.push_back(line_no);
  }
  if (in.bad()) throw Error(ErrorKind::IoError, "read failure");
  if (!n) parse_fail(line_no, "missing header 'n <count>'");
  try {
    return build_graph(*n, std::move(edges));
  } catch (const Error& e) {
    if (!e.index() || *e.index() >= edge_lines.size()) throw;
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw Error(e.kind(),
                "at line " + std::to_string(edge_lines[*e.index()]) + ": " +
                    (colon == std::string::npos ? msg : msg.substr(colon + 2)),
                e.index());
  }
}

WeightedDigraph load_graph(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "file not found: " + path.string());
  return parse_graph(in);
}

std::string_view to_string(Dynamics d) noexcept {
  switch (d) {
    case Dynamics::Wave: return "wave";
    case Dynamics::Boson: return "boson";
    case Dynamics::Fermion: return "fermion";
    case Dynamics::Echo: return "echo";
  }
  return "unknown";
}

IntegratorConfig ScenarioConfig::integrator() const {
  IntegratorConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.scheme = scheme;
  c.record_every = record_every;
  return c;
}

ScenarioConfig parse_config(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  for (const char* key : {"graph", "dynamics", "t_end"}) {
    if (!doc.contains(key)) throw Error(ErrorKind::MissingKey, key);
  }
  ScenarioConfig cfg;
  cfg.graph_path = fs::path(get_string(doc, "graph"));
  if (cfg.graph_path.is_relative()) cfg.graph_path = base_dir / cfg.graph_path;

  const std::string dyn = get_string(doc, "dynamics");
  if (dyn == "wave") cfg.dynamics = Dynamics::Wave;
  else if (dyn == "boson") cfg.dynamics = Dynamics::Boson;
  else if (dyn == "fermion") cfg.dynamics = Dynamics::Fermion;
  else if (dyn == "echo") cfg.dynamics = Dynamics::Echo;
  else throw Error(ErrorKind::InvalidValue, "unknown dynamics '" + dyn + "'");

  cfg.t_end = get_number(doc, "t_end");
  if (doc.contains("dt")) cfg.dt = get_number(doc, "dt");
  if (doc.contains("record_every")) cfg.record_every = get_count(doc, "record_every");
  if (doc.contains("scheme")) {
    const std::string s = get_string(doc, "scheme");
    if (s == "rk4") cfg.scheme = Scheme::RK4;
    else if (s == "leapfrog") cfg.scheme = Scheme::Leapfrog;
    else throw Error(ErrorKind::InvalidValue, "unknown scheme '" + s + "'");
  }
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw Error(ErrorKind::InvalidValue, "dt must be positive");
  }
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
    throw Error(ErrorKind::InvalidValue, "t_end must be positive");
  }
  if (!(cfg.dt < cfg.t_end)) throw Error(ErrorKind::InvalidValue, "dt must be smaller than t_end");
  if (cfg.record_every == 0) throw Error(ErrorKind::InvalidValue, "record_every must be positive");
  if (cfg.scheme == Scheme::Leapfrog && cfg.dynamics != Dynamics::Wave) {
    throw Error(ErrorKind::InvalidValue, "leapfrog is only available for wave dynamics");
  }

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() &&
                                   s.get<std::int64_t>() < 0)) {
      throw Error(ErrorKind::InvalidValue, "'seed' must be a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }

  if (doc.contains("initial")) {
    const json& init = doc.at("initial");
    if (init.is_string()) {
      fs::path p = init.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      cfg.initial = read_json_file(p);
    } else if (init.is_object()) {
      cfg.initial = init;
    } else {
      throw Error(ErrorKind::InvalidValue, "'initial' must be an object or a file path");
    }
    if (!cfg.initial->is_object()) {
      throw Error(ErrorKind::InvalidValue, "initial state must be a JSON object");
    }
  }

  if (doc.contains("echo")) {
    const json& e = doc.at("echo");
    if (!e.is_object()) throw Error(ErrorKind::InvalidValue, "'echo' must be an object");
    if (!e.contains("cluster")) throw Error(ErrorKind::MissingKey, "echo.cluster");
    EchoBlock block;
    for (double v : get_reals(e, "cluster")) {
      if (v < 0.0 || v != std::floor(v)) {
        throw Error(ErrorKind::InvalidValue, "cluster entries must be node indices");
      }
      block.cluster.push_back(static_cast<std::size_t>(v));
    }
    if (e.contains("w_sat")) block.w_sat = get_number(e, "w_sat");
    if (e.contains("lock_tol")) block.lock_tol = get_number(e, "lock_tol");
    if (e.contains("dwell")) block.dwell = get_number(e, "dwell");
    if (!(block.w_sat > 0.0)) throw Error(ErrorKind::InvalidValue, "w_sat must be positive");
    if (!(block.lock_tol > 0.0)) throw Error(ErrorKind::InvalidValue, "lock_tol must be positive");
    if (!(block.dwell >= 0.0)) throw Error(ErrorKind::InvalidValue, "dwell must be non-negative");
    cfg.echo = std::move(block);
  }
  if (cfg.dynamics == Dynamics::Echo && !cfg.echo) throw Error(ErrorKind::MissingKey, "echo");

  if (!fs::exists(cfg.graph_path)) {
    throw Error(ErrorKind::InvalidValue, "file not found: " + cfg.graph_path.string());
  }
  return cfg;
}

ScenarioConfig load_config(const fs::path& path) {
  const json doc = read_json_file(path);
  return parse_config(doc, path.parent_path());
}

RealState resolve_wave_initial(const ScenarioConfig& cfg, std::size_t n) {
  RealState s;
  s.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  s.v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (cfg.initial) {
    if (!cfg.initial->contains("x")) throw Error(ErrorKind::MissingKey, "initial.x");
    const auto x = get_reals(*cfg.initial, "x");
    require_length(x.size(), n, "x");
    s.x = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n));
    if (cfg.initial->contains("v")) {
      const auto v = get_reals(*cfg.initial, "v");
      require_length(v.size(), n, "v");
      s.v = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n));
    }
    return s;
  }
  if (!cfg.seed) throw Error(ErrorKind::MissingKey, "initial (or seed)");
  UniformSource rng(*cfg.seed);
  for (Eigen::Index i = 0; i < s.x.size(); ++i) s.x(i) = rng.next();
  for (Eigen::Index i = 0; i < s.v.size(); ++i) s.v(i) = rng.next();
  return s;
}

DoubledState resolve_doubled_initial(const ScenarioConfig& cfg, std::size_t n) {
  DoubledState s;
  const auto dim = static_cast<Eigen::Index>(2 * n);
  s.xhat = Eigen::VectorXcd::Zero(dim);
  if (cfg.initial && cfg.initial->contains("re")) {
    const auto re = get_reals(*cfg.initial, "re");
    require_length(re.size(), 2 * n, "re");
    std::vector<double> im(2 * n, 0.0);
    if (cfg.initial->contains("im")) {
      im = get_reals(*cfg.initial, "im");
      require_length(im.size(), 2 * n, "im");
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      s.xhat(k) = {re[static_cast<std::size_t>(k)], im[static_cast<std::size_t>(k)]};
    }
    return s;
  }
  if (!cfg.seed) throw Error(ErrorKind::MissingKey, "initial.re (or seed)");
  UniformSource rng(*cfg.seed);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double re = rng.next();
    const double im = rng.next();
    s.xhat(k) = {re, im};
  }
  return s;
}

PhaseState resolve_phase_initial(const ScenarioConfig& cfg) {
  PhaseState th{};
  if (!cfg.initial) return th;
  if (cfg.initial->contains("theta_plus")) th.plus = get_phase(*cfg.initial, "theta_plus");
  if (cfg.initial->contains("theta_minus")) th.minus = get_phase(*cfg.initial, "theta_minus");
  return th;
}

std::string describe_initial(const ScenarioConfig& cfg) {
  if (cfg.initial) return "explicit";
  if (cfg.seed) {
    return "uniform[-1,1] per real/imaginary component, mt19937_64 seed " +
           std::to_string(*cfg.seed);
  }
  return "none";
}

TimeSeriesTable to_table(const RealTrajectory& traj) {
  TimeSeriesTable t;
  const std::size_t n = traj.states.empty() ? 0 : static_cast<std::size_t>(traj.states[0].size());
  for (std::size_t i = 0; i < n; ++i) t.columns.push_back("x_" + std::to_string(i));
  t.times = traj.times;
  for (const auto& s : traj.states) t.rows.emplace_back(s.data(), s.data() + s.size());
  t.meta = meta_json(traj.meta);
  return t;
}

TimeSeriesTable to_table(const ComplexTrajectory& traj) {
  TimeSeriesTable t;
  const bool node_states = traj.meta.projected || traj.meta.equation == Equation::Wave;
  const std::string name = node_states ? "x_" : "xhat_";
  const std::size_t n = traj.states.empty() ? 0 : static_cast<std::size_t>(traj.states[0].size());
  for (std::size_t i = 0; i < n; ++i) {
    t.columns.push_back("re_" + name + std::to_string(i));
    t.columns.push_back("im_" + name + std::to_string(i));
  }
  t.times = traj.times;
  for (const auto& s : traj.states) {
    std::vector<double> row;
    row.reserve(2 * n);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      row.push_back(s(i).real());
      row.push_back(s(i).imag());
    }
    t.rows.push_back(std::move(row));
  }
  t.meta = meta_json(traj.meta);
  return t;
}

TimeSeriesTable to_table(const PhaseTrajectory& traj, const EchoParams& p) {
  TimeSeriesTable t;
  t.columns = {"re_theta_plus", "im_theta_plus", "re_theta_minus", "im_theta_minus", "c_plus",
               "c_minus",       "s",             "amp_plus",       "amp_minus"};
  t.times = traj.times;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const PhaseState& th = traj.states[k];
    const CCoefficients& c = traj.c[k];
    t.rows.push_back({th.plus.real(), th.plus.imag(), th.minus.real(), th.minus.imag(), c.plus,
                      c.minus, th.sum_real(), amplitude_plus(th), amplitude_minus(th)});
  }
  t.meta = {{"equation", "echo-phase"}, {"params", to_json(p)}};
  if (traj.pinned_sum) t.meta["pinned_sum"] = *traj.pinned_sum;
  return t;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorKind::InvalidValue, "unknown format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_csv(const TimeSeriesTable& table, std::ostream& out) {
  out << 't';
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (std::size_t k = 0; k < table.times.size(); ++k) {
    out << format_double(table.times[k]);
    for (double v : table.rows[k]) out << ',' << format_double(v);
    out << '\n';
  }
}

json table_to_json(const TimeSeriesTable& table) {
  json columns = json::array({"t"});
  json data = json::object();
  data["t"] = table.times;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    columns.push_back(table.columns[c]);
    json col = json::array();
    for (const auto& row : table.rows) col.push_back(row[c]);
    data[table.columns[c]] = std::move(col);
  }
  return {{"meta", table.meta}, {"columns", columns}, {"data", data}};
}

void write_json(const json& doc, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

void write_timeseries(const TimeSeriesTable& table, const fs::path& path, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_json(table_to_json(table), path);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  write_csv(table, out);
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

TimeSeriesTable read_csv(std::istream& in) {
  TimeSeriesTable t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty CSV");
  auto split_commas = [](std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      out.push_back(s.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  };
  const auto header = split_commas(trim(line));
  if (header.empty() || header[0] != "t") {
    throw Error(ErrorKind::ParseError, "line 1: header must start with 't'");
  }
  for (std::size_t c = 1; c < header.size(); ++c) t.columns.emplace_back(header[c]);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto cells = split_commas(body);
    if (cells.size() != header.size()) parse_fail(line_no, "column count differs from header");
    std::vector<double> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = parse_real(cells[c]);
      if (!v) parse_fail(line_no, "bad number '" + printable(cells[c]) + "'");
      if (c == 0) {
        if (!t.times.empty() && !(*v > t.times.back())) {
          parse_fail(line_no, "time column must strictly increase");
        }
        t.times.push_back(*v);
      } else {
        row.push_back(*v);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TimeSeriesTable read_timeseries_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "file not found: " + path.string());
  return read_csv(in);
}

json to_json(const Spectrum& spec) {
  json values = json::array();
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    values.push_back(complex_json(spec.eigenvalues(k)));
  }
  return {{"eigenvalues", values},
          {"is_real", spec.is_real},
          {"all_real", spec.all_real()},
          {"max_residual", spec.max_residual},
          {"symmetric_input", spec.symmetric_input}};
}

json to_json(const PatternReport& rep) {
  json patterns = {{"laplacian", mask_json(rep.laplacian)},
                   {"sqrt_laplacian", mask_json(rep.sqrt_laplacian)},
                   {"semi_normalized", rep.semi_normalized ? mask_json(*rep.semi_normalized)
                                                           : json(nullptr)}};
  return {{"threshold", rep.threshold},
          {"fill_counts",
           {{"laplacian", rep.fill_laplacian},
            {"sqrt_laplacian", rep.fill_sqrt},
            {"semi_normalized", rep.fill_semi_normalized}}},
          {"sqrt_is_complete", rep.sqrt_is_complete},
          {"sqrt_respects_links", rep.sqrt_respects_links()},
          {"patterns", patterns}};
}

json to_json(const SqrtResult& res, bool include_matrix) {
  json out = {{"residual", res.residual},
              {"used_symmetric_path", res.used_symmetric_path},
              {"near_defective", res.near_defective},
              {"eigenvector_condition", res.eigenvector_condition}};
  if (include_matrix) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < res.root.rows(); ++i) {
      std::vector<double> row(res.root.cols());
      for (Eigen::Index j = 0; j < res.root.cols(); ++j) row[static_cast<std::size_t>(j)] = res.root(i, j);
      rows.push_back(row);
    }
    out["matrix"] = rows;
  }
  return out;
}

json to_json(const SyncReport& rep) {
  return {{"lock_tol", rep.lock_tol},
          {"dwell", rep.dwell},
          {"lock_detected", rep.lock_detected},
          {"lock_time", optional_json(rep.lock_time)},
          {"growth_plus", optional_json(rep.growth_plus)},
          {"growth_minus", optional_json(rep.growth_minus)},
          {"mean_c_plus", optional_json(rep.mean_c_plus)},
          {"mean_c_minus", optional_json(rep.mean_c_minus)},
          {"c_product_drift", rep.c_product_drift}};
}

json to_json(const EchoParams& p) {
  return {{"n", p.n()},
          {"w", p.w()},
          {"d", p.degree()},
          {"omega2", p.omega2()},
          {"omega", p.omega()},
          {"diagonal", p.diagonal()},
          {"coupling", p.coupling()}};
}

json to_json(const ScenarioReport& rep) {
  json mean = json::array();
  for (std::size_t k = 0; k < rep.community_mean.size(); ++k) {
    mean.push_back({{"t", rep.pre_detachment.times[k]},
                    {"re", rep.community_mean[k].real()},
                    {"im", rep.community_mean[k].imag()}});
  }
  const Eigen::Matrix2d& b = rep.block;
  return {{"detachment",
           {{"isolated_nodes", rep.detachment.node_map},
            {"residual_nodes", rep.detachment.residual_map},
            {"isolated_edges", rep.detachment.isolated.edge_count()},
            {"residual_edges", rep.detachment.residual.edge_count()}}},
          {"params", to_json(rep.params)},
          {"block_matrix", {{b(0, 0), b(0, 1)}, {b(1, 0), b(1, 1)}}},
          {"sync", to_json(rep.sync)},
          {"isolated_pattern", to_json(rep.isolated_pattern)},
          {"boson_admissible", rep.boson_admissible},
          {"community_mean", mean},
          {"pre_detachment", table_to_json(to_table(rep.pre_detachment))},
          {"theta", table_to_json(to_table(rep.theta, rep.params))}};
}

}  // namespace oscnet
