#include "oscnet/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscnet/dynamics.hpp"
#include "oscnet/echo.hpp"
#include "oscnet/errors.hpp"
#include "oscnet/graph.hpp"
#include "oscnet/io.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

namespace {

namespace fs = std::filesystem;

struct CommonOutput {
  std::string out;
  std::string format = "csv";
};

void emit_table(const TimeSeriesTable& table, const CommonOutput& o, std::ostream& out) {
  const OutputFormat fmt = parse_format(o.format);
  if (!o.out.empty()) {
    write_timeseries(table, o.out, fmt);
  } else if (fmt == OutputFormat::Json) {
    out << table_to_json(table).dump(2) << '\n';
  } else {
    write_csv(table, out);
  }
}

void emit_json(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_json(doc, path);
  }
}

json config_echo(const ScenarioConfig& cfg) {
  json j = {{"graph", cfg.graph_path.filename().string()},
            {"dynamics", std::string(to_string(cfg.dynamics))},
            {"dt", cfg.dt},
            {"t_end", cfg.t_end},
            {"record_every", cfg.record_every},
            {"scheme", std::string(to_string(cfg.scheme))},
            {"initial", describe_initial(cfg)}};
  if (cfg.seed) j["seed"] = *cfg.seed;
  if (cfg.echo) {
    j["echo"] = {{"cluster", cfg.echo->cluster},
                 {"w_sat", cfg.echo->w_sat},
                 {"lock_tol", cfg.echo->lock_tol},
                 {"dwell", cfg.echo->dwell}};
  }
  return j;
}

int run_analyze(const std::string& graph_path, const std::string& out_path, double threshold,
                std::ostream& out, std::ostream& err) {
  const WeightedDigraph g = load_graph(graph_path);
  const LaplacianSet ls(g);
  const Spectrum spec = eigen_decompose(ls.laplacian());
  const RealSpectrumCheck real = check_real_spectrum(ls.laplacian());

  json report;
  report["graph"] = {{"n", g.node_count()},
                     {"edges", g.edge_count()},
                     {"fingerprint", g.fingerprint()}};
  report["degrees"] = std::vector<double>(ls.degrees().data(),
                                          ls.degrees().data() + ls.degrees().size());
  report["zero_degree_nodes"] = ls.zero_degree_nodes();
  report["spectrum"] = to_json(spec);
  json pairs = json::array();
  for (const auto& p : real.complex_pairs) {
    pairs.push_back({{"re", p.upper.real()}, {"im", p.upper.imag()}});
  }
  report["real_spectrum"] = {{"all_real", real.all_real}, {"complex_pairs", pairs}};

  try {
    const SqrtResult root = principal_sqrt(ls.laplacian());
    if (root.near_defective) {
      err << "warning: Laplacian looks non-diagonalizable (eigenvector condition "
          << root.eigenvector_condition << ")\n";
    }
    report["sqrt"] = to_json(root, false);
    report["sparsity"] = to_json(sparsity_report(ls, root, threshold));
  } catch (const Error& e) {
    if (!is_numerical(e.kind())) throw;
    report["sqrt"] = {{"error", e.what()}};
    report["sparsity"] = nullptr;
  }
  emit_json(report, out_path, out);
  return 0;
}

int run_simulate(const std::string& config_path, const CommonOutput& o, bool projected,
                 std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg = load_config(config_path);
  if (seed) {
    cfg.seed = seed;
    cfg.initial.reset();
  }
  const WeightedDigraph g = load_graph(cfg.graph_path);
  const LaplacianSet ls(g);
  const IntegratorConfig icfg = cfg.integrator();
  const std::size_t n = g.node_count();

  TimeSeriesTable table;
  switch (cfg.dynamics) {
    case Dynamics::Wave:
      table = to_table(integrate_wave(ls, resolve_wave_initial(cfg, n), icfg));
      break;
    case Dynamics::Boson: {
      const SqrtResult root = principal_sqrt(ls.laplacian());
      if (root.near_defective) err << "warning: Laplacian looks non-diagonalizable\n";
      ComplexTrajectory traj = integrate_boson(ls, root, resolve_doubled_initial(cfg, n), icfg);
      table = to_table(projected ? project(traj) : traj);
      break;
    }
    case Dynamics::Fermion: {
      ComplexTrajectory traj = integrate_fermion(ls, resolve_doubled_initial(cfg, n), icfg);
      table = to_table(projected ? project(traj) : traj);
      break;
    }
    case Dynamics::Echo: {
      ScenarioOptions opts;
      opts.theta0 = resolve_phase_initial(cfg);
      opts.lock_tol = cfg.echo->lock_tol;
      opts.dwell = cfg.echo->dwell;
      const ScenarioReport rep = run_scenario(g, cfg.echo->cluster, cfg.echo->w_sat, icfg,
                                              resolve_doubled_initial(cfg, n), opts);
      if (parse_format(o.format) == OutputFormat::Json) {
        json doc = to_json(rep);
        doc["config"] = config_echo(cfg);
        emit_json(doc, o.out, out);
        return 0;
      }
      table = to_table(rep.theta, rep.params);
      break;
    }
  }
  table.meta["config"] = config_echo(cfg);
  emit_table(table, o, out);
  return 0;
}

struct EchoArgs {
  std::string config;
  std::size_t n = 0;
  double w = 0.0;
  double t_end = 50.0;
  double dt = 1e-3;
  std::size_t record_every = 10;
  std::vector<double> theta0;
  std::optional<double> pin_sum;
  double lock_tol = kDefaultLockTol;
  double dwell = kDefaultDwell;
};

int run_echo(const EchoArgs& a, const CommonOutput& o, std::ostream& out, std::ostream& err) {
  if (!a.config.empty()) {
    ScenarioConfig cfg = load_config(a.config);
    if (cfg.dynamics != Dynamics::Echo) {
      throw Error(ErrorKind::InvalidValue, "echo subcommand needs dynamics \"echo\"");
    }
    std::ostringstream ignored;
    return run_simulate(a.config, o, false, std::nullopt, out, err);
  }
  if (a.n == 0) throw Error(ErrorKind::MissingKey, "--n (or --config)");
  const EchoParams p(a.n, a.w);
  IntegratorConfig cfg;
  cfg.dt = a.dt;
  cfg.t_end = a.t_end;
  cfg.record_every = a.record_every;
  PhaseState theta0{};
  if (!a.theta0.empty()) {
    if (a.theta0.size() != 4) {
      throw Error(ErrorKind::InvalidValue, "--theta0 takes re+,im+,re-,im-");
    }
    theta0 = {{a.theta0[0], a.theta0[1]}, {a.theta0[2], a.theta0[3]}};
  }
  const PhaseTrajectory traj = integrate_phase(p, theta0, cfg, a.pin_sum);
  const SyncReport sync = sync_diagnostics(traj, a.lock_tol, a.dwell);
  TimeSeriesTable table = to_table(traj, p);
  table.meta["sync"] = to_json(sync);
  table.meta["dt"] = cfg.dt;
  table.meta["record_every"] = cfg.record_every;
  const Eigen::Matrix2d b = block_matrix(p);
  table.meta["block_matrix"] = {{b(0, 0), b(0, 1)}, {b(1, 0), b(1, 1)}};
  emit_table(table, o, out);
  return 0;
}

struct SweepArgs {
  std::vector<std::size_t> ns;
  std::vector<double> ws;
  std::vector<double> re_theta{0.0};
  std::vector<double> im_theta{0.0};
  double t_end = 50.0;
  double dt = 1e-3;
  std::size_t record_every = 10;
  double lock_tol = kDefaultLockTol;
  double dwell = kDefaultDwell;
  bool serial = false;
};

std::string opt_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

int run_sweep(const SweepArgs& a, const CommonOutput& o, std::ostream& out) {
  IntegratorConfig cfg;
  cfg.dt = a.dt;
  cfg.t_end = a.t_end;
  cfg.record_every = a.record_every;
  cfg.validate();
  for (std::size_t n : a.ns) EchoParams(n, 1.0);
  for (double w : a.ws) EchoParams(2, w);
  const auto grid = make_sweep_grid(a.ns, a.ws, a.re_theta, a.im_theta);
  const auto rows =
      sweep_lock(grid, cfg, a.lock_tol, a.dwell, a.serial ? Execution::Serial : Execution::Parallel);

  if (parse_format(o.format) == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.point.n},
                     {"w", r.point.w},
                     {"re_theta0", r.point.theta0.plus.real()},
                     {"im_theta0", r.point.theta0.plus.imag()},
                     {"lock_detected", r.lock_detected},
                     {"lock_time", r.lock_time ? json(*r.lock_time) : json(nullptr)},
                     {"growth_plus", r.growth_plus ? json(*r.growth_plus) : json(nullptr)},
                     {"growth_minus", r.growth_minus ? json(*r.growth_minus) : json(nullptr)},
                     {"error", r.error}});
    }
    emit_json({{"t_end", a.t_end}, {"dt", a.dt}, {"lock_tol", a.lock_tol}, {"dwell", a.dwell},
               {"rows", arr}},
              o.out, out);
    return 0;
  }

  std::ostringstream csv;
  csv << "n,w,re_theta0,im_theta0,lock_detected,lock_time,growth_plus,growth_minus,error\n";
  for (const auto& r : rows) {
    std::string error = r.error;
    for (char& c : error)
      if (c == ',' || c == '\n') c = ';';
    csv << r.point.n << ',' << format_double(r.point.w) << ','
        << format_double(r.point.theta0.plus.real()) << ','
        << format_double(r.point.theta0.plus.imag()) << ',' << (r.lock_detected ? 1 : 0) << ','
        << opt_cell(r.lock_time) << ',' << opt_cell(r.growth_plus) << ','
        << opt_cell(r.growth_minus) << ',' << error << '\n';
  }
  if (o.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + o.out);
    f << csv.str();
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillation-model dynamics on social networks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto check_format = CLI::IsMember({"csv", "json"});

  std::string graph_path;
  std::string analyze_out;
  double threshold = kDefaultPatternThreshold;
  auto* analyze = app.add_subcommand("analyze", "spectrum, realness and sparsity report");
  analyze->add_option("--graph", graph_path, "edge-list file")->required();
  analyze->add_option("--out", analyze_out, "JSON report path (stdout if omitted)");
  analyze->add_option("--threshold", threshold, "absolute link threshold for patterns");

  std::string config_path;
  CommonOutput sim_out;
  bool projected = false;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "wave, boson, fermion or echo run from a config");
  simulate->add_option("--config", config_path, "JSON scenario config")->required();
  simulate->add_option("--out", sim_out.out, "output path (stdout if omitted)");
  simulate->add_option("--format", sim_out.format, "csv or json")->check(check_format);
  simulate->add_option("--seed", sim_seed, "random initial state seed (overrides config)");
  simulate->add_flag("--project", projected, "write projected node states for doubled systems");

  EchoArgs echo_args;
  CommonOutput echo_out;
  auto* echo = app.add_subcommand("echo", "isolated-community phase dynamics");
  echo->add_option("--config", echo_args.config, "scenario config with an echo block");
  echo->add_option("--n", echo_args.n, "community size");
  echo->add_option("--w", echo_args.w, "saturated link weight");
  echo->add_option("--t-end", echo_args.t_end, "horizon");
  echo->add_option("--dt", echo_args.dt, "time step");
  echo->add_option("--record-every", echo_args.record_every, "sampling stride");
  echo->add_option("--theta0", echo_args.theta0, "initial phases re+,im+,re-,im-")
      ->delimiter(',');
  echo->add_option("--pin-sum", echo_args.pin_sum, "hold Re theta+ + Re theta- at this value");
  echo->add_option("--lock-tol", echo_args.lock_tol, "lock tolerance in radians");
  echo->add_option("--dwell", echo_args.dwell, "lock dwell window");
  echo->add_option("--out", echo_out.out, "output path (stdout if omitted)");
  echo->add_option("--format", echo_out.format, "csv or json")->check(check_format);

  SweepArgs sweep_args;
  CommonOutput sweep_out;
  auto* sweep = app.add_subcommand("sweep", "parameter grid search for phase locking");
  sweep->add_option("--n", sweep_args.ns, "community sizes")->delimiter(',')->required();
  sweep->add_option("--w", sweep_args.ws, "saturated weights")->delimiter(',')->required();
  sweep->add_option("--re-theta", sweep_args.re_theta, "initial Re theta values")
      ->delimiter(',');
  sweep->add_option("--im-theta", sweep_args.im_theta, "initial Im theta values")
      ->delimiter(',');
  sweep->add_option("--t-end", sweep_args.t_end, "horizon");
  sweep->add_option("--dt", sweep_args.dt, "time step");
  sweep->add_option("--record-every", sweep_args.record_every, "sampling stride");
  sweep->add_option("--lock-tol", sweep_args.lock_tol, "lock tolerance in radians");
  sweep->add_option("--dwell", sweep_args.dwell, "lock dwell window");
  sweep->add_flag("--serial", sweep_args.serial, "run grid points on one thread");
  sweep->add_option("--out", sweep_out.out, "output path (stdout if omitted)");
  sweep->add_option("--format", sweep_out.format, "csv or json")->check(check_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*analyze) return run_analyze(graph_path, analyze_out, threshold, out, err);
    if (*simulate) return run_simulate(config_path, sim_out, projected, sim_seed, out, err);
    if (*echo) return run_echo(echo_args, echo_out, out, err);
    if (*sweep) return run_sweep(sweep_args, sweep_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.kind()) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 2;
  }
  return 1;
}

}  // namespace oscnet
