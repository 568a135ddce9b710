#include "oscnet/echo.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oscnet/errors.hpp"

namespace oscnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
// exp overflows double a little above 709.78.
constexpr double kMaxExponent = 700.0;

// y = (Re theta+, Im theta+, Re theta-, Im theta-)
using PhaseVec = std::array<double, 4>;

PhaseVec phase_rhs(const EchoParams& p, const PhaseVec& y, std::optional<double> pin) {
  const double s = pin ? *pin : y[0] + y[2];
  const CCoefficients c = c_coefficient(p, y[1], y[3]);
  const double a = p.diagonal();
  const double cs = std::cos(s);
  const double sn = std::sin(s);
  PhaseVec dy;
  dy[0] = a + c.plus * cs;
  dy[1] = c.plus * sn;
  dy[2] = pin ? -dy[0] : a + c.minus * cs;
  dy[3] = -c.minus * sn;
  return dy;
}

PhaseVec combine(const PhaseVec& y, double h, const PhaseVec& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

PhaseState to_state(const PhaseVec& y) { return {{y[0], y[1]}, {y[2], y[3]}}; }

double nearest_branch(double value, double target) {
  return value + kTwoPi * std::round((target - value) / kTwoPi);
}

}  // namespace

EchoParams::EchoParams(std::size_t n, double w) : n_(n), w_(w) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "community needs n >= 2");
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorKind::NonPositiveWeight, "saturated weight must be positive");
  }
  d_ = static_cast<double>(n - 1) * w;
  omega2_ = static_cast<double>(n) * w;
}

double EchoParams::omega() const noexcept { return std::sqrt(omega2_); }

double EchoParams::diagonal() const noexcept { return (omega2_ + d_) / (2.0 * std::sqrt(d_)); }

double EchoParams::coupling() const noexcept { return (omega2_ - d_) / (2.0 * std::sqrt(d_)); }

Eigen::Matrix2d block_matrix(const EchoParams& p) {
  const double a = p.diagonal();
  const double b = p.coupling();
  Eigen::Matrix2d m;
  m << a, b, -b, -a;
  return m;
}

PsiState phase_to_psi(const PhaseState& theta) {
  constexpr cdouble i{0.0, 1.0};
  return {std::exp(-i * theta.plus), std::exp(i * theta.minus)};
}

PhaseState psi_to_phase(const PsiState& psi, const PhaseState& prev) {
  if (psi.plus == 0.0 || psi.minus == 0.0) {
    throw Error(ErrorKind::ZeroAmplitude, "phase of a zero amplitude is undefined");
  }
  // theta+ = i log psi+,  theta- = -i log psi-
  const double re_plus = nearest_branch(-std::arg(psi.plus), prev.plus.real());
  const double re_minus = nearest_branch(std::arg(psi.minus), prev.minus.real());
  return {{re_plus, std::log(std::abs(psi.plus))}, {re_minus, -std::log(std::abs(psi.minus))}};
}

double amplitude_plus(const PhaseState& theta) noexcept { return std::exp(theta.plus.imag()); }

double amplitude_minus(const PhaseState& theta) noexcept {
  return std::exp(-theta.minus.imag());
}

CCoefficients c_coefficient(const EchoParams& p, double im_plus, double im_minus) {
  const double sigma = im_plus + im_minus;
  if (!std::isfinite(sigma) || std::abs(sigma) > kMaxExponent) {
    throw Error(ErrorKind::Overflow,
                "exp(" + std::to_string(sigma) + ") out of double range in C coefficient");
  }
  const double b = p.coupling();
  return {b * std::exp(-sigma), b * std::exp(sigma)};
}

PsiTrajectory integrate_block(const EchoParams& p, const PsiState& psi0,
                              const IntegratorConfig& cfg) {
  Eigen::VectorXcd y0(2);
  y0 << psi0.plus, psi0.minus;
  IntegratorConfig block_cfg = cfg;
  block_cfg.exec = Execution::Serial;
  const ComplexTrajectory traj =
      integrate_linear(block_matrix(p), y0, block_cfg, {Equation::Block, false, {}});
  PsiTrajectory out;
  out.times = traj.times;
  out.states.reserve(traj.states.size());
  for (const auto& s : traj.states) out.states.push_back({s(0), s(1)});
  return out;
}

PhaseTrajectory integrate_phase(const EchoParams& p, const PhaseState& theta0,
                                const IntegratorConfig& cfg, std::optional<double> pin_sum) {
  cfg.validate();
  if (cfg.scheme != Scheme::RK4) {
    throw Error(ErrorKind::InvalidConfig, "phase equations are integrated with RK4 only");
  }
  const double dt = cfg.dt;
  const std::size_t steps = cfg.steps();

  PhaseVec y{theta0.plus.real(), theta0.plus.imag(), theta0.minus.real(), theta0.minus.imag()};
  if (pin_sum) y[2] = *pin_sum - y[0];

  PhaseTrajectory out;
  out.pinned_sum = pin_sum;
  double t = 0.0;
  auto record = [&]() {
    out.times.push_back(t);
    out.states.push_back(to_state(y));
    out.c.push_back(c_coefficient(p, y[1], y[3]));
  };

  try {
    record();
    for (std::size_t s = 1; s <= steps; ++s) {
      const PhaseVec k1 = phase_rhs(p, y, pin_sum);
      const PhaseVec k2 = phase_rhs(p, combine(y, 0.5 * dt, k1), pin_sum);
      const PhaseVec k3 = phase_rhs(p, combine(y, 0.5 * dt, k2), pin_sum);
      const PhaseVec k4 = phase_rhs(p, combine(y, dt, k3), pin_sum);
      for (int i = 0; i < 4; ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (pin_sum) y[2] = *pin_sum - y[0];
      t = static_cast<double>(s) * dt;
      for (double v : y) {
        if (!std::isfinite(v)) {
          throw Error(ErrorKind::NonFiniteState, "phase overflowed at t = " + std::to_string(t));
        }
      }
      if (s % cfg.record_every == 0) record();
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    throw Error(ErrorKind::NonFiniteState,
                std::string("C coefficient blew up near t = ") + std::to_string(t) + " (" +
                    e.what() + ")");
  }
  return out;
}

PsiTrajectory to_psi(const PhaseTrajectory& traj) {
  PsiTrajectory out;
  out.times = traj.times;
  out.states.reserve(traj.states.size());
  for (const auto& th : traj.states) out.states.push_back(phase_to_psi(th));
  return out;
}

PhaseTrajectory to_phase(const EchoParams& p, const PsiTrajectory& traj,
                         const PhaseState& initial) {
  PhaseTrajectory out;
  out.times = traj.times;
  PhaseState prev = initial;
  for (const auto& psi : traj.states) {
    prev = psi_to_phase(psi, prev);
    out.states.push_back(prev);
    out.c.push_back(c_coefficient(p, prev.plus.imag(), prev.minus.imag()));
  }
  return out;
}

double lock_distance(double s) noexcept {
  double d = std::fmod(s - kHalfPi, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d > std::numbers::pi ? kTwoPi - d : d;
}

double ols_slope(std::span<const double> t, std::span<const double> y) {
  const std::size_t m = t.size();
  if (m < 2 || y.size() != m) return std::numeric_limits<double>::quiet_NaN();
  double tm = 0.0;
  double ym = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    tm += t[k];
    ym += y[k];
  }
  tm /= static_cast<double>(m);
  ym /= static_cast<double>(m);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxy += (t[k] - tm) * (y[k] - ym);
    sxx += (t[k] - tm) * (t[k] - tm);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

SyncReport sync_diagnostics(const PhaseTrajectory& traj, double lock_tol, double dwell) {
  if (traj.states.empty()) throw Error(ErrorKind::EmptyTrajectory, "no phase samples");
  if (traj.c.size() != traj.states.size() || traj.times.size() != traj.states.size()) {
    throw Error(ErrorKind::DimensionMismatch, "phase trajectory columns differ in length");
  }
  SyncReport rep;
  rep.lock_tol = lock_tol;
  rep.dwell = dwell;
  rep.times = traj.times;
  const std::size_t m = traj.size();
  for (const auto& th : traj.states) {
    rep.s_series.push_back(th.sum_real());
    rep.amplitude_plus.push_back(amplitude_plus(th));
    rep.amplitude_minus.push_back(amplitude_minus(th));
  }

  const double p0 = traj.c.front().plus * traj.c.front().minus;
  for (const auto& c : traj.c) {
    rep.c_product_drift = std::max(rep.c_product_drift, std::abs(c.plus * c.minus - p0) / p0);
  }

  // Earliest run of in-tolerance samples lasting at least `dwell`.
  const double t_last = traj.times.back();
  std::size_t run_start = m;
  for (std::size_t k = 0; k < m; ++k) {
    if (lock_distance(rep.s_series[k]) < lock_tol) {
      if (run_start == m) run_start = k;
      if (traj.times[k] - traj.times[run_start] >= dwell - 1e-12) {
        rep.lock_detected = true;
        rep.lock_time = traj.times[run_start];
        break;
      }
    } else {
      run_start = m;
    }
  }
  if (rep.lock_detected && *rep.lock_time + dwell > t_last + 1e-12) {
    rep.lock_detected = false;
    rep.lock_time.reset();
  }
  if (!rep.lock_detected) return rep;

  std::vector<double> t;
  std::vector<double> log_plus;
  std::vector<double> log_minus;
  double c_plus = 0.0;
  double c_minus = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (traj.times[k] < *rep.lock_time) continue;
    t.push_back(traj.times[k]);
    log_plus.push_back(traj.states[k].plus.imag());
    log_minus.push_back(-traj.states[k].minus.imag());
    c_plus += traj.c[k].plus;
    c_minus += traj.c[k].minus;
  }
  if (t.size() >= 2) {
    rep.growth_plus = ols_slope(t, log_plus);
    rep.growth_minus = ols_slope(t, log_minus);
    rep.mean_c_plus = c_plus / static_cast<double>(t.size());
    rep.mean_c_minus = c_minus / static_cast<double>(t.size());
  }
  return rep;
}

ScenarioReport run_scenario(const WeightedDigraph& base, std::span<const std::size_t> cluster,
                            double w_sat, const IntegratorConfig& cfg, const DoubledState& init,
                            const ScenarioOptions& opts) {
  DetachmentResult det = detach_cluster(base, cluster, w_sat);
  const LaplacianSet base_ls(base);
  ComplexTrajectory pre = integrate_fermion(base_ls, init, cfg);

  std::vector<cdouble> community_mean;
  community_mean.reserve(pre.states.size());
  for (const auto& s : pre.states) {
    const Eigen::VectorXcd x = project_state(s);
    cdouble acc = 0.0;
    for (std::size_t v : cluster) acc += x(static_cast<Eigen::Index>(v));
    community_mean.push_back(acc / static_cast<double>(cluster.size()));
  }

  const EchoParams params(cluster.size(), w_sat);
  PhaseTrajectory theta = integrate_phase(params, opts.theta0, cfg, opts.pin_sum);
  PsiTrajectory psi = opts.pin_sum ? to_psi(theta)
                                   : integrate_block(params, phase_to_psi(opts.theta0), cfg);
  SyncReport sync = sync_diagnostics(theta, opts.lock_tol, opts.dwell);

  const LaplacianSet iso_ls(det.isolated);
  const SqrtResult iso_sqrt = principal_sqrt(iso_ls.laplacian());
  PatternReport pattern = sparsity_report(iso_ls, iso_sqrt);
  const bool admissible = pattern.sqrt_respects_links();

  return ScenarioReport{std::move(pre),   std::move(community_mean), std::move(det),
                        params,           block_matrix(params),      std::move(theta),
                        std::move(psi),   std::move(sync),           std::move(pattern),
                        admissible};
}

std::vector<SweepPoint> make_sweep_grid(std::span<const std::size_t> ns,
                                        std::span<const double> ws,
                                        std::span<const double> re_theta,
                                        std::span<const double> im_theta) {
  std::vector<SweepPoint> grid;
  for (std::size_t n : ns)
    for (double w : ws)
      for (double re : re_theta)
        for (double im : im_theta) grid.push_back({n, w, {{re, im}, {re, im}}});
  return grid;
}

std::vector<SweepRow> sweep_lock(std::span<const SweepPoint> grid, const IntegratorConfig& cfg,
                                 double lock_tol, double dwell, Execution exec) {
  std::vector<SweepRow> rows(grid.size());
  auto run_one = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.point = grid[i];
    try {
      const EchoParams p(grid[i].n, grid[i].w);
      const PhaseTrajectory traj = integrate_phase(p, grid[i].theta0, cfg);
      const SyncReport rep = sync_diagnostics(traj, lock_tol, dwell);
      row.lock_detected = rep.lock_detected;
      row.lock_time = rep.lock_time;
      row.growth_plus = rep.growth_plus;
      row.growth_minus = rep.growth_minus;
    } catch (const Error& e) {
      row.error = e.what();
    }
  };

  const auto count = static_cast<std::ptrdiff_t>(grid.size());
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) run_one(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) run_one(static_cast<std::size_t>(i));
  }
  return rows;
}

}  // namespace oscnet
