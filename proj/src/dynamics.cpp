#include "oscnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oscnet/algebra.hpp"
#include "oscnet/errors.hpp"

namespace oscnet {

namespace {

constexpr cdouble kMinusI{0.0, -1.0};

void check_stability(const LaplacianSet& ls, const IntegratorConfig& cfg) {
  if (!cfg.enforce_stability) return;
  const double bound = stability_bound(ls);
  if (cfg.dt > bound * (1.0 + 1e-12)) {
    throw Error(ErrorKind::UnstableStep, "dt = " + std::to_string(cfg.dt) +
                                             " exceeds stability bound " + std::to_string(bound));
  }
}

void check_size(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has length " +
                                                  std::to_string(got) + ", expected " +
                                                  std::to_string(want));
  }
}

[[noreturn]] void non_finite(double t) {
  throw Error(ErrorKind::NonFiniteState, "state overflowed at t = " + std::to_string(t));
}

template <typename Scalar>
Trajectory<Scalar> run_wave(const LaplacianSet& ls, const WaveState<Scalar>& init,
                            const IntegratorConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(ls.size());
  check_size(init.x.size(), n, "initial x");
  check_size(init.v.size(), n, "initial v");
  check_stability(ls, cfg);

  const RowMatrix<Scalar> l = ls.laplacian().template cast<Scalar>();
  const Execution exec = cfg.exec;
  const double dt = cfg.dt;
  const std::size_t steps = cfg.steps();

  Trajectory<Scalar> traj;
  traj.meta = {Equation::Wave, false, ls.fingerprint(), dt, cfg.record_every, cfg.scheme};
  Vector<Scalar> x = init.x;
  Vector<Scalar> v = init.v;
  auto record = [&](std::size_t step) {
    traj.times.push_back(static_cast<double>(step) * dt);
    traj.states.push_back(x);
    traj.velocities.push_back(v);
  };
  record(0);

  Vector<Scalar> lx(n), tmp_x(n), tmp_v(n);
  if (cfg.scheme == Scheme::Leapfrog) {
    matvec(exec, l, x, lx);
    for (std::size_t s = 1; s <= steps; ++s) {
      // kick-drift-kick with a = -L x
      axpy(exec, v, -0.5 * dt, lx, tmp_v);
      axpy(exec, x, dt, tmp_v, x);
      matvec(exec, l, x, lx);
      axpy(exec, tmp_v, -0.5 * dt, lx, v);
      if (!x.allFinite() || !v.allFinite()) non_finite(static_cast<double>(s) * dt);
      if (s % cfg.record_every == 0) record(s);
    }
    return traj;
  }

  // RK4 on (x, v) with x' = v, v' = -L x.
  Vector<Scalar> k1x(n), k1v(n), k2x(n), k2v(n), k3x(n), k3v(n), k4x(n), k4v(n);
  for (std::size_t s = 1; s <= steps; ++s) {
    k1x = v;
    matvec(exec, l, x, lx);
    k1v = -lx;

    axpy(exec, x, 0.5 * dt, k1x, tmp_x);
    axpy(exec, v, 0.5 * dt, k1v, tmp_v);
    k2x = tmp_v;
    matvec(exec, l, tmp_x, lx);
    k2v = -lx;

    axpy(exec, x, 0.5 * dt, k2x, tmp_x);
    axpy(exec, v, 0.5 * dt, k2v, tmp_v);
    k3x = tmp_v;
    matvec(exec, l, tmp_x, lx);
    k3v = -lx;

    axpy(exec, x, dt, k3x, tmp_x);
    axpy(exec, v, dt, k3v, tmp_v);
    k4x = tmp_v;
    matvec(exec, l, tmp_x, lx);
    k4v = -lx;

    x += (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!x.allFinite() || !v.allFinite()) non_finite(static_cast<double>(s) * dt);
    if (s % cfg.record_every == 0) record(s);
  }
  return traj;
}

template <typename Scalar>
ResidualSeries residual_impl(const Trajectory<Scalar>& traj, const LaplacianSet& ls) {
  const std::size_t m = traj.size();
  if (m < 3) {
    throw Error(ErrorKind::TooFewSamples,
                "need at least 3 samples, got " + std::to_string(m));
  }
  const double h = traj.times[1] - traj.times[0];
  if (!(h > 0.0)) throw Error(ErrorKind::NonUniformSampling, "times must increase");
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double step = traj.times[k + 1] - traj.times[k];
    const double slack = 1e-9 * h + 4.0 * std::numeric_limits<double>::epsilon() *
                                         std::abs(traj.times[k + 1]);
    if (std::abs(step - h) > slack) {
      throw Error(ErrorKind::NonUniformSampling,
                  "sample spacing changes at index " + std::to_string(k));
    }
  }
  const auto n = static_cast<Eigen::Index>(ls.size());
  for (const auto& s : traj.states) check_size(s.size(), n, "trajectory state");

  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> l =
      ls.laplacian().template cast<Scalar>();
  ResidualSeries out;
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const Vector<Scalar> accel =
        (traj.states[k + 1] - 2.0 * traj.states[k] + traj.states[k - 1]) * inv_h2;
    out.times.push_back(traj.times[k]);
    out.values.push_back((accel + l * traj.states[k]).norm());
  }
  return out;
}

}  // namespace

std::size_t IntegratorConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::InvalidConfig, "dt must be positive");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidConfig, "t_end must be positive");
  }
  if (!(dt < t_end)) throw Error(ErrorKind::InvalidConfig, "dt must be smaller than t_end");
  if (record_every == 0) throw Error(ErrorKind::InvalidConfig, "record_every must be positive");
}

std::string_view to_string(Scheme scheme) noexcept {
  return scheme == Scheme::RK4 ? "rk4" : "leapfrog";
}

std::string_view to_string(Equation eq) noexcept {
  switch (eq) {
    case Equation::Wave: return "wave";
    case Equation::Boson: return "boson";
    case Equation::Fermion: return "fermion";
    case Equation::Block: return "echo-block";
  }
  return "unknown";
}

Eigen::VectorXcd DoubledState::upper() const {
  return Eigen::Map<const Eigen::VectorXcd, 0, Eigen::InnerStride<2>>(
      xhat.data(), static_cast<Eigen::Index>(node_count()));
}

Eigen::VectorXcd DoubledState::lower() const {
  return Eigen::Map<const Eigen::VectorXcd, 0, Eigen::InnerStride<2>>(
      xhat.data() + 1, static_cast<Eigen::Index>(node_count()));
}

DoubledState DoubledState::from_parts(const Eigen::VectorXcd& upper,
                                      const Eigen::VectorXcd& lower) {
  check_size(lower.size(), upper.size(), "lower component");
  DoubledState s;
  s.xhat.resize(2 * upper.size());
  for (Eigen::Index i = 0; i < upper.size(); ++i) {
    s.xhat(2 * i) = upper(i);
    s.xhat(2 * i + 1) = lower(i);
  }
  return s;
}

double stability_bound(const LaplacianSet& ls) {
  const double lmax = eigen_decompose(ls.laplacian()).max_modulus();
  if (lmax <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.1 / std::sqrt(lmax);
}

RealTrajectory integrate_wave(const LaplacianSet& ls, const RealState& init,
                              const IntegratorConfig& cfg) {
  return run_wave(ls, init, cfg);
}

ComplexTrajectory integrate_wave(const LaplacianSet& ls, const ComplexWaveState& init,
                                 const IntegratorConfig& cfg) {
  return run_wave(ls, init, cfg);
}

Eigen::MatrixXd boson_generator(const SqrtResult& sqrt_l) {
  const Eigen::Index n = sqrt_l.root.rows();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(2 * i, 2 * j) = sqrt_l.root(i, j);
      g(2 * i + 1, 2 * j + 1) = -sqrt_l.root(i, j);
    }
  }
  return g;
}

Eigen::MatrixXd fermion_generator(const LaplacianSet& ls) {
  const Eigen::MatrixXd& h = ls.semi_normalized();
  const Eigen::VectorXd sqrt_d = ls.sqrt_degrees();
  const Eigen::Matrix2d a = PauliPair::a();
  const Eigen::Matrix2d b = PauliPair::b();
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd g(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Matrix2d block = h(i, j) * a;
      if (i == j) block += sqrt_d(i) * b;
      g.block<2, 2>(2 * i, 2 * j) = block;
    }
  }
  return g;
}

ComplexTrajectory integrate_linear(const Eigen::MatrixXd& generator, const Eigen::VectorXcd& y0,
                                   const IntegratorConfig& cfg, TrajectoryMeta meta) {
  cfg.validate();
  if (cfg.scheme != Scheme::RK4) {
    throw Error(ErrorKind::InvalidConfig, "leapfrog applies to the wave equation only");
  }
  const Eigen::Index dim = generator.rows();
  check_size(generator.cols(), dim, "generator");
  check_size(y0.size(), dim, "initial state");

  // y' = K y with K = -i G
  const RowMatrix<cdouble> k = kMinusI * generator.cast<cdouble>();
  const Execution exec = cfg.exec;
  const double dt = cfg.dt;
  const std::size_t steps = cfg.steps();

  ComplexTrajectory traj;
  meta.dt = dt;
  meta.record_every = cfg.record_every;
  meta.scheme = cfg.scheme;
  traj.meta = std::move(meta);
  Eigen::VectorXcd y = y0;
  traj.times.push_back(0.0);
  traj.states.push_back(y);

  Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  for (std::size_t s = 1; s <= steps; ++s) {
    matvec(exec, k, y, k1);
    axpy(exec, y, 0.5 * dt, k1, tmp);
    matvec(exec, k, tmp, k2);
    axpy(exec, y, 0.5 * dt, k2, tmp);
    matvec(exec, k, tmp, k3);
    axpy(exec, y, dt, k3, tmp);
    matvec(exec, k, tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite()) non_finite(static_cast<double>(s) * dt);
    if (s % cfg.record_every == 0) {
      traj.times.push_back(static_cast<double>(s) * dt);
      traj.states.push_back(y);
    }
  }
  return traj;
}

ComplexTrajectory integrate_boson(const LaplacianSet& ls, const SqrtResult& sqrt_l,
                                  const DoubledState& init, const IntegratorConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(ls.size());
  check_size(sqrt_l.root.rows(), n, "square root");
  check_size(init.xhat.size(), 2 * n, "doubled state");
  const Spectrum spec = eigen_decompose(ls.laplacian());
  const double imag_tol = 1e-8 * std::max(1.0, ls.laplacian().norm());
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    if (std::abs(spec.eigenvalues(k).imag()) > imag_tol) {
      throw Error(ErrorKind::ComplexSpectrum, "Laplacian has complex eigenvalue " +
                                                  std::to_string(spec.eigenvalues(k).real()) +
                                                  " + " +
                                                  std::to_string(spec.eigenvalues(k).imag()) + "i");
    }
  }
  check_stability(ls, cfg);
  return integrate_linear(boson_generator(sqrt_l), init.xhat, cfg,
                          {Equation::Boson, false, ls.fingerprint()});
}

ComplexTrajectory integrate_fermion(const LaplacianSet& ls, const DoubledState& init,
                                    const IntegratorConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(ls.size());
  const Eigen::MatrixXd g = fermion_generator(ls);
  check_size(init.xhat.size(), 2 * n, "doubled state");
  check_stability(ls, cfg);
  return integrate_linear(g, init.xhat, cfg, {Equation::Fermion, false, ls.fingerprint()});
}

Eigen::VectorXcd project_state(const Eigen::VectorXcd& xhat) {
  if (xhat.size() % 2 != 0) {
    throw Error(ErrorKind::OddLength,
                "doubled state has odd length " + std::to_string(xhat.size()));
  }
  const Eigen::Index n = xhat.size() / 2;
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = xhat(2 * i) + xhat(2 * i + 1);
  return x;
}

ComplexTrajectory project(const ComplexTrajectory& doubled) {
  ComplexTrajectory out;
  out.times = doubled.times;
  out.meta = doubled.meta;
  out.meta.projected = true;
  out.states.reserve(doubled.states.size());
  for (const auto& s : doubled.states) out.states.push_back(project_state(s));
  return out;
}

ComplexWaveState projected_initial_conditions(const Eigen::MatrixXd& generator,
                                              const DoubledState& init) {
  check_size(init.xhat.size(), generator.rows(), "doubled state");
  ComplexWaveState w;
  w.x = project_state(init.xhat);
  const Eigen::VectorXcd dxhat = kMinusI * (generator.cast<cdouble>() * init.xhat);
  w.v = project_state(dxhat);
  return w;
}

double ResidualSeries::max() const noexcept {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

ResidualSeries wave_residual(const RealTrajectory& traj, const LaplacianSet& ls) {
  return residual_impl(traj, ls);
}

ResidualSeries wave_residual(const ComplexTrajectory& traj, const LaplacianSet& ls) {
  return residual_impl(traj, ls);
}

double wave_energy(const LaplacianSet& ls, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  return 0.5 * v.squaredNorm() + 0.5 * x.dot(ls.laplacian() * x);
}

}  // namespace oscnet
