// Integrators for the wave equation on a network and its two first-order
// factorizations.
//
//   wave:     x''(t) = -L x(t)
//   boson:    i xhat'(t) = (sqrt(L) kron diag(+1, -1)) xhat(t)
//   fermion:  i xhat'(t) = (H kron a + sqrt(D) kron b) xhat(t)
//
// Doubled states interleave per node: (node 0 upper, node 0 lower, node 1
// upper, ...). Projection x = (I kron (1, 1)) xhat recovers a solution of the
// wave equation from either first-order system.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "oscnet/graph.hpp"
#include "oscnet/kernels.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

using cdouble = std::complex<double>;

enum class Scheme { RK4, Leapfrog };

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::RK4;
  std::size_t record_every = 10;
  Execution exec = Execution::Auto;
  // Reject dt above 0.1 / sqrt(lambda_max) with Error{UnstableStep}.
  bool enforce_stability = true;

  // Number of integration steps, round(t_end / dt).
  std::size_t steps() const;
  // Throws Error{InvalidConfig}.
  void validate() const;
};

std::string_view to_string(Scheme scheme) noexcept;

enum class Equation { Wave, Boson, Fermion, Block };

std::string_view to_string(Equation eq) noexcept;

struct TrajectoryMeta {
  Equation equation = Equation::Wave;
  // Set when doubled states have been projected to node states.
  bool projected = false;
  std::string graph_fingerprint;
  double dt = 0.0;
  std::size_t record_every = 1;
  Scheme scheme = Scheme::RK4;
};

template <typename Scalar>
struct WaveState {
  Vector<Scalar> x;
  Vector<Scalar> v;
};

using RealState = WaveState<double>;
using ComplexWaveState = WaveState<cdouble>;

struct DoubledState {
  Eigen::VectorXcd xhat;

  std::size_t node_count() const noexcept { return static_cast<std::size_t>(xhat.size() / 2); }
  Eigen::VectorXcd upper() const;
  Eigen::VectorXcd lower() const;
  static DoubledState from_parts(const Eigen::VectorXcd& upper, const Eigen::VectorXcd& lower);
};

template <typename Scalar>
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector<Scalar>> states;
  // Only filled for the second-order wave equation.
  std::vector<Vector<Scalar>> velocities;
  TrajectoryMeta meta;

  std::size_t size() const noexcept { return times.size(); }
  double spacing() const noexcept { return meta.dt * static_cast<double>(meta.record_every); }
};

using RealTrajectory = Trajectory<double>;
using ComplexTrajectory = Trajectory<cdouble>;

// 0.1 / sqrt(max |lambda(L)|); infinity for L = 0.
double stability_bound(const LaplacianSet& ls);

// Integrators reject mismatched state sizes with Error{DimensionMismatch} and
// stop with Error{NonFiniteState} on overflow.
RealTrajectory integrate_wave(const LaplacianSet& ls, const RealState& init,
                              const IntegratorConfig& cfg);
ComplexTrajectory integrate_wave(const LaplacianSet& ls, const ComplexWaveState& init,
                                 const IntegratorConfig& cfg);

// Requires a real spectrum (Error{ComplexSpectrum}).
ComplexTrajectory integrate_boson(const LaplacianSet& ls, const SqrtResult& sqrt_l,
                                  const DoubledState& init, const IntegratorConfig& cfg);

// Requires every out-degree positive (Error{ZeroOutDegree}).
ComplexTrajectory integrate_fermion(const LaplacianSet& ls, const DoubledState& init,
                                    const IntegratorConfig& cfg);

// Dense 2n x 2n generators G of i xhat' = G xhat.
Eigen::MatrixXd boson_generator(const SqrtResult& sqrt_l);
Eigen::MatrixXd fermion_generator(const LaplacianSet& ls);

// RK4 for i y' = G y with any real generator. No stability check beyond
// finiteness; callers own the step-size choice.
ComplexTrajectory integrate_linear(const Eigen::MatrixXd& generator, const Eigen::VectorXcd& y0,
                                   const IntegratorConfig& cfg, TrajectoryMeta meta);

// x_i = upper_i + lower_i. Throws Error{OddLength}.
Eigen::VectorXcd project_state(const Eigen::VectorXcd& xhat);
ComplexTrajectory project(const ComplexTrajectory& doubled);

// Wave-equation initial data carried by a doubled state:
// x0 = P xhat0, v0 = P (-i G xhat0).
ComplexWaveState projected_initial_conditions(const Eigen::MatrixXd& generator,
                                              const DoubledState& init);

struct ResidualSeries {
  std::vector<double> times;
  std::vector<double> values;

  double max() const noexcept;
};

// r(t_k) = ||(x_{k+1} - 2 x_k + x_{k-1}) / dt^2 + L x_k|| over interior samples.
// Throws Error{TooFewSamples, NonUniformSampling, DimensionMismatch}.
ResidualSeries wave_residual(const RealTrajectory& traj, const LaplacianSet& ls);
ResidualSeries wave_residual(const ComplexTrajectory& traj, const LaplacianSet& ls);

// 1/2 |v|^2 + 1/2 x^T L x
double wave_energy(const LaplacianSet& ls, const Eigen::VectorXd& x, const Eigen::VectorXd& v);

}  // namespace oscnet
