// An isolated community after detachment: a complete graph on n users with
// saturated uniform weight w. Its degree is d = (n-1) w and every nonzero
// Laplacian eigenvalue equals omega^2 = n w, so the fermion-type equation
// splits into identical 2x2 blocks
//
//   i psi' = [[ +(omega^2+d)/(2 sqrt d), +(omega^2-d)/(2 sqrt d) ],
//             [ -(omega^2-d)/(2 sqrt d), -(omega^2+d)/(2 sqrt d) ]] psi.
//
// With psi^+ = exp(-i theta^+), psi^- = exp(+i theta^-) the block becomes a
// Kuramoto-like system for the complex phases:
//
//   Re theta^+-' = a + C^+- cos(s)        s     = Re theta^+ + Re theta^-
//   Im theta^+-' = +-C^+- sin(s)          sigma = Im theta^+ + Im theta^-
//   C^+-         = b exp(-+sigma)
//
// where a = (omega^2+d)/(2 sqrt d) and b = (omega^2-d)/(2 sqrt d). Once s locks
// at pi/2 both amplitudes |psi^+-| grow at rate C^+-.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oscnet/dynamics.hpp"
#include "oscnet/graph.hpp"
#include "oscnet/kernels.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

inline constexpr double kDefaultLockTol = 0.05;
inline constexpr double kDefaultDwell = 5.0;

class EchoParams {
 public:
  // Throws Error{InvalidSize} for n < 2, Error{NonPositiveWeight} for w <= 0.
  EchoParams(std::size_t n, double w);

  std::size_t n() const noexcept { return n_; }
  double w() const noexcept { return w_; }
  double degree() const noexcept { return d_; }
  double omega2() const noexcept { return omega2_; }
  double omega() const noexcept;

  // (omega^2 + d) / (2 sqrt d)
  double diagonal() const noexcept;
  // (omega^2 - d) / (2 sqrt d), always positive
  double coupling() const noexcept;

 private:
  std::size_t n_;
  double w_;
  double d_;
  double omega2_;
};

Eigen::Matrix2d block_matrix(const EchoParams& p);

struct PsiState {
  cdouble plus;
  cdouble minus;
};

// Real parts are kept unwrapped: consecutive samples never jump by 2 pi.
struct PhaseState {
  cdouble plus;
  cdouble minus;

  double sum_real() const noexcept { return plus.real() + minus.real(); }
  double sum_imag() const noexcept { return plus.imag() + minus.imag(); }
};

PsiState phase_to_psi(const PhaseState& theta);

// Inverse Ansatz on the log branch nearest prev. Throws Error{ZeroAmplitude}.
PhaseState psi_to_phase(const PsiState& psi, const PhaseState& prev = {});

// |psi^+| = exp(+Im theta^+), |psi^-| = exp(-Im theta^-)
double amplitude_plus(const PhaseState& theta) noexcept;
double amplitude_minus(const PhaseState& theta) noexcept;

struct CCoefficients {
  double plus = 0.0;
  double minus = 0.0;
};

// Throws Error{Overflow} when exp(|Im theta^+ + Im theta^-|) overflows.
CCoefficients c_coefficient(const EchoParams& p, double im_plus, double im_minus);

struct PsiTrajectory {
  std::vector<double> times;
  std::vector<PsiState> states;
};

// RK4 of the 2x2 block equation. Throws Error{NonFiniteState}.
PsiTrajectory integrate_block(const EchoParams& p, const PsiState& psi0,
                              const IntegratorConfig& cfg);

struct PhaseTrajectory {
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<CCoefficients> c;
  // Set for forced synchronization runs.
  std::optional<double> pinned_sum;

  std::size_t size() const noexcept { return times.size(); }
};

// RK4 of the four real phase equations with C^+- recomputed at every stage.
//
// With pin_sum set, s is held at that value: Re theta^+ follows its equation
// with cos(pin_sum), and Re theta^- = pin_sum - Re theta^+ (the initial
// Re theta^- is overridden accordingly).
//
// Blow-up of C^+- stops the run with Error{NonFiniteState}.
PhaseTrajectory integrate_phase(const EchoParams& p, const PhaseState& theta0,
                                const IntegratorConfig& cfg,
                                std::optional<double> pin_sum = std::nullopt);

PsiTrajectory to_psi(const PhaseTrajectory& traj);

// Unwrapped phases along a psi trajectory, branch seeded by `initial`.
PhaseTrajectory to_phase(const EchoParams& p, const PsiTrajectory& traj,
                         const PhaseState& initial = {});

struct SyncReport {
  std::vector<double> times;
  std::vector<double> s_series;
  std::vector<double> amplitude_plus;
  std::vector<double> amplitude_minus;
  double lock_tol = kDefaultLockTol;
  double dwell = kDefaultDwell;
  bool lock_detected = false;
  std::optional<double> lock_time;
  // OLS slopes of log|psi^+-| over samples from lock_time on.
  std::optional<double> growth_plus;
  std::optional<double> growth_minus;
  // Mean C^+- over the same window.
  std::optional<double> mean_c_plus;
  std::optional<double> mean_c_minus;
  // max_t |C^+ C^- - C^+(0) C^-(0)| / (C^+(0) C^-(0))
  double c_product_drift = 0.0;
};

// Distance of s from pi/2 modulo 2 pi, in [0, pi].
double lock_distance(double s) noexcept;

// Lock: s stays within lock_tol of pi/2 (mod 2 pi) for a full dwell window.
// Throws Error{EmptyTrajectory}.
SyncReport sync_diagnostics(const PhaseTrajectory& traj, double lock_tol = kDefaultLockTol,
                            double dwell = kDefaultDwell);

// Ordinary least-squares slope of y against t.
double ols_slope(std::span<const double> t, std::span<const double> y);

struct ScenarioOptions {
  PhaseState theta0{};
  double lock_tol = kDefaultLockTol;
  double dwell = kDefaultDwell;
  std::optional<double> pin_sum;
};

struct ScenarioReport {
  // Fermion-type dynamics of the whole network before detachment.
  ComplexTrajectory pre_detachment;
  // Mean projected state over the cluster members along pre_detachment.
  std::vector<cdouble> community_mean;
  DetachmentResult detachment;
  EchoParams params;
  Eigen::Matrix2d block;
  PhaseTrajectory theta;
  PsiTrajectory psi;
  SyncReport sync;
  // L, sqrt(L), H patterns of the isolated community.
  PatternReport isolated_pattern;
  // sqrt(L) of the isolated community respects its links.
  bool boson_admissible = false;
};

ScenarioReport run_scenario(const WeightedDigraph& base, std::span<const std::size_t> cluster,
                            double w_sat, const IntegratorConfig& cfg, const DoubledState& init,
                            const ScenarioOptions& opts = {});

struct SweepPoint {
  std::size_t n = 2;
  double w = 1.0;
  PhaseState theta0{};
};

struct SweepRow {
  SweepPoint point;
  bool lock_detected = false;
  std::optional<double> lock_time;
  std::optional<double> growth_plus;
  std::optional<double> growth_minus;
  // Non-empty when the run failed (e.g. NonFiniteState).
  std::string error;
};

// Cartesian grid; theta0 = (re + i im, re + i im) for every (re, im) pair.
std::vector<SweepPoint> make_sweep_grid(std::span<const std::size_t> ns,
                                        std::span<const double> ws,
                                        std::span<const double> re_theta,
                                        std::span<const double> im_theta);

// One free-running phase integration per grid point. Parallel execution fans
// out over grid points; rows come back in grid order either way.
std::vector<SweepRow> sweep_lock(std::span<const SweepPoint> grid, const IntegratorConfig& cfg,
                                 double lock_tol = kDefaultLockTol, double dwell = kDefaultDwell,
                                 Execution exec = Execution::Auto);

}  // namespace oscnet
