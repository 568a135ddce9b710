#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "oscnet/echo.hpp"
#include "oscnet/errors.hpp"

using namespace oscnet;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an oscnet::Error");
  return ErrorKind::IoError;
}

IntegratorConfig config(double dt, double t_end, std::size_t every = 10) {
  IntegratorConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_every = every;
  return cfg;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("echo parameters for n=10, w=1") {
  const EchoParams p(10, 1.0);
  CHECK(p.degree() == 9.0);
  CHECK(p.omega2() == 10.0);
  CHECK(p.omega() == doctest::Approx(std::sqrt(10.0)));
  CHECK(p.diagonal() == doctest::Approx(19.0 / 6.0).epsilon(1e-15));
  CHECK(p.coupling() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const Eigen::Matrix2d b = block_matrix(p);
  CHECK(b(0, 0) == doctest::Approx(19.0 / 6.0));
  CHECK(b(0, 1) == doctest::Approx(1.0 / 6.0));
  CHECK(b(1, 0) == doctest::Approx(-1.0 / 6.0));
  CHECK(b(1, 1) == doctest::Approx(-19.0 / 6.0));
  const Eigen::Vector2cd ev = b.eigenvalues();
  const double lo = std::min(ev[0].real(), ev[1].real());
  const double hi = std::max(ev[0].real(), ev[1].real());
  CHECK(std::abs(hi - std::sqrt(10.0)) < 1e-10);
  CHECK(std::abs(lo + std::sqrt(10.0)) < 1e-10);
  CHECK(std::abs(ev[0].imag()) < 1e-10);

  CHECK(kind_of([] { EchoParams(1, 1.0); }) == ErrorKind::InvalidSize);
  CHECK(kind_of([] { EchoParams(3, 0.0); }) == ErrorKind::NonPositiveWeight);
}

TEST_CASE("block matrix identities over many parameters") {
  for (std::size_t n = 2; n <= 40; n += 3) {
    for (double w : {0.1, 0.7, 1.0, 3.5}) {
      const EchoParams p(n, w);
      const Eigen::Matrix2d b = block_matrix(p);
      CHECK(std::abs(b.trace()) < 1e-12);
      CHECK(std::abs(b.determinant() + p.omega2()) < 1e-10 * p.omega2());
      CHECK(p.omega2() - p.degree() == doctest::Approx(w));
      CHECK(p.coupling() > 0.0);
    }
  }
}

TEST_CASE("C coefficients") {
  const EchoParams p(10, 1.0);
  const CCoefficients c0 = c_coefficient(p, 0.0, 0.0);
  CHECK(c0.plus == doctest::Approx(1.0 / 6.0));
  CHECK(c0.minus == doctest::Approx(1.0 / 6.0));

  const CCoefficients c1 = c_coefficient(p, std::log(2.0) / 3.0, 2.0 * std::log(2.0) / 3.0);
  CHECK(c1.plus == doctest::Approx(1.0 / 12.0));
  CHECK(c1.minus == doctest::Approx(1.0 / 3.0));

  oracle::Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const double a = oracle::uniform(rng, -20, 20);
    const double b = oracle::uniform(rng, -20, 20);
    const CCoefficients c = c_coefficient(p, a, b);
    CHECK(c.plus > 0.0);
    CHECK(c.minus > 0.0);
    CHECK(c.plus * c.minus == doctest::Approx(1.0 / 36.0).epsilon(1e-12));
  }
  CHECK(kind_of([&] { c_coefficient(p, 800.0, 0.0); }) == ErrorKind::Overflow);
  CHECK(kind_of([&] { c_coefficient(p, -400.0, -400.0); }) == ErrorKind::Overflow);
}

TEST_CASE("Ansatz maps") {
  const PsiState one = phase_to_psi({0.0, 0.0});
  CHECK(one.plus == std::complex<double>(1.0, 0.0));
  CHECK(one.minus == std::complex<double>(1.0, 0.0));

  const PsiState quarter = phase_to_psi({kPi / 2, 0.0});
  CHECK(std::abs(quarter.plus - std::complex<double>(0.0, -1.0)) < 1e-15);

  const PsiState imag = phase_to_psi({{0.0, 1.0}, 0.0});
  CHECK(imag.plus.real() == doctest::Approx(std::exp(1.0)));
  CHECK(std::abs(imag.plus.imag()) < 1e-15);
  CHECK(amplitude_plus({{0.0, 1.0}, 0.0}) == doctest::Approx(std::exp(1.0)));
  CHECK(amplitude_minus({0.0, {0.0, 1.0}}) == doctest::Approx(std::exp(-1.0)));

  oracle::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const PhaseState th{{oracle::uniform(rng, -10, 10), oracle::uniform(rng, -3, 3)},
                        {oracle::uniform(rng, -10, 10), oracle::uniform(rng, -3, 3)}};
    const PhaseState back = psi_to_phase(phase_to_psi(th), th);
    CHECK(std::abs(back.plus - th.plus) < 1e-12 * (1.0 + std::abs(th.plus)));
    CHECK(std::abs(back.minus - th.minus) < 1e-12 * (1.0 + std::abs(th.minus)));
    const PsiState psi = phase_to_psi(th);
    CHECK(std::abs(std::abs(psi.plus) - amplitude_plus(th)) < 1e-12 * amplitude_plus(th));
    CHECK(std::abs(std::abs(psi.minus) - amplitude_minus(th)) < 1e-12 * amplitude_minus(th));
  }

  // Branch nearest to prev.
  const PhaseState far{{4 * kPi + 0.1, 0.0}, {-6 * kPi, 0.0}};
  const PhaseState unwrapped = psi_to_phase(phase_to_psi(far), far);
  CHECK(unwrapped.plus.real() == doctest::Approx(far.plus.real()));
  CHECK(unwrapped.minus.real() == doctest::Approx(far.minus.real()));

  CHECK(kind_of([] { psi_to_phase({0.0, 1.0}); }) == ErrorKind::ZeroAmplitude);
  CHECK(kind_of([] { psi_to_phase({1.0, 0.0}); }) == ErrorKind::ZeroAmplitude);
}

TEST_CASE("integrate_block examples") {
  const EchoParams p(10, 1.0);
  const auto zero = integrate_block(p, {0.0, 0.0}, config(1e-3, 1.0));
  for (const auto& s : zero.states) CHECK((s.plus == 0.0 && s.minus == 0.0));

  const Eigen::Matrix2d b = block_matrix(p);
  Eigen::EigenSolver<Eigen::Matrix2d> es(b);
  const int k = es.eigenvalues()[0].real() > 0 ? 0 : 1;
  const Eigen::Vector2cd v = es.eigenvectors().col(k);
  const auto mode = integrate_block(p, {v[0], v[1]}, config(1e-4, 5.0, 1000));
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t j = 0; j < mode.times.size(); ++j) {
    const std::complex<double> phase = std::exp(-i * p.omega() * mode.times[j]);
    CHECK(std::abs(mode.states[j].plus - phase * v[0]) < 1e-8);
    CHECK(std::abs(mode.states[j].minus - phase * v[1]) < 1e-8);
  }

  const auto generic = integrate_block(p, {1.0, 1.0}, config(1e-4, 5.0, 1000));
  const Eigen::VectorXcd ref = oracle::expm_solution(b, Eigen::Vector2cd(1.0, 1.0), 5.0);
  CHECK(generic.times.back() == doctest::Approx(5.0));
  CHECK(std::abs(generic.states.back().plus - ref[0]) < 1e-8);
  CHECK(std::abs(generic.states.back().minus - ref[1]) < 1e-8);
}

TEST_CASE("integrate_phase at the origin") {
  const EchoParams p(10, 1.0);
  const auto traj = integrate_phase(p, {0.0, 0.0}, config(1e-4, 1e-3, 1));
  REQUIRE(traj.size() >= 2);
  const double h = traj.times[1];
  const double rate = (traj.states[1].plus.real() - traj.states[0].plus.real()) / h;
  CHECK(rate == doctest::Approx(p.diagonal() + p.coupling()).epsilon(1e-3));
  CHECK(std::abs(traj.states[1].plus.imag()) < 1e-6);
  CHECK(traj.c.front().plus == doctest::Approx(1.0 / 6.0));
  CHECK(traj.c.front().minus == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("theta and psi integrations agree") {
  const EchoParams p(10, 1.0);
  oracle::Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const PhaseState th0{{oracle::uniform(rng, -kPi, kPi), oracle::uniform(rng, -0.5, 0.5)},
                         {oracle::uniform(rng, -kPi, kPi), oracle::uniform(rng, -0.5, 0.5)}};
    const IntegratorConfig cfg = config(1e-4, 5.0, 100);
    const auto theta = integrate_phase(p, th0, cfg);
    const auto psi_from_theta = to_psi(theta);
    const auto psi = integrate_block(p, phase_to_psi(th0), cfg);
    REQUIRE(psi.times.size() == theta.times.size());
    double err = 0.0;
    for (std::size_t k = 0; k < psi.times.size(); ++k) {
      err = std::max(err, std::abs(psi.states[k].plus - psi_from_theta.states[k].plus));
      err = std::max(err, std::abs(psi.states[k].minus - psi_from_theta.states[k].minus));
    }
    CHECK(err < 1e-6);

    const auto back = to_phase(p, psi, th0);
    double phase_err = 0.0;
    for (std::size_t k = 0; k < back.size(); ++k)
      phase_err = std::max({phase_err, std::abs(back.states[k].plus - theta.states[k].plus),
                            std::abs(back.states[k].minus - theta.states[k].minus)});
    CHECK(phase_err < 1e-5);
  }
}

TEST_CASE("C product is conserved along free trajectories") {
  const EchoParams p(6, 0.8);
  const auto traj = integrate_phase(p, {{0.3, 0.2}, {-1.0, -0.4}}, config(1e-3, 10.0));
  const SyncReport rep = sync_diagnostics(traj);
  CHECK(rep.c_product_drift < 1e-8);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(rep.amplitude_plus[k] == doctest::Approx(std::exp(traj.states[k].plus.imag())).epsilon(1e-12));
    CHECK(rep.amplitude_minus[k] == doctest::Approx(std::exp(-traj.states[k].minus.imag())).epsilon(1e-12));
  }
}

TEST_CASE("pinned synchronization grows both amplitudes") {
  const EchoParams p(10, 1.0);
  const auto traj = integrate_phase(p, {0.2, 0.0}, config(1e-3, 10.0, 10), kPi / 2);
  REQUIRE(traj.pinned_sum.has_value());
  for (const auto& th : traj.states) CHECK(th.sum_real() == doctest::Approx(kPi / 2).epsilon(1e-12));
  for (std::size_t k = 1; k < traj.size(); ++k) {
    CHECK(amplitude_plus(traj.states[k]) > amplitude_plus(traj.states[k - 1]));
    CHECK(amplitude_minus(traj.states[k]) > amplitude_minus(traj.states[k - 1]));
  }
  const SyncReport rep = sync_diagnostics(traj, kDefaultLockTol, 5.0);
  CHECK(rep.lock_detected);
  REQUIRE(rep.lock_time.has_value());
  CHECK(*rep.lock_time == 0.0);
  CHECK(*rep.growth_plus == doctest::Approx(*rep.mean_c_plus).epsilon(0.05));
  CHECK(*rep.growth_minus == doctest::Approx(*rep.mean_c_minus).epsilon(0.05));
}

TEST_CASE("sync diagnostics on constructed trajectories") {
  PhaseTrajectory flat;
  for (int k = 0; k <= 100; ++k) {
    flat.times.push_back(0.1 * k);
    flat.states.push_back({0.0, 0.0});
    flat.c.push_back({1.0, 1.0});
  }
  const SyncReport none = sync_diagnostics(flat, 0.05, 1.0);
  CHECK_FALSE(none.lock_detected);
  CHECK_FALSE(none.growth_plus.has_value());

  // s = pi/2 + 2 pi with Im theta advanced at the constant rates 0.3, -0.3.
  PhaseTrajectory locked;
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.1 * k;
    locked.times.push_back(t);
    locked.states.push_back({{1.0, 0.3 * t}, {kPi / 2 + 2 * kPi - 1.0, -0.3 * t}});
    locked.c.push_back({0.3, 0.3});
  }
  const SyncReport yes = sync_diagnostics(locked, 0.05, 2.0);
  CHECK(yes.lock_detected);
  CHECK(*yes.lock_time == 0.0);
  CHECK(*yes.growth_plus == doctest::Approx(0.3));
  CHECK(*yes.growth_minus == doctest::Approx(0.3));

  CHECK(lock_distance(kPi / 2) == doctest::Approx(0.0));
  CHECK(lock_distance(kPi / 2 - 4 * kPi) < 1e-12);
  CHECK(lock_distance(-kPi / 2) == doctest::Approx(kPi));

  CHECK(kind_of([] { sync_diagnostics(PhaseTrajectory{}); }) == ErrorKind::EmptyTrajectory);
}

TEST_CASE("ols slope") {
  const std::vector<double> t{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  CHECK(ols_slope(t, y) == doctest::Approx(2.0));
}

TEST_CASE("blow-up is reported, not clipped") {
  const EchoParams p(3, 5.0);
  CHECK(kind_of([&] { integrate_phase(p, {{0.0, 200.0}, {0.0, 200.0}}, config(1e-2, 100.0)); }) ==
        ErrorKind::NonFiniteState);
}

TEST_CASE("scenario on two bridged K5 communities") {
  std::vector<Edge> edges;
  for (std::size_t base : {0u, 5u})
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        if (i != j) edges.push_back({base + i, base + j, 1.0});
  edges.push_back({4, 5, 1.0});
  edges.push_back({5, 4, 1.0});
  const auto g = build_graph(10, edges);
  oracle::Rng rng(77);
  const DoubledState init{oracle::random_complex(20, rng)};
  const std::vector<std::size_t> cluster{0, 1, 2, 3, 4};
  const ScenarioReport rep = run_scenario(g, cluster, 1.0, config(1e-3, 2.0), init);
  CHECK(rep.params.n() == 5);
  CHECK(rep.params.degree() == 4.0);
  CHECK(rep.params.omega2() == 5.0);
  CHECK(rep.detachment.isolated.edge_count() == 20);
  CHECK(rep.detachment.residual.node_count() == 5);
  CHECK(rep.boson_admissible);
  CHECK(rep.isolated_pattern.sqrt_is_complete);
  CHECK(rep.community_mean.size() == rep.pre_detachment.size());
  CHECK(rep.psi.times.size() == rep.theta.times.size());
  CHECK(rep.sync.c_product_drift < 1e-8);

  const std::vector<std::size_t> one{3};
  CHECK(kind_of([&] { run_scenario(g, one, 1.0, config(1e-3, 2.0), init); }) ==
        ErrorKind::InvalidSubset);
}
