#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "oscnet/dynamics.hpp"
#include "oscnet/echo.hpp"
#include "oscnet/kernels.hpp"

using namespace oscnet;

TEST_CASE_TEMPLATE("parallel matvec and axpy equal the serial reference", Scalar, double,
                   std::complex<double>) {
  oracle::Rng rng(42);
  for (Eigen::Index n : {1, 7, 64, 300, 513}) {
    RowMatrix<Scalar> m(n, n);
    Vector<Scalar> x(n), k(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = Scalar(oracle::uniform(rng, -1, 1));
      k[i] = Scalar(oracle::uniform(rng, -1, 1));
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Scalar(oracle::uniform(rng, -1, 1));
    }
    Vector<Scalar> ys, yp, as, ap;
    kernels::matvec_serial(m, x, ys);
    kernels::matvec_parallel(m, x, yp);
    // Each row is reduced by one thread in the same order: bitwise equal.
    CHECK((ys.array() == yp.array()).all());
    CHECK((ys - m * x).norm() <= 1e-12 * (1.0 + ys.norm()));

    kernels::axpy_serial(x, 0.25, k, as);
    kernels::axpy_parallel(x, 0.25, k, ap);
    CHECK((as.array() == ap.array()).all());
  }
}

TEST_CASE("dispatch follows the execution policy") {
  CHECK_FALSE(use_parallel(Execution::Serial, 10000));
  CHECK(use_parallel(Execution::Parallel, 2));
  CHECK_FALSE(use_parallel(Execution::Auto, kParallelThreshold - 1));
  CHECK(use_parallel(Execution::Auto, kParallelThreshold));
  CHECK(parallel_threads() >= 1);
}

TEST_CASE("integrators give identical trajectories serially and in parallel") {
  oracle::Rng rng(9);
  const LaplacianSet ls(oracle::random_undirected(12, 0.3, rng));
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.2;

  RealState w{Eigen::VectorXd::Random(12), Eigen::VectorXd::Zero(12)};
  cfg.exec = Execution::Serial;
  const auto ws = integrate_wave(ls, w, cfg);
  cfg.exec = Execution::Parallel;
  const auto wp = integrate_wave(ls, w, cfg);
  REQUIRE(ws.size() == wp.size());
  for (std::size_t k = 0; k < ws.size(); ++k) CHECK((ws.states[k].array() == wp.states[k].array()).all());

  const DoubledState init{oracle::random_complex(24, rng)};
  cfg.exec = Execution::Serial;
  const auto fs = integrate_fermion(ls, init, cfg);
  cfg.exec = Execution::Parallel;
  const auto fp = integrate_fermion(ls, init, cfg);
  for (std::size_t k = 0; k < fs.size(); ++k) CHECK((fs.states[k].array() == fp.states[k].array()).all());
}

TEST_CASE("parallel sweep returns rows in grid order matching the serial run") {
  const std::vector<std::size_t> ns{3, 5};
  const std::vector<double> ws{0.5, 1.0};
  const std::vector<double> re{0.0, 0.4};
  const std::vector<double> im{0.0, 0.1};
  const auto grid = make_sweep_grid(ns, ws, re, im);
  CHECK(grid.size() == 16);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 3.0;
  const auto serial = sweep_lock(grid, cfg, kDefaultLockTol, 1.0, Execution::Serial);
  const auto parallel = sweep_lock(grid, cfg, kDefaultLockTol, 1.0, Execution::Parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].point.n == grid[i].n);
    CHECK(parallel[i].point.n == grid[i].n);
    CHECK(parallel[i].point.w == grid[i].w);
    CHECK(serial[i].lock_detected == parallel[i].lock_detected);
    CHECK(serial[i].lock_time == parallel[i].lock_time);
    CHECK(serial[i].growth_plus == parallel[i].growth_plus);
    CHECK(serial[i].error == parallel[i].error);
  }
}
