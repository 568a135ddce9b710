// Serial reference kernels against their OpenMP counterparts.
#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "oscnet/dynamics.hpp"
#include "oscnet/echo.hpp"
#include "oscnet/graph.hpp"
#include "oscnet/kernels.hpp"

using namespace oscnet;

namespace {

template <typename Scalar>
RowMatrix<Scalar> random_matrix(Eigen::Index n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RowMatrix<Scalar> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if constexpr (std::is_same_v<Scalar, double>)
        m(i, j) = u(rng);
      else
        m(i, j) = Scalar(u(rng), u(rng));
    }
  return m;
}

template <typename Scalar, bool Parallel>
void BM_matvec(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const RowMatrix<Scalar> m = random_matrix<Scalar>(n);
  const Vector<Scalar> x = Vector<Scalar>::Ones(n);
  Vector<Scalar> y(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::matvec_parallel(m, x, y);
    else
      kernels::matvec_serial(m, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

template <Execution Exec>
void BM_fermion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LaplacianSet ls(complete_graph(n, 1.0 / static_cast<double>(n)));
  const DoubledState init{Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(2 * n))};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.05;
  cfg.record_every = 50;
  cfg.exec = Exec;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_fermion(ls, init, cfg));
}

template <Execution Exec>
void BM_sweep(benchmark::State& state) {
  const std::vector<std::size_t> ns{4, 8, 16, 32};
  const std::vector<double> ws{0.5, 1.0};
  const std::vector<double> re{0.0, 0.5, 1.0, 1.5};
  const std::vector<double> im{-0.2, 0.0, 0.2};
  const auto grid = make_sweep_grid(ns, ws, re, im);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 2.0;
  cfg.record_every = 10;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_lock(grid, cfg, kDefaultLockTol, 0.5, Exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

}  // namespace

BENCHMARK(BM_matvec<double, false>)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_matvec<double, true>)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_matvec<std::complex<double>, false>)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_matvec<std::complex<double>, true>)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_fermion<Execution::Serial>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fermion<Execution::Parallel>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<Execution::Serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<Execution::Parallel>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
