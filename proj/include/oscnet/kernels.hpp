// Dense matrix-vector kernels used by every integrator.
//
// Each kernel exists twice: a plain serial loop that serves as the reference
// in tests, and an OpenMP version parallel over rows. Generators are stored
// row-major so each row is a contiguous dot product.

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace oscnet {

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class Execution { Serial, Parallel, Auto };

// Below this dimension Auto stays serial; thread start-up dominates.
inline constexpr Eigen::Index kParallelThreshold = 256;

namespace kernels {

// y = M x
template <typename Scalar>
void matvec_serial(const RowMatrix<Scalar>& m, const Vector<Scalar>& x, Vector<Scalar>& y) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  y.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Scalar* row = m.data() + i * cols;
    Scalar acc{};
    for (Eigen::Index j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

template <typename Scalar>
void matvec_parallel(const RowMatrix<Scalar>& m, const Vector<Scalar>& x, Vector<Scalar>& y) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  y.resize(rows);
  const Scalar* data = m.data();
  const Scalar* xv = x.data();
  Scalar* yv = y.data();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Scalar* row = data + i * cols;
    Scalar acc{};
    for (Eigen::Index j = 0; j < cols; ++j) acc += row[j] * xv[j];
    yv[i] = acc;
  }
}

// out = base + h * k
template <typename Scalar>
void axpy_serial(const Vector<Scalar>& base, double h, const Vector<Scalar>& k,
                 Vector<Scalar>& out) {
  out.resize(base.size());
  for (Eigen::Index i = 0; i < base.size(); ++i) out[i] = base[i] + h * k[i];
}

template <typename Scalar>
void axpy_parallel(const Vector<Scalar>& base, double h, const Vector<Scalar>& k,
                   Vector<Scalar>& out) {
  out.resize(base.size());
  const Eigen::Index size = base.size();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < size; ++i) out[i] = base[i] + h * k[i];
}

}  // namespace kernels

inline bool use_parallel(Execution exec, Eigen::Index dim) noexcept {
  return exec == Execution::Parallel || (exec == Execution::Auto && dim >= kParallelThreshold);
}

template <typename Scalar>
void matvec(Execution exec, const RowMatrix<Scalar>& m, const Vector<Scalar>& x,
            Vector<Scalar>& y) {
  if (use_parallel(exec, m.rows()))
    kernels::matvec_parallel(m, x, y);
  else
    kernels::matvec_serial(m, x, y);
}

template <typename Scalar>
void axpy(Execution exec, const Vector<Scalar>& base, double h, const Vector<Scalar>& k,
          Vector<Scalar>& out) {
  if (use_parallel(exec, base.size()))
    kernels::axpy_parallel(base, h, k, out);
  else
    kernels::axpy_serial(base, h, k, out);
}

// Number of OpenMP threads the parallel kernels will use.
int parallel_threads() noexcept;

}  // namespace oscnet
