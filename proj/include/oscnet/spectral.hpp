// Eigenstructure of real square matrices, the real-spectrum admission check,
// the principal square root of a Laplacian, and link-pattern comparison of
// L, sqrt(L) and H.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "oscnet/graph.hpp"

namespace oscnet {

inline constexpr double kDefaultResidualTol = 1e-9;
inline constexpr double kDefaultRealTol = 1e-10;
inline constexpr double kDefaultPatternThreshold = 1e-12;

struct Spectrum {
  // Sorted by ascending real part, ties by ascending imaginary part.
  Eigen::VectorXcd eigenvalues;
  // Unit-norm columns paired with eigenvalues.
  Eigen::MatrixXcd eigenvectors;
  std::vector<bool> is_real;
  // max_k ||M v_k - lambda_k v_k||
  double max_residual = 0.0;
  bool symmetric_input = false;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  bool all_real() const noexcept;
  // Largest eigenvalue modulus (0 for an empty or zero matrix).
  double max_modulus() const noexcept;
};

// Symmetric input goes through the self-adjoint solver; everything else
// through the general real solver. Every eigenpair is checked against
// rtol * ||M||_F; a failed solve or residual throws
// Error{ConvergenceFailure}.
Spectrum eigen_decompose(const Eigen::MatrixXd& m, double real_tol = kDefaultRealTol,
                         double rtol = kDefaultResidualTol);

struct ConjugatePair {
  std::complex<double> lower;  // negative imaginary part
  std::complex<double> upper;  // positive imaginary part
};

struct RealSpectrumCheck {
  bool all_real = true;
  std::vector<ConjugatePair> complex_pairs;
};

// AllReal iff every |Im lambda| <= tol. Complex eigenvalues of a Laplacian
// signal the flaming regime; dynamics refuse such graphs.
RealSpectrumCheck check_real_spectrum(const Eigen::MatrixXd& m, double tol = kDefaultRealTol);

enum class SqrtMethod {
  Auto,       // Symmetric for exactly symmetric input, Schur otherwise
  Schur,      // real Schur form + quasi-triangular recurrence
  Symmetric,  // V sqrt(Lambda) V^T; requires symmetric input
};

struct SqrtOptions {
  // Relative residual bound and negative-eigenvalue clamp, both scaled by ||L||_F.
  double tol = kDefaultResidualTol;
  // Imaginary parts below spectrum_tol * max(1, ||L||_F) count as rounding
  // noise from repeated real eigenvalues.
  double spectrum_tol = 1e-8;
  SqrtMethod method = SqrtMethod::Auto;
};

struct SqrtResult {
  Eigen::MatrixXd root;
  // ||root * root - L||_F / ||L||_F (absolute when L = 0).
  double residual = 0.0;
  bool used_symmetric_path = false;
  // Set when the eigenvector matrix of L has condition number above 1e12.
  bool near_defective = false;
  double eigenvector_condition = 1.0;
};

// Principal square root: the unique root whose eigenvalues have non-negative
// real parts. Negative eigenvalues within tol * ||L||_F are clamped to zero.
// Throws Error{ComplexSpectrum, NegativeEigenvalue, NoPrincipalRoot,
// ConvergenceFailure, DimensionMismatch}.
SqrtResult principal_sqrt(const Eigen::MatrixXd& l, const SqrtOptions& opts = {});

inline SqrtResult principal_sqrt(const Eigen::MatrixXd& l, double tol) {
  SqrtOptions opts;
  opts.tol = tol;
  return principal_sqrt(l, opts);
}

using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct PatternReport {
  double threshold = kDefaultPatternThreshold;
  Mask laplacian;
  Mask sqrt_laplacian;
  // Absent when H does not exist (some node has zero out-degree).
  std::optional<Mask> semi_normalized;
  // Off-diagonal nonzero counts.
  std::size_t fill_laplacian = 0;
  std::size_t fill_sqrt = 0;
  std::size_t fill_semi_normalized = 0;
  bool sqrt_is_complete = false;

  // True when every off-diagonal link of sqrt(L) is also a link of L, i.e.
  // the boson-type generator respects the network structure.
  bool sqrt_respects_links() const;
};

// Masks use one shared absolute threshold: |entry| > threshold is a link.
PatternReport sparsity_report(const LaplacianSet& ls, const SqrtResult& sqrt_l,
                              double threshold = kDefaultPatternThreshold);

Mask link_mask(const Eigen::MatrixXd& m, double threshold);
std::size_t off_diagonal_count(const Mask& mask);

}  // namespace oscnet
