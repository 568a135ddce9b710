#include "oscnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "oscnet/errors.hpp"

namespace oscnet {

namespace {

bool exactly_symmetric(const Eigen::MatrixXd& m) {
  return m.rows() == m.cols() && m == m.transpose();
}

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

// Eigenvalues inside the noise band are zero modes perturbed by rounding;
// their square root would amplify that noise to sqrt(eps).
double real_root(double t, double clamp, double noise) {
  if (t < -clamp) {
    throw Error(ErrorKind::NegativeEigenvalue,
                "eigenvalue " + std::to_string(t) + " below clamp -" + std::to_string(clamp));
  }
  return t <= noise ? 0.0 : std::sqrt(t);
}

// Principal square root of the 1x1 or 2x2 diagonal block of a real Schur form.
Eigen::MatrixXd sqrt_diagonal_block(const Eigen::MatrixXd& block, double clamp, double noise,
                                    double imag_tol) {
  if (block.rows() == 1) {
    return Eigen::MatrixXd::Constant(1, 1, real_root(block(0, 0), clamp, noise));
  }

  // Complex conjugate pair mu +/- i nu, standardized or not.
  const double mu = 0.5 * (block(0, 0) + block(1, 1));
  const double det = block.determinant();
  const double nu2 = det - mu * mu;
  if (nu2 <= 0.0) {
    // Two real eigenvalues left in a 2x2 block; split with the real solver.
    Eigen::EigenSolver<Eigen::MatrixXd> es(block);
    const Eigen::Vector2cd ev = es.eigenvalues();
    const Eigen::Matrix2cd v = es.eigenvectors();
    Eigen::Vector2cd root_ev;
    for (int k = 0; k < 2; ++k) root_ev(k) = real_root(ev(k).real(), clamp, noise);
    const Eigen::Matrix2cd r = v * root_ev.asDiagonal() * v.inverse();
    return r.real();
  }
  const double nu = std::sqrt(nu2);
  if (nu > imag_tol) {
    throw Error(ErrorKind::ComplexSpectrum,
                "eigenvalue pair " + std::to_string(mu) + " +/- " + std::to_string(nu) + "i");
  }
  if (mu < -clamp) {
    throw Error(ErrorKind::NegativeEigenvalue, "eigenvalue pair with real part " +
                                                   std::to_string(mu));
  }
  const std::complex<double> root = std::sqrt(std::complex<double>(mu, nu));
  const double alpha = root.real();
  if (!(alpha > 0.0)) {
    throw Error(ErrorKind::NoPrincipalRoot, "near-zero eigenvalue pair has no principal root");
  }
  Eigen::MatrixXd r = block / (2.0 * alpha);
  r.diagonal().array() += alpha - mu / (2.0 * alpha);
  return r;
}

// Solves R_ii X + X R_jj = rhs for X (blocks of size 1 or 2).
Eigen::MatrixXd solve_block_sylvester(const Eigen::MatrixXd& rii, const Eigen::MatrixXd& rjj,
                                      const Eigen::MatrixXd& rhs, double zero_tol) {
  const Eigen::Index p = rii.rows();
  const Eigen::Index q = rjj.rows();
  const Eigen::MatrixXd ip = Eigen::MatrixXd::Identity(p, p);
  const Eigen::MatrixXd iq = Eigen::MatrixXd::Identity(q, q);
  Eigen::MatrixXd sys(p * q, p * q);
  // column-major vec: vec(A X) = (I_q kron A) vec(X); vec(X B) = (B^T kron I_p) vec(X)
  for (Eigen::Index a = 0; a < q; ++a)
    for (Eigen::Index b = 0; b < q; ++b)
      sys.block(a * p, b * p, p, p) = iq(a, b) * rii + rjj(b, a) * ip;
  const Eigen::VectorXd vec_rhs = Eigen::Map<const Eigen::VectorXd>(rhs.data(), p * q);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  lu.setThreshold(1e-14);
  if (!lu.isInvertible()) {
    // Both blocks are (numerically) zero roots. The Laplacian zero eigenvalue
    // is semisimple, so the coupling must vanish as well.
    if (rhs.norm() <= zero_tol) return Eigen::MatrixXd::Zero(p, q);
    throw Error(ErrorKind::NoPrincipalRoot,
                "defective zero eigenvalue: square root does not exist");
  }
  Eigen::VectorXd x = lu.solve(vec_rhs);
  return Eigen::Map<Eigen::MatrixXd>(x.data(), p, q);
}

// Block partition of a real quasi-triangular matrix: (start, size) pairs.
std::vector<std::pair<Eigen::Index, Eigen::Index>> schur_blocks(const Eigen::MatrixXd& t) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  const Eigen::Index n = t.rows();
  Eigen::Index i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      blocks.emplace_back(i, 2);
      i += 2;
    } else {
      blocks.emplace_back(i, 1);
      i += 1;
    }
  }
  return blocks;
}

Eigen::MatrixXd sqrt_quasi_triangular(const Eigen::MatrixXd& t, double clamp, double noise,
                                      double imag_tol, double zero_tol) {
  const auto blocks = schur_blocks(t);
  const Eigen::Index n = t.rows();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);

  for (std::size_t jb = 0; jb < blocks.size(); ++jb) {
    const auto [j0, jn] = blocks[jb];
    r.block(j0, j0, jn, jn) = sqrt_diagonal_block(t.block(j0, j0, jn, jn), clamp, noise, imag_tol);
    for (std::size_t ib = jb; ib-- > 0;) {
      const auto [i0, in] = blocks[ib];
      Eigen::MatrixXd rhs = t.block(i0, j0, in, jn);
      for (std::size_t kb = ib + 1; kb < jb; ++kb) {
        const auto [k0, kn] = blocks[kb];
        rhs -= r.block(i0, k0, in, kn) * r.block(k0, j0, kn, jn);
      }
      r.block(i0, j0, in, jn) = solve_block_sylvester(
          r.block(i0, i0, in, in), r.block(j0, j0, jn, jn), rhs, zero_tol);
    }
  }
  return r;
}

double eigenvector_condition(const Eigen::MatrixXd& l) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(l, true);
  if (es.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(es.eigenvectors());
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

bool Spectrum::all_real() const noexcept {
  return std::all_of(is_real.begin(), is_real.end(), [](bool b) { return b; });
}

double Spectrum::max_modulus() const noexcept {
  double m = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) m = std::max(m, std::abs(eigenvalues(k)));
  return m;
}

Spectrum eigen_decompose(const Eigen::MatrixXd& m, double real_tol, double rtol) {
  require_square(m, "matrix");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidValue, "matrix has non-finite entries");

  Spectrum spec;
  const Eigen::Index n = m.rows();
  Eigen::VectorXcd values(n);
  Eigen::MatrixXcd vectors(n, n);

  if (n > 0 && exactly_symmetric(m)) {
    spec.symmetric_input = true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::ConvergenceFailure, "self-adjoint eigensolver did not converge");
    }
    values = es.eigenvalues().cast<std::complex<double>>();
    vectors = es.eigenvectors().cast<std::complex<double>>();
  } else if (n > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::ConvergenceFailure, "eigensolver did not converge");
    }
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });

  spec.eigenvalues.resize(n);
  spec.eigenvectors.resize(n, n);
  spec.is_real.resize(static_cast<std::size_t>(n));
  const double bound = rtol * m.norm();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    spec.eigenvalues(k) = values(src);
    Eigen::VectorXcd v = vectors.col(src);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    spec.eigenvectors.col(k) = v;
    spec.is_real[static_cast<std::size_t>(k)] = std::abs(values(src).imag()) <= real_tol;
    const double res = (m.cast<std::complex<double>>() * v - values(src) * v).norm();
    spec.max_residual = std::max(spec.max_residual, res);
  }
  if (spec.max_residual > bound) {
    throw Error(ErrorKind::ConvergenceFailure,
                "eigenpair residual " + std::to_string(spec.max_residual) + " exceeds " +
                    std::to_string(bound));
  }
  return spec;
}

RealSpectrumCheck check_real_spectrum(const Eigen::MatrixXd& m, double tol) {
  const Spectrum spec = eigen_decompose(m, tol);
  RealSpectrumCheck out;
  std::vector<std::complex<double>> lower;
  std::vector<std::complex<double>> upper;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const auto z = spec.eigenvalues(k);
    if (z.imag() > tol) upper.push_back(z);
    if (z.imag() < -tol) lower.push_back(z);
  }
  out.all_real = upper.empty() && lower.empty();
  std::vector<bool> used(lower.size(), false);
  for (const auto& z : upper) {
    std::size_t best = lower.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (used[i]) continue;
      const double dist = std::abs(lower[i] - std::conj(z));
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best < lower.size()) {
      used[best] = true;
      out.complex_pairs.push_back({lower[best], z});
    } else {
      out.complex_pairs.push_back({std::conj(z), z});
    }
  }
  return out;
}

SqrtResult principal_sqrt(const Eigen::MatrixXd& l, const SqrtOptions& opts) {
  require_square(l, "Laplacian");
  if (!l.allFinite()) throw Error(ErrorKind::InvalidValue, "matrix has non-finite entries");

  SqrtResult out;
  const Eigen::Index n = l.rows();
  const double norm = l.norm();
  const double clamp = opts.tol * norm;
  const double noise = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * norm;
  if (n == 0 || norm == 0.0) {
    out.root = Eigen::MatrixXd::Zero(n, n);
    out.used_symmetric_path = true;
    return out;
  }

  const bool symmetric = exactly_symmetric(l);
  SqrtMethod method = opts.method;
  if (method == SqrtMethod::Auto) method = symmetric ? SqrtMethod::Symmetric : SqrtMethod::Schur;
  if (method == SqrtMethod::Symmetric && !symmetric) {
    throw Error(ErrorKind::InvalidValue, "symmetric square root requested for asymmetric input");
  }

  if (method == SqrtMethod::Symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::ConvergenceFailure, "self-adjoint eigensolver did not converge");
    }
    Eigen::VectorXd lam = es.eigenvalues();
    for (Eigen::Index k = 0; k < n; ++k) lam(k) = real_root(lam(k), clamp, noise);
    const Eigen::MatrixXd& v = es.eigenvectors();
    Eigen::MatrixXd root = v * lam.asDiagonal() * v.transpose();
    out.root = 0.5 * (root + root.transpose());
    out.used_symmetric_path = true;
  } else {
    Eigen::RealSchur<Eigen::MatrixXd> schur(l);
    if (schur.info() != Eigen::Success) {
      throw Error(ErrorKind::ConvergenceFailure, "real Schur decomposition did not converge");
    }
    const double imag_tol = opts.spectrum_tol * std::max(1.0, norm);
    const Eigen::MatrixXd r =
        sqrt_quasi_triangular(schur.matrixT(), clamp, noise, imag_tol, opts.tol * norm);
    const Eigen::MatrixXd& q = schur.matrixU();
    out.root = q * r * q.transpose();
    if (!symmetric) {
      out.eigenvector_condition = eigenvector_condition(l);
      out.near_defective = out.eigenvector_condition > 1e12;
    }
  }

  out.residual = (out.root * out.root - l).norm() / norm;
  if (!(out.residual <= opts.tol)) {
    throw Error(ErrorKind::ConvergenceFailure, "square-root residual " +
                                                   std::to_string(out.residual) + " exceeds " +
                                                   std::to_string(opts.tol));
  }
  return out;
}

Mask link_mask(const Eigen::MatrixXd& m, double threshold) {
  return m.array().abs() > threshold;
}

std::size_t off_diagonal_count(const Mask& mask) {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < mask.rows(); ++i)
    for (Eigen::Index j = 0; j < mask.cols(); ++j)
      if (i != j && mask(i, j)) ++count;
  return count;
}

bool PatternReport::sqrt_respects_links() const {
  for (Eigen::Index i = 0; i < sqrt_laplacian.rows(); ++i)
    for (Eigen::Index j = 0; j < sqrt_laplacian.cols(); ++j)
      if (i != j && sqrt_laplacian(i, j) && !laplacian(i, j)) return false;
  return true;
}

PatternReport sparsity_report(const LaplacianSet& ls, const SqrtResult& sqrt_l, double threshold) {
  const auto n = static_cast<Eigen::Index>(ls.size());
  if (sqrt_l.root.rows() != n || sqrt_l.root.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "square root is " + std::to_string(sqrt_l.root.rows()) + "x" +
                    std::to_string(sqrt_l.root.cols()) + ", Laplacian is " + std::to_string(n) +
                    "x" + std::to_string(n));
  }
  PatternReport rep;
  rep.threshold = threshold;
  rep.laplacian = link_mask(ls.laplacian(), threshold);
  rep.sqrt_laplacian = link_mask(sqrt_l.root, threshold);
  if (ls.has_normalized()) {
    rep.semi_normalized = link_mask(ls.semi_normalized(), threshold);
    rep.fill_semi_normalized = off_diagonal_count(*rep.semi_normalized);
  }
  rep.fill_laplacian = off_diagonal_count(rep.laplacian);
  rep.fill_sqrt = off_diagonal_count(rep.sqrt_laplacian);
  const auto total = static_cast<std::size_t>(n * (n - 1));
  rep.sqrt_is_complete = n >= 2 && rep.fill_sqrt == total;
  return rep;
}

}  // namespace oscnet
