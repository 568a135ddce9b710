// Test-only reference computations and random inputs.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "oscnet/graph.hpp"

namespace oracle {

using Rng = std::mt19937_64;

// V sqrt(Lambda) V^T of a symmetric PSD matrix. Eigenvalues below 1e-12 ||M||
// are taken as exact zeros.
inline Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double cut = 1e-12 * std::max(1.0, m.norm());
  Eigen::VectorXd s = es.eigenvalues();
  for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = s[k] <= cut ? 0.0 : std::sqrt(s[k]);
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
}

// y(t) = exp(-i t G) y0
inline Eigen::VectorXcd expm_solution(const Eigen::MatrixXd& g, const Eigen::VectorXcd& y0,
                                      double t) {
  const std::complex<double> minus_i(0.0, -1.0);
  Eigen::MatrixXcd k = (minus_i * t) * g.cast<std::complex<double>>();
  Eigen::MatrixXcd e = k.exp();
  return e * y0;
}

// Exact wave solution x(t) = cos(t sqrt L) x0 + sin(t sqrt L)/sqrt L v0 for symmetric L.
inline Eigen::VectorXcd wave_solution(const Eigen::MatrixXd& l, const Eigen::VectorXcd& x0,
                                      const Eigen::VectorXcd& v0, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
  Eigen::VectorXcd a = v.adjoint() * x0;
  Eigen::VectorXcd b = v.adjoint() * v0;
  Eigen::VectorXcd out(a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double w = std::sqrt(std::max(es.eigenvalues()[k], 0.0));
    const double sinc = w < 1e-12 ? t : std::sin(w * t) / w;
    out[k] = std::cos(w * t) * a[k] + sinc * b[k];
  }
  return v * out;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Undirected (both directions, equal weight) random graph, optionally forced connected
// by a random spanning path.
inline oscnet::WeightedDigraph random_undirected(std::size_t n, double p, Rng& rng,
                                                 bool connected = true) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  if (connected) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double x = uniform(rng, 0.1, 2.0);
      w[order[i]][order[i + 1]] = w[order[i + 1]][order[i]] = x;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[i][j] == 0.0 && uniform(rng, 0.0, 1.0) < p) w[i][j] = w[j][i] = uniform(rng, 0.1, 2.0);
  std::vector<oscnet::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w[i][j] > 0.0) edges.push_back({i, j, w[i][j]});
  return oscnet::build_graph(n, std::move(edges));
}

// Directed random graph; every node gets at least one out-edge when n > 1.
inline oscnet::WeightedDigraph random_directed(std::size_t n, double p, Rng& rng) {
  std::vector<oscnet::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (uniform(rng, 0.0, 1.0) < p) {
        edges.push_back({i, j, uniform(rng, 0.1, 3.0)});
        any = true;
      }
    }
    if (!any && n > 1) {
      std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
      if (j >= i) ++j;
      edges.push_back({i, j, uniform(rng, 0.1, 3.0)});
    }
  }
  return oscnet::build_graph(n, std::move(edges));
}

// w_ij = c_i s_ij with s symmetric: L = C L_s is similar to a symmetric PSD
// matrix, so its spectrum is real and non-negative while L itself is not symmetric.
inline oscnet::WeightedDigraph random_symmetrizable(std::size_t n, double p, Rng& rng) {
  const oscnet::WeightedDigraph base = random_undirected(n, p, rng, true);
  std::vector<double> c(n);
  for (auto& ci : c) ci = uniform(rng, 0.3, 3.0);
  std::vector<oscnet::Edge> edges = base.edges();
  for (auto& e : edges) e.weight *= c[e.src];
  return oscnet::build_graph(n, std::move(edges));
}

inline oscnet::WeightedDigraph path_graph(std::size_t n, double w = 1.0) {
  std::vector<oscnet::Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1, w});
    edges.push_back({i + 1, i, w});
  }
  return oscnet::build_graph(n, std::move(edges));
}

inline oscnet::WeightedDigraph star_graph(std::size_t n, double w = 1.0) {
  std::vector<oscnet::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    edges.push_back({0, i, w});
    edges.push_back({i, 0, w});
  }
  return oscnet::build_graph(n, std::move(edges));
}

inline Eigen::VectorXcd random_complex(Eigen::Index n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
  return v;
}

}  // namespace oracle
