// Weighted directed graphs and the matrices derived from them.
//
// For a graph with edge weights w_ij on links i -> j:
//
//   A_ij = w_ij                      adjacency
//   D    = diag(d_1, ..., d_n)       d_i = sum of out-link weights of node i
//   L    = D - A                     Laplacian (rows sum to zero)
//   H    = D^{-1/2} L                semi-normalized Laplacian
//   N    = D^{-1/2} L D^{-1/2}       normalized Laplacian
//
// H has the same link structure as L; it is the coefficient matrix of the
// fermion-type equation in dynamics.hpp.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oscnet {

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  std::size_t node_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Weighted out-degree of every node.
  Eigen::VectorXd out_degrees() const;

  // Stable 64-bit FNV-1a digest of (n, edges) rendered as 16 hex digits.
  std::string fingerprint() const;

 private:
  friend WeightedDigraph build_graph(std::size_t, std::vector<Edge>);
  friend WeightedDigraph make_graph_unchecked(std::size_t, std::vector<Edge>);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// Validates and builds a graph. Requires n >= 1.
// Throws Error{IndexOutOfRange, SelfLoop, DuplicateEdge, NonPositiveWeight,
// InvalidSize}; Error::index() names the offending edge.
WeightedDigraph build_graph(std::size_t n, std::vector<Edge> edges);

// Both directed edges between every node pair, all weight w.
WeightedDigraph complete_graph(std::size_t n, double w);

class LaplacianSet {
 public:
  explicit LaplacianSet(const WeightedDigraph& g);

  std::size_t size() const noexcept { return static_cast<std::size_t>(a_.rows()); }

  const Eigen::MatrixXd& adjacency() const noexcept { return a_; }
  const Eigen::VectorXd& degrees() const noexcept { return d_; }
  Eigen::MatrixXd degree_matrix() const { return d_.asDiagonal(); }
  const Eigen::MatrixXd& laplacian() const noexcept { return l_; }

  bool has_normalized() const noexcept { return h_.has_value(); }
  const std::vector<std::size_t>& zero_degree_nodes() const noexcept {
    return zero_degree_;
  }

  // Throw Error{ZeroOutDegree} naming the offending nodes when any out-degree
  // is zero.
  const Eigen::MatrixXd& semi_normalized() const;
  const Eigen::MatrixXd& normalized() const;
  Eigen::VectorXd sqrt_degrees() const;

  const std::string& fingerprint() const noexcept { return fingerprint_; }

 private:
  void require_normalized() const;

  Eigen::MatrixXd a_;
  Eigen::VectorXd d_;
  Eigen::MatrixXd l_;
  std::optional<Eigen::MatrixXd> h_;
  std::optional<Eigen::MatrixXd> n_;
  std::vector<std::size_t> zero_degree_;
  std::string fingerprint_;
};

inline LaplacianSet laplacian_set(const WeightedDigraph& g) { return LaplacianSet(g); }

struct DetachmentResult {
  WeightedDigraph isolated;
  WeightedDigraph residual;
  // isolated index -> original index, in the order the cluster was given.
  std::vector<std::size_t> node_map;
  // residual index -> original index, ascending.
  std::vector<std::size_t> residual_map;
};

// Cuts `nodes` out of g. The cluster becomes a saturated complete graph with
// uniform weight w_sat; every edge touching it is removed from the rest.
// Throws Error{InvalidSubset} for fewer than two nodes, out-of-range or
// repeated indices, and Error{NonPositiveWeight} for w_sat <= 0.
DetachmentResult detach_cluster(const WeightedDigraph& g,
                                std::span<const std::size_t> nodes,
                                double w_sat);

}  // namespace oscnet
