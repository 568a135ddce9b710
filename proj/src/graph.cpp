#include "oscnet/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <utility>

#include "oscnet/errors.hpp"

namespace oscnet {

namespace {

std::string node_list(const std::vector<std::size_t>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(nodes[i]);
  }
  return out;
}

}  // namespace

WeightedDigraph make_graph_unchecked(std::size_t n, std::vector<Edge> edges) {
  WeightedDigraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  return g;
}

WeightedDigraph build_graph(std::size_t n, std::vector<Edge> edges) {
  if (n == 0) throw Error(ErrorKind::InvalidSize, "graph needs at least one node");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.src >= n || e.dst >= n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "edge " + std::to_string(k) + " (" + std::to_string(e.src) + " -> " +
                      std::to_string(e.dst) + ") exceeds node count " + std::to_string(n),
                  k);
    }
    if (e.src == e.dst) {
      throw Error(ErrorKind::SelfLoop,
                  "edge " + std::to_string(k) + " is a self-loop on node " +
                      std::to_string(e.src),
                  k);
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::NonPositiveWeight,
                  "edge " + std::to_string(k) + " has weight " + std::to_string(e.weight), k);
    }
    if (!seen.emplace(e.src, e.dst).second) {
      throw Error(ErrorKind::DuplicateEdge,
                  "edge " + std::to_string(k) + " repeats " + std::to_string(e.src) + " -> " +
                      std::to_string(e.dst),
                  k);
    }
  }
  return make_graph_unchecked(n, std::move(edges));
}

WeightedDigraph complete_graph(std::size_t n, double w) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "complete graph needs n >= 2");
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorKind::NonPositiveWeight, "complete graph weight must be positive");
  }
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) edges.push_back({i, j, w});
  return make_graph_unchecked(n, std::move(edges));
}

Eigen::VectorXd WeightedDigraph::out_degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  for (const Edge& e : edges_) d(static_cast<Eigen::Index>(e.src)) += e.weight;
  return d;
}

std::string WeightedDigraph::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
  });
  mix(n_);
  for (const Edge& e : sorted) {
    mix(e.src);
    mix(e.dst);
    mix(std::bit_cast<std::uint64_t>(e.weight));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LaplacianSet::LaplacianSet(const WeightedDigraph& g) : fingerprint_(g.fingerprint()) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  a_ = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a_(static_cast<Eigen::Index>(e.src), static_cast<Eigen::Index>(e.dst)) = e.weight;
  }
  d_ = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d_(i) += a_(i, j);
  l_ = -a_;
  l_.diagonal() = d_;

  for (Eigen::Index i = 0; i < n; ++i)
    if (!(d_(i) > 0.0)) zero_degree_.push_back(static_cast<std::size_t>(i));
  if (!zero_degree_.empty() || n == 0) return;

  const Eigen::VectorXd inv_sqrt = d_.cwiseSqrt().cwiseInverse();
  h_ = inv_sqrt.asDiagonal() * l_;
  n_ = *h_ * inv_sqrt.asDiagonal();
}

void LaplacianSet::require_normalized() const {
  if (h_) return;
  if (zero_degree_.empty()) {
    throw Error(ErrorKind::ZeroOutDegree, "graph has no nodes");
  }
  throw Error(ErrorKind::ZeroOutDegree,
              "nodes with zero out-degree: " + node_list(zero_degree_));
}

const Eigen::MatrixXd& LaplacianSet::semi_normalized() const {
  require_normalized();
  return *h_;
}

const Eigen::MatrixXd& LaplacianSet::normalized() const {
  require_normalized();
  return *n_;
}

Eigen::VectorXd LaplacianSet::sqrt_degrees() const { return d_.cwiseSqrt(); }

DetachmentResult detach_cluster(const WeightedDigraph& g,
                                std::span<const std::size_t> nodes, double w_sat) {
  const std::size_t n = g.node_count();
  if (nodes.size() < 2) {
    throw Error(ErrorKind::InvalidSubset, "cluster needs at least two nodes");
  }
  std::vector<bool> in_cluster(n, false);
  for (std::size_t v : nodes) {
    if (v >= n) {
      throw Error(ErrorKind::InvalidSubset, "cluster node " + std::to_string(v) +
                                                " out of range for " + std::to_string(n) +
                                                " nodes");
    }
    if (in_cluster[v]) {
      throw Error(ErrorKind::InvalidSubset, "cluster node " + std::to_string(v) + " repeated");
    }
    in_cluster[v] = true;
  }

  DetachmentResult out;
  out.isolated = complete_graph(nodes.size(), w_sat);
  out.node_map.assign(nodes.begin(), nodes.end());

  std::vector<std::size_t> new_index(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    if (in_cluster[v]) continue;
    new_index[v] = out.residual_map.size();
    out.residual_map.push_back(v);
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (in_cluster[e.src] || in_cluster[e.dst]) continue;
    kept.push_back({new_index[e.src], new_index[e.dst], e.weight});
  }
  out.residual = make_graph_unchecked(out.residual_map.size(), std::move(kept));
  return out;
}

}  // namespace oscnet
