#pragma once

#include <Eigen/Core>

#include <functional>

#include "gheat/graph.hpp"

namespace gheat {

enum class MetricKind { Combinatorial, PathMetric, ExplicitTable };

const char* to_string(MetricKind k);

/// Pseudo metric on the vertex set: symmetric, zero diagonal, triangle
/// inequality; +inf between components is allowed, as are distinct vertices
/// at distance zero (a pseudo metric need not separate points).
class PseudoMetric {
 public:
  MetricKind kind() const { return kind_; }
  int size() const { return static_cast<int>(dist_.rows()); }

  double operator()(Index x, Index y) const { return dist_(x, y); }
  const Eigen::MatrixXd& table() const { return dist_; }

  /// True when some pair of distinct vertices sits at distance zero.
  bool has_zero_distance_pairs() const { return degenerate_; }

  /// Hop-count metric of the underlying graph.
  static PseudoMetric combinatorial(const WeightedGraph& g);

  /// Shortest-path metric from positive edge lengths (Dijkstra per source).
  static PseudoMetric path_metric(const WeightedGraph& g,
                                  const std::function<double(Index, Index)>& edge_length);

  /// Explicit matrix, validated for symmetry, zero diagonal, nonnegativity and
  /// the triangle inequality (exhaustive, desk scale).
  static PseudoMetric from_table(Eigen::MatrixXd d, double tol = 1e-12);

 private:
  PseudoMetric(MetricKind kind, Eigen::MatrixXd d);

  MetricKind kind_;
  Eigen::MatrixXd dist_;
  bool degenerate_ = false;
};

/// Result of checking the intrinsic condition
/// sum_y mu_xy rho^2(x,y) <= m_x at every vertex.
struct IntrinsicCertificate {
  double max_ratio = 0.0;   // max_x (1/m_x) sum_y mu_xy rho^2(x,y)
  double jump_size = 0.0;   // s = max over edges of rho(x,y)
  bool is_intrinsic = false;
  bool degenerate = false;  // distinct vertices at distance zero exist
  double tolerance = 1e-9;
};

IntrinsicCertificate certify_intrinsic(const WeightedGraph& g, const PseudoMetric& rho,
                                       double tol = 1e-9);

/// Path metric with edge length min(Deg(x), Deg(y))^{-1/2}; always passes
/// certify_intrinsic since sum_y mu_xy l(x,y)^2 <= sum_y mu_xy / Deg(x) = m_x.
PseudoMetric default_intrinsic_metric(const WeightedGraph& g);

/// x -> min_{a in A} rho(x,a). Zero on A, 1-Lipschitz, +inf off A's components.
VertexFunction distance_to_set(const PseudoMetric& rho, const VertexSet& a);

/// rho(A,B) = min over pairs; 0 when the sets intersect.
double set_distance(const PseudoMetric& rho, const VertexSet& a, const VertexSet& b);

/// Smallest kappa with |f(x)-f(y)| <= kappa rho(x,y) for all pairs; +inf when
/// f separates a zero-distance pair.
double lipschitz_constant(const PseudoMetric& rho, const VertexFunction& f);

}  // namespace gheat
