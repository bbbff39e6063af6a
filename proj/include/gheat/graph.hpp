#pragma once

#include <Eigen/Core>

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gheat/errors.hpp"

namespace gheat {

using Index = int;

/// Extended-real infinity used for distances between disconnected vertices.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// How the vertex measure m was chosen at construction time.
enum class MeasurePolicy { Explicit, Physical, Normalized };

const char* to_string(MeasurePolicy p);
MeasurePolicy measure_policy_from_string(const std::string& s);

struct EdgeInput {
  std::string u;
  std::string v;
  double mu = 1.0;
};

/// Real-valued function on the vertices, addressed by dense vertex index.
using VertexFunction = Eigen::VectorXd;

/// Subset of vertices as sorted, duplicate-free dense indices.
using VertexSet = std::vector<Index>;

/// Finite weighted graph (V, mu, m): symmetric nonnegative edge weights mu and
/// a strictly positive vertex measure m. Immutable after construction; safe to
/// share across threads.
///
/// Vertex ids are opaque strings mapped to dense indices deterministically:
/// ids that parse as integers come first in numeric order, the rest follow
/// lexicographically. Self-loops are allowed; they contribute mu_xx to degree
/// sums but cancel in every difference expression f(y) - f(x).
class WeightedGraph {
 public:
  int size() const { return static_cast<int>(m_.size()); }

  const std::string& id_of(Index x) const { return ids_[check(x)]; }
  std::optional<Index> find(const std::string& id) const;
  Index index_of(const std::string& id) const;  // throws InputError if unknown

  double measure(Index x) const { return m_[check(x)]; }
  MeasurePolicy measure_policy() const { return policy_; }
  bool has_self_loops() const { return has_self_loops_; }

  /// mu_xy; zero when x and y are not adjacent.
  double edge_weight(Index x, Index y) const;

  /// Neighbors of x (including x itself when a self-loop is present), sorted
  /// by index, each with its edge weight.
  const std::vector<std::pair<Index, double>>& neighbors(Index x) const {
    return adj_[check(x)];
  }

  /// sum_y mu_xy, self-loops included.
  double degree_sum(Index x) const { return deg_sum_[check(x)]; }

  /// Weighted degree Deg(x) = (1/m_x) sum_y mu_xy.
  double weighted_degree(Index x) const { return deg_sum_[check(x)] / m_[x]; }

  double total_measure() const;
  double set_measure(const VertexSet& a) const;  // m(A)

  int edge_count() const { return edge_count_; }

 private:
  friend WeightedGraph build_graph_impl(const std::vector<EdgeInput>&,
                                        MeasurePolicy,
                                        const std::map<std::string, double>*,
                                        const std::vector<std::string>&);
  Index check(Index x) const;

  std::vector<std::string> ids_;
  std::map<std::string, Index> index_;
  std::vector<double> m_;
  std::vector<double> deg_sum_;
  std::vector<std::vector<std::pair<Index, double>>> adj_;
  MeasurePolicy policy_ = MeasurePolicy::Physical;
  bool has_self_loops_ = false;
  int edge_count_ = 0;
};

/// Builds a graph from an edge list under a measure policy ("physical" sets
/// m = 1, "normalized" sets m_x = sum_y mu_xy). Edges are symmetrized; listing
/// both (u,v,w) and (v,u,w) is fine, conflicting weights for one pair are not.
WeightedGraph build_graph(const std::vector<EdgeInput>& edges, MeasurePolicy policy,
                          const std::vector<std::string>& extra_vertices = {});

/// Same with an explicit measure map; every vertex needs an entry with m > 0.
WeightedGraph build_graph(const std::vector<EdgeInput>& edges,
                          const std::map<std::string, double>& measure,
                          const std::vector<std::string>& extra_vertices = {});

/// Internal builder: when `measure` is non-null its values are used verbatim
/// and `policy` is kept as a tag only. Deserialization relies on this to
/// round-trip m bit-exactly.
WeightedGraph build_graph_impl(const std::vector<EdgeInput>& edges, MeasurePolicy policy,
                               const std::map<std::string, double>* measure,
                               const std::vector<std::string>& extra_vertices);

/// BFS hop distance over edges with mu > 0; d(x,x) = 0, +inf when x and y lie
/// in different components.
double combinatorial_distance(const WeightedGraph& g, Index x, Index y);

/// All-pairs BFS hop distances, row = source.
Eigen::MatrixXd combinatorial_distances(const WeightedGraph& g);

/// Finite window [-n, n] of the one-dimensional lattice: path on 2n+1 vertices
/// labeled "-n".."n" with unit edge weights.
WeightedGraph truncate_lattice(int n, MeasurePolicy policy);

/// Translates vertex ids into a validated VertexSet (sorted, unique).
VertexSet make_vertex_set(const WeightedGraph& g, const std::vector<std::string>& ids);

/// Sorted-unique subset of the graph's index range?
bool is_valid_vertex_set(const WeightedGraph& g, const VertexSet& a);

VertexSet all_vertices(const WeightedGraph& g);

/// Indicator function of a set.
VertexFunction indicator(const WeightedGraph& g, const VertexSet& a);

// l2_m geometry.
double inner_m(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);
double norm_m(const WeightedGraph& g, const VertexFunction& f);

}  // namespace gheat
