#include "gheat/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <deque>
#include <sstream>

namespace gheat {

namespace {

// Numeric-aware id ordering: integer ids sort numerically and precede
// non-integer ids, which sort lexicographically. Keeps lattice labels
// "-n".."n" in natural order while staying deterministic for arbitrary ids.
std::optional<long long> parse_integer(const std::string& s) {
  if (s.empty()) return std::nullopt;
  long long value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

bool id_less(const std::string& a, const std::string& b) {
  auto ia = parse_integer(a);
  auto ib = parse_integer(b);
  if (ia && ib) return *ia < *ib || (*ia == *ib && a < b);
  if (ia != std::nullopt) return true;
  if (ib != std::nullopt) return false;
  return a < b;
}

}  // namespace

const char* to_string(MeasurePolicy p) {
  switch (p) {
    case MeasurePolicy::Explicit: return "explicit";
    case MeasurePolicy::Physical: return "physical";
    case MeasurePolicy::Normalized: return "normalized";
  }
  return "?";
}

MeasurePolicy measure_policy_from_string(const std::string& s) {
  if (s == "explicit") return MeasurePolicy::Explicit;
  if (s == "physical") return MeasurePolicy::Physical;
  if (s == "normalized") return MeasurePolicy::Normalized;
  throw InputError("unknown measure policy: " + s);
}

Index WeightedGraph::check(Index x) const {
  if (x < 0 || x >= size()) throw InputError("vertex index out of range");
  return x;
}

std::optional<Index> WeightedGraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index WeightedGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown vertex id: " + id);
  return it->second;
}

double WeightedGraph::edge_weight(Index x, Index y) const {
  check(y);
  const auto& nb = adj_[check(x)];
  auto it = std::lower_bound(nb.begin(), nb.end(), y,
                             [](const auto& p, Index v) { return p.first < v; });
  if (it != nb.end() && it->first == y) return it->second;
  return 0.0;
}

double WeightedGraph::total_measure() const {
  double s = 0;
  for (double v : m_) s += v;
  return s;
}

double WeightedGraph::set_measure(const VertexSet& a) const {
  double s = 0;
  for (Index x : a) s += m_[check(x)];
  return s;
}

WeightedGraph build_graph_impl(const std::vector<EdgeInput>& edges, MeasurePolicy policy,
                               const std::map<std::string, double>* measure,
                               const std::vector<std::string>& extra_vertices) {
  if (edges.empty() && extra_vertices.empty())
    throw InputError("build_graph: empty edge list and no explicit vertices");

  std::vector<std::string> ids;
  for (const auto& e : edges) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  ids.insert(ids.end(), extra_vertices.begin(), extra_vertices.end());
  std::sort(ids.begin(), ids.end(), id_less);
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  WeightedGraph g;
  g.ids_ = std::move(ids);
  g.policy_ = policy;
  const int n = static_cast<int>(g.ids_.size());
  for (Index i = 0; i < n; ++i) g.index_[g.ids_[i]] = i;

  // Collect symmetrized weights, rejecting contradictory duplicates.
  std::map<std::pair<Index, Index>, double> mu;
  for (const auto& e : edges) {
    if (!(e.mu >= 0.0))
      throw InputError("negative or NaN edge weight on (" + e.u + "," + e.v + ")");
    Index a = g.index_[e.u];
    Index b = g.index_[e.v];
    auto key = std::minmax(a, b);
    auto [it, inserted] = mu.emplace(key, e.mu);
    if (!inserted && it->second != e.mu)
      throw InputError("contradictory duplicate edge (" + e.u + "," + e.v + ")");
  }

  g.adj_.assign(n, {});
  g.deg_sum_.assign(n, 0.0);
  for (const auto& [key, w] : mu) {
    auto [a, b] = key;
    if (w == 0.0) continue;  // zero-weight entries induce no edge
    g.adj_[a].emplace_back(b, w);
    g.deg_sum_[a] += w;
    if (a != b) {
      g.adj_[b].emplace_back(a, w);
      g.deg_sum_[b] += w;
    } else {
      g.has_self_loops_ = true;
    }
    ++g.edge_count_;
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());

  g.m_.assign(n, 1.0);
  if (measure) {
    for (Index i = 0; i < n; ++i) {
      auto it = measure->find(g.ids_[i]);
      if (it == measure->end())
        throw InputError("measure missing for vertex " + g.ids_[i]);
      g.m_[i] = it->second;
    }
  } else {
    switch (policy) {
      case MeasurePolicy::Physical:
        break;
      case MeasurePolicy::Normalized:
        for (Index i = 0; i < n; ++i) g.m_[i] = g.deg_sum_[i];
        break;
      case MeasurePolicy::Explicit:
        throw InputError("explicit policy requires a measure map");
    }
  }
  for (Index i = 0; i < n; ++i)
    if (!(g.m_[i] > 0.0))
      throw InputError("measure must be positive at vertex " + g.ids_[i]);
  return g;
}

WeightedGraph build_graph(const std::vector<EdgeInput>& edges, MeasurePolicy policy,
                          const std::vector<std::string>& extra_vertices) {
  if (policy == MeasurePolicy::Explicit)
    throw InputError("explicit policy requires a measure map overload");
  return build_graph_impl(edges, policy, nullptr, extra_vertices);
}

WeightedGraph build_graph(const std::vector<EdgeInput>& edges,
                          const std::map<std::string, double>& measure,
                          const std::vector<std::string>& extra_vertices) {
  return build_graph_impl(edges, MeasurePolicy::Explicit, &measure, extra_vertices);
}

double combinatorial_distance(const WeightedGraph& g, Index x, Index y) {
  if (x < 0 || x >= g.size() || y < 0 || y >= g.size())
    throw InputError("combinatorial_distance: vertex index out of range");
  if (x == y) return 0.0;
  std::vector<int> dist(g.size(), -1);
  dist[x] = 0;
  std::deque<Index> queue{x};
  while (!queue.empty()) {
    Index u = queue.front();
    queue.pop_front();
    for (const auto& [v, w] : g.neighbors(u)) {
      (void)w;
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      if (v == y) return dist[v];
      queue.push_back(v);
    }
  }
  return kInf;
}

Eigen::MatrixXd combinatorial_distances(const WeightedGraph& g) {
  const int n = g.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, kInf);
  std::vector<Index> queue;
  for (Index s = 0; s < n; ++s) {
    d(s, s) = 0;
    queue.assign(1, s);
    for (size_t head = 0; head < queue.size(); ++head) {
      Index u = queue[head];
      for (const auto& [v, w] : g.neighbors(u)) {
        (void)w;
        if (d(s, v) < kInf) continue;
        d(s, v) = d(s, u) + 1;
        queue.push_back(v);
      }
    }
  }
  return d;
}

WeightedGraph truncate_lattice(int n, MeasurePolicy policy) {
  if (n < 1) throw InputError("truncate_lattice: n must be >= 1");
  std::vector<EdgeInput> edges;
  edges.reserve(2 * n);
  for (int i = -n; i < n; ++i)
    edges.push_back({std::to_string(i), std::to_string(i + 1), 1.0});
  return build_graph(edges, policy);
}

VertexSet make_vertex_set(const WeightedGraph& g, const std::vector<std::string>& ids) {
  VertexSet a;
  a.reserve(ids.size());
  for (const auto& id : ids) a.push_back(g.index_of(id));
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool is_valid_vertex_set(const WeightedGraph& g, const VertexSet& a) {
  if (!std::is_sorted(a.begin(), a.end())) return false;
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
  return a.empty() || (a.front() >= 0 && a.back() < g.size());
}

VertexSet all_vertices(const WeightedGraph& g) {
  VertexSet a(g.size());
  for (Index i = 0; i < g.size(); ++i) a[i] = i;
  return a;
}

VertexFunction indicator(const WeightedGraph& g, const VertexSet& a) {
  VertexFunction f = VertexFunction::Zero(g.size());
  for (Index x : a) {
    if (x < 0 || x >= g.size()) throw InputError("indicator: index out of range");
    f[x] = 1.0;
  }
  return f;
}

double inner_m(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  if (f.size() != g.size() || h.size() != g.size())
    throw InputError("inner_m: dimension mismatch");
  double s = 0;
  for (Index i = 0; i < g.size(); ++i) s += g.measure(i) * f[i] * h[i];
  return s;
}

double norm_m(const WeightedGraph& g, const VertexFunction& f) {
  return std::sqrt(inner_m(g, f, f));
}

}  // namespace gheat
