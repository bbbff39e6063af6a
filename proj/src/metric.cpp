#include "gheat/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace gheat {

const char* to_string(MetricKind k) {
  switch (k) {
    case MetricKind::Combinatorial: return "combinatorial";
    case MetricKind::PathMetric: return "path-metric";
    case MetricKind::ExplicitTable: return "explicit-table";
  }
  return "?";
}

PseudoMetric::PseudoMetric(MetricKind kind, Eigen::MatrixXd d)
    : kind_(kind), dist_(std::move(d)) {
  const int n = size();
  for (int i = 0; i < n && !degenerate_; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist_(i, j) == 0.0) {
        degenerate_ = true;
        break;
      }
}

PseudoMetric PseudoMetric::combinatorial(const WeightedGraph& g) {
  return PseudoMetric(MetricKind::Combinatorial, combinatorial_distances(g));
}

PseudoMetric PseudoMetric::path_metric(
    const WeightedGraph& g, const std::function<double(Index, Index)>& edge_length) {
  const int n = g.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, kInf);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (Index s = 0; s < n; ++s) {
    d(s, s) = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > d(s, u)) continue;
      for (const auto& [v, w] : g.neighbors(u)) {
        (void)w;
        if (v == u) continue;  // self-loops never shorten a path
        double len = edge_length(u, v);
        if (!(len >= 0.0))
          throw InputError("path_metric: edge length must be nonnegative");
        double cand = du + len;
        if (cand < d(s, v)) {
          d(s, v) = cand;
          heap.push({cand, v});
        }
      }
    }
  }
  // Symmetrize exactly: lengths are symmetric, but float addition order of a
  // path and its reverse can differ in the last ulp.
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      double v = std::min(d(i, j), d(j, i));
      d(i, j) = v;
      d(j, i) = v;
    }
  return PseudoMetric(MetricKind::PathMetric, std::move(d));
}

PseudoMetric PseudoMetric::from_table(Eigen::MatrixXd d, double tol) {
  const int n = static_cast<int>(d.rows());
  if (d.cols() != n) throw InputError("metric table must be square");
  for (int i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw InputError("metric table must have zero diagonal");
    for (int j = 0; j < n; ++j) {
      if (std::isnan(d(i, j)) || d(i, j) < 0.0)
        throw InputError("metric table entries must be nonnegative");
      if (d(i, j) != d(j, i)) {
        if (std::abs(d(i, j) - d(j, i)) > tol * (1.0 + std::abs(d(i, j))))
          throw InputError("metric table must be symmetric");
        double v = std::min(d(i, j), d(j, i));
        d(i, j) = v;
        d(j, i) = v;
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double via = d(i, k) + d(k, j);  // +inf arithmetic is fine here
        if (d(i, j) > via + tol * (1.0 + via))
          throw InputError("metric table violates the triangle inequality");
      }
  return PseudoMetric(MetricKind::ExplicitTable, std::move(d));
}

IntrinsicCertificate certify_intrinsic(const WeightedGraph& g, const PseudoMetric& rho,
                                       double tol) {
  if (rho.size() != g.size())
    throw InputError("certify_intrinsic: metric does not cover the vertex set");
  IntrinsicCertificate cert;
  cert.tolerance = tol;
  cert.degenerate = rho.has_zero_distance_pairs();
  for (Index x = 0; x < g.size(); ++x) {
    double sum = 0.0;
    for (const auto& [y, mu] : g.neighbors(x)) {
      double r = rho(x, y);
      sum += mu * r * r;
      cert.jump_size = std::max(cert.jump_size, r);
    }
    cert.max_ratio = std::max(cert.max_ratio, sum / g.measure(x));
  }
  cert.is_intrinsic = cert.max_ratio <= 1.0 + tol;
  return cert;
}

PseudoMetric default_intrinsic_metric(const WeightedGraph& g) {
  // Edge length min(Deg(x)^{-1/2}, Deg(y)^{-1/2}): then for every vertex
  // sum_y mu_xy l(x,y)^2 <= sum_y mu_xy / Deg(x) = m_x, so the path metric it
  // induces is certifiably intrinsic (shortest paths only shrink it).
  return PseudoMetric::path_metric(g, [&g](Index x, Index y) {
    double dmax = std::max(g.weighted_degree(x), g.weighted_degree(y));
    return 1.0 / std::sqrt(dmax);
  });
}

VertexFunction distance_to_set(const PseudoMetric& rho, const VertexSet& a) {
  if (a.empty()) throw InputError("distance_to_set: empty set");
  VertexFunction f(rho.size());
  for (Index x = 0; x < rho.size(); ++x) {
    double best = kInf;
    for (Index v : a) best = std::min(best, rho(x, v));
    f[x] = best;
  }
  return f;
}

double set_distance(const PseudoMetric& rho, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw InputError("set_distance: empty set");
  double best = kInf;
  for (Index x : a)
    for (Index y : b) best = std::min(best, rho(x, y));
  return best;
}

double lipschitz_constant(const PseudoMetric& rho, const VertexFunction& f) {
  if (f.size() != rho.size()) throw InputError("lipschitz_constant: dimension mismatch");
  for (Index i = 0; i < f.size(); ++i)
    if (!std::isfinite(f[i]))
      throw InputError("lipschitz_constant: f must be finite everywhere");
  double best = 0.0;
  for (Index x = 0; x < rho.size(); ++x)
    for (Index y = x + 1; y < rho.size(); ++y) {
      double r = rho(x, y);
      double df = std::abs(f[y] - f[x]);
      if (r == 0.0) {
        if (df > 0.0) return kInf;
      } else if (r < kInf) {
        best = std::max(best, df / r);
      }
      // r == +inf imposes no constraint
    }
  return best;
}

}  // namespace gheat
