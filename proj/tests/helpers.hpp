#pragma once

#include <random>
#include <vector>

#include "gheat/graph.hpp"

namespace gheat::testing {

/// Seeded random connected weighted graph: a random spanning tree plus extra
/// edges, weights in [0.5, 2], and one of the three measure policies.
inline WeightedGraph random_connected_graph(std::uint64_t seed, int min_n = 20,
                                            int max_n = 60) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(min_n, max_n);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  const int n = size_dist(rng);

  // duplicate pairs must agree exactly, so every weight is derived from the
  // unordered endpoint pair
  auto pair_weight = [](int u, int v) {
    if (u > v) std::swap(u, v);
    return 0.5 + 1.5 * (((u * 131 + v * 31 + u * v) % 97) / 96.0);
  };
  std::vector<EdgeInput> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    int u = parent(rng);
    edges.push_back({std::to_string(u), std::to_string(v), pair_weight(u, v)});
  }
  std::uniform_int_distribution<int> any(0, n - 1);
  const int extra = n / 2;
  for (int e = 0; e < extra; ++e) {
    int u = any(rng), v = any(rng);
    if (u == v) continue;
    edges.push_back({std::to_string(std::min(u, v)), std::to_string(std::max(u, v)),
                     pair_weight(u, v)});
  }

  switch (seed % 3) {
    case 0:
      return build_graph(edges, MeasurePolicy::Physical);
    case 1:
      return build_graph(edges, MeasurePolicy::Normalized);
    default: {
      std::map<std::string, double> m;
      for (int v = 0; v < n; ++v) m[std::to_string(v)] = weight(rng);
      return build_graph(edges, m);
    }
  }
}

inline WeightedGraph p2_physical() {
  return build_graph({{"a", "b", 1.0}}, MeasurePolicy::Physical);
}

inline WeightedGraph p3_physical() {
  return build_graph({{"a", "b", 1.0}, {"b", "c", 1.0}}, MeasurePolicy::Physical);
}

inline VertexFunction random_function(const WeightedGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  VertexFunction f(g.size());
  for (Index i = 0; i < g.size(); ++i) f[i] = gauss(rng);
  return f;
}

}  // namespace gheat::testing
