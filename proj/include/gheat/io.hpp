#pragma once

#include <string>

#include "json.hpp"

#include "gheat/graph.hpp"
#include "gheat/heat.hpp"
#include "gheat/operators.hpp"

namespace gheat {

/// Graph schema:
/// {"vertices":[{"id":str,"m":float}],
///  "edges":[{"u":str,"v":str,"mu":float}],
///  "measure_policy":"explicit|physical|normalized"}
/// Doubles round-trip bit-exactly through this representation.
nlohmann::json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j);

WeightedGraph read_graph_json(const std::string& path);
void write_graph_json(const WeightedGraph& g, const std::string& path);

/// Edge-list CSV: one "u,v,mu" triple per line; '#' starts a comment.
WeightedGraph read_edge_csv(const std::string& path, MeasurePolicy policy);

/// Kernel dump: CSV with header x,y,t,p plus a JSON sidecar at <path>.json
/// carrying the invariant-check results.
void write_kernel_csv(const WeightedGraph& g, const HeatKernel& k, const std::string& path);

nlohmann::json spectral_report_json(const SpectralData& sd);

}  // namespace gheat
