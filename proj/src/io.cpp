#include "gheat/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gheat {

using nlohmann::json;

json graph_to_json(const WeightedGraph& g) {
  json vertices = json::array();
  for (Index x = 0; x < g.size(); ++x)
    vertices.push_back({{"id", g.id_of(x)}, {"m", g.measure(x)}});
  json edges = json::array();
  for (Index x = 0; x < g.size(); ++x)
    for (const auto& [y, mu] : g.neighbors(x))
      if (y >= x) edges.push_back({{"u", g.id_of(x)}, {"v", g.id_of(y)}, {"mu", mu}});
  return json{{"vertices", vertices},
              {"edges", edges},
              {"measure_policy", to_string(g.measure_policy())}};
}

WeightedGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw InputError("graph json: expected object with vertices and edges");
  MeasurePolicy policy = MeasurePolicy::Explicit;
  if (j.contains("measure_policy"))
    policy = measure_policy_from_string(j.at("measure_policy").get<std::string>());

  std::map<std::string, double> measure;
  std::vector<std::string> vertex_ids;
  for (const auto& v : j.at("vertices")) {
    std::string id = v.at("id").get<std::string>();
    measure[id] = v.at("m").get<double>();
    vertex_ids.push_back(id);
  }
  std::vector<EdgeInput> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                     e.at("mu").get<double>()});

  WeightedGraph g = build_graph_impl(edges, policy, &measure, vertex_ids);
  // The serialized m values are authoritative; the policy tag must still be
  // consistent with them.
  for (Index x = 0; x < g.size(); ++x) {
    double expect = g.measure(x);
    if (policy == MeasurePolicy::Physical) expect = 1.0;
    if (policy == MeasurePolicy::Normalized) expect = g.degree_sum(x);
    if (std::abs(g.measure(x) - expect) > 1e-12 * std::max(1.0, std::abs(expect)))
      throw InputError("graph json: measure of vertex " + g.id_of(x) +
                       " contradicts the declared policy");
  }
  return g;
}

WeightedGraph read_graph_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("json parse error in " + path + ": " + e.what());
  }
  return graph_from_json(j);
}

void write_graph_json(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << graph_to_json(g).dump(2) << "\n";
}

WeightedGraph read_edge_csv(const std::string& path, MeasurePolicy policy) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<EdgeInput> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string u, v, w;
    if (!std::getline(ss, u, ',') || !std::getline(ss, v, ',') || !std::getline(ss, w))
      throw InputError("edge csv " + path + ": malformed line " + std::to_string(line_no));
    try {
      edges.push_back({u, v, std::stod(w)});
    } catch (const std::exception&) {
      throw InputError("edge csv " + path + ": bad weight on line " + std::to_string(line_no));
    }
  }
  return build_graph(edges, policy);
}

void write_kernel_csv(const WeightedGraph& g, const HeatKernel& k, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out.precision(17);
  out << "x,y,t,p\n";
  for (Index x = 0; x < g.size(); ++x)
    for (Index y = 0; y < g.size(); ++y)
      out << g.id_of(x) << "," << g.id_of(y) << "," << k.t << "," << k.p(x, y) << "\n";

  KernelInvariantReport rep = kernel_invariants(g, k);
  json sidecar{{"t", k.t},
               {"max_asymmetry", rep.max_asymmetry},
               {"min_entry", rep.min_entry},
               {"max_rowsum_deviation", rep.max_rowsum_deviation},
               {"symmetry_ok", rep.max_asymmetry <= 1e-10},
               {"positivity_ok", rep.min_entry >= -1e-12},
               {"conservation_ok", rep.max_rowsum_deviation <= 1e-10}};
  std::ofstream side(path + ".json");
  if (!side) throw InputError("cannot write " + path + ".json");
  side << sidecar.dump(2) << "\n";
}

json spectral_report_json(const SpectralData& sd) {
  json eigs = json::array();
  for (int i = 0; i < sd.eigenvalues.size(); ++i) eigs.push_back(sd.eigenvalues[i]);
  return json{{"lambda", sd.bottom()},
              {"eigenvalues", eigs},
              {"residual_max", sd.residual_max}};
}

}  // namespace gheat
