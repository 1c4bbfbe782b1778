#include "netspec/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace netspec {

using nlohmann::ordered_json;

int Network::vertex_index(const std::string& id) const {
  auto it = index_of.find(id);
  if (it == index_of.end()) throw ValidationError("unknown vertex id: " + id);
  return it->second;
}

int Network::opposite(int e, int x) const {
  const Edge& ed = edges[e];
  if (ed.u == x) return ed.v;
  if (ed.v == x) return ed.u;
  throw std::invalid_argument("vertex is not an endpoint of the edge");
}

double Network::total_measure() const {
  double s = 0.0;
  for (double m : m0) s += m;
  return s;
}

namespace {

void check_connected(const Network& net) {
  int n = net.vertex_count();
  if (n == 0) throw ValidationError("schema violation: empty vertex list");
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (auto [y, e] : net.adjacency[x]) {
      (void)e;
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  if (reached != n) throw ValidationError("disconnected network: not all vertices are reachable");
}

}  // namespace

Network parse_network(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("schema violation: not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw ValidationError("schema violation: expected object with \"vertices\" and \"edges\"");
  if (!doc["vertices"].is_array() || !doc["edges"].is_array())
    throw ValidationError("schema violation: \"vertices\" and \"edges\" must be arrays");

  Network net;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ValidationError("schema violation: vertex ids must be strings");
    std::string id = v.get<std::string>();
    if (id.empty()) throw ValidationError("schema violation: empty vertex id");
    if (net.index_of.count(id)) throw ValidationError("schema violation: duplicate vertex id: " + id);
    net.index_of.emplace(id, static_cast<int>(net.vertices.size()));
    net.vertices.push_back(std::move(id));
  }
  if (net.vertices.empty()) throw ValidationError("schema violation: empty vertex list");

  std::set<std::pair<int, int>> seen_edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("c"))
      throw ValidationError("schema violation: edge entries need \"u\", \"v\", \"c\"");
    if (!e["u"].is_string() || !e["v"].is_string())
      throw ValidationError("schema violation: edge endpoints must be vertex ids");
    if (!e["c"].is_number())
      throw ValidationError("schema violation: conductance must be a number");
    std::string su = e["u"].get<std::string>();
    std::string sv = e["v"].get<std::string>();
    auto iu = net.index_of.find(su);
    auto iv = net.index_of.find(sv);
    if (iu == net.index_of.end()) throw ValidationError("unknown vertex id in edge: " + su);
    if (iv == net.index_of.end()) throw ValidationError("unknown vertex id in edge: " + sv);
    double c = e["c"].get<double>();
    if (su == sv) throw ValidationError("loop edge at vertex: " + su);
    if (!(c > 0.0) || !std::isfinite(c))
      throw ValidationError("nonpositive conductance on edge " + su + "-" + sv);
    Network::Edge ed;
    // canonical orientation: lexicographically smaller id first
    if (sv < su) std::swap(iu, iv);
    ed.u = iu->second;
    ed.v = iv->second;
    ed.c = c;
    auto key = std::make_pair(ed.u, ed.v);
    if (seen_edges.count(key))
      throw ValidationError("duplicate edge " + net.vertices[ed.u] + "-" + net.vertices[ed.v]);
    seen_edges.insert(key);
    net.edges.push_back(ed);
  }

  net.adjacency.assign(net.vertices.size(), {});
  net.m0.assign(net.vertices.size(), 0.0);
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& ed = net.edges[e];
    net.adjacency[ed.u].emplace_back(ed.v, e);
    net.adjacency[ed.v].emplace_back(ed.u, e);
    net.m0[ed.u] += ed.c;
    net.m0[ed.v] += ed.c;
  }
  for (int x = 0; x < net.vertex_count(); ++x)
    if (net.adjacency[x].empty() && net.vertex_count() > 1)
      throw ValidationError("disconnected network: isolated vertex " + net.vertices[x]);
  if (net.edge_count() == 0 && net.vertex_count() > 1)
    throw ValidationError("disconnected network: no edges");
  if (net.edge_count() == 0)
    throw ValidationError("schema violation: network needs at least one edge");
  check_connected(net);
  return net;
}

Network load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open network file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

std::string serialize_network(const Network& net) {
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (const auto& v : net.vertices) doc["vertices"].push_back(v);
  doc["edges"] = ordered_json::array();
  for (const auto& e : net.edges) {
    ordered_json je;
    je["u"] = net.vertices[e.u];
    je["v"] = net.vertices[e.v];
    je["c"] = e.c;
    doc["edges"].push_back(je);
  }
  return doc.dump(2);
}

StructureReport structure_report(const Network& net) {
  StructureReport rep;
  int n = net.vertex_count();
  rep.vertex_measures = net.m0;
  rep.alpha.assign(n, 0.0);
  for (const auto& e : net.edges) {
    double s = std::sqrt(e.c);
    rep.alpha[e.u] += s;
    rep.alpha[e.v] += s;
  }
  rep.total_measure = net.total_measure();
  rep.cycle_rank = net.edge_count() - n + 1;
  rep.is_tree = (rep.cycle_rank == 0);

  // 2-coloring by BFS; bipartite iff no edge joins equal colors.
  std::vector<int> color(n, -1);
  std::deque<int> queue{0};
  color[0] = 0;
  bool bipartite = true;
  while (!queue.empty() && bipartite) {
    int x = queue.front();
    queue.pop_front();
    for (auto [y, e] : net.adjacency[x]) {
      (void)e;
      if (color[y] == -1) {
        color[y] = 1 - color[x];
        queue.push_back(y);
      } else if (color[y] == color[x]) {
        bipartite = false;
        break;
      }
    }
  }
  rep.bipartite = bipartite;
  if (bipartite) rep.coloring = color;
  return rep;
}

}  // namespace netspec
