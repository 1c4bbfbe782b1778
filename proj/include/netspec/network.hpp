#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netspec {

// Raised on malformed or invalid input data (files, JSON, CSV).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Finite connected weighted network.  Edges are stored once, in canonical
// orientation: the endpoint with the lexicographically smaller id comes
// first.  Every edge has length 1; the line segment attached to edge (u,v)
// is parameterized by t in [0,1] running from u to v.
struct Network {
  struct Edge {
    int u = 0;       // canonical start (smaller vertex id)
    int v = 0;       // canonical end
    double c = 0.0;  // conductance, > 0
  };

  std::vector<std::string> vertices;  // input order
  std::vector<Edge> edges;            // input order, canonical orientation

  // adjacency[x] = list of (neighbor, edge index), in edge input order.
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  // m0[x] = sum of conductances of edges incident to x.
  std::vector<double> m0;

  std::unordered_map<std::string, int> index_of;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  int vertex_index(const std::string& id) const;

  // Other endpoint of edge e as seen from x; x must be an endpoint.
  int opposite(int e, int x) const;

  // Total measure of the vertex set: sum of m0 over all vertices.
  double total_measure() const;
};

struct StructureReport {
  std::vector<double> vertex_measures;       // m0, vertex input order
  std::vector<double> alpha;                 // sum of sqrt(c) over incident edges
  double total_measure = 0.0;
  bool bipartite = false;
  std::optional<std::vector<int>> coloring;  // 0/1 classes when bipartite
  bool is_tree = false;
  int cycle_rank = 0;                        // |E| - |V| + 1
};

// Parse a network from its JSON text:
//   {"vertices": ["x", ...], "edges": [{"u": "x", "v": "y", "c": 1.5}, ...]}
// Throws ValidationError with a distinct diagnostic for each failure mode:
// schema violations, unknown endpoints, loop edges, duplicate edges,
// nonpositive conductances, and disconnected networks.
Network parse_network(const std::string& json_text);

Network load_network_file(const std::string& path);

// Inverse of parse_network up to formatting; parse(serialize(net)) preserves
// vertex order, edge order, orientation, and conductances exactly.
std::string serialize_network(const Network& net);

StructureReport structure_report(const Network& net);

}  // namespace netspec
