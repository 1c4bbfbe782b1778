#include "netspec/averaging.hpp"

#include <cmath>

namespace netspec {

SampledEdgeFunction apply_averaging(const SampledEdgeFunction& F) {
  const Network& net = *F.net;
  int N = F.N;
  double h = 1.0 / N;

  // Cumulative trapezoid prefix per canonical edge: P[e][k] ~ int_0^{k/N} F_e.
  std::vector<std::vector<cplx>> prefix(net.edge_count(), std::vector<cplx>(N + 1));
  for (int e = 0; e < net.edge_count(); ++e) {
    cplx acc = 0.0;
    prefix[e][0] = 0.0;
    for (int k = 1; k <= N; ++k) {
      acc += 0.5 * h * (F.values[e][k - 1] + F.values[e][k]);
      prefix[e][k] = acc;
    }
  }
  // Prefix of the reversed view over [0, k/N] is Total - P[N-k]; both views
  // integrate the same nodes, so the directed prefixes agree exactly.
  auto directed_prefix = [&](int e, bool from_start, int k) {
    return from_start ? prefix[e][k] : prefix[e][N] - prefix[e][N - k];
  };

  // S[x][j] = sum over edges at x of c_e int_0^{j/N} F(x., s) ds.
  std::vector<std::vector<cplx>> S(net.vertex_count(), std::vector<cplx>(N + 1, cplx(0.0)));
  for (int x = 0; x < net.vertex_count(); ++x)
    for (auto [y, e] : net.adjacency[x]) {
      (void)y;
      bool fs = (net.edges[e].u == x);
      for (int j = 0; j <= N; ++j) S[x][j] += net.edges[e].c * directed_prefix(e, fs, j);
    }

  SampledEdgeFunction out(net, N);
  for (int e = 0; e < net.edge_count(); ++e) {
    int u = net.edges[e].u, v = net.edges[e].v;
    for (int k = 0; k <= N; ++k)
      out.values[e][k] = S[u][N - k] / net.m0[u] + S[v][k] / net.m0[v];
  }
  return out;
}

double averaging_eigen_action(double lambda) { return phi(std::sqrt(lambda)); }

}  // namespace netspec
