#include "netspec/discrete.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace netspec {

VertexFunction apply_transition(const VertexFunction& g) {
  const Network& net = *g.net;
  VertexFunction out(net);
  for (int x = 0; x < net.vertex_count(); ++x) {
    cplx acc = 0.0;
    for (auto [y, e] : net.adjacency[x]) acc += net.edges[e].c * g.values[y];
    out.values[x] = acc / net.m0[x];
  }
  return out;
}

cplx m0_inner(const VertexFunction& f, const VertexFunction& g) {
  const Network& net = *f.net;
  if (g.net != f.net) throw std::invalid_argument("m0_inner: different networks");
  cplx acc = 0.0;
  for (int x = 0; x < net.vertex_count(); ++x)
    acc += net.m0[x] * std::conj(f.values[x]) * g.values[x];
  return acc;
}

double m0_norm(const VertexFunction& f) {
  return std::sqrt(std::max(0.0, m0_inner(f, f).real()));
}

std::vector<DiscreteEigenpair> discrete_spectrum(const Network& net) {
  int n = net.vertex_count();
  // P = D^-1 C is self-adjoint in l2(m0); diagonalize the symmetric
  // M = D^-1/2 C D^-1/2 and map back by h = D^-1/2 w, which carries the
  // Euclidean orthonormal basis to an l2(m0)-orthonormal one.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (const auto& ed : net.edges) {
    double w = ed.c / std::sqrt(net.m0[ed.u] * net.m0[ed.v]);
    M(ed.u, ed.v) += w;
    M(ed.v, ed.u) += w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("discrete_spectrum: eigensolver failed");

  std::vector<DiscreteEigenpair> pairs(n);
  for (int i = 0; i < n; ++i) {
    double t = solver.eigenvalues()(i);
    t = std::clamp(t, -1.0, 1.0);
    DiscreteEigenpair p;
    p.value = t;
    p.vec = VertexFunction(net);
    for (int x = 0; x < n; ++x)
      p.vec.values[x] = solver.eigenvectors()(x, i) / std::sqrt(net.m0[x]);
    pairs[i] = std::move(p);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const DiscreteEigenpair& a, const DiscreteEigenpair& b) {
              return a.value > b.value;
            });

  // Deterministic order inside numerical clusters: by the index of the
  // largest-magnitude entry; deterministic sign: first significant entry
  // has positive real part.
  auto argmax_entry = [](const DiscreteEigenpair& p) {
    int best = 0;
    double best_mag = -1.0;
    for (int x = 0; x < static_cast<int>(p.vec.values.size()); ++x) {
      double m = std::abs(p.vec.values[x]);
      if (m > best_mag * (1.0 + 1e-12)) {
        best_mag = m;
        best = x;
      }
    }
    return best;
  };
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && pairs[j - 1].value - pairs[j].value <= 1e-9) ++j;
    std::stable_sort(pairs.begin() + i, pairs.begin() + j,
                     [&](const DiscreteEigenpair& a, const DiscreteEigenpair& b) {
                       return argmax_entry(a) < argmax_entry(b);
                     });
    i = j;
  }
  for (auto& p : pairs) {
    double top = 0.0;
    for (const auto& v : p.vec.values) top = std::max(top, std::abs(v));
    for (const auto& v : p.vec.values) {
      if (std::abs(v) > 1e-12 * top) {
        if (v.real() < 0.0)
          for (auto& w : p.vec.values) w = -w;
        break;
      }
    }
  }
  return pairs;
}

}  // namespace netspec
