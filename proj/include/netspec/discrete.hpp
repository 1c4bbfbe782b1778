#pragma once

#include <complex>
#include <vector>

#include "netspec/edge_function.hpp"
#include "netspec/network.hpp"

namespace netspec {

// Function on the vertex set.
struct VertexFunction {
  const Network* net = nullptr;
  std::vector<cplx> values;

  VertexFunction() = default;
  VertexFunction(const Network& n, cplx fill = 0.0)
      : net(&n), values(n.vertices.size(), fill) {}
};

// P g(x) = (1/m0(x)) sum_y c(xy) g(y).
VertexFunction apply_transition(const VertexFunction& g);

// l2(X^0, m0) inner product, conjugate-linear in the first argument.
cplx m0_inner(const VertexFunction& f, const VertexFunction& g);

double m0_norm(const VertexFunction& f);

struct DiscreteEigenpair {
  double value = 0.0;       // eigenvalue of P, in [-1, 1]
  VertexFunction vec;       // unit norm in l2(m0)
};

// Full spectrum of P.  Deterministic output: eigenvalues descending;
// within a numerical cluster (gap <= 1e-9) vectors are ordered by the index
// of their largest-magnitude entry; each vector is scaled so its first
// nonzero entry has positive real part.  Values are clamped to [-1, 1].
std::vector<DiscreteEigenpair> discrete_spectrum(const Network& net);

}  // namespace netspec
