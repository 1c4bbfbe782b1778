#pragma once

#include <complex>
#include <string>
#include <vector>

#include "netspec/network.hpp"
#include "netspec/rng.hpp"

namespace netspec {

using cplx = std::complex<double>;

// Phi(z, t) = sin(z t) / z, continued by Phi(0, t) = t.
double phi(double z, double t);

// Phi(z) = Phi(z, 1).
double phi(double z);

// Function on the metric graph sampled on the uniform grid t_k = k/N of each
// edge segment.  values[e][k] is the sample of edge e (canonical orientation)
// at t = k/N, k = 0..N.  The reversed view of edge (u,v) at t is the stored
// value at 1-t; both views describe the same point of the graph.
struct SampledEdgeFunction {
  const Network* net = nullptr;
  int N = 0;
  std::vector<std::vector<cplx>> values;

  SampledEdgeFunction() = default;
  SampledEdgeFunction(const Network& n, int grid);

  // Sample at index k of edge e, seen from the canonical start (from_start)
  // or from the canonical end (reversed parameterization).
  cplx view(int e, bool from_start, int k) const {
    return from_start ? values[e][k] : values[e][N - k];
  }
};

SampledEdgeFunction constant_function(const Network& net, int N, cplx value);

// Independent standard complex Gaussians at every node of every edge.
SampledEdgeFunction random_function(const Network& net, int N, Rng& rng);

// Random function that is continuous at the vertices: one shared Gaussian
// value per vertex, independent Gaussians at interior nodes.
SampledEdgeFunction random_continuous_function(const Network& net, int N, Rng& rng);

// Per-edge random trigonometric polynomial sum_{m<=8} a_m cos(m pi t) +
// b_m sin(m pi t); smooth along edges, generically discontinuous at vertices.
SampledEdgeFunction random_smooth_function(const Network& net, int N, Rng& rng);

// L2(X^1, m^1) inner product, conjugate-linear in the first argument.
// Per edge: c_e * composite Simpson over [0,1] on the shared grid (N even).
cplx inner_product(const SampledEdgeFunction& F, const SampledEdgeFunction& G);

double l2_norm(const SampledEdgeFunction& F);

// Closed-form eigenfunction of the metric graph: on edge (x,y),
//   F(xy, t) = b(x) cos(sqrt(lambda) t) + a(xy) Phi(sqrt(lambda), t).
// b is stored per vertex, a per directed edge (forward = canonical
// orientation, backward = reversed).  The two directed views agree
// pointwise; orientation_consistency measures the worst mismatch.
struct TrigEdgeFunction {
  const Network* net = nullptr;
  double lambda = 0.0;
  std::vector<cplx> b;      // per vertex
  std::vector<cplx> a_fwd;  // a(uv) for canonical edge (u,v)
  std::vector<cplx> a_bwd;  // a(vu)
  bool eigenfunction = false;

  TrigEdgeFunction() = default;
  TrigEdgeFunction(const Network& n, double lam);

  cplx evaluate(int e, double t) const;

  // Max over edges and grid nodes of |forward view - backward view|.
  double orientation_consistency(int N = 64) const;
};

SampledEdgeFunction sample_trig(const TrigEdgeFunction& F, int N);

// Exact L2(m^1) inner product of two closed-form functions with the same
// frequency sqrt(lambda), via the primitive trig integrals.
cplx trig_inner_product(const TrigEdgeFunction& F, const TrigEdgeFunction& G);

double trig_norm(const TrigEdgeFunction& F);

// Per-vertex residuals of the defining vertex conditions.
struct VertexResiduals {
  // Max over incident edges of |F(xy, 0) - mean of incident values|.
  std::vector<double> continuity_spread;
  // sum_y c(xy) F'(xy, 0+); derivatives are exact coefficients for trig
  // functions and one-sided 3-point stencils for sampled ones.
  std::vector<cplx> kirchhoff;
};

VertexResiduals vertex_residuals(const SampledEdgeFunction& F);
VertexResiduals vertex_residuals(const TrigEdgeFunction& F);

// CSV with header edge_u,edge_v,k,t,re,im; canonical orientation, k ascending.
std::string to_csv(const SampledEdgeFunction& F);

}  // namespace netspec
