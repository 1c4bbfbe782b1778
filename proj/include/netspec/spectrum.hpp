#pragma once

#include <string>
#include <vector>

#include "netspec/discrete.hpp"
#include "netspec/edge_function.hpp"
#include "netspec/network.hpp"

namespace netspec {

// Tolerance inside which a lifted eigenvalue is considered to sit on a band
// boundary (pi n)^2 and is rejected rather than silently assigned.
inline constexpr double kBoundaryTol = 1e-9;

// Snap width for transition eigenvalues that should be exactly +-1.
inline constexpr double kSnapTol = 1e-12;

// Band transfer function: kappa(t, n) = (pi n + arccos t)^2 for even n,
// (pi (n+1) - arccos t)^2 for odd n.  Maps (-1, 1] onto band 0 and (-1, 1)
// onto band n >= 1, monotonically (decreasing for even n, increasing for odd).
double kappa(double t, int n);

// Band membership of a transition eigenvalue t: I(0) = (-1, 1],
// I(n >= 1) = (-1, 1); values within kSnapTol of +-1 are snapped first.
bool in_band(double t, int n);

// Lift a vertex function h to the closed-form edge function with
// b(x) = h(x) and a(xy) = (h(y) - h(x) cos sqrt(lambda)) / Phi(sqrt(lambda)).
// The lift is vertex-continuous by construction; it satisfies the Kirchhoff
// conditions iff h is a P-eigenvector matched to lambda.  lambda within
// kBoundaryTol of a Dirichlet value (pi n)^2, n >= 1, is rejected
// (std::invalid_argument): there Phi(sqrt(lambda)) = 0 and the formula
// degenerates.
TrigEdgeFunction gamma_lift(const Network& net, double lambda, const VertexFunction& h);

enum class PairKind { Band, DirichletVertex, DirichletFlow };

struct ContinuousEigenpair {
  double lambda = 0.0;
  int band = 0;                       // band index n, or kernel index n
  PairKind kind = PairKind::Band;
  double source_p_value = 0.0;        // only for PairKind::Band
  TrigEdgeFunction fn;                // unit L2(m^1) norm
};

// All eigenpairs of band n: one per transition eigenvalue t in
// spec P intersect I(n), with lambda = kappa(t, n) ascending and the lifted
// eigenfunction rescaled to unit L2 norm.  P-eigenvalues whose lift lands
// within kBoundaryTol of a band boundary are skipped and reported in
// *diagnostics when given.
std::vector<ContinuousEigenpair> band_eigenpairs(const Network& net, int n,
                                                 std::vector<std::string>* diagnostics = nullptr);

// Same, reusing a precomputed transition spectrum.
std::vector<ContinuousEigenpair> band_eigenpairs(const Network& net,
                                                 const std::vector<DiscreteEigenpair>& spec,
                                                 int n,
                                                 std::vector<std::string>* diagnostics = nullptr);

struct DirichletKernel {
  int n = 0;
  int dim_vertex = 0;  // multiplicity of the vertex-supported family
  int dim_flow = 0;    // multiplicity of the flow family
  std::vector<ContinuousEigenpair> basis;  // orthonormal in L2(m^1)
};

// Kernel of L - (pi n)^2 on Dirichlet (vertex-vanishing) eigenfunctions.
// Vertex family: h(x) cos(pi n t) for h = 1 (even n) or the bipartite sign
// vector (odd n, bipartite networks only).  Flow family: a(xy) sin(pi n t)
// with a(yx) = (-1)^{n+1} a(xy) and sum_y c(xy) a(xy) = 0 at every vertex;
// computed as an SVD nullspace with relative rank tolerance 1e-10.
DirichletKernel dirichlet_kernel(const Network& net, int n);

struct BandBlock {
  int n = 0;
  std::vector<ContinuousEigenpair> pairs;  // lambda ascending
};

struct SpectrumPredicates {
  bool bipartite = false;
  bool is_tree = false;
  int cycle_rank = 0;
  // Every Dirichlet kernel in range is trivial; on a finite network this
  // holds iff the network is a tree and no vertex family contributes.
  bool all_dirichlet_trivial = true;
};

struct SpectrumReport {
  int n_max = 0;
  std::vector<BandBlock> bands;            // n = 0..n_max
  std::vector<DirichletKernel> dirichlet;  // n = 1..n_max
  SpectrumPredicates predicates;
  std::vector<std::string> diagnostics;    // e.g. near-boundary rejections
};

SpectrumReport spectrum_report(const Network& net, int n_max);

// Deterministic JSON rendering (fixed field order, %.12e floats).
std::string spectrum_report_json(const Network& net, const SpectrumReport& report);

}  // namespace netspec
