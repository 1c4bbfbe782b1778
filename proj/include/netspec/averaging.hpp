#pragma once

#include "netspec/edge_function.hpp"
#include "netspec/network.hpp"
#include "netspec/spectrum.hpp"

namespace netspec {

// Averaging operator
//   A F(xy, t) = (1/m0(x)) sum_u c(xu) int_0^{1-t} F(xu, s) ds
//              + (1/m0(y)) sum_v c(yv) int_0^t  F(yv, s) ds,
// evaluated on the shared grid with cumulative trapezoid prefixes, so the
// two directed views of an edge agree exactly.
SampledEdgeFunction apply_averaging(const SampledEdgeFunction& F);

// Scalar by which A acts on an eigenfunction with L-eigenvalue lambda:
// Phi(sqrt(lambda)) = sin(sqrt(lambda)) / sqrt(lambda).
double averaging_eigen_action(double lambda);

}  // namespace netspec
