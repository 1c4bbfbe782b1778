#pragma once

#include <vector>

#include "netspec/edge_function.hpp"
#include "netspec/network.hpp"

namespace netspec {

// Extension of a sampled edge function from the unit segments to
// t in [-T, T+1] on every edge, layer by layer:
//   F~(xy, t) restricted to [0,1] is F itself;
//   F~(xy, 1+s) = (2/m0(y)) sum_w c(yw) F~(yw, s) - F~(xy, 1-s),
//   F~(xy, -s)  = (2/m0(x)) sum_w c(xw) F~(xw, s) - F~(xy, s),
// together with the reflection F~(yx, t) = F~(xy, 1-t) that makes the two
// directed views of one edge describe the same stored array.
//
// Storage: per canonical edge, samples at t = k/N for k in [-T*N, (T+1)*N],
// index offset T*N.
struct Extension {
  const Network* net = nullptr;
  int N = 0;
  int T = 0;
  int offset = 0;
  std::vector<std::vector<cplx>> data;

  // Sample of the directed view of edge e at grid index j (t = j/N):
  // the canonical-start view reads index j, the reversed view reads N - j.
  cplx view(int e, bool from_start, int j) const {
    return from_start ? data[e][offset + j] : data[e][offset + N - j];
  }

  // Restriction of t -> F~(t + shift/N) to [0, 1]; needs |shift| <= T*N.
  SampledEdgeFunction shifted(int shift) const;
};

Extension extend(const SampledEdgeFunction& F, int T);

// C(tau) F (xy, t) = (F~(xy, t+tau) + F~(xy, t-tau)) / 2 for grid-aligned
// tau = steps/N.  Even in tau.
SampledEdgeFunction dalembert(const Extension& ext, int steps);

// Same, extending internally with the minimal horizon.  tau must be
// grid-aligned (tau * N integral to 1e-9); otherwise std::invalid_argument.
SampledEdgeFunction dalembert(const SampledEdgeFunction& F, double tau);

// Solution of the wave equation at time tau with initial value F0 and
// initial velocity F1:
//   G(tau) = C(tau) F0 + int_0^tau C(s) F1 ds,
// the time integral taken with the trapezoid rule on the tau-grid.
SampledEdgeFunction wave_solution(const SampledEdgeFunction& F0,
                                  const SampledEdgeFunction& F1, double tau);

// Residuals of the composition identities of C, evaluated by index shifts
// on a single extension of F (exact grid algebra, no re-extension):
//   cc2:        C(tau+1) F + C(tau-1) F = 2 C(tau) C(1) F
//   half_angle: C(2 tau) F + F         = 2 C(tau)^2 F
//   wave:       central second difference of C(.) F in tau (step
//               dtau_steps/N) minus the central second difference of
//               C(tau) F in t (grid step 1/N).
// All residuals are L2-relative to ||F||.  Requires tau in [0, 1/2]
// (half_angle is undefined past 1/2) and dtau_steps >= 1.
struct IdentityResiduals {
  double cc2 = 0.0;
  double half_angle = 0.0;
  double wave = 0.0;
};

IdentityResiduals identity_residuals(const SampledEdgeFunction& F, double tau,
                                     int dtau_steps = 16);

// ||F~(. + tau)||^2 restricted to [0,1], for integer tau (lem14-type bounds).
double shifted_norm_squared(const Extension& ext, int integer_tau);

}  // namespace netspec
