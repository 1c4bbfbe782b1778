#include "netspec/wave.hpp"

#include <cmath>
#include <stdexcept>

namespace netspec {

namespace {

int aligned_steps(double tau, int N) {
  double scaled = tau * N;
  double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, std::abs(scaled)))
    throw std::invalid_argument("tau is not aligned with the grid (tau * N must be integral)");
  return static_cast<int>(rounded);
}

}  // namespace

SampledEdgeFunction Extension::shifted(int shift) const {
  if (std::abs(shift) > T * N)
    throw std::invalid_argument("shifted: |shift| exceeds the extension horizon");
  SampledEdgeFunction S(*net, N);
  for (int e = 0; e < net->edge_count(); ++e)
    for (int k = 0; k <= N; ++k) S.values[e][k] = data[e][offset + k + shift];
  return S;
}

Extension extend(const SampledEdgeFunction& F, int T) {
  if (T < 0) throw std::invalid_argument("extend: horizon must be >= 0");
  const Network& net = *F.net;
  int N = F.N;
  Extension ext;
  ext.net = &net;
  ext.N = N;
  ext.T = T;
  ext.offset = T * N;
  ext.data.assign(net.edge_count(), std::vector<cplx>((2 * T + 1) * N + 1, cplx(0.0)));
  for (int e = 0; e < net.edge_count(); ++e)
    for (int k = 0; k <= N; ++k) ext.data[e][ext.offset + k] = F.values[e][k];

  // Layer m fills t in (m, m+1] forward and [-m, -(m-1)) backward from the
  // already known samples at |t| <= m; the vertex sums reuse one pass.
  std::vector<std::vector<cplx>> V(net.vertex_count(), std::vector<cplx>(N, cplx(0.0)));
  for (int m = 1; m <= T; ++m) {
    int base = (m - 1) * N + 1;
    for (int x = 0; x < net.vertex_count(); ++x) {
      for (int i = 0; i < N; ++i) V[x][i] = 0.0;
      for (auto [y, e] : net.adjacency[x]) {
        (void)y;
        bool fs = (net.edges[e].u == x);
        for (int i = 0; i < N; ++i) V[x][i] += net.edges[e].c * ext.view(e, fs, base + i);
      }
    }
    for (int e = 0; e < net.edge_count(); ++e) {
      int u = net.edges[e].u, v = net.edges[e].v;
      for (int k = m * N + 1; k <= (m + 1) * N; ++k) {
        int j = k - N;  // source index in (m-1, m]
        ext.data[e][ext.offset + k] =
            (2.0 / net.m0[v]) * V[v][j - base] - ext.view(e, false, j);
      }
      for (int k = -m * N; k <= -(m - 1) * N - 1; ++k) {
        int j = k + N;  // reflected source, view(e, false, j) = data at -k
        ext.data[e][ext.offset + k] =
            (2.0 / net.m0[u]) * V[u][-k - base] - ext.view(e, false, j);
      }
    }
  }
  return ext;
}

SampledEdgeFunction dalembert(const Extension& ext, int steps) {
  steps = std::abs(steps);
  if (steps > ext.T * ext.N)
    throw std::invalid_argument("dalembert: tau exceeds the extension horizon");
  const Network& net = *ext.net;
  SampledEdgeFunction out(net, ext.N);
  for (int e = 0; e < net.edge_count(); ++e)
    for (int k = 0; k <= ext.N; ++k)
      out.values[e][k] =
          0.5 * (ext.data[e][ext.offset + k + steps] + ext.data[e][ext.offset + k - steps]);
  return out;
}

SampledEdgeFunction dalembert(const SampledEdgeFunction& F, double tau) {
  int steps = std::abs(aligned_steps(tau, F.N));
  int T = (steps + F.N - 1) / F.N;
  return dalembert(extend(F, T), steps);
}

SampledEdgeFunction wave_solution(const SampledEdgeFunction& F0,
                                  const SampledEdgeFunction& F1, double tau) {
  if (F0.net != F1.net || F0.N != F1.N)
    throw std::invalid_argument("wave_solution: mismatched initial data");
  int steps = aligned_steps(tau, F0.N);
  if (steps < 0) throw std::invalid_argument("wave_solution: tau must be >= 0");
  int N = F0.N;
  int T = (steps + N - 1) / N;

  Extension ext0 = extend(F0, T);
  SampledEdgeFunction out = dalembert(ext0, steps);
  if (steps == 0) return out;

  // int_0^tau C(s) F1 ds by the trapezoid rule on the tau-grid.
  Extension ext1 = extend(F1, T);
  const Network& net = *F0.net;
  double h = 1.0 / N;
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& d = ext1.data[e];
    for (int k = 0; k <= N; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j <= steps; ++j) {
        double w = (j == 0 || j == steps) ? 0.5 : 1.0;
        acc += w * 0.5 * (d[ext1.offset + k + j] + d[ext1.offset + k - j]);
      }
      out.values[e][k] += acc * h;
    }
  }
  return out;
}

IdentityResiduals identity_residuals(const SampledEdgeFunction& F, double tau,
                                     int dtau_steps) {
  int N = F.N;
  int s = aligned_steps(tau, N);
  if (s < 0 || 2 * s > N)
    throw std::invalid_argument("identity_residuals: tau must lie in [0, 1/2]");
  if (dtau_steps < 1 || dtau_steps > N)
    throw std::invalid_argument("identity_residuals: dtau_steps must lie in [1, N]");

  // Largest index reached is 2N + s (cc2 at k = N), largest negative -N - s,
  // both covered by T = 2 when s > 0 (T = 1 suffices for s = 0).
  int T = s > 0 ? 2 : 1;
  Extension ext = extend(F, T);
  const Network& net = *F.net;
  const int off = ext.offset;

  double fnorm = l2_norm(F);
  double denom = fnorm > 0.0 ? fnorm : 1.0;

  SampledEdgeFunction diff_cc2(net, N), diff_half(net, N), diff_wave(net, N);
  double dt = static_cast<double>(dtau_steps) / N;
  double h = 1.0 / N;

  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& d = ext.data[e];
    auto at = [&](int idx) { return d[off + idx]; };
    for (int k = 0; k <= N; ++k) {
      // cc2: C(tau+1)F + C(tau-1)F vs 2 C(tau) C(1) F, all as index shifts.
      cplx lhs = 0.5 * (at(k + s + N) + at(k - s - N)) + 0.5 * (at(k + s - N) + at(k - s + N));
      cplx rhs = 2.0 * 0.25 *
                 (at(k + s + N) + at(k + s - N) + at(k - s + N) + at(k - s - N));
      diff_cc2.values[e][k] = lhs - rhs;

      // half angle: C(2 tau)F + F vs 2 C(tau)^2 F.
      cplx lhs_h = 0.5 * (at(k + 2 * s) + at(k - 2 * s)) + at(k);
      cplx rhs_h = 2.0 * 0.25 * (at(k + 2 * s) + 2.0 * at(k) + at(k - 2 * s));
      diff_half.values[e][k] = lhs_h - rhs_h;

      // wave: second difference of C(.)F in tau vs in t at C(tau)F.
      auto ctau = [&](int sigma, int idx) {
        return 0.5 * (at(idx + sigma) + at(idx - sigma));
      };
      cplx d2tau = (ctau(s + dtau_steps, k) - 2.0 * ctau(s, k) + ctau(s - dtau_steps, k)) /
                   (dt * dt);
      cplx d2t = (ctau(s, k + 1) - 2.0 * ctau(s, k) + ctau(s, k - 1)) / (h * h);
      diff_wave.values[e][k] = d2tau - d2t;
    }
  }

  IdentityResiduals R;
  R.cc2 = l2_norm(diff_cc2) / denom;
  R.half_angle = l2_norm(diff_half) / denom;
  R.wave = l2_norm(diff_wave) / denom;
  return R;
}

double shifted_norm_squared(const Extension& ext, int integer_tau) {
  SampledEdgeFunction S = ext.shifted(integer_tau * ext.N);
  return inner_product(S, S).real();
}

}  // namespace netspec
