#include "netspec/edge_function.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "netspec/report.hpp"

namespace netspec {

double phi(double z, double t) {
  if (z == 0.0) return t;
  return std::sin(z * t) / z;
}

double phi(double z) { return phi(z, 1.0); }

SampledEdgeFunction::SampledEdgeFunction(const Network& n, int grid) : net(&n), N(grid) {
  if (grid < 2) throw std::invalid_argument("grid size must be at least 2");
  values.assign(n.edges.size(), std::vector<cplx>(grid + 1, cplx(0.0)));
}

SampledEdgeFunction constant_function(const Network& net, int N, cplx value) {
  SampledEdgeFunction F(net, N);
  for (auto& edge : F.values)
    for (auto& v : edge) v = value;
  return F;
}

SampledEdgeFunction random_function(const Network& net, int N, Rng& rng) {
  SampledEdgeFunction F(net, N);
  for (auto& edge : F.values)
    for (auto& v : edge) v = rng.cnormal();
  return F;
}

SampledEdgeFunction random_continuous_function(const Network& net, int N, Rng& rng) {
  std::vector<cplx> at_vertex(net.vertices.size());
  for (auto& v : at_vertex) v = rng.cnormal();
  SampledEdgeFunction F(net, N);
  for (int e = 0; e < net.edge_count(); ++e) {
    F.values[e][0] = at_vertex[net.edges[e].u];
    F.values[e][N] = at_vertex[net.edges[e].v];
    for (int k = 1; k < N; ++k) F.values[e][k] = rng.cnormal();
  }
  return F;
}

SampledEdgeFunction random_smooth_function(const Network& net, int N, Rng& rng) {
  constexpr int kModes = 8;
  constexpr double kPi = 3.14159265358979323846;
  SampledEdgeFunction F(net, N);
  for (int e = 0; e < net.edge_count(); ++e) {
    std::vector<cplx> ac(kModes + 1), bc(kModes + 1);
    for (int m = 0; m <= kModes; ++m) {
      ac[m] = rng.cnormal();
      bc[m] = rng.cnormal();
    }
    for (int k = 0; k <= N; ++k) {
      double t = static_cast<double>(k) / N;
      cplx s = 0.0;
      for (int m = 0; m <= kModes; ++m)
        s += ac[m] * std::cos(m * kPi * t) + bc[m] * std::sin(m * kPi * t);
      F.values[e][k] = s;
    }
  }
  return F;
}

namespace {

double simpson_weight(int k, int N) {
  if (k == 0 || k == N) return 1.0;
  return (k % 2 == 1) ? 4.0 : 2.0;
}

}  // namespace

cplx inner_product(const SampledEdgeFunction& F, const SampledEdgeFunction& G) {
  if (F.net != G.net || F.N != G.N)
    throw std::invalid_argument("inner_product: mismatched grids");
  if (F.N % 2 != 0)
    throw std::invalid_argument("inner_product: Simpson rule needs an even grid");
  const Network& net = *F.net;
  cplx acc = 0.0;
  for (int e = 0; e < net.edge_count(); ++e) {
    cplx edge_acc = 0.0;
    for (int k = 0; k <= F.N; ++k)
      edge_acc += simpson_weight(k, F.N) * std::conj(F.values[e][k]) * G.values[e][k];
    acc += net.edges[e].c * edge_acc / (3.0 * F.N);
  }
  return acc;
}

double l2_norm(const SampledEdgeFunction& F) {
  return std::sqrt(std::max(0.0, inner_product(F, F).real()));
}

TrigEdgeFunction::TrigEdgeFunction(const Network& n, double lam)
    : net(&n),
      lambda(lam),
      b(n.vertices.size(), cplx(0.0)),
      a_fwd(n.edges.size(), cplx(0.0)),
      a_bwd(n.edges.size(), cplx(0.0)) {}

cplx TrigEdgeFunction::evaluate(int e, double t) const {
  double z = std::sqrt(lambda);
  return b[net->edges[e].u] * std::cos(z * t) + a_fwd[e] * phi(z, t);
}

double TrigEdgeFunction::orientation_consistency(int N) const {
  double z = std::sqrt(lambda);
  double worst = 0.0;
  for (int e = 0; e < net->edge_count(); ++e) {
    for (int k = 0; k <= N; ++k) {
      double t = static_cast<double>(k) / N;
      cplx fwd = b[net->edges[e].u] * std::cos(z * t) + a_fwd[e] * phi(z, t);
      cplx bwd = b[net->edges[e].v] * std::cos(z * (1.0 - t)) + a_bwd[e] * phi(z, 1.0 - t);
      worst = std::max(worst, std::abs(fwd - bwd));
    }
  }
  return worst;
}

SampledEdgeFunction sample_trig(const TrigEdgeFunction& F, int N) {
  SampledEdgeFunction S(*F.net, N);
  for (int e = 0; e < F.net->edge_count(); ++e)
    for (int k = 0; k <= N; ++k)
      S.values[e][k] = F.evaluate(e, static_cast<double>(k) / N);
  return S;
}

namespace {

// Primitive integrals over one unit edge at frequency z:
// Icc = int cos^2(zt), Icp = int cos(zt) Phi(z,t), Ipp = int Phi(z,t)^2.
struct TrigIntegrals {
  double cc, cp, pp;
};

TrigIntegrals trig_integrals(double z) {
  if (z == 0.0) return {1.0, 0.5, 1.0 / 3.0};
  double s2 = std::sin(2.0 * z);
  double cc = 0.5 + s2 / (4.0 * z);
  double sp = std::sin(z);
  double cp = sp * sp / (2.0 * z * z);
  double pp = (0.5 - s2 / (4.0 * z)) / (z * z);
  return {cc, cp, pp};
}

}  // namespace

cplx trig_inner_product(const TrigEdgeFunction& F, const TrigEdgeFunction& G) {
  if (F.net != G.net) throw std::invalid_argument("trig_inner_product: different networks");
  double scale = std::max(std::abs(F.lambda), std::abs(G.lambda));
  if (std::abs(F.lambda - G.lambda) > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("trig_inner_product: different frequencies");
  double z = std::sqrt(F.lambda);
  TrigIntegrals I = trig_integrals(z);
  const Network& net = *F.net;
  cplx acc = 0.0;
  for (int e = 0; e < net.edge_count(); ++e) {
    int u = net.edges[e].u;
    cplx bf = F.b[u], bg = G.b[u];
    cplx af = F.a_fwd[e], ag = G.a_fwd[e];
    cplx term = std::conj(bf) * bg * I.cc + (std::conj(bf) * ag + std::conj(af) * bg) * I.cp +
                std::conj(af) * ag * I.pp;
    acc += net.edges[e].c * term;
  }
  return acc;
}

double trig_norm(const TrigEdgeFunction& F) {
  return std::sqrt(std::max(0.0, trig_inner_product(F, F).real()));
}

VertexResiduals vertex_residuals(const SampledEdgeFunction& F) {
  const Network& net = *F.net;
  if (F.N < 2) throw std::invalid_argument("vertex_residuals: grid too coarse");
  VertexResiduals R;
  R.continuity_spread.assign(net.vertices.size(), 0.0);
  R.kirchhoff.assign(net.vertices.size(), cplx(0.0));
  double h = 1.0 / F.N;
  for (int x = 0; x < net.vertex_count(); ++x) {
    cplx mean = 0.0;
    for (auto [y, e] : net.adjacency[x]) {
      (void)y;
      bool fs = (net.edges[e].u == x);
      mean += F.view(e, fs, 0);
    }
    mean /= static_cast<double>(net.adjacency[x].size());
    double spread = 0.0;
    cplx flux = 0.0;
    for (auto [y, e] : net.adjacency[x]) {
      (void)y;
      bool fs = (net.edges[e].u == x);
      cplx f0 = F.view(e, fs, 0);
      cplx f1 = F.view(e, fs, 1);
      cplx f2 = F.view(e, fs, 2);
      spread = std::max(spread, std::abs(f0 - mean));
      flux += net.edges[e].c * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    }
    R.continuity_spread[x] = spread;
    R.kirchhoff[x] = flux;
  }
  return R;
}

VertexResiduals vertex_residuals(const TrigEdgeFunction& F) {
  const Network& net = *F.net;
  VertexResiduals R;
  R.continuity_spread.assign(net.vertices.size(), 0.0);
  R.kirchhoff.assign(net.vertices.size(), cplx(0.0));
  for (int x = 0; x < net.vertex_count(); ++x) {
    // F(xy, 0) = b(x) on every incident edge, so the spread is identically 0;
    // F'(xy, 0+) = a(xy) since cos' vanishes at 0 and Phi'(z, 0) = 1.
    cplx flux = 0.0;
    for (auto [y, e] : net.adjacency[x]) {
      (void)y;
      cplx a = (net.edges[e].u == x) ? F.a_fwd[e] : F.a_bwd[e];
      flux += net.edges[e].c * a;
    }
    R.kirchhoff[x] = flux;
  }
  return R;
}

std::string to_csv(const SampledEdgeFunction& F) {
  const Network& net = *F.net;
  std::ostringstream out;
  out << "edge_u,edge_v,k,t,re,im\n";
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& ed = net.edges[e];
    for (int k = 0; k <= F.N; ++k) {
      double t = static_cast<double>(k) / F.N;
      out << net.vertices[ed.u] << ',' << net.vertices[ed.v] << ',' << k << ','
          << fmt_e12(t) << ',' << fmt_e12(F.values[e][k].real()) << ','
          << fmt_e12(F.values[e][k].imag()) << '\n';
    }
  }
  return out.str();
}

}  // namespace netspec
