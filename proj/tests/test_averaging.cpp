#include <doctest.h>

#include <cmath>

#include "netspec/averaging.hpp"
#include "netspec/spectrum.hpp"
#include "netspec/verify.hpp"
#include "netspec/wave.hpp"

using namespace netspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

Network edge_net() {
  return parse_network(R"({"vertices": ["x", "y"], "edges": [{"u": "x", "v": "y", "c": 1.0}]})");
}

Network path3() {
  return parse_network(R"({"vertices": ["x", "y", "z"], "edges": [
    {"u": "x", "v": "y", "c": 1.0}, {"u": "y", "v": "z", "c": 1.0}]})");
}

Network triangle_net() {
  return parse_network(R"({"vertices": ["a", "b", "c"], "edges": [
    {"u": "a", "v": "b", "c": 1.0}, {"u": "b", "v": "c", "c": 1.0}, {"u": "a", "v": "c", "c": 1.0}]})");
}

SampledEdgeFunction sub(const SampledEdgeFunction& A, const SampledEdgeFunction& B) {
  SampledEdgeFunction out = A;
  for (size_t e = 0; e < out.values.size(); ++e)
    for (size_t k = 0; k < out.values[e].size(); ++k) out.values[e][k] -= B.values[e][k];
  return out;
}

}  // namespace

TEST_CASE("averaging fixes constants exactly") {
  for (const Network& net : {edge_net(), path3(), triangle_net()}) {
    auto one = constant_function(net, 256, 1.0);
    auto Aone = apply_averaging(one);
    for (const auto& edge : Aone.values)
      for (const auto& v : edge) CHECK(std::abs(v - 1.0) <= 1e-14);
  }
}

TEST_CASE("averaging on a single edge: explicit formula") {
  // A F(xy, t) = int_0^{1-t} F(xy, s) ds + int_0^t F(yx, s) ds; for F = t the
  // reversed view is 1 - s, so A F(t) = (1-t)^2/2 + t - t^2/2.
  Network net = edge_net();
  int N = 256;
  SampledEdgeFunction F(net, N);
  for (int k = 0; k <= N; ++k) F.values[0][k] = static_cast<double>(k) / N;
  auto AF = apply_averaging(F);
  for (int k = 0; k <= N; ++k) {
    double t = static_cast<double>(k) / N;
    double expect = 0.5 * (1.0 - t) * (1.0 - t) + t - 0.5 * t * t;
    CHECK(std::abs(AF.values[0][k] - expect) <= 1e-12);  // trapezoid is exact on linear data
  }
}

TEST_CASE("averaging annihilates Dirichlet modes to quadrature accuracy") {
  Network net = edge_net();
  int N = 256;
  for (int n : {1, 2}) {
    SampledEdgeFunction F(net, N);
    for (int k = 0; k <= N; ++k) F.values[0][k] = std::cos(n * kPi * k / static_cast<double>(N));
    auto AF = apply_averaging(F);
    double sup = 0.0;
    for (const auto& v : AF.values[0]) sup = std::max(sup, std::abs(v));
    CHECK(sup <= 1e-3);
  }
}

TEST_CASE("directed views of the averaged function agree exactly") {
  Rng rng(13);
  Network net = triangle_net();
  auto F = random_function(net, 64, rng);
  auto AF = apply_averaging(F);
  // A F is well-defined on the graph: the stored array serves both views,
  // and the defining formula is symmetric under (xy, t) -> (yx, 1-t).
  // Recompute from the reversed orientation by relabeling and compare.
  Network relabeled = net;
  for (auto& e : relabeled.edges) std::swap(e.u, e.v);
  for (auto& adj : relabeled.adjacency) adj.clear();
  for (int e = 0; e < relabeled.edge_count(); ++e) {
    relabeled.adjacency[relabeled.edges[e].u].emplace_back(relabeled.edges[e].v, e);
    relabeled.adjacency[relabeled.edges[e].v].emplace_back(relabeled.edges[e].u, e);
  }
  SampledEdgeFunction G(relabeled, 64);
  for (int e = 0; e < net.edge_count(); ++e)
    for (int k = 0; k <= 64; ++k) G.values[e][k] = F.values[e][64 - k];
  auto AG = apply_averaging(G);
  for (int e = 0; e < net.edge_count(); ++e)
    for (int k = 0; k <= 64; ++k)
      CHECK(std::abs(AF.values[e][k] - AG.values[e][64 - k]) <= 1e-15);
}

TEST_CASE("averaging acts on eigenfunctions by Phi(sqrt(lambda))") {
  Network net = triangle_net();
  SpectrumReport rep = spectrum_report(net, 2);
  for (int N : {256, 512}) {
    double tol = (N == 256) ? 1e-3 : 2.6e-4;
    for (const auto& block : rep.bands)
      for (const auto& p : block.pairs) {
        if (p.lambda > 4.0 * kPi * kPi + 1e-9) continue;
        auto S = sample_trig(p.fn, N);
        auto AS = apply_averaging(S);
        double scale = averaging_eigen_action(p.lambda);
        for (int e = 0; e < net.edge_count(); ++e)
          for (int k = 0; k <= N; ++k) AS.values[e][k] -= scale * S.values[e][k];
        CHECK(l2_norm(AS) / l2_norm(S) <= tol);
      }
  }
}

TEST_CASE("eigen action scalar") {
  CHECK(averaging_eigen_action(0.0) == 1.0);
  CHECK(averaging_eigen_action(kPi * kPi) == doctest::Approx(0.0).epsilon(1e-15));
  double z = 2.0;
  CHECK(averaging_eigen_action(z * z) == doctest::Approx(std::sin(z) / z).epsilon(1e-15));
}

TEST_CASE("averaging is self-adjoint up to quadrature error, improving with N") {
  Network net = triangle_net();
  Rng rng(29);
  // smooth edgewise data: the defect is pure quadrature error, O(h^2)
  auto defect = [&](int N, Rng& r) {
    auto F = random_smooth_function(net, N, r);
    auto G = random_smooth_function(net, N, r);
    cplx lhs = inner_product(apply_averaging(F), G);
    cplx rhs = inner_product(F, apply_averaging(G));
    return std::abs(lhs - rhs) / (l2_norm(F) * l2_norm(G));
  };
  double worst256 = 0.0, worst512 = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    Rng r256(1000 + trial);
    Rng r512(1000 + trial);
    worst256 = std::max(worst256, defect(256, r256));
    worst512 = std::max(worst512, defect(512, r512));
  }
  CHECK(worst256 <= 1e-3);
  CHECK(worst512 <= 2.5e-4);
}

TEST_CASE("averaging is a contraction on random data") {
  Rng rng(37);
  for (const Network& net : {path3(), triangle_net()}) {
    auto F = random_function(net, 256, rng);
    CHECK(l2_norm(apply_averaging(F)) <= (1.0 + 1e-3) * l2_norm(F));
  }
}

TEST_CASE("junction defect of the central identity follows the exact formula") {
  // wave_solution(0, F, 1) and A F differ only through vertex discontinuities
  // of F.  The tau-trapezoid hits the window endpoints t -+ 1, where the
  // extension reflects with the jump 2 (mean - value) at each vertex; the
  // resulting defect on edge (x,y) is -(dx + dy) / (4N) at interior nodes,
  // -dx / (4N) at the x end and -dy / (4N) at the y end, where
  // dx = 2 * ((1/m0(x)) sum c(xw) F(xw, 0) - F(xy, 0)).
  Rng rng(101);
  for (const char* text :
       {R"({"vertices": ["x", "y", "z"], "edges": [
          {"u": "x", "v": "y", "c": 1.0}, {"u": "y", "v": "z", "c": 2.0}]})",
        R"({"vertices": ["a", "b", "c"], "edges": [
          {"u": "a", "v": "b", "c": 1.0}, {"u": "b", "v": "c", "c": 1.5}, {"u": "a", "v": "c", "c": 0.5}]})"}) {
    Network net = parse_network(text);
    int N = 64;
    auto F = random_function(net, N, rng);
    auto zero = constant_function(net, N, 0.0);
    auto W = wave_solution(zero, F, 1.0);
    auto AF = apply_averaging(F);
    auto D = sub(W, AF);

    for (int e = 0; e < net.edge_count(); ++e) {
      int u = net.edges[e].u, v = net.edges[e].v;
      auto mean_at = [&](int x) {
        cplx acc = 0.0;
        for (auto [w, ee] : net.adjacency[x]) {
          (void)w;
          bool fs = (net.edges[ee].u == x);
          acc += net.edges[ee].c * F.view(ee, fs, 0);
        }
        return acc / net.m0[x];
      };
      cplx du = 2.0 * (mean_at(u) - F.view(e, true, 0));
      cplx dv = 2.0 * (mean_at(v) - F.view(e, false, 0));
      CHECK(std::abs(D.values[e][0] + du / (4.0 * N)) <= 1e-13);
      CHECK(std::abs(D.values[e][N] + dv / (4.0 * N)) <= 1e-13);
      for (int k = 1; k < N; ++k)
        CHECK(std::abs(D.values[e][k] + (du + dv) / (4.0 * N)) <= 1e-13);
    }
  }
}

TEST_CASE("central identity is exact on vertex-continuous data") {
  Rng rng(113);
  Network net = triangle_net();
  auto F = random_continuous_function(net, 256, rng);
  auto zero = constant_function(net, 256, 0.0);
  auto W = wave_solution(zero, F, 1.0);
  auto AF = apply_averaging(F);
  CHECK(l2_norm(sub(W, AF)) / l2_norm(F) <= 1e-13);
}
