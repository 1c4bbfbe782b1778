#include <doctest.h>

#include <cmath>
#include <sstream>

#include "netspec/edge_function.hpp"
#include "netspec/network.hpp"
#include "netspec/rng.hpp"

using namespace netspec;

namespace {

constexpr double kPi = 3.14159265358979323846;

Network edge_net() {
  return parse_network(R"({"vertices": ["x", "y"], "edges": [{"u": "x", "v": "y", "c": 1.0}]})");
}

Network triangle_net() {
  return parse_network(R"({"vertices": ["a", "b", "c"], "edges": [
    {"u": "a", "v": "b", "c": 1.0}, {"u": "b", "v": "c", "c": 1.0}, {"u": "a", "v": "c", "c": 1.0}]})");
}

SampledEdgeFunction sample_scalar(const Network& net, int N, double (*f)(double)) {
  SampledEdgeFunction F(net, N);
  for (auto& edge : F.values)
    for (int k = 0; k <= N; ++k) edge[k] = f(static_cast<double>(k) / N);
  return F;
}

}  // namespace

TEST_CASE("phi values") {
  CHECK(phi(0.0, 0.7) == 0.7);
  CHECK(phi(0.0) == 1.0);
  CHECK(phi(kPi) == doctest::Approx(std::sin(kPi) / kPi));
  CHECK(phi(2.0, 0.5) == doctest::Approx(std::sin(1.0) / 2.0).epsilon(1e-15));
  // removable singularity: small z stays smooth
  CHECK(phi(1e-8, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("inner product of constants follows the total edge measure") {
  Network net = edge_net();
  auto one = constant_function(net, 64, 1.0);
  CHECK(inner_product(one, one).real() == doctest::Approx(1.0).epsilon(1e-14));

  Network tri = triangle_net();
  auto one3 = constant_function(tri, 64, 1.0);
  CHECK(inner_product(one3, one3).real() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("inner product is conjugate-linear in the first argument and Hermitian") {
  Network net = triangle_net();
  Rng rng(7);
  auto F = random_function(net, 64, rng);
  auto G = random_function(net, 64, rng);
  cplx fg = inner_product(F, G);
  cplx gf = inner_product(G, F);
  CHECK(std::abs(fg - std::conj(gf)) <= 1e-14 * std::abs(fg));

  SampledEdgeFunction iF = F;
  for (auto& edge : iF.values)
    for (auto& v : edge) v *= cplx(0.0, 1.0);
  // <iF, G> = -i <F, G>
  CHECK(std::abs(inner_product(iF, G) - cplx(0.0, -1.0) * fg) <= 1e-14 * std::abs(fg));
  CHECK(inner_product(F, F).real() > 0.0);
  CHECK(std::abs(inner_product(F, F).imag()) <= 1e-14 * inner_product(F, F).real());
}

TEST_CASE("Simpson quadrature converges at fourth order") {
  Network net = edge_net();
  // exact integral of cos^2(3.3 t) on [0,1]
  double z = 3.3;
  double exact = 0.5 + std::sin(2.0 * z) / (4.0 * z);
  auto value_at = [&](int N) {
    SampledEdgeFunction F(net, N);
    for (int k = 0; k <= N; ++k) F.values[0][k] = std::cos(z * k / static_cast<double>(N));
    return inner_product(F, F).real();
  };
  double err32 = std::abs(value_at(32) - exact);
  double err64 = std::abs(value_at(64) - exact);
  CHECK(err64 > 0.0);
  CHECK(err32 / err64 >= 8.0);  // halving the step cuts the error by >= 8
}

TEST_CASE("directed views describe one stored array") {
  Network net = edge_net();
  Rng rng(3);
  auto F = random_function(net, 16, rng);
  for (int k = 0; k <= 16; ++k) {
    CHECK(F.view(0, true, k) == F.values[0][k]);
    CHECK(F.view(0, false, k) == F.values[0][16 - k]);
  }
}

TEST_CASE("trig function: closed-form samples and orientation consistency") {
  Network net = edge_net();
  double lambda = kPi * kPi / 4.0;  // z = pi/2
  TrigEdgeFunction F(net, lambda);
  F.b[0] = 1.0;   // cos(pi t / 2) from x
  F.b[1] = 0.0;
  double z = kPi / 2.0;
  F.a_fwd[0] = -std::cos(z) / phi(z);  // pins F(1) = 0
  F.a_bwd[0] = 1.0 / phi(z);           // reversed view: sin-profile from y
  CHECK(F.orientation_consistency(128) <= 1e-14);
  auto S = sample_trig(F, 64);
  for (int k = 0; k <= 64; ++k) {
    double t = k / 64.0;
    CHECK(std::abs(S.values[0][k] - std::cos(z * t)) <= 1e-13);
  }
}

TEST_CASE("closed-form trig norm matches Simpson quadrature") {
  Network net = triangle_net();
  Rng rng(11);
  for (double lambda : {0.0, 2.0, kPi * kPi / 3.9, 31.4}) {
    TrigEdgeFunction F(net, lambda);
    for (auto& b : F.b) b = rng.cnormal();
    double z = std::sqrt(lambda);
    double cz = std::cos(z), pz = phi(z);
    for (int e = 0; e < net.edge_count(); ++e) {
      // vertex-continuous interpolation: both directed coefficients
      F.a_fwd[e] = (F.b[net.edges[e].v] - F.b[net.edges[e].u] * cz) / pz;
      F.a_bwd[e] = (F.b[net.edges[e].u] - F.b[net.edges[e].v] * cz) / pz;
    }
    CHECK(F.orientation_consistency(64) <= 1e-13);
    double closed = trig_inner_product(F, F).real();
    double sampled = inner_product(sample_trig(F, 512), sample_trig(F, 512)).real();
    CHECK(closed == doctest::Approx(sampled).epsilon(1e-8));
  }
}

TEST_CASE("vertex residuals of a constant vanish") {
  Network net = triangle_net();
  auto F = constant_function(net, 64, 2.5);
  VertexResiduals r = vertex_residuals(F);
  for (double s : r.continuity_spread) CHECK(s == 0.0);
  for (const auto& k : r.kirchhoff) CHECK(std::abs(k) <= 1e-12);
}

TEST_CASE("sampled kirchhoff stencil error is O(h^2)") {
  Network net = edge_net();
  // F = cos(pi t): F'(0) = 0 from x and F'(y side)(0) = 0 as well
  auto F256 = sample_scalar(net, 256, [](double t) { return std::cos(kPi * t); });
  VertexResiduals r = vertex_residuals(F256);
  for (const auto& k : r.kirchhoff) CHECK(std::abs(k) <= 1e-3);
  auto F512 = sample_scalar(net, 512, [](double t) { return std::cos(kPi * t); });
  VertexResiduals r2 = vertex_residuals(F512);
  CHECK(std::abs(r2.kirchhoff[0]) <= 0.3 * std::abs(r.kirchhoff[0]));
}

TEST_CASE("trig eigenfunction kirchhoff residual is a coefficient identity") {
  Network net = triangle_net();
  double lambda = 2.0;
  TrigEdgeFunction F(net, lambda);
  // balance the a-coefficients by hand: a(ab) = -a(ac) at vertex a, etc.
  F.a_fwd = {1.0, -1.0, -1.0};
  F.a_bwd = {0.5, 0.5, 0.5};
  // kirchhoff(a) = c(ab) a(ab) + c(ac) a(ac) using directed coefficients
  VertexResiduals r = vertex_residuals(F);
  CHECK(std::abs(r.kirchhoff[0] - (1.0 * 1.0 + 1.0 * -1.0)) == 0.0);
  CHECK(std::abs(r.kirchhoff[1] - (0.5 + -1.0)) == 0.0);
  CHECK(std::abs(r.kirchhoff[2] - (0.5 + 0.5)) == 0.0);
}

TEST_CASE("continuity spread measures the worst vertex mismatch") {
  Network net = triangle_net();
  auto F = constant_function(net, 32, 0.0);
  // perturb the a-end of edge (a,b) only
  F.values[0][0] = 3.0;
  VertexResiduals r = vertex_residuals(F);
  // at vertex a the incident values are {3, 0}: mean 1.5, spread 1.5
  CHECK(r.continuity_spread[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r.continuity_spread[2] == 0.0);
}

TEST_CASE("CSV layout: header, canonical orientation, ascending k") {
  Network net = edge_net();
  SampledEdgeFunction F(net, 2);
  F.values[0] = {cplx(1.0, -1.0), cplx(0.5, 0.0), cplx(0.0, 2.0)};
  std::istringstream csv(to_csv(F));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "edge_u,edge_v,k,t,re,im");
  std::getline(csv, line);
  CHECK(line.rfind("x,y,0,", 0) == 0);
  CHECK(line.find("1.000000000000e+00") != std::string::npos);
  CHECK(line.find("-1.000000000000e+00") != std::string::npos);
  std::getline(csv, line);
  CHECK(line.rfind("x,y,1,", 0) == 0);
  CHECK(line.find("5.000000000000e-01") != std::string::npos);
  std::getline(csv, line);
  CHECK(line.rfind("x,y,2,", 0) == 0);
  CHECK_FALSE(std::getline(csv, line));
}

TEST_CASE("random continuous functions share vertex values") {
  Network net = triangle_net();
  Rng rng(5);
  auto F = random_continuous_function(net, 32, rng);
  VertexResiduals r = vertex_residuals(F);
  for (double s : r.continuity_spread) CHECK(s <= 1e-15);
}

TEST_CASE("mismatched grids are rejected") {
  Network net = edge_net();
  auto F = constant_function(net, 32, 1.0);
  auto G = constant_function(net, 64, 1.0);
  CHECK_THROWS_AS((void)inner_product(F, G), std::invalid_argument);
  SampledEdgeFunction odd(net, 33);
  CHECK_THROWS_AS((void)inner_product(odd, odd), std::invalid_argument);
}
