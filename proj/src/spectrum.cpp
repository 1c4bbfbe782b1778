#include "netspec/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "netspec/report.hpp"

namespace netspec {

namespace {
constexpr double kPi = 3.14159265358979323846;

double snap_unit(double t) {
  if (std::abs(t - 1.0) <= kSnapTol) return 1.0;
  if (std::abs(t + 1.0) <= kSnapTol) return -1.0;
  return t;
}
}  // namespace

double kappa(double t, int n) {
  if (n < 0) throw std::invalid_argument("kappa: band index must be >= 0");
  if (t < -1.0 || t > 1.0) throw std::invalid_argument("kappa: argument outside [-1, 1]");
  double theta = std::acos(t);
  double root = (n % 2 == 0) ? (kPi * n + theta) : (kPi * (n + 1) - theta);
  return root * root;
}

bool in_band(double t, int n) {
  t = snap_unit(t);
  if (n == 0) return t > -1.0 && t <= 1.0;
  return t > -1.0 && t < 1.0;
}

TrigEdgeFunction gamma_lift(const Network& net, double lambda, const VertexFunction& h) {
  if (lambda < 0.0) throw std::invalid_argument("gamma_lift: lambda must be >= 0");
  double z = std::sqrt(lambda);
  int near = std::max(1, static_cast<int>(std::lround(z / kPi)));
  for (int n : {near - 1, near, near + 1}) {
    if (n < 1) continue;
    if (std::abs(lambda - (kPi * n) * (kPi * n)) < kBoundaryTol)
      throw std::invalid_argument("gamma_lift: lambda is a Dirichlet value (pi n)^2");
  }
  double cz = std::cos(z);
  double pz = phi(z);
  TrigEdgeFunction F(net, lambda);
  F.b = h.values;
  for (int e = 0; e < net.edge_count(); ++e) {
    int u = net.edges[e].u, v = net.edges[e].v;
    F.a_fwd[e] = (h.values[v] - h.values[u] * cz) / pz;
    F.a_bwd[e] = (h.values[u] - h.values[v] * cz) / pz;
  }
  return F;
}

std::vector<ContinuousEigenpair> band_eigenpairs(const Network& net,
                                                 const std::vector<DiscreteEigenpair>& spec,
                                                 int n,
                                                 std::vector<std::string>* diagnostics) {
  std::vector<ContinuousEigenpair> out;
  for (const auto& p : spec) {
    double t = snap_unit(p.value);
    if (!in_band(t, n)) continue;
    double lambda = kappa(t, n);
    bool boundary = false;
    for (int m = n; m <= n + 1; ++m) {
      if (m >= 1 && std::abs(lambda - (kPi * m) * (kPi * m)) < kBoundaryTol) boundary = true;
    }
    if (boundary) {
      if (diagnostics) {
        std::ostringstream msg;
        msg << "band " << n << ": transition eigenvalue " << t
            << " lifts within 1e-9 of a band boundary; pair rejected";
        diagnostics->push_back(msg.str());
      }
      continue;
    }
    ContinuousEigenpair pair;
    pair.lambda = lambda;
    pair.band = n;
    pair.kind = PairKind::Band;
    pair.source_p_value = t;
    pair.fn = gamma_lift(net, lambda, p.vec);
    double nrm = trig_norm(pair.fn);
    for (auto& b : pair.fn.b) b /= nrm;
    for (auto& a : pair.fn.a_fwd) a /= nrm;
    for (auto& a : pair.fn.a_bwd) a /= nrm;
    pair.fn.eigenfunction = true;
    out.push_back(std::move(pair));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ContinuousEigenpair& a, const ContinuousEigenpair& b) {
                     return a.lambda < b.lambda;
                   });
  return out;
}

std::vector<ContinuousEigenpair> band_eigenpairs(const Network& net, int n,
                                                 std::vector<std::string>* diagnostics) {
  return band_eigenpairs(net, discrete_spectrum(net), n, diagnostics);
}

namespace {

// Flow coefficients per canonical edge spanning { a : a(yx) = (-1)^{n+1} a(xy),
// sum_y c(xy) a(xy) = 0 at every vertex }, via an SVD nullspace.
std::vector<std::vector<double>> flow_nullspace(const Network& net, int n) {
  int V = net.vertex_count();
  int E = net.edge_count();
  double back_sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(V, E);
  for (int e = 0; e < E; ++e) {
    K(net.edges[e].u, e) = net.edges[e].c;
    K(net.edges[e].v, e) = net.edges[e].c * back_sign;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * smax) ++rank;
  std::vector<std::vector<double>> basis;
  for (int j = rank; j < E; ++j) {
    std::vector<double> w(E);
    for (int e = 0; e < E; ++e) w[e] = svd.matrixV()(e, j);
    basis.push_back(std::move(w));
  }
  return basis;
}

}  // namespace

DirichletKernel dirichlet_kernel(const Network& net, int n) {
  if (n < 1) throw std::invalid_argument("dirichlet_kernel: n must be >= 1");
  double z = kPi * n;
  double lambda = z * z;
  DirichletKernel ker;
  ker.n = n;

  StructureReport sr = structure_report(net);

  // Vertex family h(x) cos(pi n t): h = 1 for even n, the bipartite sign
  // vector for odd n (requires h(y) = (-1)^n h(x) across every edge).
  std::vector<double> h;
  if (n % 2 == 0) {
    h.assign(net.vertices.size(), 1.0);
  } else if (sr.bipartite) {
    h.resize(net.vertices.size());
    for (int x = 0; x < net.vertex_count(); ++x)
      h[x] = ((*sr.coloring)[x] == (*sr.coloring)[0]) ? 1.0 : -1.0;
  }
  if (!h.empty()) {
    TrigEdgeFunction C(net, lambda);
    for (int x = 0; x < net.vertex_count(); ++x) C.b[x] = h[x];
    double nrm = trig_norm(C);
    for (auto& b : C.b) b /= nrm;
    C.eigenfunction = true;
    ContinuousEigenpair pair;
    pair.lambda = lambda;
    pair.band = n;
    pair.kind = PairKind::DirichletVertex;
    pair.fn = std::move(C);
    ker.basis.push_back(std::move(pair));
    ker.dim_vertex = 1;
  }

  // Flow family a(xy) sin(pi n t): orthonormalize the nullspace under the
  // exact Gram <S, S'> = (1/2) sum_e c_e conj(a_e) a'_e, then store the
  // Phi-coefficients pi n a_e so samples evaluate to a_e sin(pi n t).
  auto flows = flow_nullspace(net, n);
  std::vector<std::vector<double>> ortho;
  for (auto& w : flows) {
    for (const auto& q : ortho) {
      double ip = 0.0;
      for (int e = 0; e < net.edge_count(); ++e) ip += 0.5 * net.edges[e].c * q[e] * w[e];
      for (int e = 0; e < net.edge_count(); ++e) w[e] -= ip * q[e];
    }
    double nrm2 = 0.0;
    for (int e = 0; e < net.edge_count(); ++e) nrm2 += 0.5 * net.edges[e].c * w[e] * w[e];
    if (nrm2 <= 1e-24) continue;
    double nrm = std::sqrt(nrm2);
    for (auto& x : w) x /= nrm;
    double top = 0.0;
    for (double x : w) top = std::max(top, std::abs(x));
    for (double x : w) {
      if (std::abs(x) > 1e-12 * top) {
        if (x < 0.0)
          for (auto& y : w) y = -y;
        break;
      }
    }
    ortho.push_back(w);
  }
  double back_sign = (n % 2 == 0) ? -1.0 : 1.0;
  for (const auto& w : ortho) {
    TrigEdgeFunction S(net, lambda);
    for (int e = 0; e < net.edge_count(); ++e) {
      S.a_fwd[e] = z * w[e];
      S.a_bwd[e] = z * w[e] * back_sign;
    }
    S.eigenfunction = true;
    ContinuousEigenpair pair;
    pair.lambda = lambda;
    pair.band = n;
    pair.kind = PairKind::DirichletFlow;
    pair.fn = std::move(S);
    ker.basis.push_back(std::move(pair));
  }
  ker.dim_flow = static_cast<int>(ortho.size());
  return ker;
}

SpectrumReport spectrum_report(const Network& net, int n_max) {
  if (n_max < 0) throw std::invalid_argument("spectrum_report: n_max must be >= 0");
  SpectrumReport rep;
  rep.n_max = n_max;
  auto spec = discrete_spectrum(net);
  for (int n = 0; n <= n_max; ++n) {
    BandBlock block;
    block.n = n;
    block.pairs = band_eigenpairs(net, spec, n, &rep.diagnostics);
    rep.bands.push_back(std::move(block));
  }
  for (int n = 1; n <= n_max; ++n) rep.dirichlet.push_back(dirichlet_kernel(net, n));

  StructureReport sr = structure_report(net);
  rep.predicates.bipartite = sr.bipartite;
  rep.predicates.is_tree = sr.is_tree;
  rep.predicates.cycle_rank = sr.cycle_rank;
  rep.predicates.all_dirichlet_trivial = true;
  for (const auto& ker : rep.dirichlet)
    if (ker.dim_vertex + ker.dim_flow > 0) rep.predicates.all_dirichlet_trivial = false;
  return rep;
}

namespace {

nlohmann::ordered_json complex_json(const cplx& v) {
  return nlohmann::ordered_json::array({v.real(), v.imag()});
}

nlohmann::ordered_json trig_json(const Network& net, const TrigEdgeFunction& fn) {
  nlohmann::ordered_json jb = nlohmann::ordered_json::object();
  for (int x = 0; x < net.vertex_count(); ++x) jb[net.vertices[x]] = complex_json(fn.b[x]);
  nlohmann::ordered_json ja = nlohmann::ordered_json::object();
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& ed = net.edges[e];
    ja[net.vertices[ed.u] + "-" + net.vertices[ed.v]] = complex_json(fn.a_fwd[e]);
  }
  nlohmann::ordered_json j;
  j["b"] = std::move(jb);
  j["a"] = std::move(ja);
  return j;
}

}  // namespace

std::string spectrum_report_json(const Network& net, const SpectrumReport& report) {
  nlohmann::ordered_json j;
  j["n_max"] = report.n_max;
  j["bands"] = nlohmann::ordered_json::array();
  for (const auto& block : report.bands) {
    nlohmann::ordered_json jb;
    jb["n"] = block.n;
    jb["pairs"] = nlohmann::ordered_json::array();
    for (const auto& pair : block.pairs) {
      nlohmann::ordered_json jp;
      jp["lambda"] = pair.lambda;
      jp["source_p_value"] = pair.source_p_value;
      auto fn = trig_json(net, pair.fn);
      jp["b"] = fn["b"];
      jp["a"] = fn["a"];
      jb["pairs"].push_back(std::move(jp));
    }
    j["bands"].push_back(std::move(jb));
  }
  j["dirichlet"] = nlohmann::ordered_json::array();
  for (const auto& ker : report.dirichlet) {
    nlohmann::ordered_json jk;
    jk["n"] = ker.n;
    jk["lambda"] = (kPi * ker.n) * (kPi * ker.n);
    jk["dim_vertex"] = ker.dim_vertex;
    jk["dim_flow"] = ker.dim_flow;
    jk["basis"] = nlohmann::ordered_json::array();
    for (const auto& pair : ker.basis) {
      nlohmann::ordered_json jp;
      jp["kind"] = pair.kind == PairKind::DirichletVertex ? "vertex" : "flow";
      auto fn = trig_json(net, pair.fn);
      jp["b"] = fn["b"];
      jp["a"] = fn["a"];
      jk["basis"].push_back(std::move(jp));
    }
    j["dirichlet"].push_back(std::move(jk));
  }
  j["predicates"] = nlohmann::ordered_json::object();
  j["predicates"]["bipartite"] = report.predicates.bipartite;
  j["predicates"]["is_tree"] = report.predicates.is_tree;
  j["predicates"]["cycle_rank"] = report.predicates.cycle_rank;
  j["predicates"]["all_dirichlet_trivial"] = report.predicates.all_dirichlet_trivial;
  j["diagnostics"] = nlohmann::ordered_json::array();
  for (const auto& d : report.diagnostics) j["diagnostics"].push_back(d);
  return dump_deterministic(j);
}

}  // namespace netspec
