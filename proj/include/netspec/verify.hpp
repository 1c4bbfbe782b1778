#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "netspec/network.hpp"
#include "netspec/report.hpp"
#include "netspec/rng.hpp"

namespace netspec {

struct VerifyOptions {
  int N = 256;
  int n_max = 3;
  double tau = 0.25;
  double tau_max = 2.0;
  unsigned long long seed = 42;
};

// Named verification suites: discrete, gamma, averaging, dalembert, wave,
// or all (their union).  Every residual is computed fresh from the network.
ResidualReport run_verify_suite(const Network& net, const std::string& suite,
                                const VerifyOptions& opt);

// Random connected network: 2..max_vertices vertices ("v0", "v1", ...),
// a spanning tree plus a few extra edges, conductances uniform in [cmin, cmax].
Network random_network(Rng& rng, int max_vertices = 8, double cmin = 0.5,
                       double cmax = 2.0);

// Entry point shared by the command-line tool and the tests.  args holds the
// arguments after the program name.  Exit code: 0 success / all checks pass,
// 1 verification failure, 2 usage error, 3 invalid input data.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace netspec
