#include "netspec/report.hpp"

#include <cstdio>

namespace netspec {

bool ResidualReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status == "ok" && !c.pass) return false;
  return true;
}

std::string fmt_e12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

namespace {

void dump_rec(const nlohmann::ordered_json& j, std::string& out) {
  using nlohmann::ordered_json;
  switch (j.type()) {
    case ordered_json::value_t::null:
      out += "null";
      break;
    case ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case ordered_json::value_t::number_float:
      out += fmt_e12(j.get<double>());
      break;
    case ordered_json::value_t::string:
      out += ordered_json(j.get<std::string>()).dump();
      break;
    case ordered_json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_rec(item, out);
      }
      out += ']';
      break;
    }
    case ordered_json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += ordered_json(it.key()).dump();
        out += ':';
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      out += "null";
      break;
  }
}

}  // namespace

std::string dump_deterministic(const nlohmann::ordered_json& j) {
  std::string out;
  dump_rec(j, out);
  out += '\n';
  return out;
}

std::string report_json(const ResidualReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["graph"] = report.graph;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["residual"] = c.residual;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    jc["status"] = c.status;
    if (c.status == "skipped") jc["reason"] = c.reason;
    nlohmann::ordered_json params;
    params["N"] = report.N;
    params["tau"] = report.tau;
    params["n_max"] = report.n_max;
    params["seed"] = report.seed;
    jc["parameters"] = std::move(params);
    j["checks"].push_back(std::move(jc));
  }
  j["pass"] = report.all_pass();
  return dump_deterministic(j);
}

}  // namespace netspec
