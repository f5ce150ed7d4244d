// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slicing/slicing.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "3..6", "3,4,5" or "7".
std::vector<int> parse_int_list(const std::vector<std::string>& tokens, const char* flag) {
  std::vector<int> out;
  for (const auto& tok : tokens) {
    std::stringstream ss(tok);
    for (std::string part; std::getline(ss, part, ',');) {
      try {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
          out.push_back(std::stoi(part));
          continue;
        }
        const int lo = std::stoi(part.substr(0, dots));
        const int hi = std::stoi(part.substr(dots + 2));
        if (hi < lo) throw UsageError(std::string(flag) + ": empty range " + part);
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      } catch (const std::logic_error&) {
        throw UsageError(std::string(flag) + ": not an integer list: " + part);
      }
    }
  }
  return out;
}

Json spec_value(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw UsageError("malformed JSON spec '" + text + "': " + e.what());
    }
  }
  return Json(text);
}

struct Options {
  std::string config;
  std::vector<std::string> theorems, bodies, densities, dims, codims;
  int nodes = 0, radial_nodes = 0, restarts = 0, evals = 0;
  long samples = 0;
  long long seed = -1;
  std::string format, out, scheme;
  bool no_proof = false;
};

void add_common(CLI::App* app, Options& o, bool theorems, bool density, bool oracle) {
  app->add_option("--config", o.config, "JSON run configuration; flags override its fields");
  if (theorems) app->add_option("--theorem", o.theorems, "thm1|km|thm2|thm3|thm4 (sweep also: constants)");
  app->add_option("--body", o.bodies, "body shorthand or JSON spec (repeatable)");
  if (density) app->add_option("--density", o.densities, "density shorthand or JSON spec");
  app->add_option("--dim", o.dims, "dimension(s): 4, 3..6, 3,5 (complex dimension for thm3/thm4)");
  app->add_option("--codim", o.codims, "codimension(s) k");
  app->add_option("--nodes", o.nodes, "sphere quadrature nodes");
  app->add_option("--radial-nodes", o.radial_nodes, "radial Gauss-Legendre nodes");
  app->add_option("--scheme", o.scheme, "auto|product-gauss|cubed-gauss|randomized-qmc");
  if (theorems) {
    app->add_option("--restarts", o.restarts, "search restarts");
    app->add_option("--evals", o.evals, "evaluation budget per restart");
    app->add_flag("--no-proof", o.no_proof, "skip the proof replay");
  }
  if (oracle) app->add_option("--samples", o.samples, "Monte Carlo samples");
  app->add_option("--seed", o.seed, "top-level seed");
  app->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", o.out, "output file (default stdout)");
}

Json build_config(const std::string& command, const Options& o) {
  Json cfg = Json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot read config file " + o.config);
    try {
      cfg = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw UsageError("config file " + o.config + ": " + e.what());
    }
  }
  cfg["command"] = command;
  if (!o.theorems.empty()) cfg["theorems"] = o.theorems;
  if (!o.bodies.empty()) {
    cfg["bodies"] = Json::array();
    for (const auto& b : o.bodies) cfg["bodies"].push_back(spec_value(b));
  }
  if (!o.densities.empty()) {
    cfg["densities"] = Json::array();
    for (const auto& d : o.densities) cfg["densities"].push_back(spec_value(d));
  }
  if (!o.dims.empty()) cfg["dims"] = parse_int_list(o.dims, "--dim");
  if (!o.codims.empty()) cfg["codims"] = parse_int_list(o.codims, "--codim");
  if (o.nodes > 0) cfg["quadrature"]["sphere_nodes"] = o.nodes;
  if (o.radial_nodes > 0) cfg["quadrature"]["radial_nodes"] = o.radial_nodes;
  if (!o.scheme.empty()) cfg["quadrature"]["scheme"] = o.scheme;
  if (o.restarts > 0) cfg["search"]["restarts"] = o.restarts;
  if (o.evals > 0) cfg["search"]["evals"] = o.evals;
  if (o.samples > 0) cfg["samples"] = o.samples;
  if (o.seed >= 0) cfg["seed"] = static_cast<std::uint64_t>(o.seed);
  if (!o.format.empty()) cfg["format"] = o.format;
  if (o.no_proof) cfg["proof_replay"] = false;
  if (!cfg.contains("densities") && command != "constants" && command != "sandwich") {
    cfg["densities"] = Json::array({"1"});
  }
  bool constants_only = cfg.contains("theorems") && !cfg["theorems"].empty();
  if (constants_only) {
    for (const auto& t : cfg["theorems"]) constants_only = constants_only && t == "constants";
  }
  if (!cfg.contains("codims") && command != "constants" && command != "sandwich" && !constants_only) {
    cfg["codims"] = Json::array({1});
  }
  return cfg;
}

int execute(const std::string& command, const Options& o) {
  const Json cfg = build_config(command, o);
  char* output = nullptr;
  int all_pass = 0;
  const slc_status st = slc_run(cfg.dump().c_str(), &output, &all_pass);
  if (st != SLC_OK) {
    std::cerr << "error: " << slc_last_error() << "\n";
    return (st == SLC_ERR_INPUT || st == SLC_ERR_DIMENSION || st == SLC_ERR_NULL) ? kExitUsage : kExitFail;
  }
  const std::string text(output);
  slc_free_string(output);
  const std::string out = !o.out.empty() ? o.out : cfg.value("out", std::string{});
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return kExitUsage;
    }
    f << text;
  }
  return all_pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of slicing and stability inequalities for star bodies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(slc_version()));

  Options verify_o, integrate_o, oracle_o, sandwich_o, sweep_o, constants_o;
  add_common(app.add_subcommand("verify", "check one theorem on bodies x densities"), verify_o, true, true, false);
  add_common(app.add_subcommand("integrate", "quadrature values of measures and coordinate sections"), integrate_o,
             false, true, false);
  add_common(app.add_subcommand("oracle", "Monte Carlo estimates mirroring integrate"), oracle_o, false, true, true);
  add_common(app.add_subcommand("sandwich", "sandwich ellipsoids and their containment check"), sandwich_o, false,
             false, false);
  add_common(app.add_subcommand("sweep", "theorem grid with summary lines"), sweep_o, true, true, false);

  auto* constants = app.add_subcommand("constants", "c_{n,k} and d_n");
  std::vector<std::string> const_n, const_k;
  constants->add_option("--n", const_n, "dimension(s), e.g. 2..60")->required();
  constants->add_option("--k", const_k, "codimension(s); default all 1..n-1");
  constants->add_option("--format", constants_o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  constants->add_option("--out", constants_o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      const std::string name = sub->get_name();
      if (name == "constants") {
        constants_o.dims = const_n;
        constants_o.codims = const_k;
        return execute(name, constants_o);
      }
      if (name == "verify") return execute(name, verify_o);
      if (name == "integrate") return execute(name, integrate_o);
      if (name == "oracle") return execute(name, oracle_o);
      if (name == "sandwich") return execute(name, sandwich_o);
      if (name == "sweep") return execute(name, sweep_o);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
