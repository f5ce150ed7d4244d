#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "complex_geom.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "john.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "sections.hpp"

namespace slicing {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Integrate: return "integrate";
    case Command::Oracle: return "oracle";
    case Command::Constants: return "constants";
    case Command::Sandwich: return "sandwich";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::Verify, Command::Integrate, Command::Oracle, Command::Constants, Command::Sandwich,
                    Command::Sweep}) {
    if (name == to_string(c)) return c;
  }
  throw InputError("unknown command '" + std::string(name) + "'");
}

namespace {

bool needs_bodies(Command c) { return c != Command::Constants; }

bool is_constants_tag(const std::string& t) { return t == "constants"; }

}  // namespace

void RunConfig::validate() const {
  quadrature.validate();
  search.validate();
  if (samples < 2) throw InputError("config.samples: must be >= 2");
  if (dims.empty()) throw InputError("config.dims: empty dimension list");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) throw InputError("config.dims[" + std::to_string(i) + "]: must be >= 1");
  }
  for (std::size_t i = 0; i < codims.size(); ++i) {
    if (codims[i] < 1) throw InputError("config.codims[" + std::to_string(i) + "]: must be >= 1");
  }
  const bool theorem_command = command == Command::Verify || command == Command::Sweep;
  const bool any_theorem = std::any_of(theorems.begin(), theorems.end(), [](const auto& t) {
    return !is_constants_tag(t);
  });
  const bool constants_only = command == Command::Sweep && !theorems.empty() && !any_theorem;
  if (needs_bodies(command) && !constants_only && bodies.empty()) {
    throw InputError("config.bodies: empty body list");
  }
  if (theorem_command && theorems.empty()) throw InputError("config.theorems: empty theorem list");
  for (std::size_t i = 0; i < theorems.size(); ++i) {
    if (command == Command::Sweep && is_constants_tag(theorems[i])) continue;
    try {
      parse_theorem(theorems[i]);
    } catch (const InputError& e) {
      throw InputError("config.theorems[" + std::to_string(i) + "]: " + e.what());
    }
  }
  if (theorem_command && any_theorem && densities.empty()) throw InputError("config.densities: empty density list");
  if ((command == Command::Integrate || command == Command::Oracle) && densities.empty()) {
    throw InputError("config.densities: empty density list");
  }
}

Json config_to_json(const RunConfig& c) {
  return Json{{"command", std::string(to_string(c.command))},
              {"theorems", c.theorems},
              {"bodies", c.bodies},
              {"densities", c.densities},
              {"dims", c.dims},
              {"codims", c.codims},
              {"quadrature",
               {{"sphere_nodes", c.quadrature.sphere_nodes},
                {"radial_nodes", c.quadrature.radial_nodes},
                {"scheme", std::string(to_string(c.quadrature.scheme))},
                {"rel_tol", c.quadrature.rel_tol}}},
              {"search",
               {{"restarts", c.search.restarts},
                {"evals", c.search.evals},
                {"search_nodes", c.search.search_nodes},
                {"initial_step", c.search.initial_step},
                {"min_step", c.search.min_step},
                {"patience", c.search.patience}}},
              {"samples", c.samples},
              {"seed", c.seed},
              {"proof_replay", c.proof_replay},
              {"format", std::string(to_string(c.format))},
              {"out", c.out}};
}

RunConfig config_from_json(const Json& d) {
  if (!d.is_object()) throw InputError("config: expected a JSON object");
  static const char* known[] = {"command", "theorems", "bodies", "densities", "dims",          "codims", "quadrature",
                                "search",  "samples",  "seed",   "format",    "proof_replay", "out"};
  for (const auto& [key, value] : d.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known)) {
      throw InputError("config." + key + ": unknown field");
    }
  }
  RunConfig c;
  std::string where = "config";
  try {
    where = "config.command";
    if (d.contains("command")) c.command = parse_command(d["command"].get<std::string>());
    where = "config.theorems";
    if (d.contains("theorems")) {
      c.theorems = d["theorems"].is_string() ? std::vector<std::string>{d["theorems"].get<std::string>()}
                                             : d["theorems"].get<std::vector<std::string>>();
    }
    where = "config.bodies";
    if (d.contains("bodies")) {
      for (const auto& b : d["bodies"]) c.bodies.push_back(b);
    }
    where = "config.densities";
    if (d.contains("densities")) {
      for (const auto& x : d["densities"]) c.densities.push_back(x);
    }
    where = "config.dims";
    if (d.contains("dims")) c.dims = d["dims"].get<std::vector<int>>();
    where = "config.codims";
    if (d.contains("codims")) c.codims = d["codims"].get<std::vector<int>>();
    where = "config.quadrature";
    if (d.contains("quadrature")) {
      const auto& q = d["quadrature"];
      c.quadrature.sphere_nodes = q.value("sphere_nodes", c.quadrature.sphere_nodes);
      c.quadrature.radial_nodes = q.value("radial_nodes", c.quadrature.radial_nodes);
      c.quadrature.rel_tol = q.value("rel_tol", c.quadrature.rel_tol);
      if (q.contains("scheme")) c.quadrature.scheme = parse_scheme(q["scheme"].get<std::string>());
    }
    where = "config.search";
    if (d.contains("search")) {
      const auto& s = d["search"];
      c.search.restarts = s.value("restarts", c.search.restarts);
      c.search.evals = s.value("evals", c.search.evals);
      c.search.search_nodes = s.value("search_nodes", c.search.search_nodes);
      c.search.initial_step = s.value("initial_step", c.search.initial_step);
      c.search.min_step = s.value("min_step", c.search.min_step);
      c.search.patience = s.value("patience", c.search.patience);
    }
    where = "config.samples";
    c.samples = d.value("samples", c.samples);
    where = "config.seed";
    c.seed = d.value("seed", c.seed);
    where = "config.proof_replay";
    c.proof_replay = d.value("proof_replay", c.proof_replay);
    where = "config.format";
    if (d.contains("format")) c.format = parse_format(d["format"].get<std::string>());
    where = "config.out";
    c.out = d.value("out", std::string{});
  } catch (const Json::exception& e) {
    throw InputError(where + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return c;
}

namespace {

QuadratureSpec seeded_quadrature(const RunConfig& c) {
  QuadratureSpec q = c.quadrature;
  q.seed = c.seed;
  return q;
}

SearchConfig seeded_search(const RunConfig& c) {
  SearchConfig s = c.search;
  s.seed = c.seed;
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// Parses body `b` for real dimension `dim`; nullopt when the document fixes a
// different dimension.
std::optional<StarBody> body_for(const Json& doc, int dim, std::size_t index) {
  try {
    const auto fixed = fixed_dim(doc);
    if (fixed && *fixed != dim) return std::nullopt;
    return parse_body(doc, dim);
  } catch (const InputError& e) {
    throw InputError("config.bodies[" + std::to_string(index) + "]: " + e.what());
  }
}

Density density_for(const Json& doc, int dim, std::size_t index) {
  try {
    return parse_density(doc, dim);
  } catch (const InputError& e) {
    throw InputError("config.densities[" + std::to_string(index) + "]: " + e.what());
  }
}

struct Instance {
  Theorem theorem;
  StarBody body;
  Density density;
  int k;
};

struct Outcome {
  std::optional<VerificationReport> report;
  std::string skipped;
};

std::vector<CsvRow> constants_rows(const std::vector<int>& dims, const std::vector<int>& codims) {
  std::vector<CsvRow> rows;
  for (int n : dims) {
    std::vector<int> ks = codims;
    if (ks.empty()) {
      for (int k = 1; k < n; ++k) ks.push_back(k);
    }
    for (int k : ks) {
      if (k >= n) continue;
      const double c = c_nk(n, k);
      rows.push_back(CsvRow{"constants", n, k, c, 1.0, c, 0.0, 0.0, c < 1.0});
    }
    if (n >= 2) {
      const double d = d_n(n);
      rows.push_back(CsvRow{"constants-complex", n, 1, d, 1.0, d, 0.0, 0.0, d < 1.0});
    }
  }
  return rows;
}

Json rows_to_json(const std::vector<CsvRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"theorem", r.tag},
                   {"n", r.n},
                   {"k", r.k},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"ratio", r.ratio},
                   {"epsilon", r.epsilon},
                   {"est_error", r.est_error},
                   {"pass", r.pass}});
  }
  return arr;
}

std::string emit_rows(const std::vector<CsvRow>& rows, OutputFormat f) {
  if (f == OutputFormat::Json) return rows_to_json(rows).dump(2) + "\n";
  std::string out(kCsvHeader);
  out += "\n";
  for (const auto& r : rows) out += to_csv(r) + "\n";
  return out;
}

RunResult run_constants(const RunConfig& c) {
  RunResult res;
  const auto rows = constants_rows(c.dims, c.codims);
  for (const auto& r : rows) res.all_pass = res.all_pass && r.pass;
  res.output = emit_rows(rows, c.format);
  return res;
}

RunResult run_sandwich(const RunConfig& c) {
  RunResult res;
  std::vector<CsvRow> rows;
  Json details = Json::array();
  for (int dim : c.dims) {
    for (std::size_t b = 0; b < c.bodies.size(); ++b) {
      const auto body = body_for(c.bodies[b], dim, b);
      if (!body) continue;
      const SandwichEllipsoid e = sandwich_ellipsoid(*body);
      const bool complex_body = body->kind() == BodyKind::ComplexLpBall && body->dim() >= 4;
      const StarBody outer = complex_body ? rtheta_symmetrize(e.outer()) : e.outer();
      const SandwichCheck check = verify_sandwich(*body, outer, e.ratio, 10000, 1e-9, c.seed);
      const double bound = std::sqrt(static_cast<double>(body->dim()));
      CsvRow row{"sandwich", body->dim(), 0, e.ratio, bound, e.ratio / bound, check.max_violation, 0.0,
                 check.pass && e.ratio <= bound * (1.0 + 1e-12)};
      res.all_pass = res.all_pass && row.pass;
      rows.push_back(row);
      details.push_back({{"body", body->label()},
                         {"certified", e.certified},
                         {"symmetrized", complex_body},
                         {"ratio", e.ratio},
                         {"bound", bound},
                         {"max_violation", check.max_violation},
                         {"pass", row.pass}});
    }
  }
  if (c.format == OutputFormat::Json) {
    res.output = details.dump(2) + "\n";
  } else {
    res.output = emit_rows(rows, c.format);
  }
  return res;
}

RunResult run_integrals(const RunConfig& c, bool oracle) {
  RunResult res;
  const QuadratureSpec q = seeded_quadrature(c);
  Json arr = Json::array();
  std::string csv = oracle ? "quantity,body,density,n,k,mean,std_error,samples,seed\n"
                           : "quantity,body,density,n,k,value,est_error,nodes\n";
  for (int dim : c.dims) {
    for (std::size_t b = 0; b < c.bodies.size(); ++b) {
      const auto body = body_for(c.bodies[b], dim, b);
      if (!body) continue;
      for (std::size_t d = 0; d < c.densities.size(); ++d) {
        const Density density = density_for(c.densities[d], body->dim(), d);
        std::vector<int> ks{0};
        for (int k : c.codims) {
          if (k < body->dim()) ks.push_back(k);
        }
        for (int k : ks) {
          std::vector<int> idx;
          for (int i = 0; i < body->dim() - k; ++i) idx.push_back(i);
          const Subspace h = Subspace::coordinate(body->dim(), idx);
          const std::string quantity = k == 0 ? "measure" : "section";
          Json row{{"quantity", quantity},
                   {"body", body->label()},
                   {"density", density.label()},
                   {"n", body->dim()},
                   {"k", k}};
          std::string line = quantity + "," + csv_field(body->label()) + "," + csv_field(density.label()) + "," +
                             std::to_string(body->dim()) + "," + std::to_string(k) + ",";
          if (oracle) {
            const McEstimate est = k == 0 ? mc_body_measure(*body, density, c.samples, c.seed)
                                          : mc_section_measure(*body, density, h, c.samples, c.seed);
            row["mean"] = est.mean;
            row["std_error"] = est.std_error;
            row["samples"] = est.samples;
            row["seed"] = est.seed;
            line += format_double(est.mean) + "," + format_double(est.std_error) + "," + std::to_string(est.samples) +
                    "," + std::to_string(est.seed);
          } else {
            const IntegralResult r = k == 0 ? body_measure(*body, density, q) : section_measure(*body, density, h, q);
            row["value"] = r.value;
            row["est_error"] = r.est_error;
            row["nodes"] = r.nodes_used;
            line += format_double(r.value) + "," + format_double(r.est_error) + "," + std::to_string(r.nodes_used);
          }
          arr.push_back(std::move(row));
          csv += line + "\n";
        }
      }
    }
  }
  res.output = c.format == OutputFormat::Json ? arr.dump(2) + "\n" : csv;
  return res;
}

std::vector<Instance> build_instances(const RunConfig& c, const std::string& tag, std::vector<std::string>& skipped) {
  const Theorem t = parse_theorem(tag);
  const bool cx = is_complex(t);
  std::vector<Instance> out;
  for (int dim : c.dims) {
    const int real_dim = cx ? 2 * dim : dim;
    for (std::size_t b = 0; b < c.bodies.size(); ++b) {
      const auto body = body_for(c.bodies[b], real_dim, b);
      if (!body) continue;
      for (std::size_t d = 0; d < c.densities.size(); ++d) {
        const Density density = density_for(c.densities[d], real_dim, d);
        if (cx) {
          out.push_back(Instance{t, *body, density, 1});
          continue;
        }
        for (int k : c.codims) {
          if (k >= real_dim) {
            skipped.push_back(tag + " " + body->label() + " k=" + std::to_string(k) + ": codimension >= dimension");
            continue;
          }
          out.push_back(Instance{t, *body, density, k});
        }
      }
    }
  }
  return out;
}

RunResult run_theorems(const RunConfig& c, bool sweep) {
  RunResult res;
  VerifyOptions opt;
  opt.quadrature = seeded_quadrature(c);
  opt.search = seeded_search(c);
  opt.proof_replay = c.proof_replay;

  std::vector<CsvRow> const_rows;
  std::vector<std::string> skipped;
  std::vector<Instance> instances;
  std::vector<std::string> order;
  for (const auto& tag : c.theorems) {
    if (is_constants_tag(tag)) {
      const auto rows = constants_rows(c.dims, c.codims);
      const_rows.insert(const_rows.end(), rows.begin(), rows.end());
      order.push_back(tag);
      continue;
    }
    auto part = build_instances(c, tag, skipped);
    instances.insert(instances.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    order.push_back(tag);
  }
  if (!sweep && instances.empty()) throw InputError("verify: no instance matches the given bodies and dimensions");

  std::vector<Outcome> outcomes(instances.size());
  parallel_for(instances.size(), [&](std::size_t i) {
    const Instance& in = instances[i];
    if (!sweep) {
      outcomes[i].report = verify(in.theorem, in.body, in.density, in.k, opt);
      return;
    }
    try {
      outcomes[i].report = verify(in.theorem, in.body, in.density, in.k, opt);
    } catch (const InputError& e) {
      outcomes[i].skipped = std::string(to_string(in.theorem)) + " " + in.body.label() + " " + in.density.label() +
                            " k=" + std::to_string(in.k) + ": " + e.what();
    }
  });

  std::vector<CsvRow> rows = const_rows;
  for (auto& o : outcomes) {
    if (o.report) {
      res.all_pass = res.all_pass && o.report->pass;
      rows.push_back(csv_row(*o.report));
      res.reports.push_back(std::move(*o.report));
    } else {
      skipped.push_back(o.skipped);
    }
  }
  for (const auto& r : const_rows) res.all_pass = res.all_pass && r.pass;

  // Per-tag summary: count, failures, min and max ratio.
  struct Summary {
    int count = 0, failures = 0;
    double lo = INFINITY, hi = -INFINITY;
  };
  std::map<std::string, Summary> summary;
  for (const auto& r : rows) {
    auto& s = summary[r.tag];
    ++s.count;
    s.failures += r.pass ? 0 : 1;
    s.lo = std::min(s.lo, r.ratio);
    s.hi = std::max(s.hi, r.ratio);
  }

  if (c.format == OutputFormat::Json) {
    Json doc;
    Json reports = Json::array();
    for (const auto& r : res.reports) reports.push_back(report_to_json(r));
    if (!const_rows.empty()) doc["constants"] = rows_to_json(const_rows);
    doc["reports"] = reports;
    if (sweep) {
      Json sj = Json::array();
      for (const auto& [tag, s] : summary) {
        sj.push_back({{"theorem", tag},
                      {"count", s.count},
                      {"failures", s.failures},
                      {"min_ratio", s.lo},
                      {"max_ratio", s.hi}});
      }
      doc["summary"] = sj;
      doc["skipped"] = skipped;
      doc["all_pass"] = res.all_pass;
    }
    res.output = doc.dump(2) + "\n";
    return res;
  }

  res.output = emit_rows(rows, OutputFormat::Csv);
  if (sweep) {
    for (const auto& s : skipped) res.output += "# skipped " + s + "\n";
    for (const auto& [tag, s] : summary) {
      res.output += "# summary " + tag + " count=" + std::to_string(s.count) +
                    " failures=" + std::to_string(s.failures) + " min_ratio=" + format_double(s.lo) +
                    " max_ratio=" + format_double(s.hi) + "\n";
    }
    res.output += std::string("# all_pass ") + (res.all_pass ? "true" : "false") + "\n";
  }
  return res;
}

}  // namespace

RunResult run_sweep(const RunConfig& config) {
  config.validate();
  return run_theorems(config, true);
}

RunResult run(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::Verify: return run_theorems(config, false);
    case Command::Sweep: return run_theorems(config, true);
    case Command::Integrate: return run_integrals(config, false);
    case Command::Oracle: return run_integrals(config, true);
    case Command::Constants: return run_constants(config);
    case Command::Sandwich: return run_sandwich(config);
  }
  throw InternalError("run: unknown command");
}

}  // namespace slicing
