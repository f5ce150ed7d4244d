#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "errors.hpp"

namespace slicing {

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw InputError("unknown format '" + std::string(name) + "' (expected json|csv)");
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

Json frame_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd frame_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty()) return {};
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

}  // namespace

Json report_to_json(const VerificationReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.proof_steps) {
    steps.push_back({{"name", s.name},
                     {"lhs", s.lhs},
                     {"rhs", s.rhs},
                     {"tolerance", s.tolerance},
                     {"holds", s.holds},
                     {"note", s.note}});
  }
  const auto& c = r.constants;
  return Json{{"theorem", std::string(to_string(r.theorem))},
              {"n", r.n},
              {"k", r.k},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"ratio", r.ratio},
              {"epsilon", r.epsilon},
              {"est_error", r.est_error},
              {"margin", r.margin},
              {"pass", r.pass},
              {"witness_frame", frame_to_json(r.witness_frame)},
              {"witness_direction", r.witness_direction},
              {"constants",
               {{"n", c.n},
                {"k", c.k},
                {"ball_vol_n", c.ball_vol_n},
                {"sphere_vol_n", c.sphere_vol_n},
                {"c_nk", c.c_nk},
                {"factor", c.factor}}},
              {"search", {{"change", r.search_change}, {"stable", r.search_stable}, {"restarts", r.restarts_used}}},
              {"seed", r.seed},
              {"body", r.body},
              {"density", r.density},
              {"proof_steps", steps}};
}

VerificationReport report_from_json(const Json& d) {
  try {
    VerificationReport r;
    r.theorem = parse_theorem(d.at("theorem").get<std::string>());
    r.n = d.at("n").get<int>();
    r.k = d.at("k").get<int>();
    r.lhs = d.at("lhs").get<double>();
    r.rhs = d.at("rhs").get<double>();
    r.ratio = d.at("ratio").get<double>();
    r.epsilon = d.at("epsilon").get<double>();
    r.est_error = d.at("est_error").get<double>();
    r.margin = d.value("margin", 0.0);
    r.pass = d.at("pass").get<bool>();
    if (d.contains("witness_frame")) r.witness_frame = frame_from_json(d["witness_frame"]);
    if (d.contains("witness_direction")) r.witness_direction = d["witness_direction"].get<std::vector<double>>();
    if (d.contains("constants")) {
      const auto& c = d["constants"];
      r.constants.n = c.value("n", 0);
      r.constants.k = c.value("k", 0);
      r.constants.ball_vol_n = c.value("ball_vol_n", 0.0);
      r.constants.sphere_vol_n = c.value("sphere_vol_n", 0.0);
      r.constants.c_nk = c.value("c_nk", 0.0);
      r.constants.factor = c.value("factor", 0.0);
    }
    if (d.contains("search")) {
      r.search_change = d["search"].value("change", 0.0);
      r.search_stable = d["search"].value("stable", false);
      r.restarts_used = d["search"].value("restarts", 0);
    }
    r.seed = d.value("seed", std::uint64_t{0});
    r.body = d.value("body", std::string{});
    r.density = d.value("density", std::string{});
    if (d.contains("proof_steps")) {
      for (const auto& s : d["proof_steps"]) {
        r.proof_steps.push_back(ProofStep{s.at("name").get<std::string>(), s.at("lhs").get<double>(),
                                          s.at("rhs").get<double>(), s.at("tolerance").get<double>(),
                                          s.at("holds").get<bool>(), s.value("note", std::string{})});
      }
    }
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

CsvRow csv_row(const VerificationReport& r) {
  return CsvRow{std::string(to_string(r.theorem)), r.n, r.k, r.lhs, r.rhs, r.ratio, r.epsilon, r.est_error, r.pass};
}

std::string to_csv(const CsvRow& r) {
  std::string row = r.tag + "," + std::to_string(r.n) + "," + std::to_string(r.k);
  for (double v : {r.lhs, r.rhs, r.ratio, r.epsilon, r.est_error}) row += "," + format_double(v);
  row += r.pass ? ",true" : ",false";
  return row;
}

CsvRow parse_csv_row(std::string_view line) {
  std::vector<std::string> cols;
  std::stringstream ss{std::string(line)};
  for (std::string col; std::getline(ss, col, ',');) cols.push_back(col);
  if (cols.size() != 9) throw InputError("csv row: expected 9 columns, got " + std::to_string(cols.size()));
  auto num = [&](std::size_t i) {
    char* end = nullptr;
    const double v = std::strtod(cols[i].c_str(), &end);
    if (end == cols[i].c_str() || *end != '\0') throw InputError("csv row: bad number '" + cols[i] + "'");
    return v;
  };
  auto integer = [&](std::size_t i) {
    const double v = num(i);
    if (v != std::floor(v)) throw InputError("csv row: bad integer '" + cols[i] + "'");
    return static_cast<int>(v);
  };
  if (cols[8] != "true" && cols[8] != "false") throw InputError("csv row: pass must be true|false");
  return CsvRow{cols[0], integer(1), integer(2), num(3), num(4), num(5), num(6), num(7), cols[8] == "true"};
}

std::string emit_report(const VerificationReport& r, OutputFormat f) {
  if (f == OutputFormat::Json) return report_to_json(r).dump(2) + "\n";
  return std::string(kCsvHeader) + "\n" + to_csv(csv_row(r)) + "\n";
}

std::string emit_reports(const std::vector<VerificationReport>& reports, OutputFormat f) {
  if (f == OutputFormat::Json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
  }
  std::string out(kCsvHeader);
  out += "\n";
  for (const auto& r : reports) out += to_csv(csv_row(r)) + "\n";
  return out;
}

}  // namespace slicing
