#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grassmann.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "spec_io.hpp"

namespace slicing {

enum class Command { Verify, Integrate, Oracle, Constants, Sandwich, Sweep };
std::string_view to_string(Command c);
Command parse_command(std::string_view name);

struct RunConfig {
  Command command = Command::Verify;
  // thm1|km|thm2|thm3|thm4, plus "constants" inside a sweep.
  std::vector<std::string> theorems;
  std::vector<Json> bodies;
  std::vector<Json> densities;
  // Real dimension n; complex dimension for thm3/thm4.
  std::vector<int> dims;
  std::vector<int> codims;
  QuadratureSpec quadrature;
  SearchConfig search;
  long samples = 1000000;  // oracle
  // Top-level seed; overrides the quadrature, search and oracle seeds.
  std::uint64_t seed = 42;
  bool proof_replay = true;
  OutputFormat format = OutputFormat::Csv;
  std::string out;

  // Throws InputError naming the offending field.
  void validate() const;
};

Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const Json& doc);

struct RunResult {
  std::string output;
  bool all_pass = true;
  std::vector<VerificationReport> reports;
};

// Executes any command; input errors propagate as InputError.
RunResult run(const RunConfig& config);
// Theorem grid over bodies x densities x dims x codims, followed by summary
// lines. Instances whose preconditions fail are listed as skipped.
RunResult run_sweep(const RunConfig& config);

}  // namespace slicing
