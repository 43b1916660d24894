#pragma once

// Run configuration: a YAML document with model, solver, check and output
// sections. Unknown keys are rejected.

#include <cstdint>
#include <string>

#include "fy/lattice.hpp"

namespace fy::config {

struct SolverSection {
  double target = 0.0;
  double tol = 1e-10;
  int max_iter = 500;
  std::size_t dense_limit = 4096;
};

struct CheckSection {
  std::size_t seeds = 10;
  int n = 3;
  int dim = 4;
  bool hermitian = false;
};

enum class OutputFormat { Table, Jsonl };

struct OutputSection {
  OutputFormat format = OutputFormat::Table;
  std::string path;  // empty: standard output
};

struct RunConfig {
  std::string preset;  // empty when the model was spelled out in full
  lattice::LatticeModel model;
  SolverSection solver;
  CheckSection check;
  OutputSection output;
};

OutputFormat parse_format(const std::string& s);
const char* to_string(OutputFormat f) noexcept;

/// Parses YAML text. `source` names the origin in error messages. Throws
/// Error(Config) on syntax errors, unknown keys, wrong types or non-finite
/// physical parameters.
RunConfig parse_config(const std::string& text, const std::string& source = "<string>");

/// Throws Error(Config) naming the path when the file cannot be read.
RunConfig load_config(const std::string& path);

/// Deterministic YAML rendering of the fully resolved configuration.
std::string echo(const RunConfig& cfg);

}  // namespace fy::config
