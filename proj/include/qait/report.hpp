#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qait {

struct ExperimentConfig {
  std::string experiment;
  int n = 1;        // qubits; point length k for nosync; max |x| for mueller
  int c = 0;        // subspace parameter
  int budget = 9;   // max opcodes L
  int trials = 1000;
  std::uint64_t seed = 1;
  double tau = 1.0;
  std::string out_path;  // empty: standard output
  std::string format = "json";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Sets one field from its key=value form. Keys: experiment, qubits, c,
// budget, trials, seed, tau, out, format. Throws std::invalid_argument.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Flat key=value file; '#' starts a comment, blank lines are skipped.
void apply_config_file(ExperimentConfig& config, std::istream& in);

struct Named {
  std::string name;
  double value;

  friend bool operator==(const Named&, const Named&) = default;
};

struct Assertion {
  std::string name;
  std::string invariant;  // the property being checked
  std::string constant;   // calibration constant used, "none" if exact
  double value;
  double bound;
  bool passed;

  friend bool operator==(const Assertion&, const Assertion&) = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string machine_id;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Named> summary;
  std::vector<Named> constants;
  std::vector<Assertion> assertions;

  bool passed() const;
  double summary_value(std::string_view name) const;
  double constant_value(std::string_view name) const;
  const Assertion& assertion(std::string_view name) const;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

std::string to_json(const ExperimentReport& report);
ExperimentReport report_from_json(std::string_view text);

// One row per trial under a header line, then footer lines starting with '#'.
std::string to_csv(const ExperimentReport& report);

// Renders in config.format and writes to config.out_path, or returns the text
// when out_path is empty. Throws std::runtime_error on I/O failure.
std::string emit(const ExperimentReport& report);

}  // namespace qait
