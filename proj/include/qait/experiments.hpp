#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qait/complexity.hpp"
#include "qait/information.hpp"
#include "qait/report.hpp"
#include "qait/table_store.hpp"

namespace qait {

struct ExperimentInfo {
  std::string_view name;
  std::string_view summary;
};

std::span<const ExperimentInfo> experiment_catalog();
bool is_experiment(std::string_view name);

// Defaults for one experiment; flags and config files override them.
ExperimentConfig default_config(std::string_view experiment);
// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& config);

// Enumeration tables and the derived mu / C matrices, shared across runs.
class ExperimentContext {
 public:
  explicit ExperimentContext(std::optional<std::filesystem::path> cache_dir = std::nullopt);

  TableStore& tables(int budget);
  const EnumerationTable& table(int budget, std::string_view aux) { return tables(budget).get(aux); }
  const EnumerationTable& table_for_qubits(int budget, int n) { return tables(budget).for_qubits(n); }
  const SemiDensityMatrix& mu(int budget, int n);
  const ProductTestMatrix& cd(int budget, int n);

 private:
  std::optional<std::filesystem::path> cache_dir_;
  std::map<int, std::unique_ptr<TableStore>> stores_;
  std::map<std::pair<int, int>, std::unique_ptr<SemiDensityMatrix>> mus_;
  std::map<std::pair<int, int>, std::unique_ptr<ProductTestMatrix>> cds_;
};

// Runs one experiment. The report depends only on the config and the
// machine, not on the worker-thread count.
ExperimentReport run(const ExperimentConfig& config, ExperimentContext& context);
ExperimentReport run(const ExperimentConfig& config);

}  // namespace qait
