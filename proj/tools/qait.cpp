// qait: run one experiment and write its report.
//
//   qait <experiment> [--seed S] [--trials N] [--budget L] [--qubits n] [--c c]
//        [--tau t] [--out FILE] [--format json|csv] [--config FILE]
//        [--cache-dir DIR] [--threads T]
//
// Exit status: 0 when every assertion passes, 1 when one fails, 2 on a usage
// error, 3 when the run itself fails (for example a budget too small).

#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qait/experiments.hpp"
#include "qait/table_store.hpp"
#include "qait/toy_machine.hpp"

namespace {

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> budget;
  std::optional<int> qubits;
  std::optional<int> c;
  std::optional<double> tau;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> config_file;
  std::optional<std::string> cache_dir;
  std::optional<int> threads;
};

void add_global_flags(CLI::App& app, Flags& f) {
  app.add_option("--seed", f.seed, "base seed for per-trial streams");
  app.add_option("--trials", f.trials, "trial count (horizon T for nosync)");
  app.add_option("--budget,-L", f.budget, "max opcodes L");
  app.add_option("--qubits,-n", f.qubits, "qubits n (point length k for nosync, max |x| for mueller)");
  app.add_option("--c", f.c, "subspace parameter");
  app.add_option("--tau", f.tau, "decoherence time scale");
  app.add_option("--out,-o", f.out, "report file (default: standard output)");
  app.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", f.config_file, "key=value file; flags override it");
  app.add_option("--cache-dir", f.cache_dir, "enumeration cache directory (env QAIT_CACHE_DIR)");
  app.add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
}

qait::ExperimentConfig resolve(const std::string& experiment, const Flags& f) {
  qait::ExperimentConfig config = qait::default_config(experiment);
  if (f.config_file) {
    std::ifstream in(*f.config_file);
    if (!in) throw std::invalid_argument("cannot read config file " + *f.config_file);
    qait::apply_config_file(config, in);
    if (config.experiment != experiment) {
      throw std::invalid_argument("config file names experiment '" + config.experiment + "', command is '" +
                                  experiment + "'");
    }
  }
  if (f.seed) config.seed = *f.seed;
  if (f.trials) config.trials = *f.trials;
  if (f.budget) config.budget = *f.budget;
  if (f.qubits) config.n = *f.qubits;
  if (f.c) config.c = *f.c;
  if (f.tau) config.tau = *f.tau;
  if (f.out) config.out_path = *f.out;
  if (f.format) config.format = *f.format;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded experiments on a budgeted toy machine and small quantum systems"};
  app.require_subcommand(0, 1);
  Flags flags;
  add_global_flags(app, flags);
  bool list = false;
  app.add_flag("--list", list, "print the experiment names and exit");

  std::string chosen;
  for (const auto& info : qait::experiment_catalog()) {
    auto* sub = app.add_subcommand(std::string(info.name), std::string(info.summary));
    sub->fallthrough();
    sub->callback([&chosen, name = std::string(info.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& info : qait::experiment_catalog()) std::cout << info.name << "\t" << info.summary << "\n";
    return 0;
  }
  if (chosen.empty()) {
    std::cerr << app.help();
    return 2;
  }

  qait::ExperimentConfig config;
  try {
    config = resolve(chosen, flags);
    qait::validate(config);
  } catch (const std::exception& e) {
    std::cerr << "qait: " << e.what() << "\n";
    return 2;
  }

  if (flags.threads) omp_set_num_threads(*flags.threads);
  std::optional<std::filesystem::path> cache_dir = qait::cache_dir_from_env();
  if (flags.cache_dir) cache_dir = *flags.cache_dir;

  try {
    qait::ExperimentContext context(cache_dir);
    const qait::ExperimentReport report = qait::run(config, context);
    const std::string text = qait::emit(report);
    if (config.out_path.empty()) std::cout << text;
    for (const auto& a : report.assertions) {
      std::cerr << (a.passed ? "PASS " : "FAIL ") << a.name << ": value " << a.value << ", bound " << a.bound
                << " (" << a.invariant << ")\n";
    }
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "qait: " << e.what() << "\n";
    return 3;
  }
}
