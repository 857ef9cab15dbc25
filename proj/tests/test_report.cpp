#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qait/report.hpp"

using namespace qait;

namespace {

ExperimentReport sample_report() {
  ExperimentReport r;
  r.config.experiment = "selfinfo-haar";
  r.config.n = 2;
  r.config.seed = 18446744073709551615ULL;
  r.config.tau = 0.1;
  r.machine_id = "op8-v1";
  r.columns = {"trial", "i_d"};
  for (int i = 0; i < 5; ++i) r.rows.push_back({static_cast<double>(i), 0.1 * i - 1.0 / 3.0});
  r.rows.push_back({5, -INFINITY});
  r.summary = {{"lme_i_d", 1.2345678901234567}, {"inf_value", INFINITY}};
  r.constants = {{"c_L", 0.21}};
  r.assertions = {{"a", "an invariant", "c_L", 0.5, 1.0, true}, {"b", "another", "none", 2.0, 1.0, false}};
  return r;
}

}  // namespace

TEST_CASE("config settings and files") {
  ExperimentConfig c;
  apply_setting(c, "experiment", "sieve");
  apply_setting(c, "n", "3");
  apply_setting(c, "L", "8");
  apply_setting(c, "seed", "99");
  apply_setting(c, "tau", "0.5");
  CHECK(c.experiment == "sieve");
  CHECK(c.n == 3);
  CHECK(c.budget == 8);
  CHECK(c.seed == 99);
  CHECK(c.tau == 0.5);
  CHECK_THROWS(apply_setting(c, "bogus", "1"));
  CHECK_THROWS(apply_setting(c, "trials", "12x"));
  CHECK_THROWS(apply_setting(c, "format", "xml"));

  std::istringstream file("# comment\n\nqubits = 2\ntrials=200\nformat=csv\n");
  apply_config_file(c, file);
  CHECK(c.n == 2);
  CHECK(c.trials == 200);
  CHECK(c.format == "csv");
  std::istringstream bad("qubits\n");
  CHECK_THROWS(apply_config_file(c, bad));
}

TEST_CASE("JSON round-trips to an equal report") {
  const ExperimentReport r = sample_report();
  const std::string text = to_json(r);
  const ExperimentReport back = report_from_json(text);
  CHECK(back == r);
  CHECK(to_json(back) == text);
}

TEST_CASE("JSON schema") {
  const auto j = nlohmann::json::parse(to_json(sample_report()));
  for (const char* key : {"config", "machine_id", "trials", "summary", "constants", "assertions"}) CHECK(j.contains(key));
  CHECK(j["trials"].size() == 6);
  CHECK(j["assertions"][0].contains("invariant"));
  CHECK(j["assertions"][0].contains("constant"));
  CHECK(j["config"]["seed"].get<std::uint64_t>() == 18446744073709551615ULL);
}

TEST_CASE("CSV has one row per trial plus footers") {
  const ExperimentReport r = sample_report();
  const std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string line;
  int header = 0;
  int data = 0;
  int footer = 0;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) {
      ++footer;
    } else if (header == 0) {
      ++header;
      CHECK(line == "trial,i_d");
    } else {
      ++data;
    }
  }
  CHECK(data == static_cast<int>(r.rows.size()));
  CHECK(footer == 2 + static_cast<int>(r.summary.size() + r.constants.size() + r.assertions.size()));
  CHECK(csv.find("# assertion,b,FAIL") != std::string::npos);
}

TEST_CASE("report lookups") {
  const ExperimentReport r = sample_report();
  CHECK_FALSE(r.passed());
  CHECK(r.summary_value("lme_i_d") == 1.2345678901234567);
  CHECK(r.constant_value("c_L") == 0.21);
  CHECK(r.assertion("a").passed);
  CHECK_THROWS(r.summary_value("missing"));
}

TEST_CASE("emit writes files and surfaces I/O failures") {
  ExperimentReport r = sample_report();
  const auto path = std::filesystem::temp_directory_path() / "qait-report-test.json";
  r.config.out_path = path.string();
  CHECK(emit(r).empty() == false);
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str() == to_json(r));
  std::filesystem::remove(path);
  r.config.out_path = "/nonexistent-dir/x.json";
  CHECK_THROWS_AS(emit(r), std::runtime_error);
}
