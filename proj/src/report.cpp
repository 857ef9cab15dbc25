#include "qait/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace qait {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  const std::string v(value);
  std::size_t pos = 0;
  T out{};
  try {
    if constexpr (std::is_same_v<T, int>) {
      out = std::stoi(v, &pos);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
      out = std::stoull(v, &pos, 0);
    } else {
      out = std::stod(v, &pos);
    }
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != v.size() || v.empty()) {
    throw std::invalid_argument("bad value for " + std::string(key) + ": '" + v + "'");
  }
  return out;
}

}  // namespace

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  if (key == "experiment") {
    config.experiment = std::string(value);
  } else if (key == "qubits" || key == "n") {
    config.n = parse_number<int>(key, value);
  } else if (key == "c") {
    config.c = parse_number<int>(key, value);
  } else if (key == "budget" || key == "L") {
    config.budget = parse_number<int>(key, value);
  } else if (key == "trials") {
    config.trials = parse_number<int>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "tau") {
    config.tau = parse_number<double>(key, value);
  } else if (key == "out") {
    config.out_path = std::string(value);
  } else if (key == "format") {
    if (value != "json" && value != "csv") throw std::invalid_argument("format must be json or csv");
    config.format = std::string(value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_file(ExperimentConfig& config, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(config, trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
}

bool ExperimentReport::passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

namespace {
template <typename T>
const T& find_named(const std::vector<T>& items, std::string_view name, const char* what) {
  for (const auto& i : items)
    if (i.name == name) return i;
  throw std::out_of_range(std::string(what) + " '" + std::string(name) + "' not in report");
}
}  // namespace

double ExperimentReport::summary_value(std::string_view name) const {
  return find_named(summary, name, "summary").value;
}
double ExperimentReport::constant_value(std::string_view name) const {
  return find_named(constants, name, "constant").value;
}
const Assertion& ExperimentReport::assertion(std::string_view name) const {
  return find_named(assertions, name, "assertion");
}

namespace {

// JSON has no infinities; non-finite values travel as strings.
Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const Json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("report: bad number '" + s + "'");
  }
  return j.get<double>();
}

Json named_object(const std::vector<Named>& items) {
  Json o = Json::object();
  for (const auto& i : items) o[i.name] = number(i.value);
  return o;
}

std::vector<Named> named_from(const Json& o) {
  std::vector<Named> out;
  for (const auto& [k, v] : o.items()) out.push_back({k, number_from(v)});
  return out;
}

Json config_json(const ExperimentConfig& c) {
  return Json{{"experiment", c.experiment}, {"qubits", c.n},   {"c", c.c},
              {"budget", c.budget},         {"trials", c.trials}, {"seed", c.seed},
              {"tau", number(c.tau)},       {"out", c.out_path},  {"format", c.format}};
}

}  // namespace

std::string to_json(const ExperimentReport& r) {
  Json j;
  j["config"] = config_json(r.config);
  j["machine_id"] = r.machine_id;
  j["columns"] = r.columns;
  Json trials = Json::array();
  for (const auto& row : r.rows) {
    Json t = Json::object();
    for (std::size_t i = 0; i < r.columns.size(); ++i) t[r.columns[i]] = number(row.at(i));
    trials.push_back(std::move(t));
  }
  j["trials"] = std::move(trials);
  j["summary"] = named_object(r.summary);
  j["constants"] = named_object(r.constants);
  Json asserts = Json::array();
  for (const auto& a : r.assertions) {
    asserts.push_back(Json{{"name", a.name},
                           {"invariant", a.invariant},
                           {"constant", a.constant},
                           {"value", number(a.value)},
                           {"bound", number(a.bound)},
                           {"passed", a.passed}});
  }
  j["assertions"] = std::move(asserts);
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(std::string_view text) {
  const Json j = Json::parse(text);
  ExperimentReport r;
  const Json& c = j.at("config");
  r.config.experiment = c.at("experiment").get<std::string>();
  r.config.n = c.at("qubits").get<int>();
  r.config.c = c.at("c").get<int>();
  r.config.budget = c.at("budget").get<int>();
  r.config.trials = c.at("trials").get<int>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.tau = number_from(c.at("tau"));
  r.config.out_path = c.at("out").get<std::string>();
  r.config.format = c.at("format").get<std::string>();
  r.machine_id = j.at("machine_id").get<std::string>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& t : j.at("trials")) {
    std::vector<double> row;
    for (const auto& col : r.columns) row.push_back(number_from(t.at(col)));
    r.rows.push_back(std::move(row));
  }
  r.summary = named_from(j.at("summary"));
  r.constants = named_from(j.at("constants"));
  for (const auto& a : j.at("assertions")) {
    r.assertions.push_back({a.at("name").get<std::string>(), a.at("invariant").get<std::string>(),
                            a.at("constant").get<std::string>(), number_from(a.at("value")),
                            number_from(a.at("bound")), a.at("passed").get<bool>()});
  }
  return r;
}

namespace {
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Free text goes into CSV footers; keep commas and newlines out of fields.
std::string field(std::string_view s) {
  std::string out(s);
  for (char& ch : out)
    if (ch == ',' || ch == '\n') ch = ';';
  return out;
}
}  // namespace

std::string to_csv(const ExperimentReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + fmt(row[i]);
    out += '\n';
  }
  const auto& c = r.config;
  out += "# config,experiment=" + c.experiment + ",qubits=" + std::to_string(c.n) + ",c=" + std::to_string(c.c) +
         ",budget=" + std::to_string(c.budget) + ",trials=" + std::to_string(c.trials) +
         ",seed=" + std::to_string(c.seed) + ",tau=" + fmt(c.tau) + ",out=" + field(c.out_path) +
         ",format=" + c.format + "\n";
  out += "# machine_id," + r.machine_id + "\n";
  for (const auto& s : r.summary) out += "# summary," + s.name + "," + fmt(s.value) + "\n";
  for (const auto& k : r.constants) out += "# constant," + k.name + "," + fmt(k.value) + "\n";
  for (const auto& a : r.assertions) {
    out += "# assertion," + a.name + "," + (a.passed ? "PASS" : "FAIL") + "," + fmt(a.value) + "," + fmt(a.bound) +
           "," + field(a.constant) + "," + field(a.invariant) + "\n";
  }
  return out;
}

std::string emit(const ExperimentReport& report) {
  std::string text = report.config.format == "csv" ? to_csv(report) : to_json(report);
  if (report.config.out_path.empty()) return text;
  std::ofstream out(report.config.out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + report.config.out_path + ": " + std::strerror(errno));
  }
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + report.config.out_path + ": " + std::strerror(errno));
  return text;
}

}  // namespace qait
