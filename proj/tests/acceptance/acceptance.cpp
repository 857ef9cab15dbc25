// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qait/experiments.hpp"
#include "qait/nosync.hpp"
#include "qait/rng.hpp"
#include "qait/stats.hpp"

using namespace qait;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    notes.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

ExperimentContext& context() {
  static ExperimentContext ctx(cache_dir_from_env());
  return ctx;
}

ExperimentReport run_experiment(const std::string& name, const std::function<void(ExperimentConfig&)>& edit = {}) {
  ExperimentConfig c = default_config(name);
  if (edit) edit(c);
  return run(c, context());
}

void require_assertion(Verdict& o, const ExperimentReport& r, const std::string& name) {
  const Assertion& a = r.assertion(name);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s/%s: value %.6g, bound %.6g", r.config.experiment.c_str(), name.c_str(), a.value,
                a.bound);
  o.require(a.passed, buf);
}

void require_all(Verdict& o, const ExperimentReport& r) {
  for (const auto& a : r.assertions) require_assertion(o, r, a.name);
}

// -- independent oracles ------------------------------------------------------

// Opcode interpreter written separately from the library machine.
std::optional<std::string> interpret(const std::vector<int>& body) {
  std::string out;
  for (int op : body) {
    switch (op) {
      case 0: out += '0'; break;
      case 1: out += '1'; break;
      case 2: out += out; break;
      case 5:
        if (out.empty()) return std::nullopt;
        out.pop_back();
        break;
      case 6:
        if (out.empty()) return std::nullopt;
        out += out.back();
        break;
      default: return std::nullopt;  // auxiliary opcodes exhaust on the empty tape
    }
  }
  return out;
}

std::map<std::string, int> brute_force_k(int max_opcodes) {
  std::map<std::string, int> best;
  for (int len = 0; len < max_opcodes; ++len) {
    std::vector<int> body(static_cast<std::size_t>(len), 0);
    while (true) {
      if (auto out = interpret(body)) {
        const int bits = 3 * (len + 1);
        if (!best.count(*out) || best[*out] > bits) best[*out] = bits;
      }
      std::size_t i = 0;
      while (i < body.size() && ++body[i] == 7) body[i++] = 0;
      if (i == body.size()) break;
    }
  }
  return best;
}

// -- criteria -----------------------------------------------------------------

Verdict machine_soundness() {
  Verdict o;
  const auto t0 = Clock::now();
  const EnumerationTable t7 = enumerate("", MachineBudget{7, 64});
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, fmt("enumeration at L=7 took %.2f s (limit 60 s), %.0f outputs", secs,
                             static_cast<double>(t7.size())));
  bool kraft = true;
  for (const Bits aux : {"", "1", "10", "11", "100"}) {
    for (int l = 1; l <= 8; ++l) kraft = kraft && enumerate(aux, MachineBudget{l, 64}).kraft_sum() <= Dyadic(1, 0);
  }
  o.require(kraft, "exact Kraft sum <= 1 for 5 tapes and L = 1..8; at L=7: " + t7.kraft_sum().to_string());

  std::vector<EnumerationTable> tables;
  for (int l = 1; l <= 9; ++l) tables.push_back(enumerate("", MachineBudget{l, 64}));
  Rng rng(2024);
  int violations = 0;
  const int pairs = 10000;
  for (int i = 0; i < pairs; ++i) {
    const int len = static_cast<int>(rng.below(9));
    const Bits x = from_uint(len == 0 ? 0 : rng.next_u64() >> (64 - len), len);
    const auto l = static_cast<std::size_t>(rng.below(8));
    const TableEntry* a = tables[l].find(x);
    const TableEntry* b = tables[l + 1].find(x);
    if (a == nullptr) continue;
    if (b == nullptr || b->k_bits > a->k_bits || b->m < a->m) ++violations;
  }
  o.require(violations == 0, fmt("k/m budget monotonicity over %.0f sampled (x, L) pairs: %.0f violations", pairs,
                                 violations));
  return o;
}

Verdict exact_k() {
  Verdict o;
  const auto oracle = brute_force_k(4);
  const EnumerationTable t = enumerate("", MachineBudget{4, 64});
  for (const auto& [x, k] : std::vector<std::pair<Bits, int>>{{"", 3}, {"01", 9}, {"0000", 12}}) {
    const int got = k_budgeted(x, t);
    o.require(got == k && oracle.at(x) == k, "K(\"" + x + "\") = " + std::to_string(got) + " bits, brute force " +
                                                 std::to_string(oracle.at(x)) + ", expected " + std::to_string(k));
  }
  return o;
}

Verdict haar_sanity() {
  Verdict o;
  for (int n = 1; n <= 3; ++n) {
    HaarSampler s(derive_seed(31, static_cast<std::uint64_t>(n)), n);
    std::vector<double> v;
    for (int i = 0; i < 10000; ++i) v.push_back(std::norm(haar_sample(s).amplitudes()(0)));
    const auto iv = stats::mean_interval(v);
    const double target = std::ldexp(1.0, -n);
    o.require(std::abs(iv.estimate - target) <= 3 * iv.sd,
              "n=" + std::to_string(n) + fmt(": mean %.5f vs 2^-n, 3 sigma %.5f", iv.estimate, 3 * iv.sd));
  }
  return o;
}

Verdict no_cloning() {
  Verdict o;
  const ExperimentReport r = run_experiment("cloning", [](ExperimentConfig& c) {
    c.n = 1;
    c.trials = 1000;
  });
  for (const char* m : {"m2", "m3"}) {
    require_assertion(o, r, std::string("no-cloning-moment-") + m);
    require_assertion(o, r, std::string("no-cloning-trace-bound-") + m);
  }
  o.require(r.constant_value("sym_dim_m2") == 3 && r.constant_value("sym_dim_m3") == 4,
            fmt("sym_dim %.0f and %.0f", r.constant_value("sym_dim_m2"), r.constant_value("sym_dim_m3")));
  return o;
}

Verdict scarcity() {
  Verdict o;
  for (int n = 1; n <= 2; ++n) {
    const auto haar = run_experiment("selfinfo-haar", [n](ExperimentConfig& c) {
      c.n = n;
      c.trials = 1000;
    });
    require_assertion(o, haar, "haar-moment-oracle");
    const auto sieve = run_experiment("sieve-haar", [n](ExperimentConfig& c) {
      c.n = n;
      c.trials = 1000;
    });
    require_assertion(o, sieve, "haar-moment-oracle");
    const auto basis = run_experiment("selfinfo-basis", [n](ExperimentConfig& c) { c.n = n; });
    require_assertion(o, basis, "basis-exceeds-haar");
    o.note(std::string("basis-absolute, not scored here: ") + (basis.assertion("basis-absolute").passed ? "holds" : "fails") +
           fmt(", basis value %.4f", basis.summary_value("basis_lme_i_d")));
    o.note("n=" + std::to_string(n) + fmt(": c_L = %.4f, basis gap %.4f", basis.constant_value("c_L"),
                                          basis.summary_value("gap")) +
           fmt(", largest gap any PSD test allows %.4f", basis.summary_value("gap_ceiling")));
  }
  return o;
}

Verdict conservation() {
  Verdict o;
  require_all(o, run_experiment("conservation-channel", [](ExperimentConfig& c) { c.trials = 100; }));
  require_all(o, run_experiment("conservation-processing", [](ExperimentConfig& c) { c.trials = 100; }));
  require_all(o, run_experiment("channel-no-uptake", [](ExperimentConfig& c) { c.trials = 1000; }));
  return o;
}

Verdict povm_and_cloning() {
  Verdict o;
  require_all(o, run_experiment("povm-signal", [](ExperimentConfig& c) { c.trials = 100; }));
  const auto r = run_experiment("cloning", [](ExperimentConfig& c) { c.trials = 100; });
  for (const auto& a : r.assertions)
    if (a.name.find("no-cloning") == std::string::npos) require_assertion(o, r, a.name);
  return o;
}

Verdict sieve_dynamics() {
  Verdict o;
  const auto r = run_experiment("sieve", [](ExperimentConfig& c) {
    c.n = 1;
    c.tau = 1.0;
  });
  o.require(r.rows.size() == 64, fmt("%.0f grid points", static_cast<double>(r.rows.size())));
  require_all(o, r);
  o.note(fmt("pointer average slope %.3f bits per qubit, R^2 %.4f", r.summary_value("pointer_slope"),
             r.summary_value("pointer_r2")));
  return o;
}

Verdict uptake() {
  Verdict o;
  const auto r = run_experiment("pvm-uptake");
  require_all(o, r);
  for (int n = 2; n <= 4; ++n) {
    const std::string s = std::to_string(n);
    o.note("n=" + s + fmt(": U(c=0) %.3f, U(c=1) %.3f", r.summary_value("U_lambdaF_n" + s + "_c0"),
                          r.summary_value("U_lambdaF_n" + s + "_c1")) +
           fmt(", Haar %.3f", r.summary_value("U_lambda_n" + s)));
  }
  return o;
}

Verdict mueller() {
  Verdict o;
  const auto r = run_experiment("mueller");
  require_all(o, r);
  o.note(fmt("c_M = %.4f", r.constant_value("c_M")));
  return o;
}

// Brute-force rerun of the no-sync trajectory: serial enumeration, a local
// odometer and a local literal fallback.
Verdict no_sync() {
  Verdict o;
  const auto t0 = Clock::now();
  const auto r = run_experiment("nosync");
  const double secs = seconds_since(t0);
  require_all(o, r);

  const int k = r.config.n;
  const EnumerationTable bf = reference::enumerate(binary(static_cast<std::uint64_t>(k)), MachineBudget{r.config.budget, 64});
  auto g = [&](std::uint64_t v) {
    const Bits p = from_uint(v, k);
    int bits = 3 * (k + 1);
    if (const TableEntry* e = bf.find(p)) bits = std::min(bits, e->k_bits);
    return static_cast<double>(bits - k);
  };
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  std::uint64_t a = 0;
  auto b = static_cast<std::uint64_t>(r.summary_value("random_start"));
  double sup = 0;
  bool same = true;
  for (std::size_t t = 0; t < r.rows.size(); ++t) {
    sup = std::max(sup, std::abs(g(a) - g(b)));
    same = same && r.rows[t][1] == g(a) && r.rows[t][2] == g(b) && r.rows[t][3] == sup;
    a = (a + 1) & mask;
    b = (b + 1) & mask;
  }
  o.require(same, fmt("brute-force trajectory agrees at every step; final sup gap %.0f bits over T=%.0f", sup,
                      static_cast<double>(r.rows.size() - 1)));
  o.require(secs < 300.0, fmt("harness runtime %.2f s (limit 300 s)", secs));
  return o;
}

Verdict determinism() {
  Verdict o;
  const int saved = omp_get_max_threads();
  for (const auto& e : experiment_catalog()) {
    ExperimentConfig c = default_config(e.name);
    omp_set_num_threads(1);
    const std::string one = to_json(run(c, context()));
    const std::string again = to_json(run(c, context()));
    omp_set_num_threads(4);
    const std::string four = to_json(run(c, context()));
    ExperimentContext fresh(std::nullopt);
    const std::string cold = to_json(run(c, fresh));
    o.require(one == again && one == four && one == cold,
              std::string(e.name) + ": identical bytes on rerun, with 4 threads and without cache");
  }
  omp_set_num_threads(saved);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
      {"machine soundness", machine_soundness},
      {"exact-K oracle", exact_k},
      {"Haar sanity", haar_sanity},
      {"no-cloning moment identity", no_cloning},
      {"self-information scarcity", scarcity},
      {"conservation", conservation},
      {"POVM signal and cloning bounds", povm_and_cloning},
      {"sieve dynamics", sieve_dynamics},
      {"semi-classical uptake", uptake},
      {"Muller property", mueller},
      {"no-sync harness", no_sync},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.notes.push_back(std::string("MISS threw: ") + e.what());
    }
    std::printf("criterion %2zu %s: %s\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
