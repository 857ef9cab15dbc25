#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "qait/rng.hpp"
#include "qait/toy_machine.hpp"

using namespace qait;

namespace {

Program ops(std::initializer_list<int> codes) {
  std::vector<Opcode> v;
  for (int c : codes) v.push_back(static_cast<Opcode>(c));
  return Program::from_opcodes(v);
}

// Independent interpreter over opcode digits, used as the search oracle.
std::optional<std::string> interpret(const std::vector<int>& body, const std::string& aux) {
  std::string out;
  std::size_t head = 0;
  for (int op : body) {
    switch (op) {
      case 0: out += '0'; break;
      case 1: out += '1'; break;
      case 2: out = out + out; break;
      case 3:
        if (head >= aux.size()) return std::nullopt;
        out += aux[head++];
        break;
      case 4: out += aux.substr(head); head = aux.size(); break;
      case 5:
        if (out.empty()) return std::nullopt;
        out.pop_back();
        break;
      case 6:
        if (out.empty()) return std::nullopt;
        out += out.back();
        break;
      default: return std::nullopt;
    }
    if (out.size() > 64) return std::nullopt;
  }
  return out;
}

// Shortest program length in bits among bodies of at most max_body opcodes.
std::map<std::string, int> brute_force_k(int max_opcodes, const std::string& aux) {
  std::map<std::string, int> best;
  for (int len = 0; len < max_opcodes; ++len) {
    std::vector<int> body(static_cast<std::size_t>(len), 0);
    while (true) {
      if (auto out = interpret(body, aux)) {
        const int bits = 3 * (len + 1);
        auto it = best.find(*out);
        if (it == best.end() || it->second > bits) best[*out] = bits;
      }
      std::size_t i = 0;
      while (i < body.size() && ++body[i] == 7) body[i++] = 0;
      if (i == body.size()) break;
    }
  }
  return best;
}

MachineBudget budget(int l) { return MachineBudget{l, 64}; }

}  // namespace

TEST_CASE("run: immediate halt outputs the empty string") {
  const Outcome o = run(Program{"111"}, "", budget(4));
  CHECK(o.halted());
  CHECK(o.output == "");
}

TEST_CASE("run: emit 0, emit 1, halt") {
  const Outcome o = run(Program{"000001111"}, "", budget(4));
  CHECK(o.halted());
  CHECK(o.output == "01");
}

TEST_CASE("run: emit 0 then duplicate twice") {
  const Outcome o = run(Program{"000010010111"}, "", budget(4));
  CHECK(o.halted());
  CHECK(o.output == "0000");
}

TEST_CASE("run: opcode semantics and failure modes") {
  CHECK(run(ops({3, 3, 7}), "10", budget(4)).output == "10");
  CHECK(run(ops({3, 4, 7}), "1011", budget(4)).output == "1011");
  CHECK(run(ops({3, 7}), "", budget(4)).kind == Outcome::Kind::Exhausted);
  CHECK(run(ops({5, 7}), "", budget(4)).kind == Outcome::Kind::Invalid);
  CHECK(run(ops({6, 7}), "", budget(4)).kind == Outcome::Kind::Invalid);
  CHECK(run(ops({1, 6, 5, 7}), "", budget(4)).output == "1");
  // HALT must be last and unique
  CHECK(run(ops({7, 7}), "", budget(4)).kind == Outcome::Kind::Invalid);
  CHECK(run(ops({0, 1}), "", budget(4)).kind == Outcome::Kind::Invalid);
  CHECK(run(Program{"0001"}, "", budget(4)).kind == Outcome::Kind::Invalid);
  // opcode budget and output cap
  CHECK(run(ops({0, 0, 0, 0, 7}), "", budget(4)).kind == Outcome::Kind::Exhausted);
  CHECK(run(ops({1, 2, 2, 7}), "", MachineBudget{4, 3}).kind == Outcome::Kind::Exhausted);
  CHECK_THROWS_AS(run(Program{"111"}, "", MachineBudget{0, 64}), std::invalid_argument);
  CHECK_THROWS_AS(run(Program{"111"}, "", MachineBudget{4, 65}), std::invalid_argument);
}

TEST_CASE("enumerate: L=1 holds only the empty output") {
  const EnumerationTable t = enumerate("", budget(1));
  REQUIRE(t.size() == 1);
  CHECK(t.entries()[0].output.to_string() == "");
  CHECK(t.entries()[0].k_bits == 3);
  CHECK(t.entries()[0].m == Dyadic::pow2_neg(3));
}

TEST_CASE("K examples agree with an independent brute-force search") {
  const auto oracle = brute_force_k(4, "");
  CHECK(oracle.at("") == 3);
  CHECK(oracle.at("01") == 9);
  CHECK(oracle.at("0000") == 12);

  const EnumerationTable t = enumerate("", budget(4));
  CHECK(k_budgeted("", t) == 3);
  CHECK(k_budgeted("01", t) == 9);
  CHECK(k_budgeted("0000", t) == 12);
  for (const auto& [x, k] : oracle) CHECK(k_budgeted(x, t) == k);
  CHECK(t.size() == oracle.size());
}

TEST_CASE("enumeration kernel matches the serial reference") {
  for (const Bits aux : {"", "1", "10", "110"}) {
    for (int l = 1; l <= 6; ++l) {
      CAPTURE(aux);
      CAPTURE(l);
      CHECK(enumerate(aux, budget(l)) == reference::enumerate(aux, budget(l)));
    }
  }
  CHECK(enumerate("", MachineBudget{6, 5}) == reference::enumerate("", MachineBudget{6, 5}));
}

TEST_CASE("Kraft sum stays at most one, exactly") {
  for (const Bits aux : {"", "1", "100"}) {
    for (int l = 1; l <= 8; ++l) {
      const Dyadic s = enumerate(aux, budget(l)).kraft_sum();
      CHECK(s <= Dyadic(1, 0));
    }
  }
}

TEST_CASE("table entries: m >= 2^-k and k is a whole number of opcodes") {
  const EnumerationTable t = enumerate("10", budget(6));
  for (const auto& e : t.entries()) {
    CHECK(e.k_bits % kOpcodeBits == 0);
    CHECK(e.m >= Dyadic::pow2_neg(e.k_bits));
  }
}

TEST_CASE("budget monotonicity of k and m") {
  std::vector<EnumerationTable> tables;
  for (int l = 1; l <= 7; ++l) tables.push_back(enumerate("11", budget(l)));
  for (std::size_t i = 0; i + 1 < tables.size(); ++i) {
    for (const auto& e : tables[i].entries()) {
      const Bits x = e.output.to_string();
      const TableEntry* next = tables[i + 1].find(x);
      REQUIRE(next != nullptr);
      CHECK(next->k_bits <= e.k_bits);
      CHECK(next->m >= e.m);
    }
  }
}

TEST_CASE("literal bound and compression witness") {
  const EnumerationTable t = enumerate("", budget(8));
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const int len = static_cast<int>(rng.below(8));
    const Bits x = from_uint(rng.next_u64() & ((1ULL << len) - 1), len);
    CHECK(k_budgeted(x, t) <= 3 * (len + 1));
  }
  for (int j = 0; j <= 6; ++j) {
    const Bits zeros(std::size_t{1} << j, '0');
    CHECK(k_budgeted(zeros, t) <= 3 * (j + 2));
    if (j >= 3) CHECK(3 * (j + 2) < 3 * (static_cast<int>(zeros.size()) + 1));
  }
}

TEST_CASE("k_budgeted reports the string length when the budget is too small") {
  const EnumerationTable t = enumerate("", budget(3));
  try {
    (void)k_budgeted("0101", t);
    FAIL("expected BudgetTooSmall");
  } catch (const BudgetTooSmall& e) {
    CHECK(e.length() == 4);
  }
  CHECK(k_upper("0101", t) == 15);
  CHECK(m_budgeted("0101", t).is_zero());
}

TEST_CASE("pair code round-trips and is self-delimiting") {
  CHECK(pair_encode("", "") == "1");
  CHECK(pair_encode("01", "1") == "011100");
  CHECK(pair_encode("1", "01") == "10110");
  CHECK(pair_encode("1", "0") == "101");
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const int lx = static_cast<int>(rng.below(7));
    const int ly = static_cast<int>(rng.below(7));
    const Bits x = from_uint(rng.next_u64() & ((1ULL << lx) - 1), lx);
    const Bits y = from_uint(rng.next_u64() & ((1ULL << ly) - 1), ly);
    const auto d = pair_decode(pair_encode(x, y));
    REQUIRE(d.has_value());
    CHECK(d->first == x);
    CHECK(d->second == y);
  }
  CHECK_FALSE(pair_decode("").has_value());
  CHECK_FALSE(pair_decode("000").has_value());
}

TEST_CASE("info_classical of empty strings") {
  const EnumerationTable t = enumerate("", budget(4));
  // enc("", "") = "1", produced by "001 111"
  CHECK(info_classical("", "", t) == doctest::Approx(3 + 3 - 6));
}

TEST_CASE("info_classical: self-information of literal-dominated strings") {
  const EnumerationTable t = enumerate("", budget(9));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const int len = 1 + static_cast<int>(rng.below(3));
    const Bits x = from_uint(rng.next_u64() & ((1ULL << len) - 1), len);
    // joint literal program: x, Dup, Emit1, Halt
    CHECK(info_classical(x, x, t) >= 2 * k_budgeted(x, t) - 3 * (len + 3));
    // symmetry up to code asymmetry: both orders reported
    Bits y = x;
    y[0] = y[0] == '0' ? '1' : '0';
    CHECK(std::isfinite(info_classical(x, y, t)));
    CHECK(std::isfinite(info_classical(y, x, t)));
  }
}
