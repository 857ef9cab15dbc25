#include <cmath>
#include <vector>

#include "doctest.h"
#include "qait/state_codes.hpp"

using namespace qait;

namespace {

bool same_state(const PureState& a, const PureState& b) {
  return std::abs(std::abs(a.amplitudes().dot(b.amplitudes())) - 1.0) < 1e-12;
}

}  // namespace

TEST_CASE("basis codes") {
  const auto s = decode_state("10", 2);
  REQUIRE(s.has_value());
  CHECK(same_state(*s, PureState::basis("10")));
  CHECK_FALSE(decode_state("0", 2).has_value());
  CHECK_FALSE(decode_state("", 1).has_value());
}

TEST_CASE("grid codes") {
  const std::vector<int> plus{4, 0, 4, 0};
  const Bits code = encode_grid(plus);
  CHECK(code.size() == 2 + 2 * 2 * kGridWidth);
  CHECK(code.substr(0, 2) == "10");
  const auto s = decode_state(code, 1);
  REQUIRE(s.has_value());
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s->amplitudes()(0) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(s->amplitudes()(1) - Complex(r, 0)) < 1e-12);

  // negative and imaginary parts, two's complement
  const auto t = decode_state(encode_grid(std::vector<int>{-8, 0, 0, 7}), 1);
  REQUIRE(t.has_value());
  const double norm = std::sqrt(64.0 + 49.0);
  CHECK(std::abs(t->amplitudes()(0) - Complex(-8.0 / norm, 0)) < 1e-12);
  CHECK(std::abs(t->amplitudes()(1) - Complex(0, 7.0 / norm)) < 1e-12);

  CHECK_FALSE(decode_state(encode_grid(std::vector<int>{0, 0, 0, 0}), 1).has_value());
  CHECK_THROWS(encode_grid(std::vector<int>{8, 0, 0, 0}));
}

TEST_CASE("product codes") {
  const Bits code = encode_product("0", "1");
  CHECK(code == "11" + pair_encode("0", "1"));
  const auto s = decode_state(code, 2);
  REQUIRE(s.has_value());
  CHECK(same_state(*s, PureState::basis("01")));
  CHECK_FALSE(decode_state(code, 3).has_value());
  const auto plus_zero = decode_state(encode_product(encode_grid(std::vector<int>{4, 0, 4, 0}), "0"), 2);
  REQUIRE(plus_zero.has_value());
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(plus_zero->amplitudes()(0) - r) < 1e-12);
  CHECK(std::abs(plus_zero->amplitudes()(2) - r) < 1e-12);
}

TEST_CASE("gates: big-endian qubits, CNOT targets the next qubit") {
  const std::vector<Gate> x_via_cnot{{GateKind::Cnot, 0}};
  const UnitaryOp u = gate_unitary(x_via_cnot, 2);
  CHECK(same_state(apply_unitary(u, PureState::basis("10")), PureState::basis("11")));
  CHECK(same_state(apply_unitary(u, PureState::basis("01")), PureState::basis("01")));
  const std::vector<Gate> wrap{{GateKind::Cnot, 1}};
  CHECK(same_state(apply_unitary(gate_unitary(wrap, 2), PureState::basis("01")), PureState::basis("11")));

  // first gate applied first: H then T differs from T then H
  const std::vector<Gate> ht{{GateKind::H, 0}, {GateKind::T, 0}};
  const std::vector<Gate> th{{GateKind::T, 0}, {GateKind::H, 0}};
  const PureState a = apply_unitary(gate_unitary(ht, 1), PureState::basis("0"));
  CHECK(std::abs(a.amplitudes()(1) - std::polar(1.0 / std::sqrt(2.0), M_PI / 4)) < 1e-12);
  CHECK_FALSE(same_state(a, apply_unitary(gate_unitary(th, 1), PureState::basis("0"))));
  const std::vector<Gate> bad{{GateKind::H, 3}};
  CHECK_THROWS(gate_unitary(bad, 2));
}

TEST_CASE("unitary-pair codes round-trip") {
  const std::vector<Gate> gates{{GateKind::H, 0}, {GateKind::Cnot, 0}, {GateKind::I, 1}};
  const Bits code = encode_unitary_pair(1, gates);
  CHECK(code.substr(0, 2) == "10");
  CHECK(code.size() == 2 + gates.size() * kGateBits);
  const auto d = decode_unitary_pair(code, 2);
  REQUIRE(d.has_value());
  CHECK(d->m == 1);
  CHECK(d->v.matrix().isApprox(gate_unitary(gates, 2).matrix()));
  const auto id = decode_unitary_pair(encode_unitary_pair(0, {}), 2);
  REQUIRE(id.has_value());
  CHECK(id->m == 0);
  CHECK(id->v.matrix().isApprox(Matrix::Identity(4, 4)));
  CHECK_FALSE(decode_unitary_pair("1110", 2).has_value());  // m > n
  CHECK_FALSE(decode_unitary_pair("0001", 2).has_value());  // ragged gate list
}
