#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qait/bits.hpp"
#include "qait/quantum.hpp"
#include "qait/toy_machine.hpp"

namespace qait {

// Elementary n-qubit states as machine outputs. A code decodes as:
//   length exactly n        basis state |code>
//   "10" ++ grid            dense amplitudes, kGridWidth bits per real and
//                           imaginary part in index order, two's complement
//                           scaled by 2^-(kGridWidth-1); normalized
//   "11" ++ enc(a, b)       |a> (x) |b> with a, b codes for n/2 qubits (n even)
// Anything else, and the all-zero grid, is undecodable.
inline constexpr int kGridWidth = 4;

std::optional<PureState> decode_state(std::string_view code, int n);

Bits encode_grid(std::span<const int> re_im);  // 2 * 2^n values in [-8, 7], (re, im) per component
Bits encode_product(std::string_view a, std::string_view b);

enum class GateKind : std::uint8_t { H = 0, T = 1, Cnot = 2, I = 3 };

struct Gate {
  GateKind kind;
  int qubit;  // CNOT: control, target is (qubit + 1) mod n
};

inline constexpr int kGateBits = 5;

// (V, m) pair: unary(m) ++ "0" ++ gates, each gate a 2-bit kind and a 3-bit
// qubit index. V applies the gates in list order to |0^(n-m)> (x) xi.
struct UnitaryPair {
  UnitaryOp v;
  int m;
};

std::optional<UnitaryPair> decode_unitary_pair(std::string_view code, int n);
Bits encode_unitary_pair(int m, std::span<const Gate> gates);

// Product of the gates, first gate applied first. Throws on a bad qubit index.
UnitaryOp gate_unitary(std::span<const Gate> gates, int n);

}  // namespace qait
