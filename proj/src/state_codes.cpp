#include "qait/state_codes.hpp"

#include <cmath>
#include <numbers>

namespace qait {

namespace {

constexpr double kGridScale = 1.0 / (1 << (kGridWidth - 1));

int grid_value(std::string_view bits) {
  const auto raw = static_cast<int>(to_uint(bits));
  return raw >= (1 << (kGridWidth - 1)) ? raw - (1 << kGridWidth) : raw;
}

std::optional<PureState> decode_grid(std::string_view grid, int n) {
  const std::size_t d = dim_of(n);
  if (grid.size() != 2 * d * kGridWidth) return std::nullopt;
  Vector v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const int re = grid_value(grid.substr((2 * i) * kGridWidth, kGridWidth));
    const int im = grid_value(grid.substr((2 * i + 1) * kGridWidth, kGridWidth));
    v(static_cast<Eigen::Index>(i)) = Complex(re * kGridScale, im * kGridScale);
  }
  if (v.norm() < kGridScale) return std::nullopt;
  return PureState::normalized(n, std::move(v));
}

}  // namespace

std::optional<PureState> decode_state(std::string_view code, int n) {
  if (n < 1 || n > kMaxQubits || !is_bitstring(code)) return std::nullopt;
  if (code.size() == static_cast<std::size_t>(n)) return PureState::basis(code);
  if (code.size() < 3) return std::nullopt;
  const std::string_view tag = code.substr(0, 2);
  const std::string_view body = code.substr(2);
  if (tag == "10") return decode_grid(body, n);
  if (tag == "11" && n % 2 == 0) {
    auto parts = pair_decode(body);
    if (!parts) return std::nullopt;
    auto a = decode_state(parts->first, n / 2);
    if (!a) return std::nullopt;
    auto b = decode_state(parts->second, n / 2);
    if (!b) return std::nullopt;
    return tensor(*a, *b);
  }
  return std::nullopt;
}

Bits encode_grid(std::span<const int> re_im) {
  Bits out = "10";
  for (int v : re_im) {
    if (v < -(1 << (kGridWidth - 1)) || v >= (1 << (kGridWidth - 1))) {
      throw std::invalid_argument("encode_grid: value out of range");
    }
    out += from_uint(static_cast<std::uint64_t>(v < 0 ? v + (1 << kGridWidth) : v), kGridWidth);
  }
  return out;
}

Bits encode_product(std::string_view a, std::string_view b) { return "11" + pair_encode(a, b); }

namespace {

Matrix single_qubit_on(const Matrix& g, int qubit, int n) {
  return kron(kron(identity(qubit), g), identity(n - qubit - 1));
}

Matrix gate_matrix(const Gate& gate, int n) {
  if (gate.qubit < 0 || gate.qubit >= n) throw std::invalid_argument("gate qubit index out of range");
  const double r = std::numbers::sqrt2 / 2.0;
  switch (gate.kind) {
    case GateKind::H: return single_qubit_on((Matrix(2, 2) << r, r, r, -r).finished(), gate.qubit, n);
    case GateKind::T:
      return single_qubit_on((Matrix(2, 2) << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4)).finished(),
                             gate.qubit, n);
    case GateKind::I: return identity(n);
    case GateKind::Cnot: {
      if (n < 2) throw std::invalid_argument("CNOT needs at least two qubits");
      const int control = gate.qubit;
      const int target = (gate.qubit + 1) % n;
      const std::size_t d = dim_of(n);
      Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) {
        const bool c = (i >> (n - 1 - control)) & 1U;
        const std::size_t j = c ? i ^ (std::size_t{1} << (n - 1 - target)) : i;
        m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
      }
      return m;
    }
  }
  throw std::invalid_argument("unknown gate");
}

}  // namespace

UnitaryOp gate_unitary(std::span<const Gate> gates, int n) {
  check_qubits(n);
  Matrix v = identity(n);
  for (const Gate& g : gates) v = gate_matrix(g, n) * v;
  return UnitaryOp(n, std::move(v));
}

std::optional<UnitaryPair> decode_unitary_pair(std::string_view code, int n) {
  if (n < 1 || n > kMaxQubits || !is_bitstring(code)) return std::nullopt;
  const auto zero = code.find('0');
  if (zero == std::string_view::npos) return std::nullopt;
  const int m = static_cast<int>(zero);
  if (m > n) return std::nullopt;
  const std::string_view body = code.substr(zero + 1);
  if (body.size() % kGateBits != 0) return std::nullopt;
  std::vector<Gate> gates;
  for (std::size_t i = 0; i < body.size(); i += kGateBits) {
    const auto kind = static_cast<GateKind>(to_uint(body.substr(i, 2)));
    const auto qubit = static_cast<int>(to_uint(body.substr(i + 2, 3)));
    if (qubit >= n) return std::nullopt;
    if (kind == GateKind::Cnot && n < 2) return std::nullopt;
    gates.push_back({kind, qubit});
  }
  return UnitaryPair{gate_unitary(gates, n), m};
}

Bits encode_unitary_pair(int m, std::span<const Gate> gates) {
  if (m < 0) throw std::invalid_argument("encode_unitary_pair: negative m");
  Bits out(static_cast<std::size_t>(m), '1');
  out.push_back('0');
  for (const Gate& g : gates) {
    if (g.qubit < 0 || g.qubit > 7) throw std::invalid_argument("encode_unitary_pair: qubit index needs 3 bits");
    out += from_uint(static_cast<std::uint64_t>(g.kind), 2);
    out += from_uint(static_cast<std::uint64_t>(g.qubit), 3);
  }
  return out;
}

}  // namespace qait
