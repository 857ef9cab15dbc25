#include "qait/nosync.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qait {

Bits odometer_step(std::string_view p) {
  require_bitstring(p, "odometer_step");
  Bits out(p);
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    if (*it == '0') {
      *it = '1';
      return out;
    }
    *it = '0';
  }
  return out;  // all ones wrap to all zeros
}

OdometerSystem::OdometerSystem(Bits start) : state_(std::move(start)) {
  require_bitstring(state_, "OdometerSystem");
  const auto k = static_cast<int>(state_.size());
  if (k < kMinPointBits || k > kMaxPointBits) {
    throw std::invalid_argument("OdometerSystem: point length must be in [16, 64]");
  }
}

void OdometerSystem::step() {
  state_ = odometer_step(state_);
  ++steps_;
}

namespace {
void require_length_aux(std::size_t k, const EnumerationTable& table) {
  if (table.aux() != binary(k)) throw std::invalid_argument("g_tilde: table must be conditioned on binary(k)");
}
}  // namespace

double g_tilde(std::string_view p, const EnumerationTable& table) {
  require_length_aux(p.size(), table);
  return static_cast<double>(k_upper(p, table)) - static_cast<double>(p.size());
}

double g_tilde_max(int k, const EnumerationTable& table) {
  require_length_aux(static_cast<std::size_t>(k), table);
  // k_upper never exceeds the literal length; that bound is attained as soon
  // as one k-bit string has no shorter program in the table.
  const double literal = kOpcodeBits * (k + 1.0) - k;
  std::size_t covered = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : table.entries()) {
    if (e.output.len != k) continue;
    ++covered;
    best = std::max(best, static_cast<double>(std::min(e.k_bits, kOpcodeBits * (k + 1))) - k);
  }
  const bool all_covered = k < 64 && covered == (std::size_t{1} << k);
  return all_covered ? best : literal;
}

std::vector<TrajectoryPoint> gap_trajectory(OdometerSystem a, OdometerSystem b, int horizon,
                                            const EnumerationTable& table) {
  if (horizon < 0 || horizon > kMaxHorizon) throw std::invalid_argument("gap_trajectory: horizon must be in [0, 4096]");
  if (a.state().size() != b.state().size()) throw std::invalid_argument("gap_trajectory: point lengths differ");
  std::vector<TrajectoryPoint> out;
  double sup = 0.0;
  for (long t = 0; t <= horizon; ++t) {
    const double g1 = g_tilde(a.state(), table);
    const double g2 = g_tilde(b.state(), table);
    sup = std::max(sup, std::abs(g1 - g2));
    out.push_back({t, g1, g2, sup});
    a.step();
    b.step();
  }
  return out;
}

}  // namespace qait
