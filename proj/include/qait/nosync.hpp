#pragma once

#include <string_view>
#include <vector>

#include "qait/bits.hpp"
#include "qait/toy_machine.hpp"

namespace qait {

inline constexpr int kMinPointBits = 16;
inline constexpr int kMaxPointBits = 64;
inline constexpr int kMaxHorizon = 1 << 12;

// Add one modulo 2^k; the last character is the least significant bit.
Bits odometer_step(std::string_view p);

class OdometerSystem {
 public:
  explicit OdometerSystem(Bits start);

  const Bits& state() const { return state_; }
  long steps_taken() const { return steps_; }
  void step();

 private:
  Bits state_;
  long steps_ = 0;
};

// K(p | binary(k)) - k with the literal program as fallback, so the value is
// defined for every k-bit point. The table must be conditioned on binary(k).
double g_tilde(std::string_view p, const EnumerationTable& table);

// max over all k-bit strings of g_tilde.
double g_tilde_max(int k, const EnumerationTable& table);

struct TrajectoryPoint {
  long t;
  double g1;
  double g2;
  double sup_gap;
};

// Records g_tilde of both systems at t = 0..horizon, stepping both after
// each record, together with the running sup of |g1 - g2|.
std::vector<TrajectoryPoint> gap_trajectory(OdometerSystem a, OdometerSystem b, int horizon,
                                            const EnumerationTable& table);

}  // namespace qait
