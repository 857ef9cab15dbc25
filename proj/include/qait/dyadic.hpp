#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qait {

// Exact non-negative dyadic rational num / 2^log2_den, kept in lowest terms
// (num odd, or log2_den == 0). Enough headroom for Kraft sums of programs up
// to 63 bits long.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::uint64_t num, int log2_den);

  static Dyadic pow2_neg(int bits) { return Dyadic(1, bits); }

  std::uint64_t num() const { return num_; }
  int log2_den() const { return log2_den_; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const;
  // log2 of the value; -inf for zero.
  double log2() const;

  // Numerator when expressed over 2^log2_den (log2_den >= this->log2_den()).
  std::uint64_t scaled_to(int log2_den) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  std::string to_string() const;

 private:
  void normalize();

  std::uint64_t num_ = 0;
  int log2_den_ = 0;
};

}  // namespace qait
