#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qait {

// Bitstrings are carried as std::string over the alphabet {'0','1'},
// most significant (first emitted) bit first.
using Bits = std::string;

bool is_bitstring(std::string_view s);
void require_bitstring(std::string_view s, const char* what);

// Minimal binary numeral of n ("0" for zero). Used as the auxiliary tape
// that conditions every complexity on the qubit count.
Bits binary(std::uint64_t n);

// Hex form with a terminating sentinel: append '1', right-pad with '0' to a
// multiple of four, then print nibbles. Length-preserving, so "" -> "8",
// "0" -> "4", "1" -> "c".
std::string to_hex(std::string_view bits);
Bits from_hex(std::string_view hex);

// Integer value of a bitstring read big-endian. Length must be <= 64.
std::uint64_t to_uint(std::string_view bits);
Bits from_uint(std::uint64_t value, int width);

// Packed bitstring of at most 64 bits. Bits are left-aligned: bit i of the
// string lives at word position 63 - i. Ordering by (word, len) coincides
// with lexicographic order of the underlying strings.
struct PackedBits {
  std::uint64_t word = 0;
  std::uint8_t len = 0;

  static PackedBits from_string(std::string_view bits);
  std::string to_string() const;

  friend bool operator==(const PackedBits&, const PackedBits&) = default;
  friend auto operator<=>(const PackedBits& a, const PackedBits& b) {
    if (a.word != b.word) return a.word <=> b.word;
    return a.len <=> b.len;
  }
};

struct PackedBitsHash {
  std::size_t operator()(const PackedBits& p) const noexcept {
    std::uint64_t z = p.word ^ (std::uint64_t{p.len} * 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

}  // namespace qait
