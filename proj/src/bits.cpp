#include "qait/bits.hpp"

#include <algorithm>

namespace qait {

bool is_bitstring(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

void require_bitstring(std::string_view s, const char* what) {
  if (!is_bitstring(s)) {
    throw std::invalid_argument(std::string(what) + ": not a bitstring: '" + std::string(s) + "'");
  }
}

Bits binary(std::uint64_t n) {
  if (n == 0) return "0";
  Bits out;
  while (n > 0) {
    out.push_back((n & 1U) ? '1' : '0');
    n >>= 1U;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_hex(std::string_view bits) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string padded(bits);
  padded.push_back('1');
  while (padded.size() % 4 != 0) padded.push_back('0');
  std::string out;
  out.reserve(padded.size() / 4);
  for (std::size_t i = 0; i < padded.size(); i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4; ++j) v = (v << 1) | (padded[i + j] == '1' ? 1 : 0);
    out.push_back(digits[v]);
  }
  return out;
}

Bits from_hex(std::string_view hex) {
  Bits bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("from_hex: bad digit in '" + std::string(hex) + "'");
    for (int j = 3; j >= 0; --j) bits.push_back(((v >> j) & 1) ? '1' : '0');
  }
  auto last_one = bits.find_last_of('1');
  if (last_one == Bits::npos) throw std::invalid_argument("from_hex: missing sentinel bit");
  bits.resize(last_one);
  return bits;
}

std::uint64_t to_uint(std::string_view bits) {
  if (bits.size() > 64) throw std::invalid_argument("to_uint: more than 64 bits");
  std::uint64_t v = 0;
  for (char c : bits) v = (v << 1U) | (c == '1' ? 1U : 0U);
  return v;
}

Bits from_uint(std::uint64_t value, int width) {
  Bits out(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = (value & 1U) ? '1' : '0';
    value >>= 1U;
  }
  return out;
}

PackedBits PackedBits::from_string(std::string_view bits) {
  if (bits.size() > 64) throw std::invalid_argument("PackedBits: more than 64 bits");
  PackedBits p;
  p.len = static_cast<std::uint8_t>(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') p.word |= std::uint64_t{1} << (63 - i);
  }
  return p;
}

std::string PackedBits::to_string() const {
  std::string s(len, '0');
  for (std::size_t i = 0; i < len; ++i) {
    if ((word >> (63 - i)) & 1U) s[i] = '1';
  }
  return s;
}

}  // namespace qait
