#include "qait/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qait {

Dyadic::Dyadic(std::uint64_t num, int log2_den) : num_(num), log2_den_(log2_den) {
  if (log2_den < 0 || log2_den > 63) throw std::invalid_argument("Dyadic: denominator exponent out of range");
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  while (log2_den_ > 0 && (num_ & 1U) == 0) {
    num_ >>= 1U;
    --log2_den_;
  }
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -log2_den_); }

double Dyadic::log2() const {
  if (num_ == 0) return -std::numeric_limits<double>::infinity();
  return std::log2(static_cast<double>(num_)) - log2_den_;
}

std::uint64_t Dyadic::scaled_to(int log2_den) const {
  if (log2_den < log2_den_) throw std::invalid_argument("Dyadic::scaled_to: target denominator too small");
  const int shift = log2_den - log2_den_;
  if (num_ != 0 && shift > 0 && (shift >= 64 || (num_ >> (64 - shift)) != 0)) {
    throw std::overflow_error("Dyadic::scaled_to: overflow");
  }
  return num_ << shift;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int den = std::max(a.log2_den_, b.log2_den_);
  const unsigned __int128 sum =
      (static_cast<unsigned __int128>(a.num_) << (den - a.log2_den_)) +
      (static_cast<unsigned __int128>(b.num_) << (den - b.log2_den_));
  unsigned __int128 s = sum;
  int d = den;
  while (d > 0 && (s & 1U) == 0) {
    s >>= 1U;
    --d;
  }
  if (s > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("Dyadic: sum overflow");
  return Dyadic(static_cast<std::uint64_t>(s), d);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int den = std::max(a.log2_den_, b.log2_den_);
  const unsigned __int128 x = static_cast<unsigned __int128>(a.num_) << (den - a.log2_den_);
  const unsigned __int128 y = static_cast<unsigned __int128>(b.num_) << (den - b.log2_den_);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::to_string() const {
  return std::to_string(num_) + "/2^" + std::to_string(log2_den_);
}

}  // namespace qait
