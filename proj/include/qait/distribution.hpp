#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qait/bits.hpp"

namespace qait {

// Finite-support probability measure over bitstrings. Support is kept sorted
// by string and free of duplicates so every reduction over it runs in a fixed
// order.
class StringDistribution {
 public:
  struct Atom {
    Bits value;
    double p;
  };

  StringDistribution() = default;
  // Duplicated strings are merged; zero-probability atoms are dropped.
  // Throws unless probabilities are >= 0 and sum to 1 within 1e-12.
  explicit StringDistribution(std::vector<Atom> atoms, Bits aux = {});

  static StringDistribution point(Bits x, Bits aux = {});
  static StringDistribution uniform_over(std::span<const Bits> values, Bits aux = {});
  // Uniform over all width-bit strings.
  static StringDistribution uniform_strings(int width, Bits aux = {});

  std::span<const Atom> support() const { return atoms_; }
  const Bits& aux() const { return aux_; }
  double probability(std::string_view x) const;

 private:
  std::vector<Atom> atoms_;
  Bits aux_;
};

}  // namespace qait
