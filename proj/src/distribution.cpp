#include "qait/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qait {

StringDistribution::StringDistribution(std::vector<Atom> atoms, Bits aux) : aux_(std::move(aux)) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  double total = 0.0;
  for (auto& a : atoms) {
    require_bitstring(a.value, "StringDistribution");
    if (!(a.p >= 0.0)) throw std::invalid_argument("StringDistribution: negative probability");
    total += a.p;
    if (a.p == 0.0) continue;
    if (!atoms_.empty() && atoms_.back().value == a.value) {
      atoms_.back().p += a.p;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("StringDistribution: probabilities sum to " + std::to_string(total));
  }
}

StringDistribution StringDistribution::point(Bits x, Bits aux) {
  return StringDistribution({{std::move(x), 1.0}}, std::move(aux));
}

StringDistribution StringDistribution::uniform_over(std::span<const Bits> values, Bits aux) {
  if (values.empty()) throw std::invalid_argument("StringDistribution::uniform_over: empty support");
  std::vector<Atom> atoms;
  const double p = 1.0 / static_cast<double>(values.size());
  for (const auto& v : values) atoms.push_back({v, p});
  return StringDistribution(std::move(atoms), std::move(aux));
}

StringDistribution StringDistribution::uniform_strings(int width, Bits aux) {
  std::vector<Bits> values;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << width); ++i) values.push_back(from_uint(i, width));
  return uniform_over(values, std::move(aux));
}

double StringDistribution::probability(std::string_view x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, std::string_view v) { return a.value < v; });
  return (it != atoms_.end() && it->value == x) ? it->p : 0.0;
}

}  // namespace qait
