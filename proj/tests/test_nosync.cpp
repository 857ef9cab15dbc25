#include <set>
#include <vector>

#include "doctest.h"
#include "qait/nosync.hpp"
#include "qait/rng.hpp"
#include "qait/table_store.hpp"

using namespace qait;

namespace {

const EnumerationTable& table16() {
  static TableStore s(MachineBudget{7, 64});
  return s.get(binary(16));
}

Bits random_point(std::uint64_t seed, int k) {
  Rng rng(seed);
  return from_uint(rng.next_u64() >> (64 - k), k);
}

}  // namespace

TEST_CASE("odometer examples") {
  CHECK(odometer_step("0000") == "0001");
  CHECK(odometer_step("0111") == "1000");
  CHECK(odometer_step("1111") == "0000");
}

TEST_CASE("property: the odometer permutes all 2^k points in one cycle") {
  for (int k : {1, 4, 8, 16}) {
    const std::size_t size = std::size_t{1} << k;
    std::vector<bool> seen(size, false);
    Bits p(static_cast<std::size_t>(k), '0');
    for (std::size_t i = 0; i < size; ++i) {
      const auto v = to_uint(p);
      CHECK_FALSE(seen[v]);
      seen[v] = true;
      p = odometer_step(p);
    }
    CHECK(p == Bits(static_cast<std::size_t>(k), '0'));
  }
}

TEST_CASE("odometer system bookkeeping") {
  CHECK_THROWS(OdometerSystem(Bits(8, '0')));
  OdometerSystem s(Bits(16, '1'));
  s.step();
  CHECK(s.state() == Bits(16, '0'));
  CHECK(s.steps_taken() == 1);
}

TEST_CASE("g_tilde examples") {
  const EnumerationTable& t = table16();
  // emit 0, duplicate four times, halt
  CHECK(g_tilde(Bits(16, '0'), t) <= 3 * (4 + 2) - 16);
  int typical = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) typical += g_tilde(random_point(1000 + i, 16), t) >= -6 ? 1 : 0;
  CHECK(typical >= trials * 95 / 100);
  const double c_max = g_tilde_max(16, t);
  for (int i = 0; i < trials; ++i) CHECK(g_tilde(random_point(5000 + i, 16), t) <= c_max);
  CHECK_THROWS(g_tilde(Bits(16, '0'), TableStore(MachineBudget{7, 64}).get("")));
}

TEST_CASE("gap trajectories") {
  const EnumerationTable& t = table16();
  const Bits r = random_point(42, 16);
  const auto same = gap_trajectory(OdometerSystem(r), OdometerSystem(r), 256, t);
  REQUIRE(same.size() == 257);
  for (const auto& p : same) CHECK(p.sup_gap == 0.0);

  const auto mixed = gap_trajectory(OdometerSystem(Bits(16, '0')), OdometerSystem(r), 256, t);
  for (std::size_t i = 1; i < mixed.size(); ++i) CHECK(mixed[i].sup_gap >= mixed[i - 1].sup_gap);
  CHECK(mixed.back().sup_gap >= 4.0);

  const auto longer = gap_trajectory(OdometerSystem(Bits(16, '0')), OdometerSystem(r), 512, t);
  CHECK(longer.back().sup_gap >= mixed.back().sup_gap);
  for (std::size_t i = 0; i < mixed.size(); ++i) CHECK(longer[i].g1 == mixed[i].g1);

  double lo = 1e9;
  double hi = -1e9;
  for (const auto& p : mixed) {
    lo = std::min(lo, p.g1);
    hi = std::max(hi, p.g1);
  }
  CHECK(hi - lo >= 3.0);
  CHECK_THROWS(gap_trajectory(OdometerSystem(r), OdometerSystem(r), kMaxHorizon + 1, t));
}
