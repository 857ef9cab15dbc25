#include <cmath>
#include <set>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "qait/complexity.hpp"
#include "qait/table_store.hpp"

using namespace qait;

namespace {

MachineBudget budget(int l) { return MachineBudget{l, 64}; }

const EnumerationTable& table(int l, int n) {
  static std::map<int, std::unique_ptr<TableStore>> stores;
  auto& s = stores[l];
  if (!s) s = std::make_unique<TableStore>(budget(l));
  return s->for_qubits(n);
}

DensityMatrix random_mixed(std::uint64_t seed, int n) {
  HaarSampler s(seed, 2 * n);
  return partial_trace(haar_sample(s).density(), n, Subsystem::Second);
}

std::set<Bits> support_codes(const SemiDensityMatrix& mu) {
  std::set<Bits> out;
  for (const auto& e : mu.support()) out.insert(e.code);
  return out;
}

}  // namespace

TEST_CASE("build_mu: trace at most one, zero below the shortest code") {
  for (int n = 1; n <= 3; ++n) {
    for (int l = 1; l <= 9; ++l) {
      const SemiDensityMatrix mu = build_mu(n, table(l, n));
      CHECK(mu.trace() <= 1.0 + 1e-12);
      CHECK(hermitian_eigenvalues(mu.matrix()).minCoeff() >= -1e-12);
    }
  }
  const SemiDensityMatrix tiny = build_mu(2, table(1, 2));
  CHECK(tiny.support().empty());
  CHECK(tiny.matrix().isZero());
}

TEST_CASE("build_mu: support grows with the budget") {
  for (int n = 1; n <= 2; ++n) {
    std::set<Bits> prev;
    for (int l = 1; l <= 9; ++l) {
      const auto now = support_codes(build_mu(n, table(l, n)));
      for (const auto& c : prev) CHECK(now.count(c) == 1);
      prev = now;
    }
  }
}

TEST_CASE("build_mu kernel matches the serial reference") {
  for (int n = 1; n <= 3; ++n) {
    const SemiDensityMatrix a = build_mu(n, table(8, n));
    const SemiDensityMatrix b = reference::build_mu(n, table(8, n));
    CHECK(a.matrix().isApprox(b.matrix(), 1e-12));
    CHECK(a.support().size() == b.support().size());
  }
  Rng rng(2);
  Matrix vs(6, 40);
  std::vector<double> w;
  for (Eigen::Index j = 0; j < vs.cols(); ++j) {
    for (Eigen::Index i = 0; i < vs.rows(); ++i) vs(i, j) = Complex(rng.normal(), rng.normal());
    w.push_back(rng.uniform());
  }
  CHECK(weighted_outer_sum(vs, w).isApprox(reference::weighted_outer_sum(vs, w), 1e-12));
}

TEST_CASE("hg examples") {
  const int n = 2;
  const SemiDensityMatrix mu = build_mu(n, table(9, n));
  for (std::size_t i = 0; i < mu.support().size(); i += 7) {
    const auto& e = mu.support()[i];
    const PureState phi = *decode_state(e.code, n);
    CHECK(hg(phi, mu).value <= -e.m.log2() + 1e-9);
  }
  const double mixed = hg(DensityMatrix::maximally_mixed(n), mu).value;
  CHECK(mixed == doctest::Approx(n - std::log2(mu.trace())));
  const ComplexityScore none = hg(DensityMatrix::maximally_mixed(n), build_mu(n, table(1, n)));
  CHECK_FALSE(none.finite());
  CHECK_FALSE(none.diagnostic.empty());
}

TEST_CASE("property: hg does not increase with the budget") {
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix s = random_mixed(500 + i, 1);
    double prev = std::numeric_limits<double>::infinity();
    for (int l = 2; l <= 9; ++l) {
      const double h = hg(s, build_mu(1, table(l, 1))).value;
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
  }
}

TEST_CASE("hv examples") {
  const int n = 1;
  const EnumerationTable& t = table(9, n);
  const Bits plus = encode_grid(std::vector<int>{4, 0, 4, 0});
  const PureState psi = *decode_state(plus, n);
  const TableEntry* e = t.find(plus);
  if (e != nullptr) CHECK(hv(psi, t).value <= e->k_bits + 1e-9);
  const PureState one = PureState::basis("1");
  CHECK(hv(one, t).value <= k_budgeted("1", t) + 1e-9);

  const SemiDensityMatrix mu = build_mu(n, t);
  HaarSampler s(77, n);
  for (int i = 0; i < 50; ++i) {
    const PureState x = haar_sample(s);
    CHECK(hv(x, t).value >= hg(x, mu).value - std::log2(static_cast<double>(mu.support().size())) - 1e-9);
  }
  const ComplexityScore nothing = hv(one, table(1, n));
  CHECK_FALSE(nothing.finite());
}

TEST_CASE("huc examples") {
  const int n = 2;
  const EnumerationTable& t = table(9, n);
  const Bits id_code = encode_unitary_pair(0, {});
  const ComplexityScore zero = huc(PureState::basis("00").density(), t);
  CHECK(zero.value <= k_upper(id_code, t));

  const Bits full = encode_unitary_pair(n, {});
  const ComplexityScore mixed = huc(DensityMatrix::maximally_mixed(n), t);
  REQUIRE(mixed.finite());
  CHECK(mixed.value == doctest::Approx(k_budgeted(full, t) + n));
  CHECK(decode_unitary_pair(mixed.witness, n)->m == n);

  const std::vector<Gate> h{{GateKind::H, 0}};
  const DensityMatrix hs = apply_unitary(gate_unitary(h, 1), PureState::basis("0")).density();
  const EnumerationTable& t1 = table(9, 1);
  const ComplexityScore hv1 = huc(hs, t1);
  const Bits h_code = encode_unitary_pair(0, h);
  CHECK(hv1.value <= k_budgeted(h_code, t1));
  // the m = 0 code with gate list [H] prepares the state exactly
  const UnitaryPair hp = *decode_unitary_pair(h_code, 1);
  CHECK((hp.v.matrix().adjoint() * hs.matrix() * hp.v.matrix())(0, 0).real() == doctest::Approx(1.0));

  CHECK_FALSE(huc(DensityMatrix::maximally_mixed(1), table(1, 1)).finite());
  CHECK_THROWS(huc(hs, t1, 0.01));
}

TEST_CASE("symmetric projector") {
  CHECK(sym_dim(1, 2) == 3);
  CHECK(sym_dim(1, 3) == 4);
  CHECK(sym_dim(2, 2) == 10);
  for (const auto& [n, m] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {1, 4}}) {
    const Matrix p = symmetric_projector(n, m);
    CHECK((p * p - p).norm() < 1e-12);
    const Eigen::VectorXd ev = hermitian_eigenvalues(p);
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) rank += ev(i) > 0.5 ? 1 : 0;
    CHECK(rank == static_cast<int>(sym_dim(n, m)));
  }
}

TEST_CASE("property: subadditivity and monotonicity within c_L") {
  const int n = 1;
  const SemiDensityMatrix mu = build_mu(n, table(9, n));
  const SemiDensityMatrix mu2 = build_mu(2 * n, table(9, 2 * n));
  const PairingConstants p = pairing_constants(mu, mu2);
  CHECK(p.c_l == std::max({0.0, p.c_sub, p.c_mono}));
  CHECK(std::isfinite(p.c_l));
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix s = random_mixed(900 + i, n);
    const DensityMatrix r = random_mixed(1900 + i, n);
    const double hs = hg(s, mu).value;
    const double hr = hg(r, mu).value;
    const double hsr = hg(tensor(s, r), mu2).value;
    CHECK(hsr <= hs + hr + p.c_l + 1e-9);
    CHECK(hs <= hsr + p.c_l + 1e-9);
  }
}

TEST_CASE("property: unitary transform within K(U) + c_L") {
  const int n = 2;
  const EnumerationTable& t = table(9, n);
  const SemiDensityMatrix mu = build_mu(n, t);
  const PairingConstants p = pairing_constants(mu, build_mu(2 * n, table(9, 2 * n)));
  const std::vector<std::vector<Gate>> lists{{{GateKind::H, 0}}, {{GateKind::T, 1}}, {{GateKind::Cnot, 0}}};
  for (const auto& gates : lists) {
    const UnitaryOp u = gate_unitary(gates, n);
    const double k = k_upper(encode_unitary_pair(0, gates), t);
    for (int i = 0; i < 30; ++i) {
      const DensityMatrix s = random_mixed(3000 + i, n);
      CHECK(std::abs(hg(apply_unitary(u, s), mu).value - hg(s, mu).value) <= k + p.c_l + 1e-9);
    }
  }
}

TEST_CASE("property: Muller deviation is the reported maximum") {
  double c_m = 0;
  for (int n = 1; n <= 3; ++n) {
    const SemiDensityMatrix mu = build_mu(n, table(9, n));
    for (std::size_t x = 0; x < dim_of(n); ++x) {
      const Bits s = basis_label(x, n);
      const double d = std::abs(hg(PureState::basis(s), mu).value - k_budgeted(s, table(9, n)));
      CHECK(std::isfinite(d));
      c_m = std::max(c_m, d);
    }
  }
  CHECK(std::isfinite(c_m));
}
