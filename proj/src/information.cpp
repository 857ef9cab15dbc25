#include "qait/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace qait {

double i_prob(const StringDistribution& p, const StringDistribution& q, const EnumerationTable& table) {
  std::vector<double> terms;
  terms.reserve(p.support().size() * q.support().size());
  for (const auto& a : p.support()) {
    for (const auto& b : q.support()) {
      terms.push_back(info_classical(a.value, b.value, table) + std::log2(a.p) + std::log2(b.p));
    }
  }
  if (terms.empty()) throw std::invalid_argument("i_prob: empty support");
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - top);
  return top + std::log2(acc);
}

GInfo i_g(const DensityMatrix& sigma, const DensityMatrix& rho, const SemiDensityMatrix& mu_n,
          const SemiDensityMatrix& mu_2n) {
  const ComplexityScore a = hg(sigma, mu_n);
  const ComplexityScore b = hg(rho, mu_n);
  const ComplexityScore ab = hg(tensor(sigma, rho), mu_2n);
  if (!a.finite() || !b.finite() || !ab.finite()) return {std::numeric_limits<double>::quiet_NaN(), false};
  return {a.value + b.value - ab.value, true};
}

ProductTestMatrix::ProductTestMatrix(int n, MachineBudget budget, std::vector<PairSupportEntry> support,
                                     Matrix entries)
    : n_(n), budget_(budget), support_(std::move(support)), m_(std::move(entries)) {}

namespace {

struct PairVectors {
  std::vector<PairSupportEntry> support;
  Matrix vectors;
  std::vector<double> weights;
};

PairVectors collect_pairs(const SemiDensityMatrix& mu, const EnumerationTable& table) {
  const int n = mu.qubits();
  check_qubits(2 * n);
  std::map<Bits, Eigen::Index, std::less<>> index;
  std::vector<double> inv_t;  // 2^{hg(phi)} = 1 / <phi|mu|phi>
  const Matrix& states = mu.states();
  for (std::size_t i = 0; i < mu.support().size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const double t = (states.col(col).adjoint() * mu.matrix() * states.col(col))(0, 0).real();
    index.emplace(mu.support()[i].code, col);
    inv_t.push_back(t > 0.0 ? 1.0 / t : 0.0);
  }

  PairVectors out;
  std::vector<Vector> columns;
  for (const auto& e : table.entries()) {
    const Bits code = e.output.to_string();
    auto parts = pair_decode(code);
    if (!parts) continue;
    auto ix = index.find(parts->first);
    auto iy = index.find(parts->second);
    if (ix == index.end() || iy == index.end()) continue;
    const double w = e.m.to_double() * inv_t[static_cast<std::size_t>(ix->second)] *
                     inv_t[static_cast<std::size_t>(iy->second)];
    if (w <= 0.0) continue;
    out.support.push_back({parts->first, parts->second, e.m, w});
    out.weights.push_back(w);
    columns.push_back(kron(Vector(states.col(ix->second)), Vector(states.col(iy->second))));
  }
  out.vectors = Matrix(static_cast<Eigen::Index>(dim_of(2 * n)), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) out.vectors.col(static_cast<Eigen::Index>(i)) = columns[i];
  return out;
}

}  // namespace

ProductTestMatrix build_cd(const SemiDensityMatrix& mu, const EnumerationTable& table) {
  PairVectors p = collect_pairs(mu, table);
  Matrix c = weighted_outer_sum(p.vectors, p.weights);
  return ProductTestMatrix(mu.qubits(), table.budget(), std::move(p.support), std::move(c));
}

namespace reference {
ProductTestMatrix build_cd(const SemiDensityMatrix& mu, const EnumerationTable& table) {
  PairVectors p = collect_pairs(mu, table);
  Matrix c = reference::weighted_outer_sum(p.vectors, p.weights);
  return ProductTestMatrix(mu.qubits(), table.budget(), std::move(p.support), std::move(c));
}
}  // namespace reference

namespace {
double log2_or_neg_inf(double t) { return t > 0.0 ? std::log2(t) : -std::numeric_limits<double>::infinity(); }
}  // namespace

double i_d_approx(const DensityMatrix& sigma, const DensityMatrix& rho, const ProductTestMatrix& cd) {
  if (sigma.qubits() != cd.qubits() || rho.qubits() != cd.qubits()) throw DimensionMismatch("i_d_approx: qubits");
  const Matrix joint = kron(sigma.matrix(), rho.matrix());
  return log2_or_neg_inf((cd.matrix().conjugate().cwiseProduct(joint)).sum().real());
}

double i_d_approx(const PureState& psi, const PureState& phi, const ProductTestMatrix& cd) {
  if (psi.qubits() != cd.qubits() || phi.qubits() != cd.qubits()) throw DimensionMismatch("i_d_approx: qubits");
  const Vector v = kron(psi.amplitudes(), phi.amplitudes());
  return log2_or_neg_inf((v.adjoint() * cd.matrix() * v)(0, 0).real());
}

double haar_cd_moment(const ProductTestMatrix& cd) {
  const int n = cd.qubits();
  const Matrix sym = symmetric_projector(n, 2);
  return (cd.matrix() * sym).trace().real() / static_cast<double>(sym_dim(n, 2));
}

Matrix classical_info_operator(int n, const EnumerationTable& table) {
  check_qubits(2 * n);
  const std::size_t d = dim_of(n);
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      const auto i = static_cast<Eigen::Index>(x * d + y);
      w(i, i) = std::exp2(info_classical(from_uint(x, n), from_uint(y, n), table));
    }
  }
  return w;
}

}  // namespace qait
