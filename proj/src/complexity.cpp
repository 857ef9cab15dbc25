#include "qait/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qait {

SemiDensityMatrix::SemiDensityMatrix(int n, MachineBudget budget, Bits aux, std::vector<SupportEntry> support,
                                     Matrix states, Matrix entries)
    : n_(n),
      budget_(budget),
      aux_(std::move(aux)),
      support_(std::move(support)),
      states_(std::move(states)),
      m_(std::move(entries)) {}

double SemiDensityMatrix::expectation(const PureState& psi) const {
  if (psi.qubits() != n_) throw DimensionMismatch("SemiDensityMatrix::expectation: qubit counts differ");
  return (psi.amplitudes().adjoint() * m_ * psi.amplitudes())(0, 0).real();
}

Matrix weighted_outer_sum(const Matrix& vs, std::span<const double> weights) {
  const Eigen::Index d = vs.rows();
  const Eigen::Index s = vs.cols();
  if (static_cast<std::size_t>(s) != weights.size()) throw DimensionMismatch("weighted_outer_sum: weight count");
  // Row-major copy of the conjugated vectors keeps the inner loop contiguous.
  const Matrix vt = vs.transpose();
  Matrix out = Matrix::Zero(d, d);
#pragma omp parallel for schedule(dynamic, 1)
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < s; ++k) {
        acc += weights[static_cast<std::size_t>(k)] * (vt(k, i) * std::conj(vt(k, j)));
      }
      out(i, j) = acc;
    }
  }
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) out(i, j) = std::conj(out(j, i));
  return out;
}

namespace reference {

Matrix weighted_outer_sum(const Matrix& vs, std::span<const double> weights) {
  const Eigen::Index d = vs.rows();
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < vs.cols(); ++k) {
    const Vector v = vs.col(k);
    out += weights[static_cast<std::size_t>(k)] * (v * v.adjoint());
  }
  return out;
}

}  // namespace reference

namespace {

struct DecodedSupport {
  std::vector<SupportEntry> support;
  Matrix states;
  std::vector<double> weights;
};

DecodedSupport decode_support(int n, const EnumerationTable& table) {
  check_qubits(n);
  DecodedSupport out;
  std::vector<Vector> columns;
  for (const auto& e : table.entries()) {
    const Bits code = e.output.to_string();
    auto phi = decode_state(code, n);
    if (!phi) continue;
    out.support.push_back({code, e.k_bits, e.m});
    out.weights.push_back(e.m.to_double());
    columns.push_back(phi->amplitudes());
  }
  out.states = Matrix(static_cast<Eigen::Index>(dim_of(n)), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) out.states.col(static_cast<Eigen::Index>(i)) = columns[i];
  return out;
}

}  // namespace

SemiDensityMatrix build_mu(int n, const EnumerationTable& table) {
  DecodedSupport s = decode_support(n, table);
  Matrix mu = weighted_outer_sum(s.states, s.weights);
  return SemiDensityMatrix(n, table.budget(), table.aux(), std::move(s.support), std::move(s.states), std::move(mu));
}

namespace reference {
SemiDensityMatrix build_mu(int n, const EnumerationTable& table) {
  DecodedSupport s = decode_support(n, table);
  Matrix mu = reference::weighted_outer_sum(s.states, s.weights);
  return SemiDensityMatrix(n, table.budget(), table.aux(), std::move(s.support), std::move(s.states), std::move(mu));
}
}  // namespace reference

namespace {
double neg_log2_or_inf(double t) {
  return t > 0.0 ? -std::log2(t) : std::numeric_limits<double>::infinity();
}
}  // namespace

ComplexityScore hg(const DensityMatrix& sigma, const SemiDensityMatrix& mu) {
  if (sigma.qubits() != mu.qubits()) throw DimensionMismatch("hg: qubit counts differ");
  ComplexityScore s;
  s.budget = mu.budget();
  s.kind = ScoreKind::Hg;
  // Tr(mu sigma) as an elementwise sum; both are Hermitian.
  const double t = (mu.matrix().conjugate().cwiseProduct(sigma.matrix())).sum().real();
  s.value = neg_log2_or_inf(t);
  if (!s.finite()) s.diagnostic = "Tr(mu sigma) is not positive at this budget";
  return s;
}

ComplexityScore hg(const PureState& psi, const SemiDensityMatrix& mu) {
  ComplexityScore s;
  s.budget = mu.budget();
  s.kind = ScoreKind::Hg;
  s.value = neg_log2_or_inf(mu.expectation(psi));
  if (!s.finite()) s.diagnostic = "<psi|mu|psi> is not positive at this budget";
  return s;
}

ComplexityScore hv(const PureState& psi, const EnumerationTable& table) {
  ComplexityScore s;
  s.budget = table.budget();
  s.kind = ScoreKind::Hv;
  const int n = psi.qubits();
  for (const auto& e : table.entries()) {
    const Bits code = e.output.to_string();
    auto phi = decode_state(code, n);
    if (!phi) continue;
    const double overlap = std::norm(phi->amplitudes().dot(psi.amplitudes()));
    if (overlap <= 0.0) continue;
    const double v = e.k_bits - std::log2(std::min(overlap, 1.0));
    // entries are sorted, so strict < keeps the lexicographically smallest code on ties
    if (v < s.value) {
      s.value = v;
      s.witness = code;
    }
  }
  if (!s.finite()) s.diagnostic = "no decodable code overlaps the state at this budget";
  return s;
}

ComplexityScore huc(const DensityMatrix& sigma, const EnumerationTable& table, double delta) {
  if (!(delta >= 0.0 && delta <= 1e-3)) throw std::invalid_argument("huc: delta must be in [0, 1e-3]");
  ComplexityScore s;
  s.budget = table.budget();
  s.kind = ScoreKind::Huc;
  const int n = sigma.qubits();
  const double slack = std::max(delta, kTol);
  for (const auto& e : table.entries()) {
    const Bits code = e.output.to_string();
    auto pair = decode_unitary_pair(code, n);
    if (!pair) continue;
    const double v = e.k_bits + pair->m;
    if (!(v < s.value)) continue;
    const Matrix pulled = pair->v.matrix().adjoint() * sigma.matrix() * pair->v.matrix();
    // P keeps the indices whose top n-m bits are zero: the first 2^m entries.
    const auto block = static_cast<Eigen::Index>(dim_of(pair->m));
    const double kept = pulled.topLeftCorner(block, block).trace().real();
    if (kept >= 1.0 - slack) {
      s.value = v;
      s.witness = code;
    }
  }
  if (!s.finite()) s.diagnostic = "no (V, m) code within the budget prepares the state";
  return s;
}

std::uint64_t sym_dim(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("sym_dim: negative argument");
  // binom(m + 2^n - 1, m)
  const std::uint64_t d = std::uint64_t{1} << n;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(m); ++i) r = r * (d - 1 + i) / i;
  return r;
}

Matrix symmetric_projector(int n, int m) {
  if (m < 1) throw std::invalid_argument("symmetric_projector: m must be >= 1");
  check_qubits(n * m);
  const std::size_t d = dim_of(n);
  const std::size_t total = dim_of(n * m);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  std::vector<std::size_t> digits(static_cast<std::size_t>(m));
  std::size_t count = 0;
  do {
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (int s = m - 1; s >= 0; --s) {
        digits[static_cast<std::size_t>(s)] = rest % d;
        rest /= d;
      }
      std::size_t out = 0;
      for (int s = 0; s < m; ++s) out = out * d + digits[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
      p(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(idx)) += 1.0;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p / static_cast<double>(count);
}

PairingConstants pairing_constants(const SemiDensityMatrix& mu_n, const SemiDensityMatrix& mu_2n) {
  const int n = mu_n.qubits();
  if (mu_2n.qubits() != 2 * n) throw DimensionMismatch("pairing_constants: expected mu_n and mu_2n");
  PairingConstants c{};
  c.c_sub = std::log2(loewner_ratio(kron(mu_n.matrix(), mu_n.matrix()), mu_2n.matrix()));
  c.c_mono = std::log2(loewner_ratio(mu_2n.matrix(), kron(mu_n.matrix(), identity(n))));
  c.c_l = std::max({0.0, c.c_sub, c.c_mono});
  return c;
}

}  // namespace qait
