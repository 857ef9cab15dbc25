#pragma once

#include <span>
#include <vector>

#include "qait/complexity.hpp"
#include "qait/distribution.hpp"
#include "qait/quantum.hpp"
#include "qait/toy_machine.hpp"

namespace qait {

// log2 sum_{x,y} 2^{I_L(x:y)} p(x) q(y), evaluated with log-sum-exp.
// Propagates BudgetTooSmall.
double i_prob(const StringDistribution& p, const StringDistribution& q, const EnumerationTable& table);

struct GInfo {
  double value;
  bool defined;  // false when one of the Hg terms is infinite
};

// Hg(sigma) + Hg(rho) - Hg(sigma (x) rho).
GInfo i_g(const DensityMatrix& sigma, const DensityMatrix& rho, const SemiDensityMatrix& mu_n,
          const SemiDensityMatrix& mu_2n);

struct PairSupportEntry {
  Bits code_x;
  Bits code_y;
  Dyadic m;       // m_L(enc(x, y))
  double weight;  // m * 2^{hg(phi_x)} * 2^{hg(phi_y)}
};

// Rank-one members A_x (x) A_y of the test class, A_x = |phi_x><phi_x| / <phi_x|mu|phi_x>,
// weighted by m_L(enc(x, y)). Lower-bound surrogate for the universal test.
class ProductTestMatrix {
 public:
  ProductTestMatrix(int n, MachineBudget budget, std::vector<PairSupportEntry> support, Matrix entries);

  int qubits() const { return n_; }  // per factor
  const MachineBudget& budget() const { return budget_; }
  const Matrix& matrix() const { return m_; }
  std::span<const PairSupportEntry> support() const { return support_; }

 private:
  int n_;
  MachineBudget budget_;
  std::vector<PairSupportEntry> support_;
  Matrix m_;
};

// Pairs come from table outputs that decode as enc(x, y) with x and y in
// mu's support; the table should be the one mu was built from.
ProductTestMatrix build_cd(const SemiDensityMatrix& mu, const EnumerationTable& table);

namespace reference {
ProductTestMatrix build_cd(const SemiDensityMatrix& mu, const EnumerationTable& table);
}

// log2 Tr C (sigma (x) rho). -inf when the trace vanishes.
double i_d_approx(const DensityMatrix& sigma, const DensityMatrix& rho, const ProductTestMatrix& cd);
double i_d_approx(const PureState& psi, const PureState& phi, const ProductTestMatrix& cd);

// E over Haar psi of 2^{i_d(psi, psi)}: Tr(C Pi_sym) / dim Sym.
double haar_cd_moment(const ProductTestMatrix& cd);

// W = sum_{x,y} 2^{I_L(x:y)} |x y><x y| over n-bit strings. Then
// E over Haar psi of 2^{i_prob(p_psi : p_psi)} = Tr(W Pi_sym) / dim Sym.
Matrix classical_info_operator(int n, const EnumerationTable& table);

}  // namespace qait
