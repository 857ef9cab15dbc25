#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qait/quantum.hpp"
#include "qait/state_codes.hpp"
#include "qait/toy_machine.hpp"

namespace qait {

struct SupportEntry {
  Bits code;
  int k_bits;
  Dyadic m;
};

// mu_L = sum over decodable table outputs z of m_L(z) |phi_z><phi_z|.
class SemiDensityMatrix {
 public:
  SemiDensityMatrix(int n, MachineBudget budget, Bits aux, std::vector<SupportEntry> support, Matrix states,
                    Matrix entries);

  int qubits() const { return n_; }
  const MachineBudget& budget() const { return budget_; }
  const Bits& aux() const { return aux_; }
  const Matrix& matrix() const { return m_; }
  std::span<const SupportEntry> support() const { return support_; }
  // Column i is the decoded state of support()[i].
  const Matrix& states() const { return states_; }
  double trace() const { return m_.trace().real(); }

  // <phi|mu|phi> for a pure state.
  double expectation(const PureState& psi) const;

 private:
  int n_;
  MachineBudget budget_;
  Bits aux_;
  std::vector<SupportEntry> support_;
  Matrix states_;
  Matrix m_;
};

// Decodes every table output as an n-qubit state. The table's aux is normally
// binary(n); other tapes give conditional versions.
SemiDensityMatrix build_mu(int n, const EnumerationTable& table);

// sum_i w_i v_i v_i^dagger over the columns of vs, each entry reduced over i
// in column order. Parallel over matrix rows; results do not depend on the
// thread count.
Matrix weighted_outer_sum(const Matrix& vs, std::span<const double> weights);

namespace reference {
SemiDensityMatrix build_mu(int n, const EnumerationTable& table);
Matrix weighted_outer_sum(const Matrix& vs, std::span<const double> weights);
}  // namespace reference

enum class ScoreKind { Hg, Hv, Huc };

struct ComplexityScore {
  double value = std::numeric_limits<double>::infinity();
  MachineBudget budget;
  ScoreKind kind = ScoreKind::Hg;
  Bits witness;            // minimizing code for Hv / Huc
  std::string diagnostic;  // why the score is infinite, when it is

  bool finite() const { return value < std::numeric_limits<double>::infinity(); }
};

// -log2 Tr(mu sigma); +inf when the trace is not positive.
ComplexityScore hg(const DensityMatrix& sigma, const SemiDensityMatrix& mu);
ComplexityScore hg(const PureState& psi, const SemiDensityMatrix& mu);

// min over decodable codes z of K_L(z) - log2 |<psi|phi_z>|^2.
ComplexityScore hv(const PureState& psi, const EnumerationTable& table);

// min over decodable (V, m) codes of K_L(code) + m such that
// Tr(P V^dagger sigma V) >= 1 - delta, P = |0^(n-m)><0^(n-m)| (x) I_m.
// delta = 0 is taken within 1e-9.
ComplexityScore huc(const DensityMatrix& sigma, const EnumerationTable& table, double delta = 0.0);

// Projector onto the symmetric subspace of m copies of n qubits.
Matrix symmetric_projector(int n, int m);
std::uint64_t sym_dim(int n, int m);

// Loewner constants tying mu_n to mu_2n:
//   mu_n (x) mu_n <= 2^c_sub mu_2n        (subadditivity)
//   mu_2n <= 2^c_mono (mu_n (x) I)         (monotonicity)
struct PairingConstants {
  double c_sub;
  double c_mono;
  double c_l;  // max of the two, floored at zero
};

PairingConstants pairing_constants(const SemiDensityMatrix& mu_n, const SemiDensityMatrix& mu_2n);

}  // namespace qait
