#pragma once

#include <limits>

#include "qait/distribution.hpp"
#include "qait/quantum.hpp"
#include "qait/toy_machine.hpp"

namespace qait {

inline constexpr double kForever = std::numeric_limits<double>::infinity();

// Off-diagonal decay exp(-t/tau) in the pointer basis. Column i of the
// pointer basis unitary is pointer state |i>.
class DecoherenceModel {
 public:
  DecoherenceModel(int n, double tau);
  DecoherenceModel(UnitaryOp pointer_basis, double tau);

  int qubits() const { return basis_.qubits(); }
  const UnitaryOp& pointer_basis() const { return basis_; }
  double tau() const { return tau_; }

 private:
  UnitaryOp basis_;
  double tau_;
};

// t may be kForever.
DensityMatrix decohere(const DensityMatrix& rho0, const DecoherenceModel& model, double t);

// p(i) = |<i|psi>|^2 in the pointer basis, over n-bit labels.
StringDistribution full_decohere(const PureState& psi, const DecoherenceModel& model);

double sieve_trace(const PureState& psi, const DecoherenceModel& model, double t);
double sieve_entropy(const PureState& psi, const DecoherenceModel& model, double t);

struct SieveRecord {
  double t;
  double sigma_t;
  double sigma_s;
};

// I_prob(p_psi : p_psi | n). The table must be conditioned on binary(n).
double sieve_algorithmic(const PureState& psi, const DecoherenceModel& model, const EnumerationTable& table);

// Haar state, then F measured; returns the collapsed state.
PureState sample_lambda_f(const Pvm& f, HaarSampler& sampler);
// Haar state pushed through the channel.
DensityMatrix sample_lambda_eps(const KrausChannel& channel, HaarSampler& sampler);

}  // namespace qait
