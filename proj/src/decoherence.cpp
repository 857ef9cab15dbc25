#include "qait/decoherence.hpp"

#include <algorithm>
#include <cmath>

#include "qait/information.hpp"

namespace qait {

DecoherenceModel::DecoherenceModel(int n, double tau) : DecoherenceModel(UnitaryOp::identity(n), tau) {}

DecoherenceModel::DecoherenceModel(UnitaryOp pointer_basis, double tau) : basis_(std::move(pointer_basis)), tau_(tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("DecoherenceModel: tau must be positive");
}

DensityMatrix decohere(const DensityMatrix& rho0, const DecoherenceModel& model, double t) {
  if (rho0.qubits() != model.qubits()) throw DimensionMismatch("decohere: qubit counts differ");
  if (!(t >= 0.0)) throw std::invalid_argument("decohere: t must be >= 0");
  const double decay = std::exp(-t / model.tau());
  const Matrix& b = model.pointer_basis().matrix();
  Matrix r = b.adjoint() * rho0.matrix() * b;
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j)
      if (i != j) r(i, j) *= decay;
  return trusted_density(rho0.qubits(), b * r * b.adjoint());
}

StringDistribution full_decohere(const PureState& psi, const DecoherenceModel& model) {
  if (psi.qubits() != model.qubits()) throw DimensionMismatch("full_decohere: qubit counts differ");
  const Vector c = model.pointer_basis().matrix().adjoint() * psi.amplitudes();
  const double total = c.squaredNorm();
  std::vector<StringDistribution::Atom> atoms;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    atoms.push_back({basis_label(static_cast<std::size_t>(i), psi.qubits()), std::norm(c(i)) / total});
  }
  return StringDistribution(std::move(atoms));
}

// Both sieves are clamped to their exact ranges, [2^-n, 1] and [0, n], so
// rounding in the amplitudes cannot push them past the endpoints.
double sieve_trace(const PureState& psi, const DecoherenceModel& model, double t) {
  const double p = purity(decohere(psi.density(), model, t));
  return std::clamp(p, std::ldexp(1.0, -psi.qubits()), 1.0);
}

double sieve_entropy(const PureState& psi, const DecoherenceModel& model, double t) {
  const double s = von_neumann_entropy(decohere(psi.density(), model, t));
  return std::clamp(s, 0.0, static_cast<double>(psi.qubits()));
}

double sieve_algorithmic(const PureState& psi, const DecoherenceModel& model, const EnumerationTable& table) {
  if (table.aux() != binary(static_cast<std::uint64_t>(psi.qubits()))) {
    throw std::invalid_argument("sieve_algorithmic: table must be conditioned on the qubit count");
  }
  const StringDistribution p = full_decohere(psi, model);
  return i_prob(p, p, table);
}

PureState sample_lambda_f(const Pvm& f, HaarSampler& sampler) {
  const PureState psi = sampler.next();
  return pvm_collapse(f, psi, sampler.rng()).state;
}

DensityMatrix sample_lambda_eps(const KrausChannel& channel, HaarSampler& sampler) {
  return apply_channel(channel, sampler.next().density());
}

}  // namespace qait
