#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qait/bits.hpp"
#include "qait/distribution.hpp"
#include "qait/rng.hpp"

namespace qait {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kTol = 1e-9;
// Single systems use at most 4 qubits; tensor squares and symmetric powers
// go up to 8.
inline constexpr int kMaxQubits = 8;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::size_t dim_of(int n);
void check_qubits(int n);

// Big-endian: the first character of x is the most significant qubit.
std::size_t basis_index(std::string_view x);
Bits basis_label(std::size_t index, int n);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
Matrix identity(int n);

class DensityMatrix;

class PureState {
 public:
  // Throws unless the amplitude vector has length 2^n and unit norm within 1e-9.
  PureState(int n, Vector amplitudes);

  static PureState basis(std::string_view x);
  static PureState normalized(int n, Vector amplitudes);

  int qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }

  DensityMatrix density() const;

 private:
  int n_;
  Vector amp_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity, PSD and unit trace within 1e-9.
  DensityMatrix(int n, Matrix entries);

  static DensityMatrix maximally_mixed(int n);
  static DensityMatrix diagonal(std::span<const double> probabilities);

  int qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  struct Trusted {};
  DensityMatrix(int n, Matrix entries, Trusted) : n_(n), m_(std::move(entries)) {}

  friend class PureState;
  friend DensityMatrix trusted_density(int n, Matrix m);

  int n_;
  Matrix m_;
};

// Skips the eigenvalue check. For results of operations that preserve the
// invariants by construction.
DensityMatrix trusted_density(int n, Matrix m);

class UnitaryOp {
 public:
  UnitaryOp(int n, Matrix entries);
  static UnitaryOp identity(int n);

  int qubits() const { return n_; }
  const Matrix& matrix() const { return u_; }
  UnitaryOp operator*(const UnitaryOp& rhs) const;
  UnitaryOp adjoint() const;

 private:
  int n_;
  Matrix u_;
};

class Povm {
 public:
  Povm(int n, std::vector<Matrix> elements);

  int qubits() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  std::span<const Matrix> elements() const { return elements_; }
  // Outcome labels are binary indices of this width.
  int label_width() const;

 private:
  int n_;
  std::vector<Matrix> elements_;
};

class Pvm {
 public:
  Pvm(int n, std::vector<Matrix> projectors);

  static Pvm trivial(int n);
  static Pvm computational(int n);
  // 2^(n-c) projectors of rank 2^c; projector b spans |b s> for all s in {0,1}^c.
  static Pvm basis_blocks(int n, int c);

  int qubits() const { return n_; }
  std::size_t size() const { return projectors_.size(); }
  std::span<const Matrix> projectors() const { return projectors_; }
  Povm as_povm() const { return Povm(n_, projectors_); }

 private:
  int n_;
  std::vector<Matrix> projectors_;
};

class KrausChannel {
 public:
  // Kraus operators map 2^n_in to 2^n_out dimensions; trace preservation is
  // checked at construction.
  KrausChannel(int n_in, int n_out, std::vector<Matrix> kraus);

  static KrausChannel identity(int n);
  static KrausChannel unitary(const UnitaryOp& u);
  // Full dephasing in the computational basis.
  static KrausChannel dephasing(int n);
  // rho -> (1-p) rho + p I/2^n.
  static KrausChannel depolarizing(int n, double p);
  // rho -> rho (x) |ancilla><ancilla|.
  static KrausChannel append_ancilla(int n, const PureState& ancilla);
  KrausChannel then(const KrausChannel& next) const;

  int input_qubits() const { return n_in_; }
  int output_qubits() const { return n_out_; }
  std::span<const Matrix> kraus() const { return kraus_; }

  // Heisenberg picture: sum_i K_i^dagger A K_i.
  Matrix adjoint_apply(const Matrix& a) const;

 private:
  int n_in_;
  int n_out_;
  std::vector<Matrix> kraus_;
};

class HaarSampler {
 public:
  HaarSampler(std::uint64_t seed, int n) : seed_(seed), n_(n), rng_(seed) { check_qubits(n); }

  std::uint64_t seed() const { return seed_; }
  int qubits() const { return n_; }
  PureState next();
  Rng& rng() { return rng_; }

 private:
  std::uint64_t seed_;
  int n_;
  Rng rng_;
};

// 2^n independent standard complex Gaussians, normalized.
PureState haar_sample(HaarSampler& sampler);

double trace_distance(const DensityMatrix& sigma, const DensityMatrix& rho);
double purity(const DensityMatrix& rho);
// Bits. Eigenvalues in [-1e-9, 0) are clipped to zero.
double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);
PureState tensor_power(const PureState& a, int copies);

enum class Subsystem { First, Second };
// rho lives on n_first + n_second qubits; the named subsystem is traced out.
DensityMatrix partial_trace(const DensityMatrix& rho, int n_first, Subsystem traced);

DensityMatrix apply_unitary(const UnitaryOp& u, const DensityMatrix& rho);
PureState apply_unitary(const UnitaryOp& u, const PureState& psi);
DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

StringDistribution povm_probabilities(const Povm& e, const DensityMatrix& sigma);

struct Collapse {
  std::size_t index;
  PureState state;
};
Collapse pvm_collapse(const Pvm& f, const PureState& psi, Rng& rng);

// Real eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);

// min { lambda : A <= lambda B } for Hermitian A and PSD B. Returns +inf when
// A has weight outside the support of B. Used to certify calibration constants.
double loewner_ratio(const Matrix& a, const Matrix& b);

}  // namespace qait
