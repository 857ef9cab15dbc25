#include "qait/quantum.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace qait {

std::size_t dim_of(int n) { return std::size_t{1} << n; }

void check_qubits(int n) {
  if (n < 0 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [0, " + std::to_string(kMaxQubits) + "]");
  }
}

std::size_t basis_index(std::string_view x) {
  require_bitstring(x, "basis_index");
  return static_cast<std::size_t>(to_uint(x));
}

Bits basis_label(std::size_t index, int n) { return from_uint(index, n); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix identity(int n) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  return Matrix::Identity(d, d);
}

namespace {

void check_square(int n, const Matrix& m, const char* what) {
  check_qubits(n);
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  if (m.rows() != d || m.cols() != d) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(d) + "x" + std::to_string(d) +
                            " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

bool is_hermitian(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= kTol; }

bool is_psd(const Matrix& m) {
  if (!is_hermitian(m)) return false;
  return hermitian_eigenvalues(m).minCoeff() >= -kTol;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

PureState::PureState(int n, Vector amplitudes) : n_(n), amp_(std::move(amplitudes)) {
  check_qubits(n);
  if (static_cast<std::size_t>(amp_.size()) != dim_of(n)) {
    throw DimensionMismatch("PureState: amplitude vector has length " + std::to_string(amp_.size()));
  }
  if (std::abs(amp_.norm() - 1.0) > kTol) throw std::invalid_argument("PureState: not unit norm");
}

PureState PureState::basis(std::string_view x) {
  const int n = static_cast<int>(x.size());
  check_qubits(n);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(n)));
  v(static_cast<Eigen::Index>(basis_index(x))) = 1.0;
  return PureState(n, std::move(v));
}

PureState PureState::normalized(int n, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw std::invalid_argument("PureState::normalized: zero vector");
  return PureState(n, amplitudes / norm);
}

DensityMatrix PureState::density() const {
  return DensityMatrix(n_, amp_ * amp_.adjoint(), DensityMatrix::Trusted{});
}

DensityMatrix::DensityMatrix(int n, Matrix entries) : n_(n), m_(std::move(entries)) {
  check_square(n, m_, "DensityMatrix");
  if (!is_hermitian(m_)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kTol) throw std::invalid_argument("DensityMatrix: trace != 1");
  if (hermitian_eigenvalues(m_).minCoeff() < -kTol) throw std::invalid_argument("DensityMatrix: not PSD");
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  return DensityMatrix(n, identity(n) / static_cast<double>(dim_of(n)), Trusted{});
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  const std::size_t d = probabilities.size();
  int n = 0;
  while (dim_of(n) < d) ++n;
  if (dim_of(n) != d) throw DimensionMismatch("DensityMatrix::diagonal: length is not a power of two");
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probabilities[i];
  return DensityMatrix(n, std::move(m));
}

DensityMatrix trusted_density(int n, Matrix m) {
  return DensityMatrix(n, std::move(m), DensityMatrix::Trusted{});
}

UnitaryOp::UnitaryOp(int n, Matrix entries) : n_(n), u_(std::move(entries)) {
  check_square(n, u_, "UnitaryOp");
  if ((u_.adjoint() * u_ - qait::identity(n)).norm() > kTol) throw std::invalid_argument("UnitaryOp: not unitary");
}

UnitaryOp UnitaryOp::identity(int n) { return UnitaryOp(n, qait::identity(n)); }

UnitaryOp UnitaryOp::operator*(const UnitaryOp& rhs) const {
  if (n_ != rhs.n_) throw DimensionMismatch("UnitaryOp product: qubit counts differ");
  return UnitaryOp(n_, u_ * rhs.u_);
}

UnitaryOp UnitaryOp::adjoint() const { return UnitaryOp(n_, u_.adjoint()); }

Povm::Povm(int n, std::vector<Matrix> elements) : n_(n), elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("Povm: no elements");
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(dim_of(n)), static_cast<Eigen::Index>(dim_of(n)));
  for (const auto& e : elements_) {
    check_square(n, e, "Povm element");
    if (!is_psd(e)) throw std::invalid_argument("Povm: element not PSD");
    total += e;
  }
  if ((total - identity(n)).norm() > kTol) throw std::invalid_argument("Povm: elements do not sum to identity");
}

int Povm::label_width() const {
  int w = 0;
  while ((std::size_t{1} << w) < elements_.size()) ++w;
  return w;
}

Pvm::Pvm(int n, std::vector<Matrix> projectors) : n_(n), projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw std::invalid_argument("Pvm: no projectors");
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(dim_of(n)), static_cast<Eigen::Index>(dim_of(n)));
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const Matrix& p = projectors_[i];
    check_square(n, p, "Pvm projector");
    if (!is_hermitian(p) || (p * p - p).norm() > kTol) throw std::invalid_argument("Pvm: not a projector");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs((p * projectors_[j]).trace()) > kTol) throw std::invalid_argument("Pvm: projectors not orthogonal");
    }
    total += p;
  }
  if ((total - identity(n)).norm() > kTol) throw std::invalid_argument("Pvm: projectors do not sum to identity");
}

Pvm Pvm::trivial(int n) { return Pvm(n, {identity(n)}); }

Pvm Pvm::computational(int n) { return basis_blocks(n, 0); }

Pvm Pvm::basis_blocks(int n, int c) {
  check_qubits(n);
  if (c < 0 || c > n) throw std::invalid_argument("Pvm::basis_blocks: c outside [0, n]");
  const std::size_t block = dim_of(c);
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  std::vector<Matrix> projectors;
  for (std::size_t b = 0; b < dim_of(n - c); ++b) {
    Matrix p = Matrix::Zero(d, d);
    for (std::size_t s = 0; s < block; ++s) {
      const auto i = static_cast<Eigen::Index>(b * block + s);
      p(i, i) = 1.0;
    }
    projectors.push_back(std::move(p));
  }
  return Pvm(n, std::move(projectors));
}

KrausChannel::KrausChannel(int n_in, int n_out, std::vector<Matrix> kraus)
    : n_in_(n_in), n_out_(n_out), kraus_(std::move(kraus)) {
  check_qubits(n_in);
  check_qubits(n_out);
  if (kraus_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  const auto din = static_cast<Eigen::Index>(dim_of(n_in));
  const auto dout = static_cast<Eigen::Index>(dim_of(n_out));
  Matrix total = Matrix::Zero(din, din);
  for (const auto& k : kraus_) {
    if (k.rows() != dout || k.cols() != din) throw DimensionMismatch("KrausChannel: operator has wrong shape");
    total += k.adjoint() * k;
  }
  if ((total - qait::identity(n_in)).norm() > kTol) throw std::invalid_argument("KrausChannel: not trace preserving");
}

KrausChannel KrausChannel::identity(int n) { return KrausChannel(n, n, {qait::identity(n)}); }

KrausChannel KrausChannel::unitary(const UnitaryOp& u) { return KrausChannel(u.qubits(), u.qubits(), {u.matrix()}); }

KrausChannel KrausChannel::dephasing(int n) {
  const Pvm f = Pvm::computational(n);
  return KrausChannel(n, n, std::vector<Matrix>(f.projectors().begin(), f.projectors().end()));
}

KrausChannel KrausChannel::depolarizing(int n, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("KrausChannel::depolarizing: p outside [0, 1]");
  // Kraus form from the Pauli twirl: (1-p) rho + p I/d = sum over Paulis.
  const Matrix px = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  const Matrix py = (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  const Matrix pz = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  const Matrix pi = Matrix::Identity(2, 2);
  const std::array<Matrix, 4> paulis{pi, px, py, pz};
  const std::size_t count = std::size_t{1} << (2 * n);
  const double d2 = static_cast<double>(count);
  std::vector<Matrix> kraus;
  for (std::size_t idx = 0; idx < count; ++idx) {
    Matrix op = Matrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) op = kron(op, paulis[(idx >> (2 * (n - 1 - q))) & 3U]);
    const double w = (idx == 0) ? (1.0 - p + p / d2) : p / d2;
    if (w > 0.0) kraus.push_back(std::sqrt(w) * op);
  }
  return KrausChannel(n, n, std::move(kraus));
}

KrausChannel KrausChannel::append_ancilla(int n, const PureState& ancilla) {
  const int m = ancilla.qubits();
  const Vector& a = ancilla.amplitudes();
  Matrix k = kron(qait::identity(n), Matrix(a));
  return KrausChannel(n, n + m, {std::move(k)});
}

KrausChannel KrausChannel::then(const KrausChannel& next) const {
  if (next.n_in_ != n_out_) throw DimensionMismatch("KrausChannel::then: dimensions do not chain");
  std::vector<Matrix> kraus;
  for (const auto& b : next.kraus_) {
    for (const auto& a : kraus_) kraus.push_back(b * a);
  }
  return KrausChannel(n_in_, next.n_out_, std::move(kraus));
}

Matrix KrausChannel::adjoint_apply(const Matrix& a) const {
  const auto dout = static_cast<Eigen::Index>(dim_of(n_out_));
  if (a.rows() != dout || a.cols() != dout) throw DimensionMismatch("KrausChannel::adjoint_apply: wrong shape");
  const auto din = static_cast<Eigen::Index>(dim_of(n_in_));
  Matrix out = Matrix::Zero(din, din);
  for (const auto& k : kraus_) out += k.adjoint() * a * k;
  return out;
}

PureState HaarSampler::next() {
  const auto d = static_cast<Eigen::Index>(dim_of(n_));
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = rng_.normal();
    const double im = rng_.normal();
    v(i) = Complex(re, im);
  }
  return PureState::normalized(n_, std::move(v));
}

PureState haar_sample(HaarSampler& sampler) { return sampler.next(); }

namespace {
void check_same(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.qubits() != b.qubits()) throw DimensionMismatch(std::string(what) + ": qubit counts differ");
}
}  // namespace

double trace_distance(const DensityMatrix& sigma, const DensityMatrix& rho) {
  check_same(sigma, rho, "trace_distance");
  return 0.5 * hermitian_eigenvalues(sigma.matrix() - rho.matrix()).cwiseAbs().sum();
}

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(rho.matrix())) {
    if (lambda < -kTol) throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  check_qubits(a.qubits() + b.qubits());
  return trusted_density(a.qubits() + b.qubits(), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  check_qubits(a.qubits() + b.qubits());
  return PureState(a.qubits() + b.qubits(), kron(a.amplitudes(), b.amplitudes()));
}

PureState tensor_power(const PureState& a, int copies) {
  if (copies < 1) throw std::invalid_argument("tensor_power: copies must be >= 1");
  PureState out = a;
  for (int i = 1; i < copies; ++i) out = tensor(out, a);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int n_first, Subsystem traced) {
  const int n = rho.qubits();
  if (n_first < 0 || n_first > n) throw DimensionMismatch("partial_trace: split outside the system");
  const auto da = static_cast<Eigen::Index>(dim_of(n_first));
  const auto db = static_cast<Eigen::Index>(dim_of(n - n_first));
  const Matrix& m = rho.matrix();
  if (traced == Subsystem::Second) {
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return trusted_density(n_first, std::move(out));
  }
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index j = 0; j < db; ++j)
    for (Eigen::Index l = 0; l < db; ++l)
      for (Eigen::Index i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return trusted_density(n - n_first, std::move(out));
}

DensityMatrix apply_unitary(const UnitaryOp& u, const DensityMatrix& rho) {
  if (u.qubits() != rho.qubits()) throw DimensionMismatch("apply_unitary: qubit counts differ");
  return trusted_density(rho.qubits(), u.matrix() * rho.matrix() * u.matrix().adjoint());
}

PureState apply_unitary(const UnitaryOp& u, const PureState& psi) {
  if (u.qubits() != psi.qubits()) throw DimensionMismatch("apply_unitary: qubit counts differ");
  return PureState::normalized(psi.qubits(), u.matrix() * psi.amplitudes());
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.input_qubits() != rho.qubits()) throw DimensionMismatch("apply_channel: qubit counts differ");
  const auto dout = static_cast<Eigen::Index>(dim_of(channel.output_qubits()));
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& k : channel.kraus()) out += k * rho.matrix() * k.adjoint();
  return trusted_density(channel.output_qubits(), 0.5 * (out + out.adjoint()));
}

StringDistribution povm_probabilities(const Povm& e, const DensityMatrix& sigma) {
  if (e.qubits() != sigma.qubits()) throw DimensionMismatch("povm_probabilities: qubit counts differ");
  const int width = e.label_width();
  std::vector<double> probs;
  double total = 0.0;
  for (const auto& el : e.elements()) {
    const double p = std::max(0.0, (sigma.matrix() * el).trace().real());
    probs.push_back(p);
    total += p;
  }
  std::vector<StringDistribution::Atom> atoms;
  for (std::size_t k = 0; k < probs.size(); ++k) atoms.push_back({from_uint(k, width), probs[k] / total});
  return StringDistribution(std::move(atoms));
}

Collapse pvm_collapse(const Pvm& f, const PureState& psi, Rng& rng) {
  if (f.qubits() != psi.qubits()) throw DimensionMismatch("pvm_collapse: qubit counts differ");
  std::vector<Vector> projected;
  std::vector<double> probs;
  for (const auto& p : f.projectors()) {
    Vector v = p * psi.amplitudes();
    probs.push_back(v.squaredNorm());
    projected.push_back(std::move(v));
  }
  // a single projector needs no draw, so Lambda_{I} consumes the same stream as Lambda
  if (probs.size() == 1) return Collapse{0, PureState::normalized(psi.qubits(), projected[0])};
  while (true) {
    double u = rng.uniform();
    std::size_t i = 0;
    for (; i + 1 < probs.size(); ++i) {
      if (u < probs[i]) break;
      u -= probs[i];
    }
    if (probs[i] < 1e-12) continue;
    return Collapse{i, PureState::normalized(psi.qubits(), projected[i])};
  }
}

double loewner_ratio(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> eb(0.5 * (b + b.adjoint()));
  const Eigen::VectorXd& lb = eb.eigenvalues();
  const double top = lb.maxCoeff();
  const Matrix ah = 0.5 * (a + a.adjoint());
  const double a_scale = std::max(hermitian_eigenvalues(ah).cwiseAbs().maxCoeff(), 1e-300);
  if (top <= 0.0) return a_scale <= 1e-300 ? 0.0 : std::numeric_limits<double>::infinity();

  const double cutoff = 1e-12 * top;
  std::vector<Eigen::Index> support;
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index i = 0; i < lb.size(); ++i) (lb(i) > cutoff ? support : kernel).push_back(i);

  const Matrix& v = eb.eigenvectors();
  const Matrix rotated = v.adjoint() * ah * v;
  for (Eigen::Index i : kernel) {
    if (rotated(i, i).real() > 1e-9 * a_scale) return std::numeric_limits<double>::infinity();
  }
  const auto s = static_cast<Eigen::Index>(support.size());
  Matrix w(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      w(i, j) = rotated(support[i], support[j]) / std::sqrt(lb(support[i]) * lb(support[j]));
  return hermitian_eigenvalues(w).maxCoeff();
}

}  // namespace qait
