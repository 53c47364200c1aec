#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace darwin {

using cplx = std::complex<double>;

/// Two-qubit operator in the |qa qb> basis {up-up, up-down, down-up, down-down}.
using Gate4 = Eigen::Matrix4cd;

/// Register size cap; 2^26 complex doubles is ~1 GiB.
inline constexpr int kMaxQubits = 26;

/// Largest subset for which an explicit reduced density matrix is built (dim 4096).
inline constexpr int kMaxDensityQubits = 12;

/// Sorted set of distinct qubit labels. Range is checked against a register at use.
class QubitSubset {
 public:
  QubitSubset() = default;
  QubitSubset(std::initializer_list<int> indices);
  explicit QubitSubset(std::vector<int> indices);

  /// Qubits {first, first+1, ..., last}.
  static QubitSubset range(int first, int last);
  /// Qubits whose bit is set in `mask` (bit q <-> qubit q).
  static QubitSubset from_mask(std::uint64_t mask);

  const std::vector<int>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(int q) const noexcept;
  std::uint64_t mask() const noexcept;

  bool disjoint_with(const QubitSubset& other) const noexcept;
  QubitSubset united(const QubitSubset& other) const;
  /// Qubits of {0..num_qubits-1} not in this set.
  QubitSubset complement(int num_qubits) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const QubitSubset&, const QubitSubset&) = default;

 private:
  std::vector<int> indices_;
};

/// Normalized amplitude vector over a qubit register. Qubit 0 is the most
/// significant bit of the basis index; |up> is bit value 0.
class PureState {
 public:
  /// Validates length (power of two, 2..26 qubits) and unit norm within 1e-12.
  static PureState from_amplitudes(std::vector<cplx> amplitudes);
  /// Computational basis state |index>.
  static PureState basis(int num_qubits, std::uint64_t index);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
  cplx operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm() const noexcept;

  /// In-place version of apply_two_qubit_unitary.
  void apply(const Gate4& u, int qa, int qb);
  /// Skips the unitarity check; `u` must already be validated.
  void apply_unchecked(const Gate4& u, int qa, int qb) noexcept;

 private:
  PureState(int num_qubits, std::vector<cplx> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  int num_qubits_ = 0;
  std::vector<cplx> amplitudes_;
};

/// Eigenvalues of a density operator, descending.
class Spectrum {
 public:
  /// Clips values in [-1e-10, 0) to 0 and values in (1, 1 + 1e-10] to 1;
  /// anything further out throws NegativeEigenvalue / InvalidState.
  explicit Spectrum(std::vector<double> eigenvalues);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double sum() const noexcept;

 private:
  std::vector<double> values_;
};

/// Hermitian, unit-trace operator on 2^k dimensions.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

 private:
  Eigen::MatrixXcd entries_;
};

/// Maximum deviation of u^dagger u from the identity.
double unitarity_deviation(const Gate4& u);

PureState apply_two_qubit_unitary(PureState state, const Gate4& u, int qa, int qb);

/// Nonzero spectrum of the reduced state on `keep`, obtained from the Gram
/// matrix of the smaller side of the keep/rest bipartition.
Spectrum reduced_spectrum(const PureState& state, const QubitSubset& keep);

/// -sum l log2 l, in bits.
double von_neumann_entropy(const Spectrum& spectrum);

double mutual_information(const PureState& state, const QubitSubset& a, const QubitSubset& b);

DensityMatrix reduced_density(const PureState& state, const QubitSubset& keep);

/// |rho_{0,1}| of a single-qubit density matrix.
double offdiagonal_coherence(const DensityMatrix& rho);

}  // namespace darwin
