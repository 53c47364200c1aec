#include "darwin/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include "darwin/error.hpp"

namespace darwin {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-8;
constexpr double kClipTolerance = 1e-10;
constexpr double kSumTolerance = 1e-9;
constexpr double kDensityTolerance = 1e-10;

void check_qubit(const PureState& state, int q) {
  if (q < 0 || q >= state.num_qubits()) {
    throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q) + " outside register of " +
                                                std::to_string(state.num_qubits()) + " qubits");
  }
}

void check_subset(const PureState& state, const QubitSubset& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySubset, "subset must be nonempty");
  for (int q : s) check_qubit(state, q);
}

// Basis-index offsets contributed by every bit pattern of `qubits`, with the
// first listed qubit as the most significant bit of the pattern.
std::vector<std::size_t> scatter_table(const std::vector<int>& qubits, int num_qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> table(std::size_t{1} << k, 0);
  for (std::size_t pattern = 0; pattern < table.size(); ++pattern) {
    std::size_t offset = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((pattern >> (k - 1 - j)) & 1U) offset |= std::size_t{1} << (num_qubits - 1 - qubits[j]);
    }
    table[pattern] = offset;
  }
  return table;
}

// Amplitudes reshaped so that `keep` indexes rows and its complement columns.
Eigen::MatrixXcd bipartition_matrix(const PureState& state, const QubitSubset& keep) {
  const int n = state.num_qubits();
  const auto rest = keep.complement(n);
  const auto rows = scatter_table(keep.indices(), n);
  const auto cols = scatter_table(rest.indices(), n);
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  const auto amps = state.amplitudes();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amps[rows[r] | cols[c]];
    }
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// QubitSubset

QubitSubset::QubitSubset(std::initializer_list<int> indices)
    : QubitSubset(std::vector<int>(indices)) {}

QubitSubset::QubitSubset(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw Error(ErrorCode::InvalidSubset, "duplicate qubit label");
  }
  if (!indices_.empty() && indices_.front() < 0) {
    throw Error(ErrorCode::InvalidSubset, "negative qubit label");
  }
}

QubitSubset QubitSubset::range(int first, int last) {
  std::vector<int> v;
  for (int q = first; q <= last; ++q) v.push_back(q);
  return QubitSubset(std::move(v));
}

QubitSubset QubitSubset::from_mask(std::uint64_t mask) {
  std::vector<int> v;
  while (mask != 0) {
    v.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return QubitSubset(std::move(v));
}

bool QubitSubset::contains(int q) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), q);
}

std::uint64_t QubitSubset::mask() const noexcept {
  std::uint64_t m = 0;
  for (int q : indices_) m |= std::uint64_t{1} << q;
  return m;
}

bool QubitSubset::disjoint_with(const QubitSubset& other) const noexcept {
  return std::none_of(indices_.begin(), indices_.end(), [&](int q) { return other.contains(q); });
}

QubitSubset QubitSubset::united(const QubitSubset& other) const {
  std::vector<int> v;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(v));
  return QubitSubset(std::move(v));
}

QubitSubset QubitSubset::complement(int num_qubits) const {
  std::vector<int> v;
  for (int q = 0; q < num_qubits; ++q) {
    if (!contains(q)) v.push_back(q);
  }
  return QubitSubset(std::move(v));
}

// ---------------------------------------------------------------------------
// PureState

PureState PureState::from_amplitudes(std::vector<cplx> amplitudes) {
  const std::size_t len = amplitudes.size();
  if (len < 4 || !std::has_single_bit(len)) {
    throw Error(ErrorCode::InvalidState,
                "amplitude count " + std::to_string(len) + " is not 2^n with n >= 2");
  }
  const int n = std::countr_zero(len);
  if (n > kMaxQubits) {
    throw Error(ErrorCode::InvalidState, std::to_string(n) + " qubits exceeds the cap of 26");
  }
  PureState s(n, std::move(amplitudes));
  if (std::abs(s.norm() - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::InvalidState, "state is not normalized");
  }
  return s;
}

PureState PureState::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits < 2 || num_qubits > kMaxQubits) {
    throw Error(ErrorCode::InvalidState, "num_qubits must lie in [2, 26]");
  }
  std::vector<cplx> amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
  amps[index] = 1.0;
  return PureState(num_qubits, std::move(amps));
}

double PureState::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

void PureState::apply(const Gate4& u, int qa, int qb) {
  check_qubit(*this, qa);
  check_qubit(*this, qb);
  if (qa == qb) throw Error(ErrorCode::IndexOutOfRange, "gate qubits must differ");
  if (unitarity_deviation(u) > kUnitaryTolerance) {
    throw Error(ErrorCode::NonUnitaryInput, "gate deviates from unitarity");
  }
  apply_unchecked(u, qa, qb);
}

void PureState::apply_unchecked(const Gate4& u, int qa, int qb) noexcept {
  const int pa = num_qubits_ - 1 - qa;
  const int pb = num_qubits_ - 1 - qb;
  const int lo = std::min(pa, pb);
  const int hi = std::max(pa, pb);
  const std::size_t ma = std::size_t{1} << pa;
  const std::size_t mb = std::size_t{1} << pb;
  const std::size_t quarter = amplitudes_.size() >> 2;

  for (std::size_t k = 0; k < quarter; ++k) {
    std::size_t i = ((k >> lo) << (lo + 1)) | (k & ((std::size_t{1} << lo) - 1));
    i = ((i >> hi) << (hi + 1)) | (i & ((std::size_t{1} << hi) - 1));
    const std::size_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
    const cplx v[4] = {amplitudes_[idx[0]], amplitudes_[idx[1]], amplitudes_[idx[2]],
                       amplitudes_[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      amplitudes_[idx[r]] = u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] + u(r, 3) * v[3];
    }
  }
}

// ---------------------------------------------------------------------------
// Spectrum / DensityMatrix

Spectrum::Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
  for (auto& v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidState, "non-finite eigenvalue");
    if (v < -kClipTolerance) {
      throw Error(ErrorCode::NegativeEigenvalue, "eigenvalue " + std::to_string(v) + " below -1e-10");
    }
    if (v > 1.0 + kClipTolerance) {
      throw Error(ErrorCode::InvalidState, "eigenvalue " + std::to_string(v) + " above 1");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

double Spectrum::sum() const noexcept {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  const auto d = entries_.rows();
  if (d != entries_.cols() || d < 1 || !std::has_single_bit(static_cast<std::size_t>(d))) {
    throw Error(ErrorCode::WrongDimension, "density matrix must be square with power-of-two size");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kDensityTolerance) {
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - cplx(1.0)) > kDensityTolerance) {
    throw Error(ErrorCode::InvalidState, "density matrix trace differs from 1");
  }
}

// ---------------------------------------------------------------------------
// Operations

double unitarity_deviation(const Gate4& u) {
  return (u.adjoint() * u - Gate4::Identity()).cwiseAbs().maxCoeff();
}

PureState apply_two_qubit_unitary(PureState state, const Gate4& u, int qa, int qb) {
  state.apply(u, qa, qb);
  return state;
}

Spectrum reduced_spectrum(const PureState& state, const QubitSubset& keep) {
  check_subset(state, keep);
  const Eigen::MatrixXcd a = bipartition_matrix(state, keep);
  Eigen::MatrixXcd gram;
  if (a.rows() <= a.cols()) {
    gram.noalias() = a * a.adjoint();
  } else {
    gram.noalias() = a.adjoint() * a;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return Spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

double von_neumann_entropy(const Spectrum& spectrum) {
  if (std::abs(spectrum.sum() - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::NotNormalized, "spectrum sums to " + std::to_string(spectrum.sum()));
  }
  double s = 0.0;
  for (double l : spectrum.values()) {
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double mutual_information(const PureState& state, const QubitSubset& a, const QubitSubset& b) {
  check_subset(state, a);
  check_subset(state, b);
  if (!a.disjoint_with(b)) throw Error(ErrorCode::OverlappingSubsets, "subsets share a qubit");
  return von_neumann_entropy(reduced_spectrum(state, a)) +
         von_neumann_entropy(reduced_spectrum(state, b)) -
         von_neumann_entropy(reduced_spectrum(state, a.united(b)));
}

DensityMatrix reduced_density(const PureState& state, const QubitSubset& keep) {
  check_subset(state, keep);
  if (keep.size() > static_cast<std::size_t>(kMaxDensityQubits)) {
    throw Error(ErrorCode::SubsetTooLarge,
                std::to_string(keep.size()) + " qubits exceeds the density-matrix cap of 12");
  }
  const Eigen::MatrixXcd a = bipartition_matrix(state, keep);
  Eigen::MatrixXcd rho;
  rho.noalias() = a * a.adjoint();
  // Exact Hermiticity; the product is Hermitian only up to rounding.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(std::move(rho));
}

double offdiagonal_coherence(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorCode::WrongDimension, "coherence needs a single-qubit state");
  return std::abs(rho(0, 1));
}

}  // namespace darwin
