#pragma once

#include <optional>
#include <vector>

#include "darwin/collision.hpp"
#include "darwin/qcore.hpp"

namespace darwin {

/// System populations p = |alpha|^2, q = |beta|^2.
struct SystemWeights {
  double p = 0.5;
  double q = 0.5;

  static SystemWeights from_state(const InitialSystemState& s);
  void validate() const;
};

/// Per-ancilla accumulated dephasing angle g_k = (collisions with k) * jz * t,
/// in radians. Ancilla k is stored at position k-1.
class CumulativeCouplings {
 public:
  explicit CumulativeCouplings(std::vector<double> g);

  static CumulativeCouplings uniform(int n_ancillas, double g);
  static CumulativeCouplings from_counts(const std::vector<int>& counts, double jz_t);

  int n_ancillas() const noexcept { return static_cast<int>(g_.size()); }
  double operator[](int ancilla) const { return g_[static_cast<std::size_t>(ancilla - 1)]; }
  const std::vector<double>& values() const noexcept { return g_; }

 private:
  std::vector<double> g_;
};

/// Nonzero spectrum of [[p, sqrt(pq) c], [sqrt(pq) c, q]]: the reduced state
/// of any party in the dephased state, where c is the overlap of the two
/// conditional branches seen by that party.
Spectrum two_level_spectrum(double p, double q, double c);

enum class OverlapRole { system, fraction, joint };

/// Product of cos(2 g_k) over all ancillas (system), over `subset` (fraction),
/// or over the ancillas outside `subset` (joint: system plus fraction, whose
/// spectrum equals that of the complementary ancillas).
double fraction_overlap(const CumulativeCouplings& gs, const QubitSubset& subset, OverlapRole role);

/// Entropies in bits of the system, the fraction, and system plus fraction.
struct MutualInfo {
  double system_entropy = 0.0;
  double fraction_entropy = 0.0;
  double joint_entropy = 0.0;
  double mutual_information = 0.0;

  /// I / S_S is meaningless when the system never decohered.
  bool normalized_defined() const noexcept;
  /// I / S_S; throws UndefinedNormalization when S_S < 1e-12.
  double normalized() const;
  std::optional<double> try_normalized() const noexcept;
};

inline constexpr double kUndefinedEntropy = 1e-12;

MutualInfo dephasing_mutual_information(const CumulativeCouplings& gs, const QubitSubset& subset,
                                        const SystemWeights& w = {});

/// |rho_S^{1,2}| = sqrt(pq) prod_k |cos 2 g_k|.
double system_coherence(const CumulativeCouplings& gs, const SystemWeights& w = {});

/// |rho_{E_k}^{1,2}| = |p e^{-2ig} + q e^{2ig}| / 2, which is |cos 2g|/2 for p = q.
double ancilla_coherence(double g_k, const SystemWeights& w = {});

struct SeriesPoint {
  int n = 0;
  double single_ancilla_mi = 0.0;
  double system_entropy = 0.0;
  double system_coherence = 0.0;
  double ancilla_coherence = 0.0;
};

/// Uniform collisions, n per ancilla, for n = 0..n_max (n = 0 is the initial
/// state, kept as the reference point for periodicity).
std::vector<SeriesPoint> single_ancilla_mi_series(int n_ancillas, double jz_t, int n_max,
                                                  const SystemWeights& w = {});

}  // namespace darwin
