#include "darwin/analytic.hpp"

#include <cmath>
#include <string>

#include "darwin/error.hpp"

namespace darwin {

SystemWeights SystemWeights::from_state(const InitialSystemState& s) {
  s.validate();
  return {std::norm(s.alpha), std::norm(s.beta)};
}

void SystemWeights::validate() const {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0) || std::abs(p + q - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidWeights, "weights must satisfy p, q in [0, 1] and p + q = 1");
  }
}

CumulativeCouplings::CumulativeCouplings(std::vector<double> g) : g_(std::move(g)) {
  if (g_.empty()) throw Error(ErrorCode::InvalidCounts, "at least one ancilla is required");
  for (double v : g_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidCoupling, "cumulative coupling must be finite");
  }
}

CumulativeCouplings CumulativeCouplings::uniform(int n_ancillas, double g) {
  if (n_ancillas < 1) throw Error(ErrorCode::InvalidCounts, "at least one ancilla is required");
  return CumulativeCouplings(std::vector<double>(static_cast<std::size_t>(n_ancillas), g));
}

CumulativeCouplings CumulativeCouplings::from_counts(const std::vector<int>& counts, double jz_t) {
  std::vector<double> g;
  g.reserve(counts.size());
  for (int c : counts) {
    if (c < 0) throw Error(ErrorCode::InvalidCounts, "negative collision count");
    g.push_back(c * jz_t);
  }
  return CumulativeCouplings(std::move(g));
}

Spectrum two_level_spectrum(double p, double q, double c) {
  SystemWeights{p, q}.validate();
  if (!(std::abs(c) <= 1.0)) throw Error(ErrorCode::OverlapOutOfRange, "overlap must satisfy |c| <= 1");
  const double disc = std::min(1.0, std::sqrt((p - q) * (p - q) + 4.0 * p * q * c * c));
  // 1 - disc^2 = 4pq(1 - c^2); this form keeps the small eigenvalue accurate.
  const double minor = 2.0 * p * q * (1.0 - c) * (1.0 + c) / (1.0 + disc);
  return Spectrum({1.0 - minor, minor});
}

double fraction_overlap(const CumulativeCouplings& gs, const QubitSubset& subset, OverlapRole role) {
  const int n = gs.n_ancillas();
  if (role != OverlapRole::system) {
    for (int k : subset) {
      if (k < 1 || k > n) {
        throw Error(ErrorCode::InvalidSubset,
                    "ancilla " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
      }
    }
  }
  double c = 1.0;
  for (int k = 1; k <= n; ++k) {
    const bool in_product = role == OverlapRole::system ||
                            (role == OverlapRole::fraction) == subset.contains(k);
    if (in_product) c *= std::cos(2.0 * gs[k]);
  }
  return c;
}

bool MutualInfo::normalized_defined() const noexcept { return system_entropy >= kUndefinedEntropy; }

double MutualInfo::normalized() const {
  if (!normalized_defined()) {
    throw Error(ErrorCode::UndefinedNormalization,
                "system entropy below 1e-12: no decoherence, normalized MI undefined");
  }
  return mutual_information / system_entropy;
}

std::optional<double> MutualInfo::try_normalized() const noexcept {
  if (!normalized_defined()) return std::nullopt;
  return mutual_information / system_entropy;
}

MutualInfo dephasing_mutual_information(const CumulativeCouplings& gs, const QubitSubset& subset,
                                        const SystemWeights& w) {
  w.validate();
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "fraction must be nonempty");
  const auto entropy = [&](OverlapRole role) {
    return von_neumann_entropy(two_level_spectrum(w.p, w.q, fraction_overlap(gs, subset, role)));
  };
  MutualInfo mi;
  mi.system_entropy = entropy(OverlapRole::system);
  mi.fraction_entropy = entropy(OverlapRole::fraction);
  mi.joint_entropy = entropy(OverlapRole::joint);
  mi.mutual_information = mi.system_entropy + mi.fraction_entropy - mi.joint_entropy;
  return mi;
}

double system_coherence(const CumulativeCouplings& gs, const SystemWeights& w) {
  w.validate();
  double c = std::sqrt(w.p * w.q);
  for (double g : gs.values()) c *= std::abs(std::cos(2.0 * g));
  return c;
}

double ancilla_coherence(double g_k, const SystemWeights& w) {
  w.validate();
  return 0.5 * std::abs(w.p * std::polar(1.0, -2.0 * g_k) + w.q * std::polar(1.0, 2.0 * g_k));
}

std::vector<SeriesPoint> single_ancilla_mi_series(int n_ancillas, double jz_t, int n_max,
                                                  const SystemWeights& w) {
  if (n_ancillas < 2) throw Error(ErrorCode::InvalidCounts, "series needs at least two ancillas");
  if (n_max < 1) throw Error(ErrorCode::InvalidCounts, "n_max must be >= 1");
  const QubitSubset first{1};
  std::vector<SeriesPoint> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const auto gs = CumulativeCouplings::uniform(n_ancillas, n * jz_t);
    const auto mi = dephasing_mutual_information(gs, first, w);
    out.push_back({n, mi.mutual_information, mi.system_entropy, system_coherence(gs, w),
                   ancilla_coherence(gs[1], w)});
  }
  return out;
}

}  // namespace darwin
