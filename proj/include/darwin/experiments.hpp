#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "darwin/analytic.hpp"
#include "darwin/collision.hpp"
#include "darwin/qcore.hpp"

namespace darwin {

// --- subset averaging policies -----------------------------------------------

/// Every subset of every size r; limited to N <= 12.
struct ExactAllSubsets {};
/// `per_size` uniformly drawn subsets for each r.
struct SampledSubsets {
  int per_size = 1;
  std::uint64_t seed = 0;
};
/// Caller-chosen subsets of ancilla labels; same-size entries are averaged.
struct ExplicitSubsets {
  std::vector<QubitSubset> subsets;

  /// {1}, {1,2}, ..., {1..N}.
  static ExplicitSubsets prefixes(int n_env);
};
using Averaging = std::variant<ExactAllSubsets, SampledSubsets, ExplicitSubsets>;

inline constexpr int kMaxExactEnvironment = 12;

/// Subsets of {1..N} evaluated for size r under `averaging` (empty if the
/// policy has none of that size).
std::vector<QubitSubset> subsets_of_size(int n_env, int r, const Averaging& averaging);

// --- fraction curves ---------------------------------------------------------

struct FractionPoint {
  int r = 0;
  double f = 0.0;
  double mi_mean = 0.0;
  /// Mean of I/S_S over samples where it is defined; empty if none are.
  std::optional<double> mi_bar_mean;
  /// Population standard deviation of the defined I/S_S samples.
  double mi_bar_stddev = 0.0;
  int n_samples = 0;
  int n_excluded = 0;
};

struct FractionCurve {
  int n_env = 0;
  std::vector<FractionPoint> points;
  Averaging averaging;

  const FractionPoint& at(int r) const;
  int excluded() const noexcept;
};

/// Raw per-subset results for one state; pooled by summarize_runs.
struct FractionSamples {
  int r = 0;
  std::vector<double> mi;
  std::vector<std::optional<double>> mi_bar;
};
using RunSamples = std::vector<FractionSamples>;

using SubsetEvaluator = std::function<MutualInfo(const QubitSubset&)>;

RunSamples collect_samples(int n_env, const Averaging& averaging, const SubsetEvaluator& eval);

/// Pools runs in the given order (ratio first, then mean), so the result is
/// independent of how the runs were scheduled.
FractionCurve summarize_runs(int n_env, const Averaging& averaging, const std::vector<RunSamples>& runs);

/// Entropy bookkeeping on one pure state: each ancilla-subset entropy is
/// diagonalized once, and S(system + F) is read off as S(ancillas outside F).
class StatevectorEvaluator {
 public:
  explicit StatevectorEvaluator(const PureState& state);

  MutualInfo operator()(const QubitSubset& fraction);

 private:
  double ancilla_entropy(std::uint64_t mask);

  const PureState& state_;
  int n_env_;
  std::uint64_t all_mask_;
  double system_entropy_;
  std::vector<std::optional<double>> cache_;
};

/// Brute-force I and I/S_S versus fraction size for one state (qubit 0 = system).
FractionCurve mi_vs_fraction(const PureState& state, const Averaging& averaging);

/// Closed-form counterpart for the dephased state.
FractionCurve analytic_fraction_curve(const CumulativeCouplings& gs, const SystemWeights& w,
                                      const Averaging& averaging);

/// Share of interior points r in [1, N-1] with |I/S_S - 1| <= delta.
double plateau_metric(const FractionCurve& curve, double delta);

// --- ensembles ---------------------------------------------------------------

struct FixedSystem {
  InitialSystemState state;
};
struct HaarSystem {};
using SystemPolicy = std::variant<FixedSystem, HaarSystem>;

struct ExperimentConfig {
  int n_env = 6;
  CouplingSpec coupling = preset(Interaction::z, Strength::weak);
  ScheduleSpec schedule = RandomUniform{250};
  int n_runs = 1;
  SystemPolicy system = HaarSystem{};
  Averaging averaging = ExactAllSubsets{};
  std::uint64_t seed = 0;

  void validate() const;
};

/// Statevector ensemble. Run i draws from Rng(Rng::derive(seed, i)): first the
/// system state (Haar policy only), then one 64-bit word that seeds the
/// random schedule.
FractionCurve run_ensemble(const ExperimentConfig& cfg);

// --- experiment drivers ------------------------------------------------------

enum class Engine { analytic, statevector };

struct Fig1Options {
  std::vector<int> sizes{6, 7, 8, 9};
  std::vector<Interaction> interactions{Interaction::z, Interaction::xx};
  std::vector<Strength> strengths{Strength::weak, Strength::strong};
  int collisions = 250;
  int runs = 50;
  std::uint64_t seed = 7;
};

struct Fig1Curve {
  int n_env = 0;
  Interaction interaction = Interaction::z;
  Strength strength = Strength::weak;
  FractionCurve curve;
};

/// Random schedules, Haar-random system states, exact subset averaging.
/// Every grid cell reuses `seed`, so cells differ only in N and coupling.
std::vector<Fig1Curve> fig1_experiment(const Fig1Options& opts);

struct Fig2Series {
  int n_env = 0;
  std::vector<SeriesPoint> points;
};

std::vector<Fig2Series> fig2_experiment(const std::vector<int>& sizes = {6, 10, 100, 1000},
                                        int n_max = 62, double jz_t = 0.025);

struct Fig3aCurve {
  int collisions_per_ancilla = 0;
  FractionCurve curve;
};

/// Uniform couplings; same-size subsets are equivalent, so prefixes are used.
std::vector<Fig3aCurve> fig3a_experiment(int n_env = 100, const std::vector<int>& n_set = {5, 15, 31, 55},
                                         double jz_t = 0.025, Engine engine = Engine::analytic);

struct Fig3bResult {
  /// Entry p-1: the special ancilla sits at position p; prefix fractions.
  std::vector<FractionCurve> by_position;
  /// Exact average over all subsets of each size.
  FractionCurve averaged;
};

Fig3bResult fig3b_experiment(int n_env = 6, int special_n = 31, int other_n = 60, double jz_t = 0.025,
                             Engine engine = Engine::analytic);

}  // namespace darwin
