#include "darwin/experiments.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "darwin/error.hpp"
#include "darwin/parallel.hpp"
#include "darwin/rng.hpp"

namespace darwin {

namespace {

void combinations(int n, int r, int start, std::vector<int>& current, std::vector<QubitSubset>& out) {
  if (static_cast<int>(current.size()) == r) {
    out.emplace_back(current);
    return;
  }
  for (int k = start; k <= n - (r - static_cast<int>(current.size())) + 1; ++k) {
    current.push_back(k);
    combinations(n, r, k + 1, current, out);
    current.pop_back();
  }
}

void check_fraction(int n_env, const QubitSubset& fraction) {
  if (fraction.empty()) throw Error(ErrorCode::EmptySubset, "fraction must be nonempty");
  if (fraction.indices().front() < 1 || fraction.indices().back() > n_env) {
    throw Error(ErrorCode::InvalidSubset, "fraction labels must lie in [1, " + std::to_string(n_env) + "]");
  }
}

PureState dephased_statevector(const std::vector<int>& counts, double jz_t) {
  const int n = static_cast<int>(counts.size());
  const auto schedule = make_schedule(Biased{counts}, n);
  return run_schedule(build_initial_state(InitialSystemState::plus(), n), schedule,
                      collision_unitary({0.0, 0.0, 1.0, jz_t}));
}

}  // namespace

ExplicitSubsets ExplicitSubsets::prefixes(int n_env) {
  ExplicitSubsets out;
  for (int r = 1; r <= n_env; ++r) out.subsets.push_back(QubitSubset::range(1, r));
  return out;
}

std::vector<QubitSubset> subsets_of_size(int n_env, int r, const Averaging& averaging) {
  std::vector<QubitSubset> out;
  if (std::holds_alternative<ExactAllSubsets>(averaging)) {
    if (n_env > kMaxExactEnvironment) {
      throw Error(ErrorCode::TooManySubsets, "exact averaging is limited to N <= 12, got N = " +
                                                 std::to_string(n_env));
    }
    std::vector<int> current;
    combinations(n_env, r, 1, current, out);
  } else if (const auto* sampled = std::get_if<SampledSubsets>(&averaging)) {
    if (sampled->per_size < 1) throw Error(ErrorCode::InvalidConfig, "sampled averaging needs per_size >= 1");
    Rng rng(Rng::derive(sampled->seed, static_cast<std::uint64_t>(r)));
    std::vector<int> labels(static_cast<std::size_t>(n_env));
    for (int s = 0; s < sampled->per_size; ++s) {
      std::iota(labels.begin(), labels.end(), 1);
      for (int i = 0; i < r; ++i) {
        const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n_env - i));
        std::swap(labels[static_cast<std::size_t>(i)], labels[j]);
      }
      out.emplace_back(std::vector<int>(labels.begin(), labels.begin() + r));
    }
  } else {
    for (const auto& s : std::get<ExplicitSubsets>(averaging).subsets) {
      check_fraction(n_env, s);
      if (static_cast<int>(s.size()) == r) out.push_back(s);
    }
  }
  return out;
}

const FractionPoint& FractionCurve::at(int r) const {
  for (const auto& p : points) {
    if (p.r == r) return p;
  }
  throw Error(ErrorCode::IndexOutOfRange, "curve has no point at r = " + std::to_string(r));
}

int FractionCurve::excluded() const noexcept {
  int total = 0;
  for (const auto& p : points) total += p.n_excluded;
  return total;
}

RunSamples collect_samples(int n_env, const Averaging& averaging, const SubsetEvaluator& eval) {
  RunSamples out;
  for (int r = 1; r <= n_env; ++r) {
    const auto subsets = subsets_of_size(n_env, r, averaging);
    if (subsets.empty()) continue;
    FractionSamples samples{r, {}, {}};
    for (const auto& s : subsets) {
      const MutualInfo mi = eval(s);
      samples.mi.push_back(mi.mutual_information);
      samples.mi_bar.push_back(mi.try_normalized());
    }
    out.push_back(std::move(samples));
  }
  return out;
}

FractionCurve summarize_runs(int n_env, const Averaging& averaging, const std::vector<RunSamples>& runs) {
  FractionCurve curve{n_env, {}, averaging};
  if (runs.empty()) return curve;
  for (std::size_t idx = 0; idx < runs.front().size(); ++idx) {
    FractionPoint point;
    point.r = runs.front()[idx].r;
    point.f = static_cast<double>(point.r) / n_env;
    double mi_sum = 0.0;
    std::vector<double> ratios;
    for (const auto& run : runs) {
      const auto& s = run.at(idx);
      for (std::size_t k = 0; k < s.mi.size(); ++k) {
        mi_sum += s.mi[k];
        ++point.n_samples;
        if (s.mi_bar[k]) {
          ratios.push_back(*s.mi_bar[k]);
        } else {
          ++point.n_excluded;
        }
      }
    }
    point.mi_mean = mi_sum / point.n_samples;
    if (!ratios.empty()) {
      double sum = 0.0;
      for (double v : ratios) sum += v;
      const double mean = sum / static_cast<double>(ratios.size());
      double sq = 0.0;
      for (double v : ratios) sq += (v - mean) * (v - mean);
      point.mi_bar_mean = mean;
      point.mi_bar_stddev = std::sqrt(sq / static_cast<double>(ratios.size()));
    }
    curve.points.push_back(point);
  }
  return curve;
}

StatevectorEvaluator::StatevectorEvaluator(const PureState& state)
    : state_(state),
      n_env_(state.num_qubits() - 1),
      all_mask_(QubitSubset::range(1, state.num_qubits() - 1).mask()),
      system_entropy_(von_neumann_entropy(reduced_spectrum(state, QubitSubset{0}))),
      cache_(std::size_t{1} << (n_env_ <= 16 ? n_env_ : 0)) {}

double StatevectorEvaluator::ancilla_entropy(std::uint64_t mask) {
  if (mask == 0) return 0.0;
  const bool cached = n_env_ <= 16;
  const std::size_t slot = static_cast<std::size_t>(mask >> 1);
  if (cached && cache_[slot]) return *cache_[slot];
  const double s = von_neumann_entropy(reduced_spectrum(state_, QubitSubset::from_mask(mask)));
  if (cached) cache_[slot] = s;
  return s;
}

MutualInfo StatevectorEvaluator::operator()(const QubitSubset& fraction) {
  check_fraction(n_env_, fraction);
  MutualInfo mi;
  mi.system_entropy = system_entropy_;
  mi.fraction_entropy = ancilla_entropy(fraction.mask());
  // Pure global state: S(system + F) = S(ancillas outside F).
  mi.joint_entropy = ancilla_entropy(all_mask_ & ~fraction.mask());
  mi.mutual_information = mi.system_entropy + mi.fraction_entropy - mi.joint_entropy;
  return mi;
}

FractionCurve mi_vs_fraction(const PureState& state, const Averaging& averaging) {
  const int n_env = state.num_qubits() - 1;
  StatevectorEvaluator eval(state);
  return summarize_runs(n_env, averaging, {collect_samples(n_env, averaging, std::ref(eval))});
}

FractionCurve analytic_fraction_curve(const CumulativeCouplings& gs, const SystemWeights& w,
                                      const Averaging& averaging) {
  const auto eval = [&](const QubitSubset& s) { return dephasing_mutual_information(gs, s, w); };
  return summarize_runs(gs.n_ancillas(), averaging, {collect_samples(gs.n_ancillas(), averaging, eval)});
}

double plateau_metric(const FractionCurve& curve, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1)");
  int interior = 0;
  int flat = 0;
  for (const auto& p : curve.points) {
    if (p.r < 1 || p.r > curve.n_env - 1) continue;
    if (!p.mi_bar_mean) {
      throw Error(ErrorCode::UndefinedPoints, "normalized MI undefined at r = " + std::to_string(p.r));
    }
    ++interior;
    if (std::abs(*p.mi_bar_mean - 1.0) <= delta) ++flat;
  }
  if (interior == 0) throw Error(ErrorCode::UndefinedPoints, "curve has no interior points");
  return static_cast<double>(flat) / interior;
}

void ExperimentConfig::validate() const {
  if (n_env < 1 || n_env > kMaxAncillas) {
    throw Error(ErrorCode::TooManyAncillas, "N = " + std::to_string(n_env) + " outside [1, 25]");
  }
  if (n_runs < 1) throw Error(ErrorCode::InvalidConfig, "n_runs must be >= 1");
  coupling.validate();
  if (const auto* fixed = std::get_if<FixedSystem>(&system)) fixed->state.validate();
  if (std::holds_alternative<ExactAllSubsets>(averaging) && n_env > kMaxExactEnvironment) {
    throw Error(ErrorCode::TooManySubsets, "exact averaging is limited to N <= 12");
  }
  (void)make_schedule(schedule, n_env, seed);
}

FractionCurve run_ensemble(const ExperimentConfig& cfg) {
  cfg.validate();
  const Gate4 u = collision_unitary(cfg.coupling);
  std::vector<RunSamples> runs(static_cast<std::size_t>(cfg.n_runs));
  parallel_for(runs.size(), [&](std::size_t i) {
    Rng rng(Rng::derive(cfg.seed, i));
    const InitialSystemState sys = std::holds_alternative<HaarSystem>(cfg.system)
                                       ? InitialSystemState::haar_random(rng)
                                       : std::get<FixedSystem>(cfg.system).state;
    const std::uint64_t schedule_seed = rng.next();
    const auto schedule = make_schedule(cfg.schedule, cfg.n_env, schedule_seed);
    const PureState state = run_schedule(build_initial_state(sys, cfg.n_env), schedule, u);
    StatevectorEvaluator eval(state);
    runs[i] = collect_samples(cfg.n_env, cfg.averaging, std::ref(eval));
  });
  return summarize_runs(cfg.n_env, cfg.averaging, runs);
}

std::vector<Fig1Curve> fig1_experiment(const Fig1Options& opts) {
  std::vector<Fig1Curve> out;
  for (int n : opts.sizes) {
    for (Interaction interaction : opts.interactions) {
      for (Strength strength : opts.strengths) {
        ExperimentConfig cfg;
        cfg.n_env = n;
        cfg.coupling = preset(interaction, strength);
        cfg.schedule = RandomUniform{opts.collisions};
        cfg.n_runs = opts.runs;
        cfg.system = HaarSystem{};
        cfg.averaging = ExactAllSubsets{};
        cfg.seed = opts.seed;
        out.push_back({n, interaction, strength, run_ensemble(cfg)});
      }
    }
  }
  return out;
}

std::vector<Fig2Series> fig2_experiment(const std::vector<int>& sizes, int n_max, double jz_t) {
  std::vector<Fig2Series> out;
  for (int n : sizes) out.push_back({n, single_ancilla_mi_series(n, jz_t, n_max)});
  return out;
}

std::vector<Fig3aCurve> fig3a_experiment(int n_env, const std::vector<int>& n_set, double jz_t,
                                         Engine engine) {
  if (engine == Engine::statevector && (n_env < 1 || n_env > kMaxAncillas)) {
    throw Error(ErrorCode::TooManyAncillas, "statevector engine needs N <= 25");
  }
  std::vector<Fig3aCurve> out;
  const Averaging prefixes = ExplicitSubsets::prefixes(n_env);
  for (int n : n_set) {
    if (n < 0) throw Error(ErrorCode::InvalidCounts, "collision count must be >= 0");
    const std::vector<int> counts(static_cast<std::size_t>(n_env), n);
    FractionCurve curve =
        engine == Engine::analytic
            ? analytic_fraction_curve(CumulativeCouplings::from_counts(counts, jz_t), {}, prefixes)
            : mi_vs_fraction(dephased_statevector(counts, jz_t), prefixes);
    out.push_back({n, std::move(curve)});
  }
  return out;
}

Fig3bResult fig3b_experiment(int n_env, int special_n, int other_n, double jz_t, Engine engine) {
  if (n_env < 2 || n_env > kMaxExactEnvironment) {
    throw Error(ErrorCode::TooManySubsets, "biased study needs 2 <= N <= 12");
  }
  const auto curve_for = [&](const std::vector<int>& counts, const Averaging& averaging) {
    return engine == Engine::analytic
               ? analytic_fraction_curve(CumulativeCouplings::from_counts(counts, jz_t), {}, averaging)
               : mi_vs_fraction(dephased_statevector(counts, jz_t), averaging);
  };
  Fig3bResult result;
  for (int pos = 1; pos <= n_env; ++pos) {
    std::vector<int> counts(static_cast<std::size_t>(n_env), other_n);
    counts[static_cast<std::size_t>(pos - 1)] = special_n;
    result.by_position.push_back(curve_for(counts, ExplicitSubsets::prefixes(n_env)));
  }
  std::vector<int> counts(static_cast<std::size_t>(n_env), other_n);
  counts[0] = special_n;
  result.averaged = curve_for(counts, ExactAllSubsets{});
  return result;
}

}  // namespace darwin
