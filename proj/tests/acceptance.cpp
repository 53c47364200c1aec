// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "darwin/analytic.hpp"
#include "darwin/cli.hpp"
#include "darwin/collision.hpp"
#include "darwin/experiments.hpp"
#include "darwin/io.hpp"
#include "darwin/qcore.hpp"

using namespace darwin;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- 1: closed form vs statevector -------------------------------------------

PureState evolve_dephasing(const std::vector<double>& g) {
  const int n = static_cast<int>(g.size());
  PureState s = build_initial_state(InitialSystemState::plus(), n);
  for (int k = 1; k <= n; ++k) s.apply(collision_unitary({0.0, 0.0, 1.0, g[static_cast<std::size_t>(k - 1)]}), 0, k);
  return s;
}

/// Largest |analytic - brute| over every nonempty fraction; -1 if the two
/// disagree on whether the normalization is defined.
double worst_fraction_gap(const std::vector<double>& g) {
  const int n = static_cast<int>(g.size());
  const PureState s = evolve_dephasing(g);
  const CumulativeCouplings gs(g);
  const double s_sys = von_neumann_entropy(reduced_spectrum(s, {0}));
  double worst = 0.0;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    const QubitSubset f = QubitSubset::from_mask(bits << 1);
    const auto closed = dephasing_mutual_information(gs, f);
    const bool brute_defined = s_sys >= kUndefinedEntropy;
    if (brute_defined != closed.normalized_defined()) return -1.0;
    if (!brute_defined) continue;
    const double brute = mutual_information(s, {0}, f) / s_sys;
    worst = std::max(worst, std::abs(brute - closed.normalized()));
  }
  return worst;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::mt19937_64 gen(20240101);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  double worst = 0.0;
  int cases = 0;
  for (int n = 2; n <= 8; ++n) {
    std::vector<std::vector<double>> inputs;
    for (int step = 0; step * 0.1 <= std::numbers::pi; ++step) inputs.emplace_back(n, step * 0.1);
    for (int v = 0; v < 50; ++v) {
      std::vector<double> g(static_cast<std::size_t>(n));
      for (auto& x : g) x = angle(gen);
      inputs.push_back(std::move(g));
    }
    for (const auto& g : inputs) {
      const double gap = worst_fraction_gap(g);
      ++cases;
      if (gap < 0) {
        o.require(false, "definedness mismatch at N = " + std::to_string(n));
        continue;
      }
      worst = std::max(worst, gap);
    }
  }
  const double t = elapsed(start);
  o.require(worst <= 1e-9, "max |dI_bar| = " + fmt(worst));
  o.require(t < 120.0, "runtime " + fmt(t) + " s");
  o.note(std::to_string(cases) + " coupling vectors, max |dI_bar| = " + fmt(worst) + ", " + fmt(t) + " s");
  return o;
}

// --- 2: exact plateau --------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (int n : {6, 100}) {
    const auto gs = CumulativeCouplings::uniform(n, std::numbers::pi / 4);
    if (n <= kMaxExactEnvironment) {
      const auto curve = analytic_fraction_curve(gs, {}, ExactAllSubsets{});
      for (const auto& p : curve.points) {
        const double target = p.r == n ? 2.0 : 1.0;
        worst = std::max(worst, std::abs(*p.mi_bar_mean - target));
        worst = std::max(worst, p.mi_bar_stddev);
      }
    }
    for (int r = 1; r <= n; ++r) {
      const double target = r == n ? 2.0 : 1.0;
      worst = std::max(worst, std::abs(dephasing_mutual_information(gs, QubitSubset::range(1, r)).normalized() - target));
    }
  }
  o.require(worst <= 1e-12, "max deviation " + fmt(worst));
  o.note("N in {6, 100}, max deviation " + fmt(worst));
  return o;
}

// --- 3: single-ancilla series ------------------------------------------------

Outcome criterion3() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  const auto series = single_ancilla_mi_series(6, 0.025, 63);
  const auto& origin = series.front();

  int first_match = -1;
  for (const auto& p : series) {
    if (p.n >= 1 && std::abs(p.single_ancilla_mi - p.system_entropy) < 1e-3) {
      first_match = p.n;
      break;
    }
  }
  o.require(first_match == 31, "(a) |I - S_S| < 1e-3 first at n = " + std::to_string(first_match));

  bool returned = false;
  double closest = 1e9;
  int closest_n = -1;
  for (int n = 61; n <= 63; ++n) {
    const auto& p = series[static_cast<std::size_t>(n)];
    const double gap = std::max({std::abs(p.single_ancilla_mi - origin.single_ancilla_mi),
                                 std::abs(p.system_entropy - origin.system_entropy),
                                 std::abs(p.system_coherence - origin.system_coherence),
                                 std::abs(p.ancilla_coherence - origin.ancilla_coherence)});
    if (gap < closest) {
      closest = gap;
      closest_n = n;
    }
    returned = returned || gap < 1e-3;
  }
  o.require(returned, "(b) nearest return at n = " + std::to_string(closest_n) + " is off by " + fmt(closest));

  bool decohered = true;
  for (int n = 23; n <= 27; ++n) {
    decohered = decohered && series[static_cast<std::size_t>(n)].system_coherence < 0.01 * origin.system_coherence;
  }
  o.require(decohered, "(c) coherence not below 1% across n = 25 +- 2");

  const double t = elapsed(start);
  o.require(t < 1.0, "runtime " + fmt(t) + " s");
  o.note("(a) n = " + std::to_string(first_match) + ", (b) best n = " + std::to_string(closest_n) + " gap " +
         fmt(closest) + ", (c) " + (decohered ? "ok" : "no"));
  return o;
}

// --- 4: partial decoherence --------------------------------------------------

int first_r_at_least(const FractionCurve& c, double level) {
  for (const auto& p : c.points) {
    if (p.mi_bar_mean && *p.mi_bar_mean >= level) return p.r;
  }
  return -1;
}

Outcome criterion4() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  const auto curves = fig3a_experiment(100, {5, 15, 31, 55}, 0.025);
  double worst = 0.0;
  for (int r = 1; r <= 99; ++r) worst = std::max(worst, std::abs(*curves[2].curve.at(r).mi_bar_mean - 1.0));
  o.require(worst <= 1e-3, "n = 31 deviates by " + fmt(worst));

  const double f15 = first_r_at_least(curves[1].curve, 0.99) / 100.0;
  const double f55 = first_r_at_least(curves[3].curve, 0.99) / 100.0;
  o.require(std::abs(f15 - 0.1) <= 0.05, "n = 15 reaches 0.99 at f = " + fmt(f15));
  o.require(std::abs(f55 - 0.35) <= 0.08, "n = 55 reaches 0.99 at f = " + fmt(f55));
  const double t = elapsed(start);
  o.require(t < 1.0, "runtime " + fmt(t) + " s");
  o.note("n = 31 max dev " + fmt(worst) + ", f15 = " + fmt(f15) + ", f55 = " + fmt(f55));
  return o;
}

// --- 5: biased couplings -----------------------------------------------------

double chord_deviation(const FractionCurve& c) {
  const int n = c.n_env;
  const double lo = *c.at(1).mi_bar_mean;
  const double hi = *c.at(n).mi_bar_mean;
  double worst = 0.0;
  for (int r = 1; r <= n; ++r) {
    const double chord = lo + (hi - lo) * (r - 1) / (n - 1);
    worst = std::max(worst, std::abs(*c.at(r).mi_bar_mean - chord));
  }
  return worst;
}

Outcome criterion5() {
  Outcome o;
  const auto analytic = fig3b_experiment(6, 31, 60, 0.025, Engine::analytic);
  const auto brute = fig3b_experiment(6, 31, 60, 0.025, Engine::statevector);
  for (const auto* res : {&analytic, &brute}) {
    const std::string tag = res == &analytic ? "analytic" : "statevector";
    const double first = *res->by_position[0].at(1).mi_bar_mean;
    const double second = *res->by_position[1].at(1).mi_bar_mean;
    const double dev = chord_deviation(res->averaged);
    o.require(first >= 1.5, tag + " special-first I_bar(1) = " + fmt(first));
    o.require(second <= 0.2, tag + " special-second I_bar(1) = " + fmt(second));
    o.require(dev < 0.15, tag + " chord deviation " + fmt(dev));
    if (res == &analytic) o.note("I_bar(1) " + fmt(first) + " / " + fmt(second) + ", chord dev " + fmt(dev));
  }
  double gap = 0.0;
  for (int r = 1; r <= 6; ++r) {
    gap = std::max(gap, std::abs(*analytic.averaged.at(r).mi_bar_mean - *brute.averaged.at(r).mi_bar_mean));
    for (std::size_t p = 0; p < 6; ++p) {
      gap = std::max(gap, std::abs(*analytic.by_position[p].at(r).mi_bar_mean -
                                   *brute.by_position[p].at(r).mi_bar_mean));
    }
  }
  o.require(gap <= 1e-9, "engines differ by " + fmt(gap));
  o.note("engine gap " + fmt(gap));
  return o;
}

// --- 6 and 7: random-collision ensembles -------------------------------------

FractionCurve fig1_cell(Interaction i, Strength s) {
  Fig1Options opts;
  opts.sizes = {6};
  opts.interactions = {i};
  opts.strengths = {s};
  opts.collisions = 250;
  opts.runs = 50;
  opts.seed = 7;
  return fig1_experiment(opts).front().curve;
}

double interior_spread(const FractionCurve& c) {
  double lo = 1e9;
  double hi = -1e9;
  for (int r = 1; r < c.n_env; ++r) {
    lo = std::min(lo, *c.at(r).mi_bar_mean);
    hi = std::max(hi, *c.at(r).mi_bar_mean);
  }
  return hi - lo;
}

Outcome criterion6() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  const auto z_weak = fig1_cell(Interaction::z, Strength::weak);
  const auto xx_weak = fig1_cell(Interaction::xx, Strength::weak);
  const auto z_strong = fig1_cell(Interaction::z, Strength::strong);

  for (int r = 2; r <= 4; ++r) {
    const double v = *z_weak.at(r).mi_bar_mean;
    o.require(v >= 0.9 && v <= 1.1, "weak Z I_bar(" + std::to_string(r) + ") = " + fmt(v));
  }
  o.require(*xx_weak.at(1).mi_bar_mean < 0.5, "weak XX I_bar(1) = " + fmt(*xx_weak.at(1).mi_bar_mean));
  for (int r = 2; r <= 6; ++r) {
    o.require(*xx_weak.at(r).mi_bar_mean >= *xx_weak.at(r - 1).mi_bar_mean,
              "weak XX decreases at r = " + std::to_string(r));
  }
  o.require(std::abs(*xx_weak.at(6).mi_bar_mean - 2.0) <= 1e-6, "weak XX I_bar(N) = " + fmt(*xx_weak.at(6).mi_bar_mean));
  const double weak_spread = interior_spread(z_weak);
  const double strong_spread = interior_spread(z_strong);
  o.require(strong_spread > weak_spread, "strong spread " + fmt(strong_spread) + " <= weak " + fmt(weak_spread));

  const double t = elapsed(start);
  o.require(t < 300.0, "runtime " + fmt(t) + " s");
  o.note("weak Z I_bar(2..4) = " + fmt(*z_weak.at(2).mi_bar_mean) + ", " + fmt(*z_weak.at(3).mi_bar_mean) + ", " +
         fmt(*z_weak.at(4).mi_bar_mean) + "; XX I_bar(1) = " + fmt(*xx_weak.at(1).mi_bar_mean) +
         "; spread strong " + fmt(strong_spread) + " vs weak " + fmt(weak_spread) + "; " + fmt(t) + " s");
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome criterion7() {
  Outcome o;
  std::random_device rd;
  const fs::path root = fs::temp_directory_path() / ("darwin_accept_" + std::to_string(rd()));
  std::vector<std::string> names;
  for (int rep = 0; rep < 2; ++rep) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"simulate", "--experiment", "fig1", "--N", "6", "--coupling", "both", "--preset",
                               "both", "--collisions", "250", "--runs", "50", "--seed", "7", "--out",
                               (root / std::to_string(rep)).string()},
                              out, err);
    o.require(code == 0, "simulate exited " + std::to_string(code) + ": " + err.str());
  }
  int compared = 0;
  if (o.pass) {
    for (const auto& entry : fs::directory_iterator(root / "0")) {
      if (entry.path().extension() != ".csv") continue;
      ++compared;
      const auto other = root / "1" / entry.path().filename();
      o.require(fs::exists(other) && slurp(entry.path()) == slurp(other),
                entry.path().filename().string() + " differs");
    }
  }
  o.require(compared == 4, "expected 4 CSVs, compared " + std::to_string(compared));
  o.note(std::to_string(compared) + " CSVs byte-identical across two runs");
  fs::remove_all(root);
  return o;
}

// --- 8: properties -----------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 gen(88);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto random_state = [&](int n) {
    std::vector<cplx> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : v) {
      a = cplx(nd(gen), nd(gen));
      norm += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(norm);
    return PureState::from_amplitudes(std::move(v));
  };
  const auto random_mask = [&](int width) {
    return std::uniform_int_distribution<std::uint64_t>(1, (std::uint64_t{1} << width) - 2)(gen);
  };
  const auto haar = [&] {
    Rng rng(gen());
    return InitialSystemState::haar_random(rng);
  };

  double norm_err = 0.0;
  double schmidt_err = 0.0;
  double commute_err = 0.0;
  double magnet_err = 0.0;
  double complement_err = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 7);

    PureState s = random_state(n);
    for (int step = 0; step < 8; ++step) {
      Gate4 m;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = cplx(nd(gen), nd(gen));
      const Gate4 u = Eigen::HouseholderQR<Gate4>(m).householderQ() * Gate4::Identity();
      const int qa = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
      const int qb = (qa + 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n - 1))) % n;
      s.apply(u, qa, qb);
    }
    norm_err = std::max(norm_err, std::abs(s.norm() - 1.0));

    const QubitSubset keep = QubitSubset::from_mask(random_mask(n));
    const auto a = reduced_spectrum(s, keep);
    const auto b = reduced_spectrum(s, keep.complement(n));
    for (std::size_t i = 0; i < a.size(); ++i) schmidt_err = std::max(schmidt_err, std::abs(a[i] - b[i]));

    const int n_env = n - 1 >= 1 ? n - 1 : 1;
    std::vector<int> seq;
    for (int k = 0; k < 16; ++k) seq.push_back(1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n_env)));
    auto shuffled = seq;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const Gate4 uz = collision_unitary({0.0, 0.0, 2 * uni(gen) - 1, uni(gen)});
    const auto start = build_initial_state(haar(), n_env);
    const auto x = run_schedule(start, CollisionSchedule(ScheduleKind::random_uniform, n_env, seq), uz);
    const auto y = run_schedule(start, CollisionSchedule(ScheduleKind::random_uniform, n_env, shuffled), uz);
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) overlap += std::conj(x[i]) * y[i];
    commute_err = std::max(commute_err, std::abs(std::norm(overlap) - 1.0));

    const Gate4 uxx = collision_unitary({1.0, 1.0, 0.0, uni(gen)});
    auto z = build_initial_state(haar(), n_env);
    const auto magnetization = [](const PureState& st) {
      double m = 0.0;
      for (std::size_t i = 0; i < st.dim(); ++i) m += std::norm(st[i]) * (st.num_qubits() - 2 * std::popcount(i));
      return m;
    };
    const double m0 = magnetization(z);
    for (int k : seq) {
      z.apply(uxx, 0, k);
      magnet_err = std::max(magnet_err, std::abs(magnetization(z) - m0));
    }

    if (n_env >= 2) {
      std::vector<double> g(static_cast<std::size_t>(n_env));
      for (auto& v : g) v = std::numbers::pi * uni(gen);
      const CumulativeCouplings gs(g);
      const QubitSubset f = QubitSubset::from_mask(random_mask(n_env) << 1);
      const QubitSubset comp = QubitSubset::from_mask(QubitSubset::range(1, n_env).mask() & ~f.mask());
      const auto mf = dephasing_mutual_information(gs, f);
      const auto mc = dephasing_mutual_information(gs, comp);
      if (mf.system_entropy > 1e-6) {
        complement_err = std::max(complement_err, std::abs(mf.normalized() + mc.normalized() - 2.0));
      }
    }
  }
  o.require(norm_err <= 1e-12, "norm drift " + fmt(norm_err));
  o.require(schmidt_err <= 1e-12, "Schmidt mismatch " + fmt(schmidt_err));
  o.require(commute_err <= 1e-10, "Z commutation infidelity " + fmt(commute_err));
  o.require(magnet_err <= 1e-10, "XX magnetization drift " + fmt(magnet_err));
  o.require(complement_err <= 1e-9, "complement symmetry " + fmt(complement_err));
  o.note("norm " + fmt(norm_err) + ", Schmidt " + fmt(schmidt_err) + ", Z commute " + fmt(commute_err) +
         ", XX magnetization " + fmt(magnet_err) + ", complement " + fmt(complement_err) +
         " (unit property suite: test_properties)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 oracle equivalence", criterion1},   {"2 exact plateau", criterion2},
      {"3 single-ancilla series", criterion3}, {"4 partial decoherence curves", criterion4},
      {"5 biased couplings", criterion5},      {"6 random-collision ensembles", criterion6},
      {"7 determinism", criterion7},           {"8 property suites", criterion8},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
