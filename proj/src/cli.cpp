#include "darwin/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "darwin/analytic.hpp"
#include "darwin/collision.hpp"
#include "darwin/error.hpp"
#include "darwin/experiments.hpp"
#include "darwin/io.hpp"

namespace darwin::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct ConfigError : std::runtime_error {
  ConfigError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
  int exit_code;
};

[[noreturn]] void bad_field(std::string_view field, const std::string& msg) {
  throw ConfigError(kConfigError, "field '" + std::string(field) + "': " + msg);
}

void require(bool ok, std::string_view field, const std::string& msg) {
  if (!ok) throw ConfigError(kCapViolation, "field '" + std::string(field) + "': " + msg);
}

// ---------------------------------------------------------------------------
// Config schema. Config files use these names as flat JSON keys; the flags
// are the same names with '_' spelled '-'.

enum class KeyType { integer, number, text, integer_list };

struct KeySpec {
  std::string_view name;
  KeyType type;
  std::string_view help;
};

constexpr std::array kKeys = {
    KeySpec{"experiment", KeyType::text, "fig1 | fig2 | fig3a | fig3b | custom"},
    KeySpec{"out", KeyType::text, "output directory"},
    KeySpec{"N", KeyType::integer, "environment size"},
    KeySpec{"N_list", KeyType::integer_list, "environment sizes (comma separated)"},
    KeySpec{"coupling", KeyType::text, "z | xx | both (fig1) | custom (custom)"},
    KeySpec{"preset", KeyType::text, "weak | strong | both (fig1)"},
    KeySpec{"jx", KeyType::number, "XX coupling (custom coupling)"},
    KeySpec{"jy", KeyType::number, "YY coupling (custom coupling)"},
    KeySpec{"jz", KeyType::number, "ZZ coupling"},
    KeySpec{"t", KeyType::number, "collision duration"},
    KeySpec{"jz_t", KeyType::number, "dephasing angle per collision"},
    KeySpec{"collisions", KeyType::integer, "total random collisions per run"},
    KeySpec{"runs", KeyType::integer, "independent runs"},
    KeySpec{"seed", KeyType::integer, "master seed"},
    KeySpec{"schedule", KeyType::text, "random | round_robin | biased"},
    KeySpec{"per_ancilla", KeyType::integer, "round-robin collisions per ancilla"},
    KeySpec{"counts", KeyType::integer_list, "biased per-ancilla collision counts"},
    KeySpec{"system", KeyType::text, "haar | plus | fixed"},
    KeySpec{"alpha_re", KeyType::number, "fixed system amplitude"},
    KeySpec{"alpha_im", KeyType::number, "fixed system amplitude"},
    KeySpec{"beta_re", KeyType::number, "fixed system amplitude"},
    KeySpec{"beta_im", KeyType::number, "fixed system amplitude"},
    KeySpec{"averaging", KeyType::text, "exact | sampled | prefix"},
    KeySpec{"samples", KeyType::integer, "subsets per size for sampled averaging"},
    KeySpec{"n_max", KeyType::integer, "largest per-ancilla collision count (fig2)"},
    KeySpec{"n_set", KeyType::integer_list, "per-ancilla collision counts (fig3a)"},
    KeySpec{"special_n", KeyType::integer, "collisions with the special ancilla (fig3b)"},
    KeySpec{"other_n", KeyType::integer, "collisions with the other ancillas (fig3b)"},
    KeySpec{"engine", KeyType::text, "analytic | statevector (fig3a, fig3b)"},
};

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string flag_name(std::string_view key) {
  std::string s(key);
  for (auto& c : s) {
    if (c == '_') c = '-';
  }
  return "--" + s;
}

template <typename T>
std::optional<T> parse_scalar(std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return v;
}

json flag_to_json(const KeySpec& key, const std::string& raw) {
  const auto fail = [&]() -> json { bad_field(key.name, "cannot parse '" + raw + "'"); };
  const auto split = [&] {
    std::vector<std::string> parts;
    std::stringstream ss(raw);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    return parts;
  };
  switch (key.type) {
    case KeyType::text: return raw;
    case KeyType::integer: {
      const auto v = parse_scalar<long long>(raw);
      return v ? json(*v) : fail();
    }
    case KeyType::number: {
      const auto v = parse_scalar<double>(raw);
      return v ? json(*v) : fail();
    }
    case KeyType::integer_list: {
      json arr = json::array();
      for (const auto& p : split()) {
        const auto v = parse_scalar<long long>(p);
        if (!v) return fail();
        arr.push_back(*v);
      }
      return arr;
    }
  }
  return fail();
}

void check_type(const KeySpec& key, const json& v) {
  const auto is_int = [](const json& x) { return x.is_number_integer(); };
  bool ok = false;
  switch (key.type) {
    case KeyType::text: ok = v.is_string(); break;
    case KeyType::integer: ok = is_int(v); break;
    case KeyType::number: ok = v.is_number(); break;
    case KeyType::integer_list: ok = v.is_array() && std::all_of(v.begin(), v.end(), is_int); break;
  }
  if (!ok) bad_field(key.name, "unexpected type " + std::string(v.type_name()));
}

json load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(kConfigError, "config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(kConfigError, "config: parse error: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ConfigError(kConfigError, "config: top level must be a JSON object");
  // A run manifest embeds the resolved config under "config".
  if (doc.contains("config") && doc.contains("outputs")) doc = doc["config"];
  if (!doc.is_object()) throw ConfigError(kConfigError, "config: 'config' must be a JSON object");
  for (const auto& [name, value] : doc.items()) {
    const KeySpec* key = find_key(name);
    if (!key) bad_field(name, "unknown field");
    check_type(*key, value);
  }
  return doc;
}

// Typed, defaulting view over the merged config; records every value it
// hands out so the manifest can echo the fully resolved configuration.
class Settings {
 public:
  explicit Settings(json raw) : raw_(std::move(raw)) {}

  bool has(std::string_view key) const { return raw_.contains(std::string(key)); }

  long long integer(std::string_view key, long long fallback) { return get<long long>(key, fallback); }
  double number(std::string_view key, double fallback) { return get<double>(key, fallback); }
  std::string text(std::string_view key, const std::string& fallback) { return get<std::string>(key, fallback); }
  std::vector<long long> integers(std::string_view key, const std::vector<long long>& fallback) {
    return get<std::vector<long long>>(key, fallback);
  }

  const json& resolved() const { return resolved_; }

 private:
  template <typename T>
  T get(std::string_view key, const T& fallback) {
    const std::string k(key);
    T v = raw_.contains(k) ? raw_[k].get<T>() : fallback;
    resolved_[k] = v;
    return v;
  }

  json raw_;
  json resolved_ = json::object();
};

int to_int(long long v, std::string_view field) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    require(false, field, "value out of range");
  }
  return static_cast<int>(v);
}

std::vector<int> to_ints(const std::vector<long long>& v, std::string_view field) {
  std::vector<int> out;
  for (long long x : v) out.push_back(to_int(x, field));
  return out;
}

std::vector<int> sizes_from(Settings& s, const std::vector<long long>& fallback) {
  if (s.has("N")) return {to_int(s.integer("N", 0), "N")};
  return to_ints(s.integers("N_list", fallback), "N_list");
}

double angle_per_collision(Settings& s) {
  if (!s.has("jz_t") && s.has("jz") && s.has("t")) return s.number("jz", 1.0) * s.number("t", 0.025);
  return s.number("jz_t", 0.025);
}

Engine engine_from(Settings& s) {
  const auto e = s.text("engine", "analytic");
  if (e == "analytic") return Engine::analytic;
  if (e == "statevector") return Engine::statevector;
  bad_field("engine", "expected analytic | statevector, got '" + e + "'");
}

struct OutputFile {
  std::string name;
  std::string content;
  int rows = 0;
  int excluded = 0;
};

struct Job {
  std::vector<OutputFile> files;
  json seeds = json::object();
  json angles = json::array();
};

OutputFile curve_file(std::string name, const FractionCurve& curve, bool with_stats) {
  return {std::move(name), io::fraction_curve_csv(curve, with_stats), static_cast<int>(curve.points.size()),
          curve.excluded()};
}

// --- experiments ---------------------------------------------------------------

Job run_fig1(Settings& s) {
  Fig1Options opts;
  opts.sizes = sizes_from(s, {6, 7, 8, 9});
  const auto coupling = s.text("coupling", "both");
  const auto strength = s.text("preset", "both");
  opts.collisions = to_int(s.integer("collisions", 250), "collisions");
  opts.runs = to_int(s.integer("runs", 50), "runs");
  opts.seed = static_cast<std::uint64_t>(s.integer("seed", 7));

  if (coupling == "z") opts.interactions = {Interaction::z};
  else if (coupling == "xx") opts.interactions = {Interaction::xx};
  else if (coupling != "both") bad_field("coupling", "expected z | xx | both, got '" + coupling + "'");
  if (strength == "weak") opts.strengths = {Strength::weak};
  else if (strength == "strong") opts.strengths = {Strength::strong};
  else if (strength != "both") bad_field("preset", "expected weak | strong | both, got '" + strength + "'");

  for (int n : opts.sizes) {
    require(n >= 1 && n <= kMaxExactEnvironment, "N", "exact subset averaging needs 1 <= N <= 12");
  }
  require(opts.collisions >= 0, "collisions", "must be >= 0");
  require(opts.runs >= 1, "runs", "must be >= 1");
  require(s.integer("seed", 7) >= 0, "seed", "must be >= 0");

  Job job;
  job.seeds = {{"seed", opts.seed}, {"run_stream", "run i uses mt19937_64(splitmix64(seed, i))"}};
  for (const auto& c : fig1_experiment(opts)) {
    const auto name = "fig1_N" + std::to_string(c.n_env) + "_" + std::string(to_string(c.interaction)) + "_" +
                      std::string(to_string(c.strength)) + ".csv";
    const auto cs = preset(c.interaction, c.strength);
    job.angles.push_back({{"file", name}, {"jx", cs.jx}, {"jy", cs.jy}, {"jz", cs.jz}, {"t", cs.t},
                          {"jz_t", cs.jz * cs.t}});
    job.files.push_back(curve_file(name, c.curve, true));
  }
  return job;
}

Job run_fig2(Settings& s) {
  const auto sizes = sizes_from(s, {6, 10, 100, 1000});
  const int n_max = to_int(s.integer("n_max", 62), "n_max");
  const double jz_t = angle_per_collision(s);
  for (int n : sizes) require(n >= 2, "N", "series needs N >= 2");
  require(n_max >= 1, "n_max", "must be >= 1");
  require(std::isfinite(jz_t), "jz_t", "must be finite");

  Job job;
  for (const auto& series : fig2_experiment(sizes, n_max, jz_t)) {
    const auto name = "fig2_N" + std::to_string(series.n_env) + ".csv";
    job.angles.push_back({{"file", name}, {"jz_t", jz_t}, {"n_max", n_max}, {"g_max", n_max * jz_t}});
    job.files.push_back({name, io::series_csv(series.points), static_cast<int>(series.points.size()), 0});
  }
  return job;
}

Job run_fig3a(Settings& s) {
  const int n_env = to_int(s.integer("N", 100), "N");
  const auto n_set = to_ints(s.integers("n_set", {5, 15, 31, 55}), "n_set");
  const double jz_t = angle_per_collision(s);
  const Engine engine = engine_from(s);
  require(n_env >= 1, "N", "must be >= 1");
  require(engine == Engine::analytic || n_env <= kMaxAncillas, "N", "statevector engine needs N <= 25");
  for (int n : n_set) require(n >= 0, "n_set", "counts must be >= 0");

  Job job;
  for (const auto& c : fig3a_experiment(n_env, n_set, jz_t, engine)) {
    const auto name = "fig3a_n" + std::to_string(c.collisions_per_ancilla) + ".csv";
    job.angles.push_back({{"file", name}, {"n", c.collisions_per_ancilla}, {"jz_t", jz_t},
                          {"g", c.collisions_per_ancilla * jz_t}});
    job.files.push_back(curve_file(name, c.curve, false));
  }
  return job;
}

Job run_fig3b(Settings& s) {
  const int n_env = to_int(s.integer("N", 6), "N");
  const int special = to_int(s.integer("special_n", 31), "special_n");
  const int other = to_int(s.integer("other_n", 60), "other_n");
  const double jz_t = angle_per_collision(s);
  const Engine engine = engine_from(s);
  require(n_env >= 2 && n_env <= kMaxExactEnvironment, "N", "biased study needs 2 <= N <= 12");
  require(special >= 0, "special_n", "must be >= 0");
  require(other >= 0, "other_n", "must be >= 0");

  Job job;
  job.angles.push_back({{"special_n", special}, {"other_n", other}, {"jz_t", jz_t},
                        {"g_special", special * jz_t}, {"g_other", other * jz_t}});
  const auto result = fig3b_experiment(n_env, special, other, jz_t, engine);
  for (std::size_t p = 0; p < result.by_position.size(); ++p) {
    job.files.push_back(curve_file("fig3b_pos" + std::to_string(p + 1) + ".csv", result.by_position[p], false));
  }
  job.files.push_back(curve_file("fig3b_average.csv", result.averaged, false));
  return job;
}

Job run_custom(Settings& s) {
  ExperimentConfig cfg;
  cfg.n_env = to_int(s.integer("N", 6), "N");
  require(cfg.n_env >= 1 && cfg.n_env <= kMaxAncillas, "N", "brute-force evolution needs 1 <= N <= 25");

  const auto coupling = s.text("coupling", "z");
  const auto strength = s.text("preset", "weak");
  if (strength != "weak" && strength != "strong") {
    bad_field("preset", "expected weak | strong, got '" + strength + "'");
  }
  const Strength st = strength == "weak" ? Strength::weak : Strength::strong;
  if (coupling == "z") {
    cfg.coupling = preset(Interaction::z, st);
  } else if (coupling == "xx") {
    cfg.coupling = preset(Interaction::xx, st);
  } else if (coupling == "custom") {
    cfg.coupling = {s.number("jx", 0.0), s.number("jy", 0.0), s.number("jz", 0.0), 0.0};
    cfg.coupling.t = preset(Interaction::z, st).t;
  } else {
    bad_field("coupling", "expected z | xx | custom, got '" + coupling + "'");
  }
  if (s.has("t")) cfg.coupling.t = s.number("t", cfg.coupling.t);
  require(cfg.coupling.t >= 0.0 && std::isfinite(cfg.coupling.t), "t", "must be finite and >= 0");

  const auto schedule = s.text("schedule", "random");
  if (schedule == "random") {
    cfg.schedule = RandomUniform{to_int(s.integer("collisions", 250), "collisions")};
    require(std::get<RandomUniform>(cfg.schedule).total >= 0, "collisions", "must be >= 0");
  } else if (schedule == "round_robin") {
    cfg.schedule = RoundRobin{to_int(s.integer("per_ancilla", 1), "per_ancilla")};
    require(std::get<RoundRobin>(cfg.schedule).per_ancilla >= 0, "per_ancilla", "must be >= 0");
  } else if (schedule == "biased") {
    const auto counts = to_ints(s.integers("counts", {}), "counts");
    require(counts.size() == static_cast<std::size_t>(cfg.n_env), "counts", "needs exactly N entries");
    for (int c : counts) require(c >= 0, "counts", "entries must be >= 0");
    cfg.schedule = Biased{counts};
  } else {
    bad_field("schedule", "expected random | round_robin | biased, got '" + schedule + "'");
  }

  const auto system = s.text("system", "haar");
  if (system == "haar") {
    cfg.system = HaarSystem{};
  } else if (system == "plus") {
    cfg.system = FixedSystem{InitialSystemState::plus()};
  } else if (system == "fixed") {
    const InitialSystemState st_fixed{cplx(s.number("alpha_re", 1.0), s.number("alpha_im", 0.0)),
                                      cplx(s.number("beta_re", 0.0), s.number("beta_im", 0.0))};
    require(std::abs(std::norm(st_fixed.alpha) + std::norm(st_fixed.beta) - 1.0) <= 1e-12, "alpha_re",
            "|alpha|^2 + |beta|^2 must equal 1");
    cfg.system = FixedSystem{st_fixed};
  } else {
    bad_field("system", "expected haar | plus | fixed, got '" + system + "'");
  }

  cfg.n_runs = to_int(s.integer("runs", 1), "runs");
  require(cfg.n_runs >= 1, "runs", "must be >= 1");
  const long long seed = s.integer("seed", 0);
  require(seed >= 0, "seed", "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);

  const auto averaging = s.text("averaging", cfg.n_env <= kMaxExactEnvironment ? "exact" : "sampled");
  if (averaging == "exact") {
    require(cfg.n_env <= kMaxExactEnvironment, "averaging", "exact averaging needs N <= 12");
    cfg.averaging = ExactAllSubsets{};
  } else if (averaging == "sampled") {
    const int samples = to_int(s.integer("samples", 16), "samples");
    require(samples >= 1, "samples", "must be >= 1");
    cfg.averaging = SampledSubsets{samples, cfg.seed};
  } else if (averaging == "prefix") {
    cfg.averaging = ExplicitSubsets::prefixes(cfg.n_env);
  } else {
    bad_field("averaging", "expected exact | sampled | prefix, got '" + averaging + "'");
  }

  Job job;
  job.seeds = {{"seed", cfg.seed}, {"run_stream", "run i uses mt19937_64(splitmix64(seed, i))"}};
  job.angles.push_back({{"jx", cfg.coupling.jx}, {"jy", cfg.coupling.jy}, {"jz", cfg.coupling.jz},
                        {"t", cfg.coupling.t}, {"jz_t", cfg.coupling.jz * cfg.coupling.t}});
  job.files.push_back(curve_file("custom.csv", run_ensemble(cfg), true));
  return job;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::optional<std::string>& config_path, const std::map<std::string, CLI::Option*>& flags,
                 const std::map<std::string, std::string>& raw, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  json merged = config_path ? load_config_file(*config_path) : json::object();
  for (const auto& [name, opt] : flags) {
    if (opt->count() > 0) merged[name] = flag_to_json(*find_key(name), raw.at(name));
  }

  Settings s(merged);
  const auto experiment = s.text("experiment", "");
  if (experiment.empty()) bad_field("experiment", "required");
  const auto out_dir = s.text("out", ".");

  Job job;
  if (experiment == "fig1") job = run_fig1(s);
  else if (experiment == "fig2") job = run_fig2(s);
  else if (experiment == "fig3a") job = run_fig3a(s);
  else if (experiment == "fig3b") job = run_fig3b(s);
  else if (experiment == "custom") job = run_custom(s);
  else bad_field("experiment", "expected fig1 | fig2 | fig3a | fig3b | custom, got '" + experiment + "'");

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  json outputs = json::array();
  json exclusions = json::object();
  for (const auto& f : job.files) {
    io::write_file_atomic(dir / f.name, f.content);
    outputs.push_back({{"file", f.name}, {"rows", f.rows}});
    exclusions[f.name] = f.excluded;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const json manifest = {{"artifact", "darwin"},       {"version", std::string(kVersion)},
                         {"experiment", experiment},    {"config", s.resolved()},
                         {"seeds", job.seeds},          {"angles", job.angles},
                         {"outputs", outputs},          {"exclusions", exclusions},
                         {"wall_time_s", wall}};
  io::write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << job.files.size() << " file(s) and manifest.json to " << dir.string() << "\n";
  return kOk;
}

struct AnalyticArgs {
  std::optional<int> n_env;
  std::optional<double> g;
  std::vector<double> g_list;
  std::optional<int> n;
  std::optional<double> jz_t;
  std::vector<int> counts;
  std::optional<int> r;
  std::vector<int> subset;
  double p = 0.5;
};

int cmd_analytic(const AnalyticArgs& a, std::ostream& out, std::ostream& err) {
  const auto usage = [&](const std::string& msg) {
    err << "error: " << msg << "\n";
    return static_cast<int>(kConfigError);
  };
  std::optional<CumulativeCouplings> gs;
  try {
    if (!a.g_list.empty()) {
      if (a.n_env && *a.n_env != static_cast<int>(a.g_list.size())) return usage("--N disagrees with --g-list length");
      gs.emplace(a.g_list);
    } else if (!a.counts.empty()) {
      if (a.n_env && *a.n_env != static_cast<int>(a.counts.size())) return usage("--N disagrees with --counts length");
      gs = CumulativeCouplings::from_counts(a.counts, a.jz_t.value_or(0.025));
    } else {
      if (!a.n_env || *a.n_env < 1) return usage("--N (>= 1) is required");
      if (a.g) gs = CumulativeCouplings::uniform(*a.n_env, *a.g);
      else if (a.n) gs = CumulativeCouplings::uniform(*a.n_env, *a.n * a.jz_t.value_or(0.025));
      else return usage("give --g, --n [--jz-t], --g-list or --counts");
    }
  } catch (const Error& e) {
    return usage(e.what());
  }

  QubitSubset fraction;
  try {
    if (a.r) {
      if (*a.r < 1 || *a.r > gs->n_ancillas()) return usage("--r must lie in [1, N]");
      fraction = QubitSubset::range(1, *a.r);
    } else if (!a.subset.empty()) {
      fraction = QubitSubset(a.subset);
    } else {
      return usage("give --r or --subset");
    }
  } catch (const Error& e) {
    return usage(e.what());
  }

  MutualInfo mi;
  try {
    mi = dephasing_mutual_information(*gs, fraction, {a.p, 1.0 - a.p});
  } catch (const Error& e) {
    return usage(e.what());
  }
  if (!mi.normalized_defined()) {
    err << "error: normalized mutual information undefined: system entropy S_S = "
        << io::format_number(mi.system_entropy) << " < 1e-12 (the system has not decohered)\n";
    return kCapViolation;
  }
  out << "S_S,S_Ef,S_SEf,I,I_bar\n"
      << io::format_number(mi.system_entropy) << ',' << io::format_number(mi.fraction_entropy) << ','
      << io::format_number(mi.joint_entropy) << ',' << io::format_number(mi.mutual_information) << ','
      << io::format_number(mi.normalized()) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Darwinism in a qubit collision model", "darwin"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "run a named experiment and write CSV + manifest");
  std::optional<std::string> config_path;
  simulate->add_option("--config", config_path, "JSON config (flat keys) or a previous manifest.json");
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> flags;
  for (const auto& key : kKeys) {
    const std::string name(key.name);
    flags[name] = simulate->add_option(flag_name(key.name), raw[name], std::string(key.help));
  }

  auto* analytic = app.add_subcommand("analytic", "closed-form entropies and MI for the dephasing model");
  AnalyticArgs a;
  analytic->add_option("--N", a.n_env, "environment size");
  analytic->add_option("--g", a.g, "uniform cumulative angle g per ancilla");
  analytic->add_option("--g-list", a.g_list, "per-ancilla angles")->delimiter(',');
  analytic->add_option("--n", a.n, "collisions per ancilla (uniform)");
  analytic->add_option("--jz-t", a.jz_t, "angle per collision (default 0.025)");
  analytic->add_option("--counts", a.counts, "per-ancilla collision counts")->delimiter(',');
  analytic->add_option("--r", a.r, "fraction = ancillas 1..r");
  analytic->add_option("--subset", a.subset, "fraction = explicit ancilla labels")->delimiter(',');
  analytic->add_option("--p", a.p, "system population |alpha|^2 (default 0.5)");

  app.add_subcommand("version", "print the version");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(config_path, flags, raw, out);
    if (analytic->parsed()) return cmd_analytic(a, out, err);
    out << "darwin " << kVersion << "\n";
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kCapViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace darwin::cli
