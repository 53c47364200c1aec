#include "darwin/collision.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "darwin/error.hpp"

namespace darwin {

namespace {

Gate4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Gate4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

cplx phase(double angle) { return std::polar(1.0, angle); }

}  // namespace

void CouplingSpec::validate() const {
  if (!std::isfinite(jx) || !std::isfinite(jy) || !std::isfinite(jz) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidCoupling, "coupling fields must be finite");
  }
  if (t < 0.0) throw Error(ErrorCode::InvalidCoupling, "collision time t must be >= 0");
}

std::string_view to_string(Interaction i) noexcept { return i == Interaction::z ? "z" : "xx"; }

std::string_view to_string(Strength s) noexcept { return s == Strength::weak ? "weak" : "strong"; }

CouplingSpec preset(Interaction interaction, Strength strength) {
  const double t = strength == Strength::weak ? 0.025 : 1.0;
  if (interaction == Interaction::z) return {0.0, 0.0, 1.0, t};
  return {1.0, 1.0, 0.0, t};
}

Gate4 interaction_hamiltonian(const CouplingSpec& c) {
  c.validate();
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, cplx(0, -1), cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  return c.jx * kron(x, x) + c.jy * kron(y, y) + c.jz * kron(z, z);
}

Gate4 collision_unitary(const CouplingSpec& c) {
  c.validate();
  // Bell-basis energies of jx XX + jy YY + jz ZZ.
  const cplx phi_plus = phase(-(c.jx - c.jy + c.jz) * c.t);    // (|00> + |11>)/sqrt2
  const cplx phi_minus = phase(-(-c.jx + c.jy + c.jz) * c.t);  // (|00> - |11>)/sqrt2
  const cplx psi_plus = phase(-(c.jx + c.jy - c.jz) * c.t);    // (|01> + |10>)/sqrt2
  const cplx psi_minus = phase(-(-c.jx - c.jy - c.jz) * c.t);  // (|01> - |10>)/sqrt2

  Gate4 u = Gate4::Zero();
  u(0, 0) = u(3, 3) = 0.5 * (phi_plus + phi_minus);
  u(0, 3) = u(3, 0) = 0.5 * (phi_plus - phi_minus);
  u(1, 1) = u(2, 2) = 0.5 * (psi_plus + psi_minus);
  u(1, 2) = u(2, 1) = 0.5 * (psi_plus - psi_minus);
  return u;
}

InitialSystemState InitialSystemState::plus() {
  return {cplx(std::numbers::sqrt2 / 2, 0.0), cplx(std::numbers::sqrt2 / 2, 0.0)};
}

InitialSystemState InitialSystemState::haar_random(Rng& rng) {
  for (;;) {
    const double ar = rng.normal(), ai = rng.normal(), br = rng.normal(), bi = rng.normal();
    const double n = std::sqrt(ar * ar + ai * ai + br * br + bi * bi);
    if (n > 0.0) return {cplx(ar / n, ai / n), cplx(br / n, bi / n)};
  }
}

void InitialSystemState::validate() const {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidState, "|alpha|^2 + |beta|^2 must equal 1");
  }
}

PureState build_initial_state(const InitialSystemState& sys, int n_ancillas) {
  sys.validate();
  if (n_ancillas < 1 || n_ancillas > kMaxAncillas) {
    throw Error(ErrorCode::TooManyAncillas,
                "ancilla count " + std::to_string(n_ancillas) + " outside [1, 25]");
  }
  const std::size_t env_dim = std::size_t{1} << n_ancillas;
  const double env_amp = std::pow(2.0, -0.5 * n_ancillas);
  std::vector<cplx> amps(2 * env_dim);
  for (std::size_t i = 0; i < env_dim; ++i) {
    amps[i] = sys.alpha * env_amp;
    amps[env_dim + i] = sys.beta * env_amp;
  }
  return PureState::from_amplitudes(std::move(amps));
}

std::string_view to_string(ScheduleKind k) noexcept {
  switch (k) {
    case ScheduleKind::round_robin: return "round_robin";
    case ScheduleKind::random_uniform: return "random_uniform";
    case ScheduleKind::biased: return "biased";
  }
  return "unknown";
}

CollisionSchedule::CollisionSchedule(ScheduleKind kind, int n_ancillas, std::vector<int> sequence,
                                     std::optional<std::uint64_t> seed)
    : kind_(kind), n_ancillas_(n_ancillas), sequence_(std::move(sequence)), seed_(seed) {
  if (n_ancillas_ < 1 || n_ancillas_ > kMaxAncillas) {
    throw Error(ErrorCode::TooManyAncillas, "ancilla count outside [1, 25]");
  }
  for (int k : sequence_) {
    if (k < 1 || k > n_ancillas_) {
      throw Error(ErrorCode::IndexOutOfRange, "schedule label " + std::to_string(k) + " outside [1, " +
                                                  std::to_string(n_ancillas_) + "]");
    }
  }
}

std::vector<int> CollisionSchedule::counts_per_ancilla() const {
  std::vector<int> counts(static_cast<std::size_t>(n_ancillas_), 0);
  for (int k : sequence_) ++counts[static_cast<std::size_t>(k - 1)];
  return counts;
}

CollisionSchedule make_schedule(const ScheduleSpec& spec, int n_ancillas, std::uint64_t seed) {
  if (n_ancillas < 1 || n_ancillas > kMaxAncillas) {
    throw Error(ErrorCode::TooManyAncillas, "ancilla count outside [1, 25]");
  }
  if (const auto* rr = std::get_if<RoundRobin>(&spec)) {
    if (rr->per_ancilla < 0) throw Error(ErrorCode::InvalidCounts, "negative collisions per ancilla");
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(rr->per_ancilla) * n_ancillas);
    for (int rep = 0; rep < rr->per_ancilla; ++rep)
      for (int k = 1; k <= n_ancillas; ++k) seq.push_back(k);
    return {ScheduleKind::round_robin, n_ancillas, std::move(seq)};
  }
  if (const auto* ru = std::get_if<RandomUniform>(&spec)) {
    if (ru->total < 0) throw Error(ErrorCode::InvalidCounts, "negative total collision count");
    Rng rng(seed);
    std::vector<int> seq(static_cast<std::size_t>(ru->total));
    for (auto& k : seq) k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_ancillas)));
    return {ScheduleKind::random_uniform, n_ancillas, std::move(seq), seed};
  }
  const auto& biased = std::get<Biased>(spec);
  if (biased.counts.size() != static_cast<std::size_t>(n_ancillas)) {
    throw Error(ErrorCode::InvalidCounts, "biased schedule needs one count per ancilla");
  }
  std::vector<int> seq;
  for (int k = 1; k <= n_ancillas; ++k) {
    const int c = biased.counts[static_cast<std::size_t>(k - 1)];
    if (c < 0) throw Error(ErrorCode::InvalidCounts, "negative count for ancilla " + std::to_string(k));
    seq.insert(seq.end(), static_cast<std::size_t>(c), k);
  }
  return {ScheduleKind::biased, n_ancillas, std::move(seq)};
}

PureState run_schedule(PureState state, const CollisionSchedule& schedule, const Gate4& u) {
  if (schedule.n_ancillas() > state.num_qubits() - 1) {
    throw Error(ErrorCode::IndexOutOfRange, "schedule addresses more ancillas than the register holds");
  }
  if (schedule.size() == 0) return state;
  // Validate once; apply_unchecked skips the per-call unitarity test.
  state.apply(u, 0, schedule.sequence().front());
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    state.apply_unchecked(u, 0, schedule.sequence()[i]);
  }
  return state;
}

}  // namespace darwin
