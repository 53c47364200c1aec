#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "darwin/qcore.hpp"
#include "darwin/rng.hpp"

namespace darwin {

/// Couplings of H = jx XX + jy YY + jz ZZ (units of hbar*omega) and the
/// collision duration t.
struct CouplingSpec {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double t = 0.0;

  /// Throws InvalidCoupling for t < 0 or non-finite fields.
  void validate() const;
};

enum class Interaction { z, xx };
enum class Strength { weak, strong };

std::string_view to_string(Interaction i) noexcept;
std::string_view to_string(Strength s) noexcept;

/// J = 1 with t = 0.025 (weak) or t = 1 (strong). Z is jz = J; XX is jx = jy = J.
CouplingSpec preset(Interaction interaction, Strength strength);

Gate4 interaction_hamiltonian(const CouplingSpec& c);

/// exp(-i H t), assembled from the four Bell-basis phases.
Gate4 collision_unitary(const CouplingSpec& c);

/// System amplitudes alpha|up> + beta|down>.
struct InitialSystemState {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};

  static InitialSystemState plus();
  /// Two independent standard complex Gaussians, normalized.
  static InitialSystemState haar_random(Rng& rng);

  void validate() const;
};

inline constexpr int kMaxAncillas = kMaxQubits - 1;

/// |phi>_S (x) |+>^N.
PureState build_initial_state(const InitialSystemState& sys, int n_ancillas);

enum class ScheduleKind { round_robin, random_uniform, biased };

std::string_view to_string(ScheduleKind k) noexcept;

struct RoundRobin {
  int per_ancilla = 1;
};
struct RandomUniform {
  int total = 0;
};
struct Biased {
  std::vector<int> counts;
};
using ScheduleSpec = std::variant<RoundRobin, RandomUniform, Biased>;

/// Ordered ancilla labels (1..N) the system collides with.
class CollisionSchedule {
 public:
  CollisionSchedule(ScheduleKind kind, int n_ancillas, std::vector<int> sequence,
                    std::optional<std::uint64_t> seed = std::nullopt);

  ScheduleKind kind() const noexcept { return kind_; }
  int n_ancillas() const noexcept { return n_ancillas_; }
  const std::vector<int>& sequence() const noexcept { return sequence_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return sequence_.size(); }

  /// Entry k-1 is the number of collisions with ancilla k.
  std::vector<int> counts_per_ancilla() const;

 private:
  ScheduleKind kind_;
  int n_ancillas_;
  std::vector<int> sequence_;
  std::optional<std::uint64_t> seed_;
};

/// Round robin emits 1..N cyclically; random draws i.i.d. uniform labels from
/// Rng(seed); biased emits each ancilla's collisions as one block in label order.
CollisionSchedule make_schedule(const ScheduleSpec& spec, int n_ancillas, std::uint64_t seed = 0);

/// Applies u to (system, k) for every k in the schedule.
PureState run_schedule(PureState state, const CollisionSchedule& schedule, const Gate4& u);

}  // namespace darwin
