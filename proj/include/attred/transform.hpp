#pragma once

#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "attred/automaton.hpp"
#include "attred/event.hpp"

namespace attred {

/// Raised when a supervisor violates a feasibility requirement: a state that
/// does not enable every uncontrollable event, or an unobservable transition
/// that is not a self-loop.
class InfeasibleSupervisor : public std::runtime_error {
public:
  explicit InfeasibleSupervisor(const std::string& what) : std::runtime_error(what) {}
};

/// A control command: the set of events a supervisor keeps enabled. Every
/// command contains all uncontrollable events.
struct ControlCommand {
  std::set<std::string> members;

  EventLabel label() const { return EventLabel::command(members); }
  auto operator<=>(const ControlCommand&) const = default;
};

/// The command issued by supervisor `s` at state `q`: its enabled event set.
/// Throws InfeasibleSupervisor if some uncontrollable event is not enabled,
/// std::invalid_argument if `s` carries non-plain labels.
ControlCommand gamma_of(const Automaton& s, StateId q, const AlphabetSpec& alphabet);

/// Command execution automaton over the given command set: an idle state plus
/// one state per command; executing an observable member returns to idle,
/// unobservable members self-loop. All states marked.
Automaton build_ce(const std::set<ControlCommand>& gammas, const AlphabetSpec& alphabet);

/// Sensor attack constraints: two states; events outside the compromised set
/// self-loop at the initial state, a compromised reading moves to the
/// observation state, and any attacked copy returns. All states marked.
Automaton build_ac(const AlphabetSpec& alphabet);

/// Bipartite transformation of a supervisor: command states alternating with
/// the original reaction states. Initial state is the command state of the
/// supervisor's initial state; all states marked.
/// Reaction states keep the indices of `s`; the command state of q is q + |s|.
Automaton bipartize(const Automaton& s, const AlphabetSpec& alphabet);

struct AttackedSupervisor {
  Automaton automaton;
  StateId no_covert_state;
};

/// Relabels compromised readings of a bipartite supervisor to their attacked
/// copies (keeping plain self-loops for the physical occurrences) and adds
/// the covertness-broken sink for observations the supervisor cannot
/// explain. Throws std::invalid_argument if `bts` is not bipartite.
AttackedSupervisor attack_bipartize(const Automaton& bts, const AlphabetSpec& alphabet);

/// Everything a sensor attacker is analyzed against: the plant (marked states
/// are the damage states), the supervisor, the derived models, and the
/// surrogate plant plant' = G || CE || BT(S)^A.
struct AttackContext {
  AlphabetSpec alphabet;
  Automaton plant;
  Automaton supervisor;
  std::set<ControlCommand> gammas;
  Automaton ce;
  Automaton ac;
  Automaton bts;
  Automaton bts_attacked;
  StateId no_covert_state = -1;
  Automaton plant_prime;
  /// Component states (plant, ce, bts_attacked) of each plant' state.
  std::vector<std::array<StateId, 3>> plant_prime_origin;

  std::set<EventLabel> attacker_alphabet() const { return alphabet.attacker_labels(); }
};

/// Builds the full attack context from a plant and a supervisor. Validates
/// supervisor feasibility and the construction size invariants.
AttackContext build_context(const Automaton& g, const Automaton& s,
                            const AlphabetSpec& alphabet);

/// Checks that an automaton only uses labels an attacker may carry (plain
/// events of sigma and attacked copies of compromised events) and returns a
/// copy whose declared alphabet is widened to the full attacker event set.
/// Throws std::invalid_argument otherwise, in particular for command labels.
Automaton as_attacker(const Automaton& a, const AlphabetSpec& alphabet);

}  // namespace attred
