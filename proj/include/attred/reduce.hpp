#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "attred/automaton.hpp"
#include "attred/transform.hpp"

namespace attred {

/// Per attacker state: the events it enables (its transition structure) and
/// the events it disables (enabled by the surrogate plant at some reachable
/// pairing but undefined in the attacker). For each disabled event a shortest
/// word of the attacked loop witnessing the disablement is kept.
struct EnDisProfile {
  std::vector<std::set<EventLabel>> enabled;
  std::vector<std::set<EventLabel>> disabled;
  std::vector<std::map<EventLabel, std::vector<EventLabel>>> disabled_witness;
};

/// Computes the profile of attacker `a` against ctx.plant_prime by exploring
/// the reachable product pairs. States of `a` never paired with a plant'
/// state have an empty disabled set. Throws std::invalid_argument if `a`
/// carries command labels or events outside the attacker event set.
EnDisProfile compute_profile(const Automaton& a, const AttackContext& ctx);

/// Binary compatibility: no event enabled at one state is disabled at the
/// other.
bool compatible(const EnDisProfile& profile, StateId q, StateId r);

/// An indexed partition of attacker states. Cell order is part of the value;
/// induced attackers number their states by it.
struct Congruence {
  std::vector<std::vector<StateId>> cells;

  int num_cells() const { return static_cast<int>(cells.size()); }
  /// cell index per state, or -1 where uncovered (invalid congruence).
  std::vector<int> cell_of(int num_states) const;
};

struct CongruenceCheck {
  bool ok = true;
  int violated_condition = 0;  // 1 partition, 2 compatibility, 3 closure
  std::string detail;
};

/// Checks the three control-congruence conditions: cells partition the state
/// set, cells are pairwise compatible, and all successors of a cell under one
/// label lie in a common cell. Reports the first violation found.
CongruenceCheck is_congruence(const Congruence& c, const Automaton& a,
                              const EnDisProfile& profile);

/// Quotient attacker induced by a congruence: one state per cell, a
/// transition cell_i --x--> cell_j whenever some member moves on x (condition
/// 3 makes the target cell unique), all states marked. Re-checks the
/// structural congruence conditions and throws std::invalid_argument if they
/// fail.
Automaton induce(const Congruence& c, const Automaton& a);

struct Reduction {
  Congruence congruence;
  Automaton attacker;
};

/// Polynomial-time reduction: starting from singleton cells, scan state pairs
/// in canonical order (breadth-first state numbering, labels in canonical
/// order), tentatively merge, propagate forced merges through successor
/// cells, and roll the whole step back if a forced pair is incompatible.
/// The attacker must pass validate_attacker; violations are propagated as
/// AttackerInvalid.
Reduction reduce_ra(const Automaton& a, const AttackContext& ctx);

/// Exhaustive minimum-cell congruence by branch-and-bound over cell
/// assignments with compatibility pruning. Refuses attackers above
/// `max_states` (the search is exponential). Among minimum-size congruences
/// returns the lexicographically least cell assignment under canonical state
/// numbering.
Reduction brute_min(const Automaton& a, const AttackContext& ctx, int max_states = 10);

}  // namespace attred
