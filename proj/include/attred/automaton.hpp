#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "attred/event.hpp"

namespace attred {

using StateId = int;

/// A deterministic finite-state automaton with a partial transition function,
/// one initial state and a marked-state set. States are dense integer indices
/// with a display name used only for diagnostics and file output.
///
/// The declared alphabet may be larger than the set of labels that actually
/// occur on transitions; synchronous composition distinguishes shared from
/// private labels by the declared alphabets. Determinism is structural: at
/// most one target per (state, label).
///
/// Automata are immutable after construction by convention: every operation
/// in this library takes const references and returns fresh values.
class Automaton {
public:
  Automaton() = default;
  explicit Automaton(std::string name) : name_(std::move(name)) {}

  StateId add_state(const std::string& display_name, bool marked = false);
  void set_initial(StateId q);
  void set_marked(StateId q, bool marked = true);
  void declare_label(const EventLabel& label) { alphabet_.insert(label); }
  void declare_labels(const std::set<EventLabel>& labels);
  /// Adds src --label--> dst. The label is added to the declared alphabet.
  /// Throws std::invalid_argument on unknown states or a duplicate
  /// (src, label) pair.
  void add_transition(StateId src, const EventLabel& label, StateId dst);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  int num_states() const { return static_cast<int>(delta_.size()); }
  StateId initial() const { return initial_; }
  bool is_marked(StateId q) const;
  bool all_marked() const;
  const std::string& state_name(StateId q) const;
  const std::map<EventLabel, StateId>& transitions_from(StateId q) const;
  std::optional<StateId> target(StateId q, const EventLabel& label) const;
  const std::set<EventLabel>& alphabet() const { return alphabet_; }
  int num_transitions() const;

  /// Throws std::invalid_argument if q is not a state of this automaton.
  void check_state(StateId q) const;

private:
  std::string name_;
  std::vector<std::string> state_names_;
  std::vector<bool> marked_;
  std::vector<std::map<EventLabel, StateId>> delta_;
  std::set<EventLabel> alphabet_;
  StateId initial_ = 0;
};

/// Labels with a transition defined at q.
std::set<EventLabel> enabled_set(const Automaton& a, StateId q);

/// Restriction of `a` to the states reachable from the initial state.
/// Closed and marked language are unchanged. States are renumbered in
/// breadth-first order with labels taken in canonical order.
Automaton accessible(const Automaton& a);

/// Synchronous product together with, for every product state, the component
/// state of each factor.
struct SyncProduct {
  Automaton automaton;
  std::vector<std::vector<StateId>> factor_states;
};

/// Synchronous product of one or more deterministic automata: factors move
/// together on shared labels (in both declared alphabets) and interleave on
/// private ones; the result is restricted to its accessible part; a product
/// state is marked iff every component state is marked. The binary rule is
/// folded left over the list. Throws std::invalid_argument on an empty list.
SyncProduct sync_product_traced(const std::vector<const Automaton*>& factors);
Automaton sync_product(const std::vector<const Automaton*>& factors);
Automaton sync_product(const Automaton& a, const Automaton& b);

/// Result of a language comparison; `witness` is meaningful only when
/// equal == false and is then a shortest string in the symmetric difference
/// (ties broken by canonical label order).
struct LanguageCompare {
  bool equal = true;
  std::vector<EventLabel> witness;
};

/// Exact equality of closed behaviors L(a) = L(b), by synchronized
/// breadth-first exploration of the pair graph. A discrepancy is a reachable
/// state pair at which exactly one side defines a label.
LanguageCompare language_equal(const Automaton& a, const Automaton& b);

/// Exact equality of marked behaviors Lm(a) = Lm(b); the witness is a
/// shortest string accepted by exactly one side.
LanguageCompare marked_language_equal(const Automaton& a, const Automaton& b);

/// Deterministic DOT rendering: entry arrow on the initial state, double
/// circles on marked states, canonical label text, states by index and edges
/// in canonical label order. Byte-identical across runs.
std::string export_dot(const Automaton& a);

/// True iff the accessible parts of a and b are identical up to state
/// renaming and the automata have the same total state count.
bool isomorphic(const Automaton& a, const Automaton& b);

/// State reached from the initial state on `word`, or nullopt if the
/// automaton stalls.
std::optional<StateId> run_word(const Automaton& a, const std::vector<EventLabel>& word);

/// Space-separated canonical rendering of a word; empty word renders as
/// `<empty>`.
std::string format_word(const std::vector<EventLabel>& word);

}  // namespace attred
