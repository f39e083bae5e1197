#include "attred/automaton.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace attred {

StateId Automaton::add_state(const std::string& display_name, bool marked) {
  state_names_.push_back(display_name);
  marked_.push_back(marked);
  delta_.emplace_back();
  return static_cast<StateId>(delta_.size()) - 1;
}

void Automaton::set_initial(StateId q) {
  check_state(q);
  initial_ = q;
}

void Automaton::set_marked(StateId q, bool marked) {
  check_state(q);
  marked_[q] = marked;
}

void Automaton::declare_labels(const std::set<EventLabel>& labels) {
  alphabet_.insert(labels.begin(), labels.end());
}

void Automaton::add_transition(StateId src, const EventLabel& label, StateId dst) {
  check_state(src);
  check_state(dst);
  auto [it, inserted] = delta_[src].emplace(label, dst);
  if (!inserted) {
    throw std::invalid_argument("duplicate transition (" + state_name(src) + ", " +
                                label.text() + ") in automaton '" + name_ +
                                "': determinism requires a single target");
  }
  alphabet_.insert(label);
}

bool Automaton::is_marked(StateId q) const {
  check_state(q);
  return marked_[q];
}

bool Automaton::all_marked() const {
  return std::all_of(marked_.begin(), marked_.end(), [](bool m) { return m; });
}

const std::string& Automaton::state_name(StateId q) const {
  check_state(q);
  return state_names_[q];
}

const std::map<EventLabel, StateId>& Automaton::transitions_from(StateId q) const {
  check_state(q);
  return delta_[q];
}

std::optional<StateId> Automaton::target(StateId q, const EventLabel& label) const {
  check_state(q);
  auto it = delta_[q].find(label);
  if (it == delta_[q].end()) return std::nullopt;
  return it->second;
}

int Automaton::num_transitions() const {
  int n = 0;
  for (const auto& row : delta_) n += static_cast<int>(row.size());
  return n;
}

void Automaton::check_state(StateId q) const {
  if (q < 0 || q >= num_states()) {
    throw std::invalid_argument("state index " + std::to_string(q) +
                                " out of range in automaton '" + name_ + "' (" +
                                std::to_string(num_states()) + " states)");
  }
}

std::set<EventLabel> enabled_set(const Automaton& a, StateId q) {
  a.check_state(q);
  std::set<EventLabel> out;
  for (const auto& [label, dst] : a.transitions_from(q)) out.insert(label);
  return out;
}

Automaton accessible(const Automaton& a) {
  if (a.num_states() == 0) {
    throw std::invalid_argument("automaton '" + a.name() + "' has no states");
  }
  Automaton out(a.name());
  out.declare_labels(a.alphabet());
  std::vector<StateId> index(a.num_states(), -1);
  std::deque<StateId> queue;
  index[a.initial()] = out.add_state(a.state_name(a.initial()), a.is_marked(a.initial()));
  queue.push_back(a.initial());
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (const auto& [label, dst] : a.transitions_from(q)) {
      if (index[dst] < 0) {
        index[dst] = out.add_state(a.state_name(dst), a.is_marked(dst));
        queue.push_back(dst);
      }
    }
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (index[q] < 0) continue;
    for (const auto& [label, dst] : a.transitions_from(q)) {
      out.add_transition(index[q], label, index[dst]);
    }
  }
  out.set_initial(index[a.initial()]);
  return out;
}

namespace {

// Binary synchronous product, accessible part only, built breadth-first.
// pair_origin[product state] = (left state, right state).
Automaton binary_product(const Automaton& a, const Automaton& b,
                         std::vector<std::pair<StateId, StateId>>& pair_origin) {
  Automaton out(a.name() + "||" + b.name());
  std::set<EventLabel> united = a.alphabet();
  united.insert(b.alphabet().begin(), b.alphabet().end());
  out.declare_labels(united);

  pair_origin.clear();
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::deque<std::pair<StateId, StateId>> queue;

  auto intern = [&](StateId p, StateId q) {
    auto key = std::make_pair(p, q);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    StateId s = out.add_state(a.state_name(p) + "," + b.state_name(q),
                              a.is_marked(p) && b.is_marked(q));
    index.emplace(key, s);
    pair_origin.push_back(key);
    queue.push_back(key);
    return s;
  };

  intern(a.initial(), b.initial());
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    StateId src = index.at({p, q});
    // Walk the two sorted transition maps in label order so product state
    // numbering is reproducible.
    auto ia = a.transitions_from(p).begin(), ea = a.transitions_from(p).end();
    auto ib = b.transitions_from(q).begin(), eb = b.transitions_from(q).end();
    while (ia != ea || ib != eb) {
      if (ib == eb || (ia != ea && ia->first < ib->first)) {
        if (!b.alphabet().count(ia->first)) {  // private to the left factor
          out.add_transition(src, ia->first, intern(ia->second, q));
        }
        ++ia;
      } else if (ia == ea || ib->first < ia->first) {
        if (!a.alphabet().count(ib->first)) {  // private to the right factor
          out.add_transition(src, ib->first, intern(p, ib->second));
        }
        ++ib;
      } else {  // shared label enabled on both sides
        out.add_transition(src, ia->first, intern(ia->second, ib->second));
        ++ia;
        ++ib;
      }
    }
  }
  return out;
}

}  // namespace

SyncProduct sync_product_traced(const std::vector<const Automaton*>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("sync_product needs at least one factor");
  }
  SyncProduct cur;
  cur.automaton = accessible(*factors[0]);
  // accessible() renumbers breadth-first; replay the same traversal to map
  // new indices back to states of the first factor.
  {
    const Automaton& f0 = *factors[0];
    std::vector<StateId> orig;
    std::vector<StateId> index(f0.num_states(), -1);
    std::deque<StateId> queue;
    index[f0.initial()] = 0;
    orig.push_back(f0.initial());
    queue.push_back(f0.initial());
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      for (const auto& [label, dst] : f0.transitions_from(q)) {
        if (index[dst] < 0) {
          index[dst] = static_cast<StateId>(orig.size());
          orig.push_back(dst);
          queue.push_back(dst);
        }
      }
    }
    cur.factor_states.assign(cur.automaton.num_states(), {});
    for (StateId s = 0; s < cur.automaton.num_states(); ++s) {
      cur.factor_states[s] = {orig[s]};
    }
  }
  for (std::size_t i = 1; i < factors.size(); ++i) {
    std::vector<std::pair<StateId, StateId>> origin;
    Automaton next = binary_product(cur.automaton, *factors[i], origin);
    std::vector<std::vector<StateId>> next_trace(next.num_states());
    for (StateId s = 0; s < next.num_states(); ++s) {
      next_trace[s] = cur.factor_states[origin[s].first];
      next_trace[s].push_back(origin[s].second);
    }
    cur.automaton = std::move(next);
    cur.factor_states = std::move(next_trace);
  }
  return cur;
}

Automaton sync_product(const std::vector<const Automaton*>& factors) {
  return sync_product_traced(factors).automaton;
}

Automaton sync_product(const Automaton& a, const Automaton& b) {
  return sync_product({&a, &b});
}

namespace {

// Shortest-witness search shared by the two equality checks. Nodes are state
// pairs; -1 stands for the sink of the totalized automaton. Breadth-first
// order plus sorted label expansion makes the first hit the shortest witness
// with lexicographic tie-breaking.
struct PairSearch {
  std::map<std::pair<StateId, StateId>, int> seen;  // node -> node id
  std::vector<std::pair<StateId, StateId>> nodes;
  std::vector<int> parent;
  std::vector<EventLabel> via;
  std::deque<int> queue;

  int intern(StateId p, StateId q, int from, const EventLabel* label) {
    auto key = std::make_pair(p, q);
    auto it = seen.find(key);
    if (it != seen.end()) return -1;
    int id = static_cast<int>(nodes.size());
    seen.emplace(key, id);
    nodes.push_back(key);
    parent.push_back(from);
    via.push_back(label ? *label : EventLabel::plain("x"));
    queue.push_back(id);
    return id;
  }

  std::vector<EventLabel> path_to(int id) const {
    std::vector<EventLabel> word;
    for (int cur = id; parent[cur] >= 0; cur = parent[cur]) word.push_back(via[cur]);
    std::reverse(word.begin(), word.end());
    return word;
  }
};

std::vector<EventLabel> sorted_defined_labels(const Automaton& a, StateId p,
                                              const Automaton& b, StateId q) {
  std::vector<EventLabel> labels;
  if (p >= 0) {
    for (const auto& [label, dst] : a.transitions_from(p)) labels.push_back(label);
  }
  if (q >= 0) {
    for (const auto& [label, dst] : b.transitions_from(q)) labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace

LanguageCompare language_equal(const Automaton& a, const Automaton& b) {
  PairSearch search;
  search.intern(a.initial(), b.initial(), -1, nullptr);
  while (!search.queue.empty()) {
    int id = search.queue.front();
    search.queue.pop_front();
    auto [p, q] = search.nodes[id];
    for (const EventLabel& label : sorted_defined_labels(a, p, b, q)) {
      auto ta = a.target(p, label);
      auto tb = b.target(q, label);
      if (ta.has_value() != tb.has_value()) {
        LanguageCompare out;
        out.equal = false;
        out.witness = search.path_to(id);
        out.witness.push_back(label);
        return out;
      }
      search.intern(*ta, *tb, id, &label);
    }
  }
  return LanguageCompare{};
}

LanguageCompare marked_language_equal(const Automaton& a, const Automaton& b) {
  auto marked = [&](StateId p, const Automaton& m) { return p >= 0 && m.is_marked(p); };
  PairSearch search;
  int root = search.intern(a.initial(), b.initial(), -1, nullptr);
  if (marked(a.initial(), a) != marked(b.initial(), b)) {
    return LanguageCompare{false, {}};
  }
  (void)root;
  while (!search.queue.empty()) {
    int id = search.queue.front();
    search.queue.pop_front();
    auto [p, q] = search.nodes[id];
    for (const EventLabel& label : sorted_defined_labels(a, p, b, q)) {
      StateId ta = -1, tb = -1;
      if (p >= 0) {
        if (auto t = a.target(p, label)) ta = *t;
      }
      if (q >= 0) {
        if (auto t = b.target(q, label)) tb = *t;
      }
      if (ta < 0 && tb < 0) continue;
      int child = search.intern(ta, tb, id, &label);
      if (child >= 0 && marked(ta, a) != marked(tb, b)) {
        LanguageCompare out;
        out.equal = false;
        out.witness = search.path_to(child);
        return out;
      }
    }
  }
  return LanguageCompare{};
}

std::string export_dot(const Automaton& a) {
  std::ostringstream out;
  out << "digraph \"" << a.name() << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  __start [shape=point, label=\"\"];\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "  s" << q << " [label=\"" << a.state_name(q) << "\", shape="
        << (a.is_marked(q) ? "doublecircle" : "circle") << "];\n";
  }
  out << "  __start -> s" << a.initial() << ";\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (const auto& [label, dst] : a.transitions_from(q)) {
      out << "  s" << q << " -> s" << dst << " [label=\"" << label.text() << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

bool isomorphic(const Automaton& a, const Automaton& b) {
  if (a.num_states() != b.num_states()) return false;
  Automaton ca = accessible(a);
  Automaton cb = accessible(b);
  if (ca.num_states() != cb.num_states()) return false;
  if (ca.initial() != cb.initial()) return false;
  for (StateId q = 0; q < ca.num_states(); ++q) {
    if (ca.is_marked(q) != cb.is_marked(q)) return false;
    if (ca.transitions_from(q) != cb.transitions_from(q)) return false;
  }
  return true;
}

std::optional<StateId> run_word(const Automaton& a, const std::vector<EventLabel>& word) {
  StateId q = a.initial();
  for (const EventLabel& label : word) {
    auto t = a.target(q, label);
    if (!t) return std::nullopt;
    q = *t;
  }
  return q;
}

std::string format_word(const std::vector<EventLabel>& word) {
  if (word.empty()) return "<empty>";
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << word[i].text();
  }
  return out.str();
}

}  // namespace attred
