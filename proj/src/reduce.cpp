#include "attred/reduce.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "attred/verify.hpp"

namespace attred {

EnDisProfile compute_profile(const Automaton& a, const AttackContext& ctx) {
  Automaton attacker = as_attacker(a, ctx.alphabet);
  EnDisProfile profile;
  profile.enabled.resize(attacker.num_states());
  profile.disabled.resize(attacker.num_states());
  profile.disabled_witness.resize(attacker.num_states());
  for (StateId q = 0; q < attacker.num_states(); ++q) {
    profile.enabled[q] = enabled_set(attacker, q);
  }

  // Breadth-first walk of plant' || attacker. Command labels are private to
  // plant'; everything else is shared once the attacker alphabet is widened.
  const Automaton& plant = ctx.plant_prime;
  struct Node {
    StateId p, q;
  };
  std::map<std::pair<StateId, StateId>, int> seen;
  std::vector<Node> nodes;
  std::vector<int> parent;
  std::vector<EventLabel> via;
  std::deque<int> queue;
  auto intern = [&](StateId p, StateId q, int from, const EventLabel* label) {
    auto key = std::make_pair(p, q);
    if (seen.count(key)) return;
    int id = static_cast<int>(nodes.size());
    seen.emplace(key, id);
    nodes.push_back({p, q});
    parent.push_back(from);
    via.push_back(label ? *label : EventLabel::plain("x"));
    queue.push_back(id);
  };
  auto path_to = [&](int id) {
    std::vector<EventLabel> word;
    for (int cur = id; parent[cur] >= 0; cur = parent[cur]) word.push_back(via[cur]);
    std::reverse(word.begin(), word.end());
    return word;
  };

  intern(plant.initial(), attacker.initial(), -1, nullptr);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [p, q] = nodes[id];
    for (const auto& [label, pdst] : plant.transitions_from(p)) {
      if (label.is_command()) {
        intern(pdst, q, id, &label);
        continue;
      }
      if (auto qdst = attacker.target(q, label)) {
        intern(pdst, *qdst, id, &label);
      } else if (!profile.disabled[q].count(label)) {
        profile.disabled[q].insert(label);
        auto word = path_to(id);
        word.push_back(label);
        profile.disabled_witness[q].emplace(label, std::move(word));
      }
    }
  }
  return profile;
}

bool compatible(const EnDisProfile& profile, StateId q, StateId r) {
  auto meets = [](const std::set<EventLabel>& x, const std::set<EventLabel>& y) {
    auto ix = x.begin();
    auto iy = y.begin();
    while (ix != x.end() && iy != y.end()) {
      if (*ix < *iy) ++ix;
      else if (*iy < *ix) ++iy;
      else return true;
    }
    return false;
  };
  return !meets(profile.enabled[q], profile.disabled[r]) &&
         !meets(profile.enabled[r], profile.disabled[q]);
}

std::vector<int> Congruence::cell_of(int num_states) const {
  std::vector<int> out(num_states, -1);
  for (int i = 0; i < num_cells(); ++i) {
    for (StateId q : cells[i]) {
      if (q >= 0 && q < num_states) out[q] = i;
    }
  }
  return out;
}

CongruenceCheck is_congruence(const Congruence& c, const Automaton& a,
                              const EnDisProfile& profile) {
  const int n = a.num_states();
  // Condition 1: nonempty cells that cover every state exactly once.
  std::vector<int> owner(n, -1);
  for (int i = 0; i < c.num_cells(); ++i) {
    if (c.cells[i].empty()) {
      return {false, 2, "cell " + std::to_string(i) + " is empty"};
    }
    for (StateId q : c.cells[i]) {
      if (q < 0 || q >= n) {
        return {false, 1, "cell " + std::to_string(i) + " references unknown state " +
                              std::to_string(q)};
      }
      if (owner[q] >= 0) {
        return {false, 1, "state '" + a.state_name(q) + "' appears in cells " +
                              std::to_string(owner[q]) + " and " + std::to_string(i)};
      }
      owner[q] = i;
    }
  }
  for (StateId q = 0; q < n; ++q) {
    if (owner[q] < 0) {
      return {false, 1, "state '" + a.state_name(q) + "' is not covered by any cell"};
    }
  }
  // Condition 2: pairwise compatibility inside each cell.
  for (int i = 0; i < c.num_cells(); ++i) {
    const auto& cell = c.cells[i];
    for (std::size_t x = 0; x < cell.size(); ++x) {
      for (std::size_t y = x + 1; y < cell.size(); ++y) {
        if (!compatible(profile, cell[x], cell[y])) {
          return {false, 2, "states '" + a.state_name(cell[x]) + "' and '" +
                                a.state_name(cell[y]) + "' in cell " + std::to_string(i) +
                                " are incompatible"};
        }
      }
    }
  }
  // Condition 3: successors of one cell under one label share a cell.
  for (int i = 0; i < c.num_cells(); ++i) {
    std::map<EventLabel, int> target_cell;
    for (StateId q : c.cells[i]) {
      for (const auto& [label, dst] : a.transitions_from(q)) {
        auto [it, inserted] = target_cell.emplace(label, owner[dst]);
        if (!inserted && it->second != owner[dst]) {
          return {false, 3, "cell " + std::to_string(i) + " splits on label " +
                                label.text() + ": successors land in cells " +
                                std::to_string(it->second) + " and " +
                                std::to_string(owner[dst])};
        }
      }
    }
  }
  return {};
}

Automaton induce(const Congruence& c, const Automaton& a) {
  // Structural re-check (partition + closure); compatibility needs a profile
  // and is the caller's precondition via is_congruence.
  const int n = a.num_states();
  std::vector<int> owner = c.cell_of(n);
  for (StateId q = 0; q < n; ++q) {
    if (owner[q] < 0) {
      throw std::invalid_argument("induce: cells do not cover state '" +
                                  a.state_name(q) + "'");
    }
  }
  int covered = 0;
  for (const auto& cell : c.cells) covered += static_cast<int>(cell.size());
  if (covered != n) {
    throw std::invalid_argument("induce: cells overlap or reference states twice");
  }

  Automaton out(a.name() + "_reduced");
  out.declare_labels(a.alphabet());
  for (int i = 0; i < c.num_cells(); ++i) {
    out.add_state("c" + std::to_string(i), true);
  }
  for (int i = 0; i < c.num_cells(); ++i) {
    std::map<EventLabel, int> moves;
    for (StateId q : c.cells[i]) {
      for (const auto& [label, dst] : a.transitions_from(q)) {
        auto [it, inserted] = moves.emplace(label, owner[dst]);
        if (!inserted && it->second != owner[dst]) {
          throw std::invalid_argument(
              "induce: input is not a congruence (cell " + std::to_string(i) +
              " splits on " + label.text() + ")");
        }
      }
    }
    for (const auto& [label, j] : moves) out.add_transition(i, label, j);
  }
  out.set_initial(owner[a.initial()]);
  return out;
}

namespace {

// Canonical state numbering: breadth-first from the initial state with labels
// in canonical order; states unreachable inside the attacker follow in index
// order.
std::vector<StateId> canonical_order(const Automaton& a) {
  std::vector<StateId> order;
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue;
  seen[a.initial()] = true;
  queue.push_back(a.initial());
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    order.push_back(q);
    for (const auto& [label, dst] : a.transitions_from(q)) {
      if (!seen[dst]) {
        seen[dst] = true;
        queue.push_back(dst);
      }
    }
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!seen[q]) order.push_back(q);
  }
  return order;
}

// Union-find over states with explicit member lists, so tentative merges can
// be rolled back by restoring a snapshot.
struct Partition {
  std::vector<int> parent;
  std::vector<std::vector<StateId>> members;

  explicit Partition(int n) : parent(n), members(n) {
    for (int i = 0; i < n; ++i) {
      parent[i] = i;
      members[i] = {i};
    }
  }

  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }

  void unite(int x, int y) {  // callers pass roots
    parent[y] = x;
    auto& mx = members[x];
    mx.insert(mx.end(), members[y].begin(), members[y].end());
    members[y].clear();
  }
};

// Merge the cells of states x and y and propagate forced merges: whenever a
// merged cell has two successors under one label in different cells, those
// cells must merge as well. Returns false (partition partially modified, the
// caller restores the snapshot) if a forced pair is incompatible.
bool merge_and_propagate(Partition& part, const Automaton& a,
                         const EnDisProfile& profile, StateId x, StateId y) {
  std::deque<std::pair<StateId, StateId>> pending{{x, y}};
  while (!pending.empty()) {
    auto [u, v] = pending.front();
    pending.pop_front();
    int ru = part.find(u), rv = part.find(v);
    if (ru == rv) continue;
    for (StateId m : part.members[ru]) {
      for (StateId k : part.members[rv]) {
        if (!compatible(profile, m, k)) return false;
      }
    }
    part.unite(ru, rv);
    std::map<EventLabel, StateId> first_target;
    for (StateId m : part.members[ru]) {
      for (const auto& [label, dst] : a.transitions_from(m)) {
        auto [it, inserted] = first_target.emplace(label, dst);
        if (!inserted && part.find(it->second) != part.find(dst)) {
          pending.emplace_back(it->second, dst);
        }
      }
    }
  }
  return true;
}

Congruence cells_from_partition(const Partition& part,
                                const std::vector<StateId>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  // Roots sorted by the canonical position of their earliest member.
  std::vector<std::pair<int, int>> roots;  // (min canonical pos, root)
  for (std::size_t r = 0; r < part.members.size(); ++r) {
    if (part.members[r].empty()) continue;
    int best = pos[part.members[r][0]];
    for (StateId m : part.members[r]) best = std::min(best, pos[m]);
    roots.emplace_back(best, static_cast<int>(r));
  }
  std::sort(roots.begin(), roots.end());
  Congruence out;
  for (const auto& [unused, r] : roots) {
    std::vector<StateId> cell = part.members[r];
    std::sort(cell.begin(), cell.end());
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace

Reduction reduce_ra(const Automaton& a, const AttackContext& ctx) {
  ValidityReport validity = validate_attacker(a, ctx);
  if (!validity.valid()) {
    throw AttackerInvalid(a.name(), validity);
  }
  EnDisProfile profile = compute_profile(a, ctx);
  const std::vector<StateId> order = canonical_order(a);
  const int n = a.num_states();

  Partition part(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      StateId qi = order[i], qj = order[j];
      if (part.find(qi) == part.find(qj)) continue;
      Partition snapshot = part;
      if (!merge_and_propagate(part, a, profile, qi, qj)) {
        part = std::move(snapshot);
      }
    }
  }

  Reduction out;
  out.congruence = cells_from_partition(part, order);
  CongruenceCheck check = is_congruence(out.congruence, a, profile);
  if (!check.ok) {
    throw std::logic_error("reduction produced a non-congruence: " + check.detail);
  }
  out.attacker = induce(out.congruence, a);
  return out;
}

namespace {

// Depth-first enumeration of cell assignments in canonical order: state k
// joins an existing compatible cell (smallest index first) or opens a new
// one. Enumeration order is therefore lexicographic in the assignment.
struct AssignmentSearch {
  const Automaton& a;
  const EnDisProfile& profile;
  const std::vector<StateId>& order;
  std::vector<std::vector<StateId>> cells;
  std::vector<int> best_assignment;  // cell index per canonical position
  std::vector<int> assignment;
  int best = -1;
  bool stop_at_bound = false;  // phase 2: return first solution with <= bound
  int bound = 0;

  AssignmentSearch(const Automaton& a_, const EnDisProfile& p_,
                   const std::vector<StateId>& o_)
      : a(a_), profile(p_), order(o_) {}

  bool closure_ok() const {
    Congruence c;
    for (const auto& cell : cells) c.cells.push_back(cell);
    return is_congruence(c, a, profile).ok;
  }

  // Returns true to abort the whole search (phase-2 hit).
  bool walk(std::size_t k) {
    if (k == order.size()) {
      if (!closure_ok()) return false;
      int size = static_cast<int>(cells.size());
      if (stop_at_bound) {
        best = size;
        best_assignment = assignment;
        return true;
      }
      if (best < 0 || size < best) {
        best = size;
        best_assignment = assignment;
      }
      return false;
    }
    StateId q = order[k];
    int limit = stop_at_bound ? bound : (best < 0 ? static_cast<int>(order.size())
                                                  : best - 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      bool ok = true;
      for (StateId m : cells[c]) {
        if (!compatible(profile, m, q)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      cells[c].push_back(q);
      assignment.push_back(static_cast<int>(c));
      if (walk(k + 1)) return true;
      assignment.pop_back();
      cells[c].pop_back();
    }
    if (static_cast<int>(cells.size()) < limit) {
      cells.push_back({q});
      assignment.push_back(static_cast<int>(cells.size()) - 1);
      if (walk(k + 1)) return true;
      assignment.pop_back();
      cells.pop_back();
    }
    return false;
  }
};

}  // namespace

Reduction brute_min(const Automaton& a, const AttackContext& ctx, int max_states) {
  if (a.num_states() > max_states) {
    throw std::invalid_argument(
        "brute_min refused: attacker '" + a.name() + "' has " +
        std::to_string(a.num_states()) + " states, cap is " + std::to_string(max_states));
  }
  EnDisProfile profile = compute_profile(a, ctx);
  const std::vector<StateId> order = canonical_order(a);

  // Phase 1: minimum cell count. The singleton partition is always a
  // congruence, so a solution exists.
  AssignmentSearch phase1(a, profile, order);
  phase1.walk(0);
  if (phase1.best < 0) {
    throw std::logic_error("brute_min found no congruence at all");
  }
  // Phase 2: first (lexicographically least) assignment with that size.
  AssignmentSearch phase2(a, profile, order);
  phase2.stop_at_bound = true;
  phase2.bound = phase1.best;
  phase2.walk(0);

  std::vector<std::vector<StateId>> cells(phase2.best);
  for (std::size_t k = 0; k < order.size(); ++k) {
    cells[phase2.best_assignment[k]].push_back(order[k]);
  }
  Reduction out;
  for (auto& cell : cells) {
    std::sort(cell.begin(), cell.end());
    out.congruence.cells.push_back(std::move(cell));
  }
  out.attacker = induce(out.congruence, a);
  return out;
}

}  // namespace attred
