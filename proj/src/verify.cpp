#include "attred/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "attred/reduce.hpp"

namespace attred {

std::string EquivalenceVerdict::describe() const {
  if (equivalent) return "equivalent";
  return std::string(marked_phase ? "marked" : "closed") +
         " behaviors differ, witness: " + format_word(witness);
}

EquivalenceVerdict attack_equivalent(const Automaton& a1, const Automaton& a2,
                                     const AttackContext& ctx) {
  Automaton w1 = as_attacker(a1, ctx.alphabet);
  Automaton w2 = as_attacker(a2, ctx.alphabet);
  Automaton b1 = sync_product(ctx.plant_prime, w1);
  Automaton b2 = sync_product(ctx.plant_prime, w2);
  EquivalenceVerdict out;
  LanguageCompare closed = language_equal(b1, b2);
  if (!closed.equal) {
    out.equivalent = false;
    out.marked_phase = false;
    out.witness = std::move(closed.witness);
    return out;
  }
  LanguageCompare marked = marked_language_equal(b1, b2);
  if (!marked.equal) {
    out.equivalent = false;
    out.marked_phase = true;
    out.witness = std::move(marked.witness);
  }
  return out;
}

ValidityReport validate_attacker(const Automaton& a, const AttackContext& ctx) {
  Automaton attacker = as_attacker(a, ctx.alphabet);
  ValidityReport report;

  // Check 1: every string of the attacker is a string of the attack
  // constraints, by simulating the attacker inside AC.
  {
    const Automaton& ac = ctx.ac;
    std::map<std::pair<StateId, StateId>, int> seen;
    std::vector<std::pair<StateId, StateId>> nodes;
    std::vector<int> parent;
    std::vector<EventLabel> via;
    std::deque<int> queue;
    auto intern = [&](StateId p, StateId q, int from, const EventLabel* label) {
      auto key = std::make_pair(p, q);
      if (seen.count(key)) return;
      seen.emplace(key, static_cast<int>(nodes.size()));
      nodes.push_back(key);
      parent.push_back(from);
      via.push_back(label ? *label : EventLabel::plain("x"));
      queue.push_back(static_cast<int>(nodes.size()) - 1);
    };
    intern(attacker.initial(), ac.initial(), -1, nullptr);
    while (!queue.empty() && report.ac_containment.pass) {
      int id = queue.front();
      queue.pop_front();
      auto [p, q] = nodes[id];
      for (const auto& [label, dst] : attacker.transitions_from(p)) {
        auto t = ac.target(q, label);
        if (!t) {
          report.ac_containment.pass = false;
          for (int cur = id; parent[cur] >= 0; cur = parent[cur]) {
            report.ac_containment.witness.push_back(via[cur]);
          }
          std::reverse(report.ac_containment.witness.begin(),
                       report.ac_containment.witness.end());
          report.ac_containment.witness.push_back(label);
          report.ac_containment.detail =
              "attacker string leaves the attack constraints: " +
              format_word(report.ac_containment.witness);
          break;
        }
        intern(dst, *t, id, &label);
      }
    }
  }

  // Check 2: the attacker only ever disables attacked copies. Anything else
  // it withholds would mean controlling events outside its authority.
  {
    EnDisProfile profile = compute_profile(attacker, ctx);
    for (StateId q = 0; q < attacker.num_states() && report.controllability.pass; ++q) {
      for (const EventLabel& label : profile.disabled[q]) {
        if (!label.is_attacked()) {
          report.controllability.pass = false;
          report.controllability.witness = profile.disabled_witness[q].at(label);
          report.controllability.detail =
              "state '" + attacker.state_name(q) + "' disables " + label.text() +
              ", reachable via: " + format_word(report.controllability.witness);
          break;
        }
      }
    }
  }

  // Check 3: transitions on events the attacker does not observe must be
  // self-loops (its state may only change on observed information).
  for (StateId q = 0; q < attacker.num_states() && report.feasibility.pass; ++q) {
    for (const auto& [label, dst] : attacker.transitions_from(q)) {
      if (label.is_plain() && !ctx.alphabet.attacker_observable(label.name()) &&
          dst != q) {
        report.feasibility.pass = false;
        report.feasibility.detail = "state '" + attacker.state_name(q) +
                                    "' changes state on unobserved event " +
                                    label.text();
        break;
      }
    }
  }
  return report;
}

std::string ValidityReport::render() const {
  auto line = [](const char* name, const CheckResult& r) {
    std::string out = std::string(name) + (r.pass ? "PASS" : "FAIL");
    if (!r.pass && !r.detail.empty()) out += "  (" + r.detail + ")";
    return out + "\n";
  };
  return line("AC containment:          ", ac_containment) +
         line("controllability:         ", controllability) +
         line("observation feasibility: ", feasibility);
}

AttackerInvalid::AttackerInvalid(const std::string& name, ValidityReport report)
    : std::runtime_error("attacker '" + name + "' is invalid:\n" + report.render()),
      report_(std::move(report)) {}

CovertnessResult check_covert(const Automaton& a, const AttackContext& ctx) {
  Automaton attacker = as_attacker(a, ctx.alphabet);
  const Automaton& plant = ctx.plant_prime;
  CovertnessResult out;

  std::map<std::pair<StateId, StateId>, int> seen;
  std::vector<std::pair<StateId, StateId>> nodes;
  std::vector<int> parent;
  std::vector<EventLabel> via;
  std::deque<int> queue;
  auto intern = [&](StateId p, StateId q, int from, const EventLabel* label) {
    auto key = std::make_pair(p, q);
    if (seen.count(key)) return -1;
    seen.emplace(key, static_cast<int>(nodes.size()));
    nodes.push_back(key);
    parent.push_back(from);
    via.push_back(label ? *label : EventLabel::plain("x"));
    queue.push_back(static_cast<int>(nodes.size()) - 1);
    return static_cast<int>(nodes.size()) - 1;
  };
  auto exposed = [&](StateId p) {
    return ctx.plant_prime_origin[p][2] == ctx.no_covert_state;
  };
  auto report = [&](int id) {
    out.covert = false;
    for (int cur = id; parent[cur] >= 0; cur = parent[cur]) {
      out.witness.push_back(via[cur]);
    }
    std::reverse(out.witness.begin(), out.witness.end());
  };

  int root = intern(plant.initial(), attacker.initial(), -1, nullptr);
  if (exposed(plant.initial())) {
    report(root);
    return out;
  }
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [p, q] = nodes[id];
    for (const auto& [label, pdst] : plant.transitions_from(p)) {
      StateId qdst = q;
      if (!label.is_command()) {
        auto t = attacker.target(q, label);
        if (!t) continue;
        qdst = *t;
      }
      int child = intern(pdst, qdst, id, &label);
      if (child >= 0 && exposed(pdst)) {
        report(child);
        return out;
      }
    }
  }
  return out;
}

}  // namespace attred
