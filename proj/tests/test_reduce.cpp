#include <doctest.h>

#include "attred/model_io.hpp"
#include "attred/reduce.hpp"
#include "attred/verify.hpp"
#include "testutil.hpp"

using namespace attred;
using tu::at;
using tu::pl;

namespace {

// Independent disabled-set oracle: depth-first product walk with a visited
// set, no shared code with compute_profile.
void oracle_walk(const Automaton& plant, const Automaton& attacker, StateId p,
                 StateId q, std::set<std::pair<StateId, StateId>>& seen,
                 std::vector<std::set<EventLabel>>& dis) {
  if (!seen.insert({p, q}).second) return;
  for (const auto& [label, pdst] : plant.transitions_from(p)) {
    if (label.is_command()) {
      oracle_walk(plant, attacker, pdst, q, seen, dis);
    } else if (auto t = attacker.target(q, label)) {
      oracle_walk(plant, attacker, pdst, *t, seen, dis);
    } else {
      dis[q].insert(label);
    }
  }
}

std::vector<std::set<EventLabel>> oracle_disabled(const AttackContext& ctx,
                                                  const Automaton& a) {
  Automaton attacker = as_attacker(a, ctx.alphabet);
  std::vector<std::set<EventLabel>> dis(attacker.num_states());
  std::set<std::pair<StateId, StateId>> seen;
  oracle_walk(ctx.plant_prime, attacker, ctx.plant_prime.initial(),
              attacker.initial(), seen, dis);
  return dis;
}

}  // namespace

TEST_CASE("profile of the water-tank attacker matches the product walk") {
  AttackContext ctx = tu::water_context();
  Automaton a = tu::water_attacker();
  EnDisProfile profile = compute_profile(a, ctx);

  // state 7 is reached after observing H: the attacker lies with L# and has
  // implicitly disabled the truthful H#
  CHECK(profile.enabled[7] == std::set<EventLabel>{at("L")});
  CHECK(profile.disabled[7] == std::set<EventLabel>{at("H"), at("EH")});
  CHECK(profile.disabled[7].count(at("H")) == 1);

  std::vector<std::set<EventLabel>> oracle = oracle_disabled(ctx, a);
  for (StateId q = 0; q < a.num_states(); ++q) {
    CHECK(profile.disabled[q] == oracle[q]);
  }
}

TEST_CASE("states unreachable in the product have empty profiles") {
  AttackContext ctx = tu::water_context();
  Automaton a = tu::water_attacker();
  StateId extra = a.add_state("extra", true);
  // state 11 pairs only with damage configurations where no reading can fire,
  // so this transition is never exercised by the closed loop
  a.add_transition(11, pl("L"), extra);
  EnDisProfile profile = compute_profile(a, ctx);
  CHECK(profile.enabled[extra].empty());
  CHECK(profile.disabled[extra].empty());
}

TEST_CASE("profile of the attack constraints used as an attacker") {
  AttackContext ctx = tu::water_context();
  EnDisProfile profile = compute_profile(ctx.ac, ctx);
  // The surrogate plant offers attacked copies while AC sits mid-alternation,
  // so the idle state does disable them; the pending state disables nothing.
  CHECK(profile.disabled[0] == std::set<EventLabel>{at("EH"), at("H"), at("L")});
  CHECK(profile.disabled[1].empty());
  std::vector<std::set<EventLabel>> oracle = oracle_disabled(ctx, ctx.ac);
  CHECK(profile.disabled[0] == oracle[0]);
  CHECK(profile.disabled[1] == oracle[1]);
}

TEST_CASE("compute_profile rejects command labels") {
  AttackContext ctx = tu::water_context();
  Automaton bad("bad");
  bad.add_state("q", true);
  bad.add_transition(0, tu::cmd({"L"}), 0);
  CHECK_THROWS_AS(compute_profile(bad, ctx), std::invalid_argument);
}

TEST_CASE("compatibility is reflexive and symmetric") {
  AttackContext ctx = tu::water_context();
  EnDisProfile profile = compute_profile(tu::water_attacker(), ctx);
  for (StateId q = 0; q < 14; ++q) CHECK(compatible(profile, q, q));
  for (StateId q = 0; q < 14; ++q) {
    for (StateId r = 0; r < 14; ++r) {
      CHECK(compatible(profile, q, r) == compatible(profile, r, q));
    }
  }
  // state 0 awaits a reading, state 1 must answer with L#: state 0 disables
  // exactly those replies
  CHECK_FALSE(compatible(profile, 0, 1));
  CHECK(compatible(profile, 0, 2));
}

TEST_CASE("is_congruence accepts the singleton partition") {
  AttackContext ctx = tu::water_context();
  Automaton a = tu::water_attacker();
  EnDisProfile profile = compute_profile(a, ctx);
  Congruence singletons;
  for (StateId q = 0; q < a.num_states(); ++q) singletons.cells.push_back({q});
  CHECK(is_congruence(singletons, a, profile).ok);
}

TEST_CASE("is_congruence reports the violated condition") {
  AttackContext ctx = tu::water_context();
  Automaton a = tu::water_attacker();
  EnDisProfile profile = compute_profile(a, ctx);

  Congruence all_in_one;
  all_in_one.cells.push_back({});
  for (StateId q = 0; q < a.num_states(); ++q) all_in_one.cells[0].push_back(q);
  CongruenceCheck incompatible = is_congruence(all_in_one, a, profile);
  CHECK_FALSE(incompatible.ok);
  CHECK(incompatible.violated_condition == 2);

  Congruence missing;
  missing.cells.push_back({0, 2});
  CongruenceCheck cover = is_congruence(missing, a, profile);
  CHECK_FALSE(cover.ok);
  CHECK(cover.violated_condition == 1);

  // {0, 3} is compatible but sends L into the two different cells {1}, {4}
  Congruence split;
  split.cells.push_back({0, 3});
  split.cells.push_back({1});
  split.cells.push_back({4});
  for (StateId q : {2, 5, 6, 7, 8, 9, 10, 11, 12, 13}) split.cells.push_back({q});
  CongruenceCheck closure = is_congruence(split, a, profile);
  CHECK_FALSE(closure.ok);
  CHECK(closure.violated_condition == 3);
}

TEST_CASE("the singleton congruence induces an isomorphic attacker") {
  Automaton a = tu::water_attacker();
  Congruence singletons;
  for (StateId q = 0; q < a.num_states(); ++q) singletons.cells.push_back({q});
  Automaton quotient = induce(singletons, a);
  CHECK(quotient.num_states() == a.num_states());
  CHECK(isomorphic(quotient, a));
}

TEST_CASE("induce rejects broken partitions") {
  Automaton a = tu::water_attacker();
  Congruence overlap;
  overlap.cells.push_back({0, 1});
  overlap.cells.push_back({1, 2});
  CHECK_THROWS_AS(induce(overlap, a), std::invalid_argument);
}

TEST_CASE("reduction of the water-tank attacker hits three states") {
  AttackContext ctx = tu::water_context();
  Automaton a = tu::water_attacker();
  Reduction reduction = reduce_ra(a, ctx);

  std::vector<std::vector<StateId>> expected{
      {0, 2, 3, 5, 6, 8, 9, 11, 12, 13}, {1, 4, 7}, {10}};
  CHECK(reduction.congruence.cells == expected);
  CHECK(reduction.attacker.num_states() == 3);

  // the reduced attacker is the replace-with-L# strategy of the narrative
  Automaton expected_attacker("expected");
  expected_attacker.add_state("c0", true);
  expected_attacker.add_state("c1", true);
  expected_attacker.add_state("c2", true);
  expected_attacker.add_transition(0, pl("L"), 1);
  expected_attacker.add_transition(0, pl("H"), 1);
  expected_attacker.add_transition(0, pl("EH"), 2);
  expected_attacker.add_transition(0, pl("close"), 0);
  expected_attacker.add_transition(1, at("L"), 0);
  expected_attacker.add_transition(2, at("L"), 0);
  expected_attacker.add_transition(2, at("H"), 0);
  expected_attacker.add_transition(2, at("EH"), 0);
  CHECK(isomorphic(reduction.attacker, expected_attacker));

  EnDisProfile profile = compute_profile(a, ctx);
  CHECK(is_congruence(reduction.congruence, a, profile).ok);
}

TEST_CASE("reduction leaves a one-state attacker alone") {
  // with no compromised events the do-nothing relay is a valid attacker
  AlphabetSpec al({"a", "b"}, {"b"}, {"a", "b"}, {"a"}, {});
  Automaton g("g");
  g.add_state("p0", true);
  g.add_transition(0, pl("a"), 0);
  g.add_transition(0, pl("b"), 0);
  Automaton s("s");
  s.add_state("s0", true);
  s.add_transition(0, pl("a"), 0);
  s.add_transition(0, pl("b"), 0);
  AttackContext ctx = build_context(g, s, al);
  Automaton tiny("tiny");
  tiny.add_state("q", true);
  for (const auto& e : al.sigma()) tiny.add_transition(0, pl(e), 0);
  Reduction reduction = reduce_ra(tiny, ctx);
  CHECK(reduction.attacker.num_states() == 1);
  CHECK(isomorphic(reduction.attacker, tiny));
}

TEST_CASE("reduction is deterministic") {
  AttackContext ctx = tu::water_context();
  Automaton a = tu::water_attacker();
  Reduction first = reduce_ra(a, ctx);
  Reduction second = reduce_ra(a, ctx);
  CHECK(first.congruence.cells == second.congruence.cells);
  CHECK(export_dot(first.attacker) == export_dot(second.attacker));
}

TEST_CASE("reduction propagates attacker validity failures") {
  AttackContext ctx = tu::water_context();
  Automaton bad("double_reply");
  bad.add_state("0", true);
  bad.add_state("1", true);
  bad.add_state("2", true);
  bad.add_state("3", true);
  bad.add_transition(0, pl("L"), 1);
  bad.add_transition(1, at("L"), 2);
  bad.add_transition(2, at("L"), 3);  // second reply without a reading
  CHECK_THROWS_AS(reduce_ra(bad, ctx), AttackerInvalid);
}

TEST_CASE("reduced attackers stay congruent and equivalent on random systems") {
  tu::Rng rng(5301);
  for (int round = 0; round < 25; ++round) {
    AlphabetSpec al = tu::random_alphabet(rng);
    AttackContext ctx = build_context(tu::random_plant(rng, al, 6),
                                      tu::random_supervisor(rng, al, 5), al);
    Automaton a = tu::random_attacker(rng, ctx, 7);
    Reduction reduction = reduce_ra(a, ctx);
    EnDisProfile profile = compute_profile(a, ctx);
    CHECK(is_congruence(reduction.congruence, a, profile).ok);
    CHECK(reduction.congruence.num_cells() <= a.num_states());
    CHECK(reduction.attacker.num_states() == reduction.congruence.num_cells());
    CHECK(attack_equivalent(a, reduction.attacker, ctx).equivalent);
  }
}

TEST_CASE("exhaustive search confirms the water-tank minimum") {
  AttackContext ctx = tu::water_context();
  Automaton a = tu::water_attacker();
  Reduction minimum = brute_min(a, ctx, 14);
  CHECK(minimum.congruence.num_cells() == 3);
  CHECK(attack_equivalent(a, minimum.attacker, ctx).equivalent);
}

TEST_CASE("exhaustive search refuses oversized attackers") {
  AttackContext ctx = tu::water_context();
  CHECK_THROWS_AS(brute_min(tu::water_attacker(), ctx, 10), std::invalid_argument);
}

TEST_CASE("exhaustive search handles the trivial attacker") {
  AttackContext ctx = tu::water_context();
  Automaton tiny("tiny");
  tiny.add_state("q", true);
  Reduction minimum = brute_min(tiny, ctx);
  CHECK(minimum.congruence.num_cells() == 1);
}

TEST_CASE("exhaustive search never loses to the heuristic") {
  tu::Rng rng(5302);
  for (int round = 0; round < 10; ++round) {
    AlphabetSpec al = tu::random_alphabet(rng);
    AttackContext ctx = build_context(tu::random_plant(rng, al, 5),
                                      tu::random_supervisor(rng, al, 4), al);
    Automaton a = tu::random_attacker(rng, ctx, 6);
    Reduction heuristic = reduce_ra(a, ctx);
    Reduction minimum = brute_min(a, ctx, 10);
    CHECK(minimum.congruence.num_cells() <= heuristic.congruence.num_cells());
    CHECK(attack_equivalent(a, minimum.attacker, ctx).equivalent);
  }
}
