#include <doctest.h>

#include "testutil.hpp"

using namespace attred;
using tu::at;
using tu::pl;
using tu::Word;

namespace {

Automaton self_loop(const std::string& event, bool marked = true) {
  Automaton a("loop_" + event);
  a.add_state("q0", marked);
  a.add_transition(0, pl(event), 0);
  return a;
}

}  // namespace

TEST_CASE("enabled_set on the attack constraints") {
  AttackContext ctx = tu::water_context();
  std::set<EventLabel> idle = enabled_set(ctx.ac, 0);
  CHECK(idle == std::set<EventLabel>{pl("L"), pl("H"), pl("EH"), pl("close"), pl("open")});
  // only the compromised readings leave the initial state
  for (const auto& [label, dst] : ctx.ac.transitions_from(0)) {
    bool leaves = dst != 0;
    CHECK(leaves == ctx.alphabet.compromised(label.name()));
  }
  std::set<EventLabel> pending = enabled_set(ctx.ac, 1);
  CHECK(pending == std::set<EventLabel>{at("L"), at("H"), at("EH")});
  for (const auto& [label, dst] : ctx.ac.transitions_from(1)) CHECK(dst == 0);
}

TEST_CASE("enabled_set edge cases") {
  Automaton a("a");
  a.add_state("only");
  CHECK(enabled_set(a, 0).empty());
  CHECK_THROWS_AS(enabled_set(a, 1), std::invalid_argument);
  CHECK_THROWS_AS(enabled_set(a, -1), std::invalid_argument);
}

TEST_CASE("determinism is enforced structurally") {
  Automaton a("a");
  a.add_state("x");
  a.add_state("y");
  a.add_transition(0, pl("e"), 1);
  CHECK_THROWS_AS(a.add_transition(0, pl("e"), 0), std::invalid_argument);
}

TEST_CASE("product of two identical one-state loops is the loop itself") {
  Automaton p = sync_product(self_loop("a"), self_loop("a"));
  CHECK(p.num_states() == 1);
  CHECK(p.is_marked(0));
  CHECK(p.target(0, pl("a")) == 0);
  CHECK(isomorphic(p, self_loop("a")));
}

TEST_CASE("product with disjoint alphabets is the accessible shuffle") {
  Automaton a("a");
  a.add_state("x0", true);
  a.add_state("x1", true);
  a.add_transition(0, pl("p"), 1);
  Automaton b("b");
  b.add_state("y0", true);
  b.add_state("y1", true);
  b.add_state("y2", true);
  b.add_transition(0, pl("q"), 1);
  b.add_transition(1, pl("r"), 2);
  Automaton prod = sync_product(a, b);
  CHECK(prod.num_states() <= 6);

  // oracle: interleavings of every pair of strings of the factors
  std::set<Word> expected;
  tu::Lang la = tu::enumerate_language(a, 4);
  tu::Lang lb = tu::enumerate_language(b, 4);
  for (const Word& u : la.closed) {
    for (const Word& v : lb.closed) {
      auto all = tu::interleavings(u, v);
      expected.insert(all.begin(), all.end());
    }
  }
  CHECK(tu::enumerate_language(prod, 4).closed == expected);
}

TEST_CASE("product marks exactly the damage tuples on the water tank") {
  AttackContext ctx = tu::water_context();
  Automaton attacker = as_attacker(tu::water_attacker(), ctx.alphabet);
  SyncProduct b = sync_product_traced(
      {&ctx.plant, &ctx.ce, &ctx.bts_attacked, &attacker});
  REQUIRE(b.automaton.num_states() > 0);
  bool saw_marked = false;
  for (StateId q = 0; q < b.automaton.num_states(); ++q) {
    bool damage = ctx.plant.is_marked(b.factor_states[q][0]);
    CHECK(b.automaton.is_marked(q) == damage);
    saw_marked = saw_marked || damage;
  }
  CHECK(saw_marked);
}

TEST_CASE("product language is the intersection for shared alphabets") {
  tu::Rng rng(7101);
  std::vector<EventLabel> labels{pl("a"), pl("b"), pl("c")};
  for (int round = 0; round < 15; ++round) {
    Automaton a = tu::random_automaton(rng, labels, 6);
    Automaton b = tu::random_automaton(rng, labels, 6);
    Automaton p = sync_product(a, b);
    tu::Lang la = tu::enumerate_language(a, 8);
    tu::Lang lb = tu::enumerate_language(b, 8);
    tu::Lang lp = tu::enumerate_language(p, 8);
    std::set<Word> closed, marked;
    for (const Word& w : la.closed) {
      if (lb.closed.count(w)) closed.insert(w);
    }
    for (const Word& w : la.marked) {
      if (lb.marked.count(w)) marked.insert(w);
    }
    CHECK(lp.closed == closed);
    CHECK(lp.marked == marked);
  }
}

TEST_CASE("product composition is associative up to language equality") {
  tu::Rng rng(7102);
  std::vector<EventLabel> shared{pl("a"), pl("b")};
  std::vector<EventLabel> left{pl("a"), pl("c")};
  std::vector<EventLabel> right{pl("b"), pl("d")};
  for (int round = 0; round < 10; ++round) {
    Automaton a = tu::random_automaton(rng, shared, 4);
    Automaton b = tu::random_automaton(rng, left, 4);
    Automaton c = tu::random_automaton(rng, right, 4);
    Automaton ab_c = sync_product(sync_product(a, b), c);
    Automaton a_bc = sync_product(a, sync_product(b, c));
    CHECK(language_equal(ab_c, a_bc).equal);
    CHECK(marked_language_equal(ab_c, a_bc).equal);
  }
}

TEST_CASE("sync_product rejects an empty factor list") {
  CHECK_THROWS_AS(sync_product(std::vector<const Automaton*>{}), std::invalid_argument);
}

TEST_CASE("accessible removes unreachable states and nothing else") {
  Automaton a("a");
  a.add_state("init");
  a.add_state("next", true);
  a.add_state("island", true);  // unreachable and marked
  a.add_transition(0, pl("e"), 1);
  a.add_transition(2, pl("e"), 0);
  Automaton trimmed = accessible(a);
  CHECK(trimmed.num_states() == 2);
  CHECK(isomorphic(trimmed, accessible(trimmed)));  // fixpoint

  tu::Lang before = tu::enumerate_language(a, 8);
  tu::Lang after = tu::enumerate_language(trimmed, 8);
  CHECK(before.closed == after.closed);
  CHECK(before.marked == after.marked);
}

TEST_CASE("accessible preserves the language of random automata") {
  tu::Rng rng(7103);
  std::vector<EventLabel> labels{pl("a"), pl("b")};
  for (int round = 0; round < 10; ++round) {
    Automaton a = tu::random_automaton(rng, labels, 10);
    Automaton t = accessible(a);
    tu::Lang la = tu::enumerate_language(a, 8);
    tu::Lang lt = tu::enumerate_language(t, 8);
    CHECK(la.closed == lt.closed);
    CHECK(la.marked == lt.marked);
  }
}

TEST_CASE("language_equal is reflexive and sees through state duplication") {
  Automaton one = self_loop("a");
  CHECK(language_equal(one, one).equal);

  Automaton two("two");
  two.add_state("q0", true);
  two.add_state("q1", true);
  two.add_transition(0, pl("a"), 1);
  two.add_transition(1, pl("a"), 0);
  CHECK(language_equal(one, two).equal);  // both accept a*
}

TEST_CASE("marked_language_equal separates same closed language, different marking") {
  Automaton x("x");
  x.add_state("q0", true);
  x.add_state("q1", true);
  x.add_transition(0, pl("a"), 1);
  Automaton y("y");
  y.add_state("q0", true);
  y.add_state("q1", false);
  y.add_transition(0, pl("a"), 1);
  CHECK(language_equal(x, y).equal);
  LanguageCompare cmp = marked_language_equal(x, y);
  CHECK_FALSE(cmp.equal);
  REQUIRE(cmp.witness == Word{pl("a")});
  CHECK(tu::accepts_marked(x, cmp.witness) != tu::accepts_marked(y, cmp.witness));
}

TEST_CASE("witnesses are shortest with lexicographic tie-breaking") {
  Automaton a("a");
  a.add_state("q0");
  a.add_transition(0, pl("b"), 0);
  a.add_transition(0, pl("a"), 0);
  Automaton b("b");
  b.add_state("q0");
  LanguageCompare cmp = language_equal(a, b);
  REQUIRE_FALSE(cmp.equal);
  CHECK(cmp.witness == Word{pl("a")});  // both differ; "a" sorts first
}

TEST_CASE("language_equal behaves like an equivalence relation") {
  tu::Rng rng(7104);
  std::vector<EventLabel> labels{pl("a"), pl("b")};
  for (int round = 0; round < 8; ++round) {
    Automaton a = tu::random_automaton(rng, labels, 5);
    Automaton b = accessible(a);  // same language by construction
    Automaton c = sync_product(a, a);  // idempotence keeps the language
    CHECK(language_equal(a, a).equal);
    CHECK(language_equal(a, b).equal == language_equal(b, a).equal);
    if (language_equal(a, b).equal && language_equal(b, c).equal) {
      CHECK(language_equal(a, c).equal);
    }
  }
}

TEST_CASE("language comparison verdicts match bounded enumeration") {
  tu::Rng rng(7105);
  std::vector<EventLabel> labels{pl("a"), pl("b")};
  for (int round = 0; round < 30; ++round) {
    Automaton a = tu::random_automaton(rng, labels, 4);
    Automaton b = tu::random_automaton(rng, labels, 4);
    LanguageCompare closed = language_equal(a, b);
    LanguageCompare marked = marked_language_equal(a, b);
    tu::Lang la = tu::enumerate_language(a, 8);
    tu::Lang lb = tu::enumerate_language(b, 8);
    if (closed.equal) {
      CHECK(la.closed == lb.closed);
    } else {
      CHECK(tu::accepts_closed(a, closed.witness) !=
            tu::accepts_closed(b, closed.witness));
    }
    if (marked.equal) {
      CHECK(la.marked == lb.marked);
    } else {
      CHECK(tu::accepts_marked(a, marked.witness) !=
            tu::accepts_marked(b, marked.witness));
    }
  }
}

TEST_CASE("export_dot renders deterministically") {
  Automaton solo("solo");
  solo.add_state("only", true);
  std::string dot = export_dot(solo);
  CHECK(dot.find("digraph \"solo\"") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("__start -> s0;") != std::string::npos);

  // byte-identical across independently rebuilt models
  std::string first = export_dot(tu::water_context().ac);
  std::string second = export_dot(tu::water_context().ac);
  CHECK(first == second);
}

TEST_CASE("export_dot of the attack constraints shows the two-state topology") {
  AttackContext ctx = tu::water_context();
  std::string dot = export_dot(ctx.ac);
  CHECK(dot.find("s0 [label=\"idle\"") != std::string::npos);
  CHECK(dot.find("s1 [label=\"pending\"") != std::string::npos);
  // 5 plain transitions from idle, 3 attacked copies back, 1 entry arrow
  std::size_t arrows = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos;
       pos = dot.find("->", pos + 1)) {
    ++arrows;
  }
  CHECK(arrows == 9);
}

TEST_CASE("run_word and format_word round out the word helpers") {
  Automaton a = self_loop("a");
  CHECK(run_word(a, {pl("a"), pl("a")}) == 0);
  CHECK_FALSE(run_word(a, {pl("b")}).has_value());
  CHECK(format_word({pl("a"), at("b")}) == "a b#");
  CHECK(format_word({}) == "<empty>");
}
