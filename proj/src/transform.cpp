#include "attred/transform.hpp"

#include <algorithm>
#include <sstream>

namespace attred {

namespace {

// Copy with the declared alphabet forced to exactly `labels`; all transition
// labels must already lie inside it.
Automaton with_alphabet(const Automaton& a, const std::set<EventLabel>& labels,
                        const char* role) {
  Automaton out(a.name());
  for (StateId q = 0; q < a.num_states(); ++q) out.add_state(a.state_name(q), a.is_marked(q));
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (const auto& [label, dst] : a.transitions_from(q)) {
      if (!labels.count(label)) {
        throw std::invalid_argument(std::string(role) + " '" + a.name() +
                                    "' uses label " + label.text() +
                                    " outside its permitted event set");
      }
      out.add_transition(q, label, dst);
    }
  }
  out.set_initial(a.initial());
  out.declare_labels(labels);
  return out;
}

}  // namespace

ControlCommand gamma_of(const Automaton& s, StateId q, const AlphabetSpec& alphabet) {
  s.check_state(q);
  ControlCommand cmd;
  for (const auto& [label, dst] : s.transitions_from(q)) {
    if (!label.is_plain() || !alphabet.contains(label.name())) {
      throw std::invalid_argument("supervisor '" + s.name() + "' uses label " +
                                  label.text() + " outside the plant event set");
    }
    cmd.members.insert(label.name());
  }
  std::vector<std::string> missing;
  for (const auto& e : alphabet.sigma_uc()) {
    if (!cmd.members.count(e)) missing.push_back(e);
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "supervisor '" << s.name() << "' state '" << s.state_name(q)
        << "' does not enable uncontrollable event(s):";
    for (const auto& e : missing) msg << " " << e;
    throw InfeasibleSupervisor(msg.str());
  }
  return cmd;
}

Automaton build_ce(const std::set<ControlCommand>& gammas, const AlphabetSpec& alphabet) {
  if (gammas.empty()) {
    throw std::invalid_argument("command execution automaton needs at least one command");
  }
  const auto uc = alphabet.sigma_uc();
  for (const auto& cmd : gammas) {
    for (const auto& e : uc) {
      if (!cmd.members.count(e)) {
        throw std::invalid_argument("command " + cmd.label().text() +
                                    " misses uncontrollable event " + e);
      }
    }
    for (const auto& e : cmd.members) {
      if (!alphabet.contains(e)) {
        throw std::invalid_argument("command " + cmd.label().text() +
                                    " contains unknown event " + e);
      }
    }
  }
  Automaton ce("ce");
  ce.declare_labels(alphabet.plain_labels());
  StateId init = ce.add_state("idle", true);
  ce.set_initial(init);
  for (const auto& cmd : gammas) {  // set order keeps state numbering canonical
    std::string name = "exec";
    for (const auto& e : cmd.members) name += "_" + e;
    StateId holding = ce.add_state(name, true);
    ce.add_transition(init, cmd.label(), holding);
    for (const auto& e : cmd.members) {
      if (alphabet.observable(e)) {
        ce.add_transition(holding, EventLabel::plain(e), init);
      } else {
        ce.add_transition(holding, EventLabel::plain(e), holding);
      }
    }
  }
  return ce;
}

Automaton build_ac(const AlphabetSpec& alphabet) {
  Automaton ac("ac");
  ac.declare_labels(alphabet.attacker_labels());
  StateId idle = ac.add_state("idle", true);
  StateId pending = ac.add_state("pending", true);
  ac.set_initial(idle);
  for (const auto& e : alphabet.sigma()) {
    if (alphabet.compromised(e)) {
      ac.add_transition(idle, EventLabel::plain(e), pending);
      ac.add_transition(pending, EventLabel::attacked(e), idle);
    } else {
      ac.add_transition(idle, EventLabel::plain(e), idle);
    }
  }
  return ac;
}

Automaton bipartize(const Automaton& s, const AlphabetSpec& alphabet) {
  const int n = s.num_states();
  Automaton bts("bts_" + s.name());
  bts.declare_labels(alphabet.plain_labels());
  // Reaction states first (same indices as in s), then command states.
  for (StateId q = 0; q < n; ++q) bts.add_state(s.state_name(q), true);
  for (StateId q = 0; q < n; ++q) bts.add_state(s.state_name(q) + "_com", true);
  for (StateId q = 0; q < n; ++q) {
    ControlCommand cmd = gamma_of(s, q, alphabet);  // also validates feasibility
    bts.add_transition(n + q, cmd.label(), q);
    for (const auto& [label, dst] : s.transitions_from(q)) {
      if (alphabet.observable(label.name())) {
        bts.add_transition(q, label, n + dst);
      } else {
        if (dst != q) {
          throw InfeasibleSupervisor(
              "supervisor '" + s.name() + "' moves on unobservable event " +
              label.text() + " from state '" + s.state_name(q) +
              "': unobservable transitions must be self-loops");
        }
        bts.add_transition(q, label, q);
      }
    }
  }
  bts.set_initial(n + s.initial());
  return bts;
}

AttackedSupervisor attack_bipartize(const Automaton& bts, const AlphabetSpec& alphabet) {
  const int n = bts.num_states();
  // Classify states structurally. Command states carry exactly one command
  // edge; reaction states carry only non-command edges (possibly none).
  std::vector<bool> is_command(n, false);
  for (StateId q = 0; q < n; ++q) {
    bool command = false, plain = false;
    for (const auto& [label, dst] : bts.transitions_from(q)) {
      (label.is_command() ? command : plain) = true;
    }
    if (command && plain) {
      throw std::invalid_argument("state '" + bts.state_name(q) +
                                  "' mixes command and event transitions; "
                                  "input is not a bipartite supervisor");
    }
    is_command[q] = command;
  }

  Automaton out(bts.name() + "_attacked");
  out.declare_labels(bts.alphabet());
  out.declare_labels(alphabet.attacked_labels());
  for (StateId q = 0; q < n; ++q) out.add_state(bts.state_name(q), true);
  StateId no_covert = out.add_state("no_covert", true);
  for (StateId q = 0; q < n; ++q) {
    if (is_command[q]) {
      for (const auto& [label, dst] : bts.transitions_from(q)) {
        out.add_transition(q, label, dst);
      }
      continue;
    }
    for (const auto& [label, dst] : bts.transitions_from(q)) {
      if (!label.is_plain()) {
        throw std::invalid_argument("reaction state '" + bts.state_name(q) +
                                    "' carries non-plain label " + label.text() +
                                    "; input is not a bipartite supervisor");
      }
      if (alphabet.compromised(label.name())) {
        // The supervisor now reacts to the attacked copy; the physical event
        // still happens but is invisible to it.
        out.add_transition(q, EventLabel::attacked(label.name()), dst);
        out.add_transition(q, label, q);
      } else {
        out.add_transition(q, label, dst);
      }
    }
    for (const auto& e : alphabet.sigma_sa()) {
      if (!bts.target(q, EventLabel::plain(e))) {
        out.add_transition(q, EventLabel::attacked(e), no_covert);
      }
    }
    for (const auto& e : alphabet.sigma_o()) {
      if (alphabet.compromised(e)) continue;
      if (!bts.target(q, EventLabel::plain(e))) {
        out.add_transition(q, EventLabel::plain(e), no_covert);
      }
    }
  }
  out.set_initial(bts.initial());
  return AttackedSupervisor{std::move(out), no_covert};
}

AttackContext build_context(const Automaton& g, const Automaton& s,
                            const AlphabetSpec& alphabet) {
  AttackContext ctx{alphabet,  Automaton{}, Automaton{}, {}, Automaton{},
                    Automaton{}, Automaton{}, Automaton{}, -1, Automaton{}, {}};
  ctx.plant = with_alphabet(g, alphabet.plain_labels(), "plant");
  ctx.supervisor = with_alphabet(s, alphabet.plain_labels(), "supervisor");
  for (StateId q = 0; q < s.num_states(); ++q) {
    ctx.gammas.insert(gamma_of(ctx.supervisor, q, alphabet));
  }
  ctx.ce = build_ce(ctx.gammas, alphabet);
  ctx.ac = build_ac(alphabet);
  ctx.bts = bipartize(ctx.supervisor, alphabet);
  AttackedSupervisor attacked = attack_bipartize(ctx.bts, alphabet);
  ctx.bts_attacked = std::move(attacked.automaton);
  ctx.no_covert_state = attacked.no_covert_state;

  SyncProduct prime =
      sync_product_traced({&ctx.plant, &ctx.ce, &ctx.bts_attacked});
  ctx.plant_prime = std::move(prime.automaton);
  ctx.plant_prime.set_name("plant_prime");
  ctx.plant_prime_origin.reserve(prime.factor_states.size());
  for (const auto& t : prime.factor_states) {
    ctx.plant_prime_origin.push_back({t[0], t[1], t[2]});
  }

  // Construction size invariants.
  const int ns = ctx.supervisor.num_states();
  if (ctx.bts.num_states() != 2 * ns ||
      ctx.bts_attacked.num_states() != 2 * ns + 1 || ctx.ac.num_states() != 2 ||
      ctx.ce.num_states() != static_cast<int>(ctx.gammas.size()) + 1) {
    throw std::logic_error("attack context construction size invariant violated");
  }
  return ctx;
}

Automaton as_attacker(const Automaton& a, const AlphabetSpec& alphabet) {
  for (const EventLabel& label : a.alphabet()) {
    if (label.is_command()) {
      throw std::invalid_argument("attacker '" + a.name() +
                                  "' carries command label " + label.text());
    }
    if (label.is_attacked() && !alphabet.compromised(label.name())) {
      throw std::invalid_argument("attacker '" + a.name() + "' uses attacked copy " +
                                  label.text() + " of a non-compromised event");
    }
    if (label.is_plain() && !alphabet.contains(label.name())) {
      throw std::invalid_argument("attacker '" + a.name() + "' uses unknown event " +
                                  label.text());
    }
  }
  return with_alphabet(a, alphabet.attacker_labels(), "attacker");
}

}  // namespace attred
