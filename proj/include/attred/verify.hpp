#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "attred/automaton.hpp"
#include "attred/transform.hpp"

namespace attred {

/// Outcome of an attack-equivalence check. On failure `witness` is a shortest
/// string distinguishing the two attacked closed loops; `marked_phase` tells
/// whether it separates the marked behaviors (else the closed behaviors).
struct EquivalenceVerdict {
  bool equivalent = true;
  bool marked_phase = false;
  std::vector<EventLabel> witness;

  std::string describe() const;
};

/// Attack equivalence of two attackers on (G, S): equality of closed and
/// marked behaviors of G || CE || BT(S)^A || A_i. Throws
/// std::invalid_argument if either automaton is not over the attacker event
/// set of the context.
EquivalenceVerdict attack_equivalent(const Automaton& a1, const Automaton& a2,
                                     const AttackContext& ctx);

struct CheckResult {
  bool pass = true;
  std::string detail;
  std::vector<EventLabel> witness;
};

/// Result of the three independent attacker validity checks:
///   1. containment of the attacker's language in the attack constraints,
///   2. controllability: only attacked copies ever get disabled,
///   3. feasibility: no state change on events the attacker cannot observe.
struct ValidityReport {
  CheckResult ac_containment;
  CheckResult controllability;
  CheckResult feasibility;

  bool valid() const {
    return ac_containment.pass && controllability.pass && feasibility.pass;
  }
  /// One line per check: PASS/FAIL plus a witness when failing.
  std::string render() const;
};

ValidityReport validate_attacker(const Automaton& a, const AttackContext& ctx);

/// An attacker rejected by validate_attacker, carrying the report.
class AttackerInvalid : public std::runtime_error {
public:
  AttackerInvalid(const std::string& name, ValidityReport report);
  const ValidityReport& report() const { return report_; }

private:
  ValidityReport report_;
};

struct CovertnessResult {
  bool covert = true;
  std::vector<EventLabel> witness;
};

/// The attacker stays covert iff the attacked closed loop never reaches the
/// covertness-broken state of BT(S)^A. The witness is a shortest string
/// exposing the attacker.
CovertnessResult check_covert(const Automaton& a, const AttackContext& ctx);

}  // namespace attred
