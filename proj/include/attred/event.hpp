#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace attred {

/// True iff `s` is a valid event/state identifier: non-empty, chars in [A-Za-z0-9_].
bool is_identifier(const std::string& s);

enum class LabelKind { Plain, Attacked, Command };

/// A transition label: a plain event, the attacked copy of a compromised
/// event, or a control command (a set of plain events).
///
/// Labels are immutable and identified by their canonical text rendering:
/// plain `x`, attacked `x#`, command `cmd{a,b}` with members sorted
/// lexicographically. Ordering and equality follow the rendering.
class EventLabel {
public:
  static EventLabel plain(const std::string& name);
  static EventLabel attacked(const std::string& name);
  static EventLabel command(const std::set<std::string>& members);

  LabelKind kind() const { return kind_; }
  bool is_plain() const { return kind_ == LabelKind::Plain; }
  bool is_attacked() const { return kind_ == LabelKind::Attacked; }
  bool is_command() const { return kind_ == LabelKind::Command; }

  /// Base event name; Plain and Attacked labels only.
  const std::string& name() const;
  /// Sorted member events; Command labels only.
  const std::vector<std::string>& members() const;
  /// Canonical rendering; doubles as the label identity.
  const std::string& text() const { return text_; }

  bool operator==(const EventLabel& o) const { return text_ == o.text_; }
  std::strong_ordering operator<=>(const EventLabel& o) const {
    return text_.compare(o.text_) <=> 0;
  }

private:
  EventLabel(LabelKind kind, std::string name, std::vector<std::string> members,
             std::string text);

  LabelKind kind_;
  std::string name_;
  std::vector<std::string> members_;
  std::string text_;
};

/// The event universe of a control problem and its partitions: controllable
/// events, observable events, events the attacker observes, and the
/// compromised events whose readings the attacker may replace.
///
/// Enforced chain: sigma_sa <= sigma_oa <= sigma_o <= sigma, sigma_c <= sigma.
/// The uncontrollable and unobservable sets are always derived, never stored.
class AlphabetSpec {
public:
  AlphabetSpec(std::set<std::string> sigma, std::set<std::string> sigma_c,
               std::set<std::string> sigma_o, std::set<std::string> sigma_oa,
               std::set<std::string> sigma_sa);

  const std::set<std::string>& sigma() const { return sigma_; }
  const std::set<std::string>& sigma_c() const { return sigma_c_; }
  const std::set<std::string>& sigma_o() const { return sigma_o_; }
  const std::set<std::string>& sigma_oa() const { return sigma_oa_; }
  const std::set<std::string>& sigma_sa() const { return sigma_sa_; }

  std::set<std::string> sigma_uc() const;
  std::set<std::string> sigma_uo() const;

  bool contains(const std::string& e) const { return sigma_.count(e) != 0; }
  bool controllable(const std::string& e) const { return sigma_c_.count(e) != 0; }
  bool observable(const std::string& e) const { return sigma_o_.count(e) != 0; }
  bool attacker_observable(const std::string& e) const { return sigma_oa_.count(e) != 0; }
  bool compromised(const std::string& e) const { return sigma_sa_.count(e) != 0; }

  /// All plain labels of sigma.
  std::set<EventLabel> plain_labels() const;
  /// Attacked copies of the compromised events.
  std::set<EventLabel> attacked_labels() const;
  /// The attacker event set: sigma plus the attacked copies.
  std::set<EventLabel> attacker_labels() const;

private:
  std::set<std::string> sigma_, sigma_c_, sigma_o_, sigma_oa_, sigma_sa_;
};

}  // namespace attred
