#include "attred/event.hpp"

#include <sstream>
#include <stdexcept>

namespace attred {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

namespace {

void require_identifier(const std::string& s, const char* what) {
  if (!is_identifier(s)) {
    throw std::invalid_argument(std::string(what) + " is not a valid identifier: '" + s + "'");
  }
}

}  // namespace

EventLabel::EventLabel(LabelKind kind, std::string name,
                       std::vector<std::string> members, std::string text)
    : kind_(kind), name_(std::move(name)), members_(std::move(members)),
      text_(std::move(text)) {}

EventLabel EventLabel::plain(const std::string& name) {
  require_identifier(name, "event name");
  return EventLabel(LabelKind::Plain, name, {}, name);
}

EventLabel EventLabel::attacked(const std::string& name) {
  require_identifier(name, "event name");
  return EventLabel(LabelKind::Attacked, name, {}, name + "#");
}

EventLabel EventLabel::command(const std::set<std::string>& members) {
  std::ostringstream text;
  text << "cmd{";
  bool first = true;
  std::vector<std::string> sorted;
  sorted.reserve(members.size());
  for (const auto& m : members) {  // std::set iterates in sorted order
    require_identifier(m, "command member");
    if (!first) text << ",";
    text << m;
    first = false;
    sorted.push_back(m);
  }
  text << "}";
  return EventLabel(LabelKind::Command, "", std::move(sorted), text.str());
}

const std::string& EventLabel::name() const {
  if (kind_ == LabelKind::Command) {
    throw std::logic_error("command labels have no single event name: " + text_);
  }
  return name_;
}

const std::vector<std::string>& EventLabel::members() const {
  if (kind_ != LabelKind::Command) {
    throw std::logic_error("only command labels have members: " + text_);
  }
  return members_;
}

namespace {

bool subset_of(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& x : a) {
    if (!b.count(x)) return false;
  }
  return true;
}

}  // namespace

AlphabetSpec::AlphabetSpec(std::set<std::string> sigma, std::set<std::string> sigma_c,
                           std::set<std::string> sigma_o, std::set<std::string> sigma_oa,
                           std::set<std::string> sigma_sa)
    : sigma_(std::move(sigma)), sigma_c_(std::move(sigma_c)), sigma_o_(std::move(sigma_o)),
      sigma_oa_(std::move(sigma_oa)), sigma_sa_(std::move(sigma_sa)) {
  for (const auto& e : sigma_) require_identifier(e, "event");
  if (!subset_of(sigma_c_, sigma_)) {
    throw std::invalid_argument("controllable events must be a subset of the event set");
  }
  if (!subset_of(sigma_o_, sigma_)) {
    throw std::invalid_argument("observable events must be a subset of the event set");
  }
  if (!subset_of(sigma_oa_, sigma_o_)) {
    throw std::invalid_argument(
        "attacker-observable events must be a subset of the observable events");
  }
  if (!subset_of(sigma_sa_, sigma_oa_)) {
    throw std::invalid_argument(
        "compromised events must be a subset of the attacker-observable events");
  }
}

std::set<std::string> AlphabetSpec::sigma_uc() const {
  std::set<std::string> out;
  for (const auto& e : sigma_) {
    if (!sigma_c_.count(e)) out.insert(e);
  }
  return out;
}

std::set<std::string> AlphabetSpec::sigma_uo() const {
  std::set<std::string> out;
  for (const auto& e : sigma_) {
    if (!sigma_o_.count(e)) out.insert(e);
  }
  return out;
}

std::set<EventLabel> AlphabetSpec::plain_labels() const {
  std::set<EventLabel> out;
  for (const auto& e : sigma_) out.insert(EventLabel::plain(e));
  return out;
}

std::set<EventLabel> AlphabetSpec::attacked_labels() const {
  std::set<EventLabel> out;
  for (const auto& e : sigma_sa_) out.insert(EventLabel::attacked(e));
  return out;
}

std::set<EventLabel> AlphabetSpec::attacker_labels() const {
  std::set<EventLabel> out = plain_labels();
  for (const auto& e : sigma_sa_) out.insert(EventLabel::attacked(e));
  return out;
}

}  // namespace attred
