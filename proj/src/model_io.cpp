#include "attred/model_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace attred {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::vector<std::string> tokens;
    std::istringstream ls(raw);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

EventLabel parse_label(const std::string& tok, int line) {
  if (tok.size() >= 5 && tok.rfind("cmd{", 0) == 0 && tok.back() == '}') {
    std::set<std::string> members;
    std::string body = tok.substr(4, tok.size() - 5);
    if (!body.empty()) {
      std::size_t start = 0;
      while (true) {
        std::size_t comma = body.find(',', start);
        std::string member = body.substr(start, comma - start);
        if (!is_identifier(member)) {
          throw ParseError(line, "bad command member '" + member + "' in " + tok);
        }
        if (!members.insert(member).second) {
          throw ParseError(line, "repeated command member '" + member + "' in " + tok);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    return EventLabel::command(members);
  }
  if (tok.size() >= 2 && tok.back() == '#') {
    std::string name = tok.substr(0, tok.size() - 1);
    if (!is_identifier(name)) throw ParseError(line, "bad attacked event '" + tok + "'");
    return EventLabel::attacked(name);
  }
  if (!is_identifier(tok)) throw ParseError(line, "bad event label '" + tok + "'");
  return EventLabel::plain(tok);
}

}  // namespace

Automaton parse_model(const std::string& text) {
  std::vector<Line> lines = significant_lines(text);
  std::size_t at = 0;
  auto need = [&](const char* what) -> const Line& {
    if (at >= lines.size()) {
      int line = lines.empty() ? 1 : lines.back().number;
      throw ParseError(line, std::string("unexpected end of file, expected ") + what);
    }
    return lines[at];
  };

  const Line& header = need("'automaton <name>'");
  if (header.tokens[0] != "automaton" || header.tokens.size() != 2 ||
      !is_identifier(header.tokens[1])) {
    throw ParseError(header.number, "expected 'automaton <name>'");
  }
  Automaton a(header.tokens[1]);
  ++at;

  const Line& states = need("'states: ...'");
  if (states.tokens[0] != "states:" || states.tokens.size() < 2) {
    throw ParseError(states.number, "expected 'states: <name>...'");
  }
  std::map<std::string, StateId> index;
  for (std::size_t i = 1; i < states.tokens.size(); ++i) {
    const std::string& name = states.tokens[i];
    if (!is_identifier(name)) {
      throw ParseError(states.number, "bad state name '" + name + "'");
    }
    if (index.count(name)) {
      throw ParseError(states.number, "repeated state name '" + name + "'");
    }
    index.emplace(name, a.add_state(name));
  }
  ++at;

  const Line& initial = need("'initial: <state>'");
  if (initial.tokens[0] != "initial:" || initial.tokens.size() != 2 ||
      !index.count(initial.tokens[1])) {
    throw ParseError(initial.number, "expected 'initial: <declared state>'");
  }
  a.set_initial(index.at(initial.tokens[1]));
  ++at;

  const Line& marked = need("'marked: ...'");
  if (marked.tokens[0] != "marked:") {
    throw ParseError(marked.number, "expected 'marked: * | <state>...'");
  }
  if (marked.tokens.size() == 2 && marked.tokens[1] == "*") {
    for (StateId q = 0; q < a.num_states(); ++q) a.set_marked(q);
  } else {
    for (std::size_t i = 1; i < marked.tokens.size(); ++i) {
      auto it = index.find(marked.tokens[i]);
      if (it == index.end()) {
        throw ParseError(marked.number, "marked state '" + marked.tokens[i] +
                                            "' is not declared");
      }
      a.set_marked(it->second);
    }
  }
  ++at;

  const Line& trans = need("'transitions:'");
  if (trans.tokens[0] != "transitions:" || trans.tokens.size() != 1) {
    throw ParseError(trans.number, "expected 'transitions:'");
  }
  ++at;

  for (; at < lines.size(); ++at) {
    const Line& t = lines[at];
    if (t.tokens.size() != 3) {
      throw ParseError(t.number, "expected 'src label dst'");
    }
    auto src = index.find(t.tokens[0]);
    auto dst = index.find(t.tokens[2]);
    if (src == index.end()) {
      throw ParseError(t.number, "unknown source state '" + t.tokens[0] + "'");
    }
    if (dst == index.end()) {
      throw ParseError(t.number, "unknown target state '" + t.tokens[2] + "'");
    }
    EventLabel label = parse_label(t.tokens[1], t.number);
    if (a.target(src->second, label)) {
      throw ParseError(t.number, "duplicate transition (" + t.tokens[0] + ", " +
                                     label.text() + "): automata are deterministic");
    }
    a.add_transition(src->second, label, dst->second);
  }
  return a;
}

std::string render_model(const Automaton& a) {
  // Use display names only when they survive a round-trip unchanged.
  bool usable = true;
  std::set<std::string> seen;
  for (StateId q = 0; q < a.num_states(); ++q) {
    const std::string& name = a.state_name(q);
    if (!is_identifier(name) || !seen.insert(name).second) {
      usable = false;
      break;
    }
  }
  auto name_of = [&](StateId q) {
    return usable ? a.state_name(q) : "s" + std::to_string(q);
  };

  std::ostringstream out;
  out << "automaton " << (is_identifier(a.name()) ? a.name() : "model") << "\n";
  out << "states:";
  for (StateId q = 0; q < a.num_states(); ++q) out << " " << name_of(q);
  out << "\n";
  out << "initial: " << name_of(a.initial()) << "\n";
  out << "marked:";
  if (a.num_states() > 0 && a.all_marked()) {
    out << " *";
  } else {
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (a.is_marked(q)) out << " " << name_of(q);
    }
  }
  out << "\n";
  out << "transitions:\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (const auto& [label, dst] : a.transitions_from(q)) {
      out << name_of(q) << " " << label.text() << " " << name_of(dst) << "\n";
    }
  }
  return out.str();
}

AlphabetSpec parse_alphabet(const std::string& text) {
  std::vector<Line> lines = significant_lines(text);
  const char* sections[5] = {"events", "controllable", "observable",
                             "attacker-observable", "compromised"};
  std::set<std::string> sets[5];
  if (lines.size() != 5) {
    int line = lines.empty() ? 1 : lines.back().number;
    throw ParseError(line, "alphabet file needs exactly the five sections "
                           "events/controllable/observable/attacker-observable/compromised");
  }
  for (int i = 0; i < 5; ++i) {
    const Line& l = lines[i];
    if (l.tokens[0] != sections[i]) {
      throw ParseError(l.number, std::string("expected section '") + sections[i] +
                                     "', got '" + l.tokens[0] + "'");
    }
    for (std::size_t t = 1; t < l.tokens.size(); ++t) {
      if (!is_identifier(l.tokens[t])) {
        throw ParseError(l.number, "bad event name '" + l.tokens[t] + "'");
      }
      sets[i].insert(l.tokens[t]);
    }
  }
  try {
    return AlphabetSpec(sets[0], sets[1], sets[2], sets[3], sets[4]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines[0].number, e.what());
  }
}

std::string render_alphabet(const AlphabetSpec& alphabet) {
  auto section = [](const char* name, const std::set<std::string>& events) {
    std::string out = name;
    for (const auto& e : events) out += " " + e;
    return out + "\n";
  };
  return section("events", alphabet.sigma()) +
         section("controllable", alphabet.sigma_c()) +
         section("observable", alphabet.sigma_o()) +
         section("attacker-observable", alphabet.sigma_oa()) +
         section("compromised", alphabet.sigma_sa());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read file: " + path.string());
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path.string());
  }
  out << content;
}

}  // namespace attred
