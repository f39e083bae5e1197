#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "attred/automaton.hpp"
#include "attred/event.hpp"

namespace attred {

/// Parse failure with a 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Parses the line-oriented model format:
///
///   automaton <name>
///   states: s0 s1 ...
///   initial: s0
///   marked: * | s...
///   transitions:
///   src label dst
///
/// Labels: `x` plain, `x#` attacked, `cmd{a,b}` command. Lines whose first
/// non-blank character is `#` are comments; a `#` inside a label token is the
/// attacked-event suffix, never a comment. A duplicate (src, label) pair is a
/// parse error.
Automaton parse_model(const std::string& text);

/// Inverse of parse_model, deterministic: states in index order, transitions
/// by source then canonical label order, LF line endings. Display names are
/// used when they are unique identifiers, otherwise all states are written as
/// s<index>.
std::string render_model(const Automaton& a);

/// Parses the alphabet format, one section per line, in order:
///
///   events a b c
///   controllable a
///   observable a b
///   attacker-observable a b
///   compromised a
AlphabetSpec parse_alphabet(const std::string& text);

std::string render_alphabet(const AlphabetSpec& alphabet);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace attred
