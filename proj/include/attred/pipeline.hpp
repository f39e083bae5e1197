#pragma once

#include <filesystem>
#include <string>

namespace attred {

// Process exit codes shared by the library pipeline and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // usage or parse error
inline constexpr int kExitValidation = 2;  // model or attacker validation failed
inline constexpr int kExitInternal = 3;    // internal invariant violation

struct PipelineOptions {
  std::filesystem::path plant_file;
  std::filesystem::path supervisor_file;
  std::filesystem::path attacker_file;
  std::filesystem::path alphabet_file;
  std::filesystem::path out_dir;
  bool brute = false;   // cross-check the reduction against exhaustive search
  int brute_cap = 14;   // refuse exhaustive search above this many states
};

struct PipelineResult {
  int exit_code = kExitOk;
  std::string report;      // contents of report.txt (when reached)
  std::string diagnostic;  // human-readable cause for nonzero exits
  int original_states = 0;
  int reduced_states = 0;
};

/// End-to-end run: parse the four input files, build the attack context,
/// validate the attacker, check covertness, reduce, verify attack
/// equivalence, and write all artifacts (`ce.fsa`, `ac.fsa`, `bts.fsa`,
/// `bts_attacked.fsa`, `reduced_attacker.fsa`, DOT renderings, `report.txt`)
/// into the output directory. Artifacts are byte-identical across runs on
/// identical inputs.
PipelineResult run_pipeline(const PipelineOptions& options);

}  // namespace attred
