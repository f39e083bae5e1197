// Command-line front end: transform / reduce / verify / check / export-dot /
// pipeline over the text model formats.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "attred/model_io.hpp"
#include "attred/pipeline.hpp"
#include "attred/reduce.hpp"
#include "attred/transform.hpp"
#include "attred/verify.hpp"

namespace {

using namespace attred;

struct CommonPaths {
  std::string plant, supervisor, attacker, candidate, alphabet, out;
  bool brute = false;
  int brute_cap = 14;
};

AttackContext load_context(const CommonPaths& paths) {
  Automaton g = parse_model(read_text_file(paths.plant));
  Automaton s = parse_model(read_text_file(paths.supervisor));
  AlphabetSpec alphabet = parse_alphabet(read_text_file(paths.alphabet));
  return build_context(g, s, alphabet);
}

Automaton load_model(const std::string& path) {
  return parse_model(read_text_file(path));
}

void write_artifact(const std::string& dir, const std::string& stem, const Automaton& a) {
  std::filesystem::create_directories(dir);
  write_text_file(std::filesystem::path(dir) / (stem + ".fsa"), render_model(a));
  write_text_file(std::filesystem::path(dir) / (stem + ".dot"), export_dot(a));
}

int cmd_transform(const CommonPaths& paths) {
  AttackContext ctx = load_context(paths);
  write_artifact(paths.out, "ce", ctx.ce);
  write_artifact(paths.out, "ac", ctx.ac);
  write_artifact(paths.out, "bts", ctx.bts);
  write_artifact(paths.out, "bts_attacked", ctx.bts_attacked);
  std::cout << "wrote ce, ac, bts, bts_attacked to " << paths.out << "\n";
  return kExitOk;
}

int cmd_reduce(const CommonPaths& paths) {
  AttackContext ctx = load_context(paths);
  Automaton attacker = load_model(paths.attacker);
  Reduction reduction = reduce_ra(attacker, ctx);
  write_artifact(paths.out, "reduced_attacker", reduction.attacker);
  std::cout << "states: " << attacker.num_states() << " -> "
            << reduction.attacker.num_states() << "\n";
  if (paths.brute && attacker.num_states() <= paths.brute_cap) {
    Reduction minimum = brute_min(attacker, ctx, paths.brute_cap);
    std::cout << "exhaustive minimum: " << minimum.congruence.num_cells()
              << " cells\n";
  }
  return kExitOk;
}

int cmd_verify(const CommonPaths& paths) {
  AttackContext ctx = load_context(paths);
  Automaton attacker = load_model(paths.attacker);
  Automaton candidate = load_model(paths.candidate);
  EquivalenceVerdict verdict = attack_equivalent(attacker, candidate, ctx);
  std::cout << (verdict.equivalent ? "attack equivalent"
                                   : "not attack equivalent: " + verdict.describe())
            << "\n";
  return verdict.equivalent ? kExitOk : kExitValidation;
}

int cmd_check(const CommonPaths& paths) {
  AttackContext ctx = load_context(paths);
  Automaton attacker = load_model(paths.attacker);
  ValidityReport report = validate_attacker(attacker, ctx);
  std::cout << report.render();
  CovertnessResult covert = check_covert(attacker, ctx);
  std::cout << "covertness: " << (covert.covert ? "COVERT" : "EXPOSED") << "\n";
  if (!covert.covert) {
    std::cout << "  exposing string: " << format_word(covert.witness) << "\n";
  }
  return report.valid() ? kExitOk : kExitValidation;
}

int cmd_export_dot(const std::string& model, const std::string& out) {
  Automaton a = load_model(model);
  if (out.empty()) {
    std::cout << export_dot(a);
  } else {
    write_text_file(out, export_dot(a));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attack model reduction for supervisory control under sensor attack"};
  app.require_subcommand(1);

  CommonPaths paths;
  std::string export_model, export_out;

  auto add_context_opts = [&](CLI::App* sub) {
    sub->add_option("--plant", paths.plant, "plant model file")->required();
    sub->add_option("--sup", paths.supervisor, "supervisor model file")->required();
    sub->add_option("--alphabet", paths.alphabet, "alphabet file")->required();
  };

  CLI::App* transform = app.add_subcommand(
      "transform", "build the derived models (CE, AC, bipartite supervisors)");
  add_context_opts(transform);
  transform->add_option("--out", paths.out, "output directory")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "reduce an attack model");
  add_context_opts(reduce);
  reduce->add_option("--attacker", paths.attacker, "attacker model file")->required();
  reduce->add_option("--out", paths.out, "output directory")->required();
  reduce->add_flag("--brute", paths.brute, "cross-check with exhaustive search");

  CLI::App* verify = app.add_subcommand("verify", "check attack equivalence");
  add_context_opts(verify);
  verify->add_option("--attacker", paths.attacker, "attacker model file")->required();
  verify->add_option("--candidate", paths.candidate, "candidate model file")->required();

  CLI::App* check = app.add_subcommand("check", "validate an attacker and its covertness");
  add_context_opts(check);
  check->add_option("--attacker", paths.attacker, "attacker model file")->required();

  CLI::App* export_dot_cmd = app.add_subcommand("export-dot", "render a model as DOT");
  export_dot_cmd->add_option("model", export_model, "model file")->required();
  export_dot_cmd->add_option("--out", export_out, "output file (default stdout)");

  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "transform, validate, reduce and verify in one run");
  add_context_opts(pipeline);
  pipeline->add_option("--attacker", paths.attacker, "attacker model file")->required();
  pipeline->add_option("--out", paths.out, "output directory")->required();
  pipeline->add_flag("--brute", paths.brute, "cross-check with exhaustive search");
  pipeline->add_option("--brute-cap", paths.brute_cap,
                       "state cap for the exhaustive cross-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? attred::kExitOk : attred::kExitUsage;
  }

  try {
    if (app.got_subcommand(transform)) return cmd_transform(paths);
    if (app.got_subcommand(reduce)) return cmd_reduce(paths);
    if (app.got_subcommand(verify)) return cmd_verify(paths);
    if (app.got_subcommand(check)) return cmd_check(paths);
    if (app.got_subcommand(export_dot_cmd)) return cmd_export_dot(export_model, export_out);
    if (app.got_subcommand(pipeline)) {
      PipelineOptions options;
      options.plant_file = paths.plant;
      options.supervisor_file = paths.supervisor;
      options.attacker_file = paths.attacker;
      options.alphabet_file = paths.alphabet;
      options.out_dir = paths.out;
      options.brute = paths.brute;
      options.brute_cap = paths.brute_cap;
      PipelineResult result = run_pipeline(options);
      if (!result.report.empty()) std::cout << result.report;
      if (result.exit_code != kExitOk) {
        std::cerr << "pipeline failed: " << result.diagnostic << "\n";
      }
      return result.exit_code;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleSupervisor& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const AttackerInvalid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
