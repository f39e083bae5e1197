#include "attred/pipeline.hpp"

#include <iomanip>
#include <sstream>

#include "attred/model_io.hpp"
#include "attred/reduce.hpp"
#include "attred/transform.hpp"
#include "attred/verify.hpp"

namespace attred {

namespace {

std::string ratio_line(int original, int reduced) {
  std::ostringstream out;
  out << "compression ratio " << original << "/" << reduced << " (" << std::fixed
      << std::setprecision(2) << (static_cast<double>(original) / reduced) << ")";
  return out.str();
}

void write_artifact(const std::filesystem::path& dir, const std::string& stem,
                    const Automaton& a) {
  write_text_file(dir / (stem + ".fsa"), render_model(a));
  write_text_file(dir / (stem + ".dot"), export_dot(a));
}

}  // namespace

PipelineResult run_pipeline(const PipelineOptions& options) {
  PipelineResult result;

  Automaton plant, supervisor, attacker;
  std::string alphabet_text;
  try {
    plant = parse_model(read_text_file(options.plant_file));
    supervisor = parse_model(read_text_file(options.supervisor_file));
    attacker = parse_model(read_text_file(options.attacker_file));
    alphabet_text = read_text_file(options.alphabet_file);
  } catch (const std::exception& e) {
    result.exit_code = kExitUsage;
    result.diagnostic = e.what();
    return result;
  }

  try {
    AlphabetSpec alphabet = [&] {
      try {
        return parse_alphabet(alphabet_text);
      } catch (const ParseError& e) {
        throw std::runtime_error("alphabet file: " + std::string(e.what()));
      }
    }();

    AttackContext ctx = [&] {
      try {
        return build_context(plant, supervisor, alphabet);
      } catch (const std::logic_error&) {
        throw;
      } catch (const std::exception& e) {
        throw InfeasibleSupervisor(e.what());  // surface as validation failure
      }
    }();

    std::filesystem::create_directories(options.out_dir);
    write_artifact(options.out_dir, "ce", ctx.ce);
    write_artifact(options.out_dir, "ac", ctx.ac);
    write_artifact(options.out_dir, "bts", ctx.bts);
    write_artifact(options.out_dir, "bts_attacked", ctx.bts_attacked);

    std::ostringstream report;
    report << "attack model reduction report\n";
    report << "=============================\n\n";
    report << "models\n";
    report << "  plant:      " << plant.name() << " (" << plant.num_states()
           << " states)\n";
    report << "  supervisor: " << supervisor.name() << " ("
           << supervisor.num_states() << " states)\n";
    report << "  attacker:   " << attacker.name() << " (" << attacker.num_states()
           << " states)\n";
    report << "  commands issued: " << ctx.gammas.size() << "\n";
    report << "  bipartite supervisor: " << ctx.bts.num_states()
           << " states, attacked: " << ctx.bts_attacked.num_states()
           << " states\n";
    report << "  command execution: " << ctx.ce.num_states()
           << " states, attack constraints: " << ctx.ac.num_states() << " states\n";
    report << "  surrogate plant: " << ctx.plant_prime.num_states() << " states\n\n";

    Automaton shaped;
    try {
      shaped = as_attacker(attacker, alphabet);
    } catch (const std::invalid_argument& e) {
      report << "attacker validity\n  rejected: " << e.what() << "\n";
      result.report = report.str();
      write_text_file(options.out_dir / "report.txt", result.report);
      result.exit_code = kExitValidation;
      result.diagnostic = e.what();
      return result;
    }

    ValidityReport validity = validate_attacker(shaped, ctx);
    report << "attacker validity\n";
    {
      std::istringstream lines(validity.render());
      std::string line;
      while (std::getline(lines, line)) report << "  " << line << "\n";
    }
    CovertnessResult covert = check_covert(shaped, ctx);
    report << "covertness: " << (covert.covert ? "COVERT" : "EXPOSED") << "\n";
    if (!covert.covert) {
      report << "  exposing string: " << format_word(covert.witness) << "\n";
    }
    report << "\n";

    if (!validity.valid()) {
      report << "reduction\n  skipped: attacker failed validation\n";
      result.report = report.str();
      write_text_file(options.out_dir / "report.txt", result.report);
      result.exit_code = kExitValidation;
      result.diagnostic = "attacker failed validation:\n" + validity.render();
      return result;
    }

    Reduction reduction = reduce_ra(shaped, ctx);
    write_artifact(options.out_dir, "reduced_attacker", reduction.attacker);
    result.original_states = attacker.num_states();
    result.reduced_states = reduction.attacker.num_states();

    report << "reduction\n";
    report << "  states: " << result.original_states << " -> "
           << result.reduced_states << "\n";
    report << "  " << ratio_line(result.original_states, result.reduced_states)
           << "\n";
    report << "  congruence cells:\n";
    for (std::size_t i = 0; i < reduction.congruence.cells.size(); ++i) {
      report << "    c" << i << " = {";
      const auto& cell = reduction.congruence.cells[i];
      for (std::size_t k = 0; k < cell.size(); ++k) {
        report << (k ? " " : "") << attacker.state_name(cell[k]);
      }
      report << "}\n";
    }

    EquivalenceVerdict verdict = attack_equivalent(shaped, reduction.attacker, ctx);
    report << "  attack equivalence (original vs reduced): "
           << (verdict.equivalent ? "EQUIVALENT" : "NOT EQUIVALENT") << "\n";
    if (!verdict.equivalent) {
      report << "    " << verdict.describe() << "\n";
    }

    if (options.brute) {
      if (attacker.num_states() <= options.brute_cap) {
        Reduction minimum = brute_min(shaped, ctx, options.brute_cap);
        report << "  exhaustive minimum: " << minimum.congruence.num_cells()
               << " cells"
               << (minimum.congruence.num_cells() == reduction.congruence.num_cells()
                       ? " (reduction is minimal)"
                       : " (reduction is not minimal)")
               << "\n";
      } else {
        report << "  exhaustive minimum: skipped, " << attacker.num_states()
               << " states exceed cap " << options.brute_cap << "\n";
      }
    }

    result.report = report.str();
    write_text_file(options.out_dir / "report.txt", result.report);
    if (!verdict.equivalent) {
      result.exit_code = kExitInternal;
      result.diagnostic = "reduced attacker is not attack equivalent: " +
                          verdict.describe();
    }
    return result;
  } catch (const InfeasibleSupervisor& e) {
    result.exit_code = kExitValidation;
    result.diagnostic = e.what();
    return result;
  } catch (const AttackerInvalid& e) {
    result.exit_code = kExitValidation;
    result.diagnostic = e.what();
    return result;
  } catch (const ParseError& e) {
    result.exit_code = kExitUsage;
    result.diagnostic = e.what();
    return result;
  } catch (const std::logic_error& e) {
    result.exit_code = kExitInternal;
    result.diagnostic = e.what();
    return result;
  } catch (const std::exception& e) {
    result.exit_code = kExitValidation;
    result.diagnostic = e.what();
    return result;
  }
}

}  // namespace attred
