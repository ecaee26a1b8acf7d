// Command line front end: simulate single games, construct offending
// secrets, census a strategy's secrets, verify the offender constructions
// exhaustively, and sweep the mixed-shift offender counts.
//
// Exit codes: 0 success, 2 bad input or limit, 3 no offender exists,
// 10 simulated game looped, 11 simulated game hit the turn budget,
// 1 verification failure or internal error.

#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "permwordle/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNoOffender = 3;
constexpr int kExitLooped = 10;
constexpr int kExitAborted = 11;

struct OutputOptions {
  std::string mode = "text";
  std::string report_path;
};

void add_output_options(CLI::App* command, OutputOptions* options) {
  command->add_option("--output", options->mode, "Output form on stdout")
      ->check(CLI::IsMember({"text", "structured"}));
  command->add_option("--report", options->report_path,
                      "Write the structured report to this file");
}

void emit(const OutputOptions& options, const std::string& text,
          const permwordle::ordered_json& structured) {
  if (options.mode == "structured") {
    std::cout << structured.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  if (!options.report_path.empty()) {
    std::ofstream out(options.report_path);
    if (!out) {
      throw std::invalid_argument("cannot write report file: " + options.report_path);
    }
    out << structured.dump(2) << "\n";
  }
}

int run_simulate(const std::string& strategy_spec, const std::string& secret_literal,
                 int max_turns, const OutputOptions& output) {
  const permwordle::Strategy strategy = permwordle::parse_strategy_spec(strategy_spec);
  const permwordle::Permutation secret = permwordle::parse_permutation(secret_literal);
  const permwordle::Transcript transcript =
      permwordle::play(secret, strategy, permwordle::PlayOptions{max_turns, true});
  emit(output, permwordle::to_text(transcript), permwordle::to_json(transcript));
  switch (transcript.outcome.kind) {
    case permwordle::OutcomeKind::solved: return kExitOk;
    case permwordle::OutcomeKind::loop_detected: return kExitLooped;
    case permwordle::OutcomeKind::aborted: return kExitAborted;
  }
  return kExitInternal;
}

int run_construct(const std::string& strategy_spec, const OutputOptions& output) {
  const permwordle::Strategy strategy = permwordle::parse_strategy_spec(strategy_spec);
  const auto offender = permwordle::construct_general(strategy);
  if (!offender) {
    std::cerr << "no offender: pure cyclic shift\n";
    return kExitNoOffender;
  }
  emit(output, permwordle::to_text(*offender), permwordle::to_json(*offender));
  return kExitOk;
}

int run_offenders(const std::string& strategy_spec, bool list_offenders, int threads,
                  int max_turns, const OutputOptions& output) {
  const permwordle::Strategy strategy = permwordle::parse_strategy_spec(strategy_spec);
  const permwordle::OffenderCensus result = permwordle::census(
      strategy, permwordle::CensusOptions{list_offenders, threads, max_turns});
  std::cerr << "elapsed " << result.elapsed.count() << "s\n";
  emit(output, permwordle::to_text(result), permwordle::to_json(result));
  return kExitOk;
}

int run_verify(int n, int threads, const OutputOptions& output) {
  const permwordle::TheoremReport report =
      permwordle::verify_theorem(n, permwordle::CensusOptions{false, threads, 0});
  emit(output, permwordle::to_text(report), permwordle::to_json(report));
  return report.holds() ? kExitOk : kExitInternal;
}

int run_sequence(int max_n, int threads, const OutputOptions& output) {
  const auto sweep = permwordle::csl_census_sweep(
      max_n, permwordle::CensusOptions{false, threads, 0});
  std::string text = permwordle::census_table_header() + "\n";
  permwordle::ordered_json censuses = permwordle::ordered_json::array();
  permwordle::ordered_json terms = permwordle::ordered_json::array();
  std::string sequence_line = "sequence";
  for (const permwordle::OffenderCensus& entry : sweep) {
    text += permwordle::census_table_row(entry) + "\n";
    censuses.push_back(permwordle::to_json(entry));
    terms.push_back(entry.counts.offender_total());
    sequence_line += ' ' + std::to_string(entry.counts.offender_total());
  }
  text += sequence_line + "\n";
  permwordle::ordered_json structured;
  structured["terms"] = terms;
  structured["censuses"] = censuses;
  emit(output, text, structured);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation wordle: simulation, offender construction, verification"};
  app.require_subcommand(1);

  std::string strategy_spec;
  std::string secret_literal;
  int max_turns = 0;
  int threads = 0;
  int n = 0;
  int max_n = 0;
  bool list_offenders = false;
  OutputOptions output;

  CLI::App* simulate = app.add_subcommand("simulate", "Play one game and show the transcript");
  simulate->add_option("--strategy", strategy_spec, "Strategy spec or file")->required();
  simulate->add_option("--secret", secret_literal, "Secret permutation literal")->required();
  simulate->add_option("--max-turns", max_turns, "Turn budget (default n*n+n)");
  add_output_options(simulate, &output);

  CLI::App* construct = app.add_subcommand("construct", "Build an offending secret");
  construct->add_option("--strategy", strategy_spec, "Strategy spec or file")->required();
  add_output_options(construct, &output);

  CLI::App* offenders = app.add_subcommand("offenders", "Classify every secret");
  offenders->add_option("--strategy", strategy_spec, "Strategy spec or file")->required();
  offenders->add_flag("--list-offenders", list_offenders, "Keep the offender list");
  offenders->add_option("--threads", threads, "Worker count (default: hardware)");
  offenders->add_option("--max-turns", max_turns, "Turn budget (default n*n+n)");
  add_output_options(offenders, &output);

  CLI::App* verify = app.add_subcommand("verify", "Check all strategies of one length");
  verify->add_option("--n", n, "Strategy length")->required();
  verify->add_option("--threads", threads, "Worker count (default: hardware)");
  add_output_options(verify, &output);

  CLI::App* sequence = app.add_subcommand("sequence", "Offender counts under csl:4..csl:N");
  sequence->add_option("--max-n", max_n, "Largest strategy length")->required();
  sequence->add_option("--threads", threads, "Worker count (default: hardware)");
  add_output_options(sequence, &output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitBadInput;
  }

  try {
    if (app.got_subcommand(simulate)) {
      return run_simulate(strategy_spec, secret_literal, max_turns, output);
    }
    if (app.got_subcommand(construct)) {
      return run_construct(strategy_spec, output);
    }
    if (app.got_subcommand(offenders)) {
      return run_offenders(strategy_spec, list_offenders, threads, max_turns, output);
    }
    if (app.got_subcommand(verify)) {
      return run_verify(n, threads, output);
    }
    if (app.got_subcommand(sequence)) {
      return run_sequence(max_n, threads, output);
    }
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitBadInput;
  } catch (const std::out_of_range& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
