#pragma once

#include <string>

#include "json.hpp"
#include "permwordle/construct.hpp"
#include "permwordle/game.hpp"
#include "permwordle/oracle.hpp"

/// Structured and textual report rendering. Text and structured forms carry
/// the same data; structured output is byte-identical across runs and thread
/// counts, so wall-clock measurements stay out of it.

namespace permwordle {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Permutation& p) { return ordered_json(p.entries()); }

inline ordered_json to_json(const Strategy& strategy) {
  ordered_json j;
  j["label"] = strategy.label;
  ordered_json components = ordered_json::array();
  for (const Permutation& c : strategy.components) components.push_back(to_json(c));
  j["components"] = components;
  return j;
}

inline ordered_json to_json(const Transcript& transcript) {
  ordered_json j;
  j["secret"] = to_json(transcript.secret);
  j["strategy"] = to_json(transcript.strategy);
  ordered_json records = ordered_json::array();
  for (const GuessRecord& record : transcript.records) {
    ordered_json r;
    r["turn"] = record.turn;
    r["guess"] = to_json(record.guess);
    r["correct_positions"] = record.correct_positions;
    records.push_back(std::move(r));
  }
  j["records"] = records;
  j["outcome"] = {{"type", std::string(to_string(transcript.outcome.kind))},
                  {"turn", transcript.outcome.turn}};
  const bool infinite = transcript.outcome.kind == OutcomeKind::loop_detected;
  ordered_json repetitions = ordered_json::array();
  for (const RepetitionEvent& event : transcript.repetitions) {
    ordered_json e;
    e["position"] = event.position;
    e["value"] = event.value;
    e["turns"] = event.turns;
    e["infinite"] = infinite;
    repetitions.push_back(std::move(e));
  }
  j["repetitions"] = repetitions;
  return j;
}

inline std::string format_positions(const std::vector<int>& positions) {
  std::string out = "{";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(positions[i]);
  }
  out += '}';
  return out;
}

inline std::string to_text(const Transcript& transcript) {
  std::string out;
  out += "secret " + to_string(transcript.secret) + "\n";
  out += "strategy " + transcript.strategy.label + ":";
  for (const Permutation& c : transcript.strategy.components) {
    out += ' ' + to_string(c);
  }
  out += '\n';
  for (const GuessRecord& record : transcript.records) {
    out += "turn " + std::to_string(record.turn) + ": guess " +
           to_string(record.guess) + " correct " +
           format_positions(record.correct_positions) + "\n";
  }
  switch (transcript.outcome.kind) {
    case OutcomeKind::solved:
      out += "outcome: solved in " + std::to_string(transcript.outcome.turn) + " turns\n";
      break;
    case OutcomeKind::loop_detected:
      out += "outcome: loop detected at turn " + std::to_string(transcript.outcome.turn) +
             "\n";
      break;
    case OutcomeKind::aborted:
      out += "outcome: aborted after " + std::to_string(transcript.outcome.turn) +
             " turns\n";
      break;
  }
  const bool infinite = transcript.outcome.kind == OutcomeKind::loop_detected;
  for (const RepetitionEvent& event : transcript.repetitions) {
    out += "repetition: position " + std::to_string(event.position) + " value " +
           std::to_string(event.value) + " turns " + format_positions(event.turns);
    if (infinite) out += " (infinite)";
    out += '\n';
  }
  return out;
}

inline ordered_json to_json(const ConstructionCase& construction) {
  ordered_json j;
  j["tag"] = std::string(to_string(construction.tag));
  j["k_set"] = construction.k_set;
  j["locked_positions"] = construction.locked_positions;
  j["mu"] = construction.mu;
  j["iota"] = construction.iota;
  return j;
}

inline ordered_json to_json(const ConstructedOffender& offender) {
  ordered_json j;
  j["omega"] = to_json(offender.omega);
  j["case"] = to_json(offender.construction);
  j["evidence"] = to_json(offender.evidence);
  return j;
}

inline std::string to_text(const ConstructedOffender& offender) {
  std::string out;
  out += "offender " + to_string(offender.omega) + "\n";
  out += "case " + std::string(to_string(offender.construction.tag));
  if (!offender.construction.k_set.empty()) {
    out += " k_set " + format_positions(offender.construction.k_set);
  }
  if (!offender.construction.locked_positions.empty()) {
    out += " locked " + format_positions(offender.construction.locked_positions);
  }
  if (offender.construction.mu != 0) {
    out += " mu " + std::to_string(offender.construction.mu) + " iota " +
           std::to_string(offender.construction.iota);
  }
  out += '\n';
  out += to_text(offender.evidence);
  return out;
}

inline ordered_json to_json(const CensusCounts& counts) {
  ordered_json j;
  j["clean"] = counts.clean;
  j["repeating"] = counts.repeating;
  j["looping"] = counts.looping;
  return j;
}

inline ordered_json to_json(const OffenderCensus& census_result) {
  ordered_json j;
  j["strategy"] = to_json(census_result.strategy);
  j["n"] = census_result.n;
  j["counts"] = to_json(census_result.counts);
  if (census_result.offenders) {
    ordered_json offenders = ordered_json::array();
    for (const OffenderRecord& record : *census_result.offenders) {
      ordered_json r;
      r["secret"] = to_json(record.secret);
      r["verdict"] = std::string(to_string(record.verdict));
      offenders.push_back(std::move(r));
    }
    j["offenders"] = offenders;
  }
  return j;
}

inline std::string census_table_header() { return "label\tn\tclean\trepeating\tlooping"; }

inline std::string census_table_row(const OffenderCensus& census_result) {
  return census_result.strategy.label + "\t" + std::to_string(census_result.n) + "\t" +
         std::to_string(census_result.counts.clean) + "\t" +
         std::to_string(census_result.counts.repeating) + "\t" +
         std::to_string(census_result.counts.looping);
}

inline std::string to_text(const OffenderCensus& census_result) {
  std::string out;
  out += "strategy " + census_result.strategy.label + ":";
  for (const Permutation& c : census_result.strategy.components) {
    out += ' ' + to_string(c);
  }
  out += '\n';
  out += "n " + std::to_string(census_result.n) + "\n";
  out += "clean " + std::to_string(census_result.counts.clean) + "\n";
  out += "repeating " + std::to_string(census_result.counts.repeating) + "\n";
  out += "looping " + std::to_string(census_result.counts.looping) + "\n";
  if (census_result.offenders) {
    for (const OffenderRecord& record : *census_result.offenders) {
      out += "offender " + to_string(record.secret) + " " +
             std::string(to_string(record.verdict)) + "\n";
    }
  }
  return out;
}

inline ordered_json to_json(const TheoremReport& report) {
  ordered_json j;
  j["n"] = report.n;
  j["strategies_checked"] = report.strategies_checked;
  ordered_json failures = ordered_json::array();
  for (const TheoremFailure& failure : report.failures) {
    ordered_json f;
    f["strategy"] = to_json(failure.strategy);
    if (failure.omega) {
      f["omega"] = to_json(*failure.omega);
    } else {
      f["omega"] = nullptr;
    }
    f["reason"] = failure.reason;
    failures.push_back(std::move(f));
  }
  j["failures"] = failures;
  j["cs_exceptions"] = {{"cs", to_json(report.cs_census)},
                        {"lcs", to_json(report.lcs_census)},
                        {"verified", report.cs_census.offender_total() == 0 &&
                                         report.lcs_census.offender_total() == 0}};
  return j;
}

inline std::string to_text(const TheoremReport& report) {
  std::string out;
  out += "n " + std::to_string(report.n) + "\n";
  out += "strategies_checked " + std::to_string(report.strategies_checked) + "\n";
  out += "failures " + std::to_string(report.failures.size()) + "\n";
  for (const TheoremFailure& failure : report.failures) {
    out += "failure " + failure.strategy.label + ":";
    for (const Permutation& c : failure.strategy.components) out += ' ' + to_string(c);
    if (failure.omega) out += " omega " + to_string(*failure.omega);
    out += " reason " + failure.reason + "\n";
  }
  out += "cs clean " + std::to_string(report.cs_census.clean) + " repeating " +
         std::to_string(report.cs_census.repeating) + " looping " +
         std::to_string(report.cs_census.looping) + "\n";
  out += "lcs clean " + std::to_string(report.lcs_census.clean) + " repeating " +
         std::to_string(report.lcs_census.repeating) + " looping " +
         std::to_string(report.lcs_census.looping) + "\n";
  return out;
}

}  // namespace permwordle
