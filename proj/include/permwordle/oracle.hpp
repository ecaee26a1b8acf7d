#pragma once

#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "permwordle/construct.hpp"
#include "permwordle/game.hpp"
#include "permwordle/permutation.hpp"

/// Exhaustive ground truth at small lengths: classify every secret under a
/// strategy, count how many defeat it, sweep the mixed-shift strategies, and
/// check every strategy of a given length against its constructed offender.

namespace permwordle {

struct CensusCounts {
  std::uint64_t clean = 0;
  std::uint64_t repeating = 0;
  std::uint64_t looping = 0;

  std::uint64_t total() const { return clean + repeating + looping; }
  std::uint64_t offender_total() const { return repeating + looping; }

  friend bool operator==(const CensusCounts& a, const CensusCounts& b) = default;
};

struct OffenderRecord {
  Permutation secret;
  Verdict verdict = Verdict::clean;

  friend bool operator==(const OffenderRecord& a, const OffenderRecord& b) = default;
};

/// Classification of all n! secrets under one strategy. The offender list is
/// kept in lexicographic secret order when requested. elapsed is wall-clock
/// bookkeeping only and never enters serialized reports.
struct OffenderCensus {
  Strategy strategy;
  int n = 0;
  CensusCounts counts;
  std::optional<std::vector<OffenderRecord>> offenders;
  std::chrono::duration<double> elapsed{};
};

struct CensusOptions {
  bool keep_offenders = false;
  int threads = 0;  // 0 selects the hardware thread count
  int max_turns = 0;
};

namespace detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware > 0 ? static_cast<int>(hardware) : 1;
}

/// Splits [0, total) into at most `threads` contiguous rank ranges.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> rank_partition(
    std::uint64_t total, int threads) {
  const auto worker_count =
      static_cast<std::uint64_t>(threads) < total ? static_cast<std::uint64_t>(threads)
                                                  : total;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  if (worker_count == 0) return ranges;
  const std::uint64_t base = total / worker_count;
  const std::uint64_t remainder = total % worker_count;
  std::uint64_t begin = 0;
  for (std::uint64_t w = 0; w < worker_count; ++w) {
    const std::uint64_t size = base + (w < remainder ? 1 : 0);
    ranges.emplace_back(begin, begin + size);
    begin += size;
  }
  return ranges;
}

}  // namespace detail

/// Classifies every permutation of the strategy's length. Work is split by
/// lexicographic rank range and merged in range order, so counts and the
/// offender list are identical for every thread count.
inline OffenderCensus census(const Strategy& strategy, CensusOptions options = {}) {
  if (auto diagnostic = validate_strategy(strategy)) {
    throw std::invalid_argument("invalid strategy: " + *diagnostic);
  }
  const int n = strategy.length();
  check_enumeration_length(n);
  const auto started = std::chrono::steady_clock::now();

  struct Partial {
    CensusCounts counts;
    std::vector<OffenderRecord> offenders;
  };
  auto classify_range = [&](std::uint64_t first, std::uint64_t last) {
    Partial partial;
    PermutationStream stream(n, first, last);
    while (auto secret = stream.next()) {
      OffenderVerdict verdict = is_offender(strategy, *secret,
                                            PlayOptions{options.max_turns, true});
      switch (verdict.verdict) {
        case Verdict::clean:
          ++partial.counts.clean;
          break;
        case Verdict::repeating:
          ++partial.counts.repeating;
          break;
        case Verdict::looping:
          ++partial.counts.looping;
          break;
        case Verdict::aborted:
          throw std::runtime_error("game for secret " + to_string(*secret) +
                                   " under " + strategy.label +
                                   " exhausted its turn budget");
      }
      if (options.keep_offenders && verdict.verdict != Verdict::clean) {
        partial.offenders.push_back(OffenderRecord{*secret, verdict.verdict});
      }
    }
    return partial;
  };

  const auto ranges =
      detail::rank_partition(factorial(n), detail::resolve_threads(options.threads));
  OffenderCensus result{strategy, n, {}, std::nullopt, {}};
  if (options.keep_offenders) result.offenders.emplace();

  if (ranges.size() <= 1) {
    Partial partial = classify_range(0, factorial(n));
    result.counts = partial.counts;
    if (options.keep_offenders) *result.offenders = std::move(partial.offenders);
  } else {
    std::vector<std::future<Partial>> futures;
    futures.reserve(ranges.size());
    for (const auto& [first, last] : ranges) {
      futures.push_back(std::async(std::launch::async, classify_range, first, last));
    }
    for (auto& future : futures) {
      Partial partial = future.get();
      result.counts.clean += partial.counts.clean;
      result.counts.repeating += partial.counts.repeating;
      result.counts.looping += partial.counts.looping;
      if (options.keep_offenders) {
        result.offenders->insert(result.offenders->end(),
                                 std::make_move_iterator(partial.offenders.begin()),
                                 std::make_move_iterator(partial.offenders.end()));
      }
    }
  }

  result.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

/// Censuses for csl:4 .. csl:n_max, ascending.
inline std::vector<OffenderCensus> csl_census_sweep(int n_max, CensusOptions options = {}) {
  if (n_max < 4) {
    throw std::invalid_argument("the mixed shift sweep starts at length 4");
  }
  check_enumeration_length(n_max);
  std::vector<OffenderCensus> sweep;
  for (int n = 4; n <= n_max; ++n) sweep.push_back(census(csl_strategy(n), options));
  return sweep;
}

/// Offender totals under csl:n for n = 4..n_max.
inline std::vector<std::uint64_t> csl_sequence(int n_max, CensusOptions options = {}) {
  std::vector<std::uint64_t> terms;
  for (const OffenderCensus& entry : csl_census_sweep(n_max, options)) {
    terms.push_back(entry.counts.offender_total());
  }
  return terms;
}

/// Number of strategies of length n: component choices are fixed below size
/// 3 and any derangement at each size from 3 to n.
inline std::uint64_t strategy_count(int n) {
  if (n < 1) throw std::invalid_argument("strategy length must be at least 1");
  std::uint64_t count = 1;
  for (int k = 3; k <= n; ++k) count *= subfactorial(k);
  return count;
}

/// Single-consumer stream over every strategy of length n, odometer order:
/// components vary lexicographically, the largest size fastest.
class StrategyStream {
 public:
  explicit StrategyStream(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("strategy length must be at least 1");
    if (n > 5) {
      throw std::invalid_argument("strategy enumeration is limited to length 5 (" +
                                  std::to_string(strategy_count(n)) +
                                  " strategies at length " + std::to_string(n) + ")");
    }
    for (int k = 3; k <= n; ++k) choices_.push_back(all_derangements(k));
    indices_.assign(choices_.size(), 0);
  }

  std::optional<Strategy> next() {
    if (done_) return std::nullopt;
    Strategy strategy{"enum:" + std::to_string(n_) + ":" + std::to_string(emitted_), {}};
    strategy.components.push_back(Permutation::identity(1));
    if (n_ >= 2) strategy.components.push_back(Permutation({2, 1}));
    for (std::size_t level = 0; level < choices_.size(); ++level) {
      strategy.components.push_back(choices_[level][indices_[level]]);
    }
    ++emitted_;
    advance();
    return strategy;
  }

 private:
  void advance() {
    for (std::size_t level = choices_.size(); level-- > 0;) {
      if (++indices_[level] < choices_[level].size()) return;
      indices_[level] = 0;
    }
    done_ = true;
  }

  int n_;
  std::vector<std::vector<Permutation>> choices_;
  std::vector<std::size_t> indices_;
  std::uint64_t emitted_ = 0;
  bool done_ = false;
};

inline StrategyStream enumerate_strategies(int n) { return StrategyStream(n); }

struct TheoremFailure {
  Strategy strategy;
  std::optional<Permutation> omega;
  std::string reason;
};

/// Exhaustive check that every non-shift strategy of length n has a
/// constructible offender while both pure shift strategies have none.
struct TheoremReport {
  int n = 0;
  std::uint64_t strategies_checked = 0;
  std::vector<TheoremFailure> failures;
  CensusCounts cs_census;
  CensusCounts lcs_census;

  bool holds() const { return failures.empty(); }
};

inline TheoremReport verify_theorem(int n, CensusOptions options = {}) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("theorem verification is limited to length 5");
  }
  TheoremReport report;
  report.n = n;

  StrategyStream stream = enumerate_strategies(n);
  while (auto strategy = stream.next()) {
    ++report.strategies_checked;
    if (is_pure_shift(*strategy, ShiftDirection::right) ||
        is_pure_shift(*strategy, ShiftDirection::left)) {
      continue;  // covered by the dedicated censuses below
    }
    try {
      std::optional<ConstructedOffender> built = construct_general(*strategy);
      if (!built) {
        report.failures.push_back(TheoremFailure{
            *strategy, std::nullopt, "no offender constructed for a non-shift strategy"});
        continue;
      }
      const OffenderVerdict verdict = is_offender(*strategy, built->omega);
      if (verdict.verdict != Verdict::repeating && verdict.verdict != Verdict::looping) {
        report.failures.push_back(TheoremFailure{
            *strategy, built->omega,
            "constructed secret classified " + std::string(to_string(verdict.verdict))});
      }
    } catch (const std::exception& error) {
      report.failures.push_back(TheoremFailure{*strategy, std::nullopt, error.what()});
    }
  }

  report.cs_census = census(cs_strategy(n), options).counts;
  report.lcs_census = census(lcs_strategy(n), options).counts;
  if (report.cs_census.offender_total() != 0) {
    report.failures.push_back(
        TheoremFailure{cs_strategy(n), std::nullopt, "pure right shift has offenders"});
  }
  if (report.lcs_census.offender_total() != 0) {
    report.failures.push_back(
        TheoremFailure{lcs_strategy(n), std::nullopt, "pure left shift has offenders"});
  }
  return report;
}

/// Histogram of solved-turn counts over all secrets, plus the loop count.
struct GuessDistribution {
  std::map<int, std::uint64_t> solved_by_turns;
  std::uint64_t looping = 0;

  std::uint64_t total() const {
    std::uint64_t sum = looping;
    for (const auto& [turns, count] : solved_by_turns) sum += count;
    return sum;
  }
};

inline GuessDistribution guess_distribution(const Strategy& strategy,
                                            CensusOptions options = {}) {
  if (auto diagnostic = validate_strategy(strategy)) {
    throw std::invalid_argument("invalid strategy: " + *diagnostic);
  }
  const int n = strategy.length();
  check_enumeration_length(n);

  auto tally_range = [&](std::uint64_t first, std::uint64_t last) {
    GuessDistribution partial;
    PermutationStream stream(n, first, last);
    while (auto secret = stream.next()) {
      Transcript transcript =
          play(*secret, strategy, PlayOptions{options.max_turns, true});
      switch (transcript.outcome.kind) {
        case OutcomeKind::solved:
          ++partial.solved_by_turns[transcript.outcome.turn];
          break;
        case OutcomeKind::loop_detected:
          ++partial.looping;
          break;
        case OutcomeKind::aborted:
          throw std::runtime_error("game for secret " + to_string(*secret) +
                                   " under " + strategy.label +
                                   " exhausted its turn budget");
      }
    }
    return partial;
  };

  const auto ranges =
      detail::rank_partition(factorial(n), detail::resolve_threads(options.threads));
  GuessDistribution result;
  if (ranges.size() <= 1) {
    result = tally_range(0, factorial(n));
  } else {
    std::vector<std::future<GuessDistribution>> futures;
    futures.reserve(ranges.size());
    for (const auto& [first, last] : ranges) {
      futures.push_back(std::async(std::launch::async, tally_range, first, last));
    }
    for (auto& future : futures) {
      GuessDistribution partial = future.get();
      result.looping += partial.looping;
      for (const auto& [turns, count] : partial.solved_by_turns) {
        result.solved_by_turns[turns] += count;
      }
    }
  }
  return result;
}

}  // namespace permwordle
