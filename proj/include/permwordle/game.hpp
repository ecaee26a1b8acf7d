#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permwordle/permutation.hpp"

/// Game engine for permutation guessing: a secret permutation is probed with
/// guesses, feedback reveals the set of correct positions, and a strategy's
/// per-size components rearrange the incorrect entries between turns.

namespace permwordle {

/// A guessing strategy: component k is applied whenever exactly k positions
/// are incorrect. Component 1 is [1], component 2 is [2,1], and every
/// component of size >= 2 is a derangement.
struct Strategy {
  std::string label;
  std::vector<Permutation> components;

  int length() const noexcept { return static_cast<int>(components.size()); }

  /// Component for k incorrect positions, one-indexed.
  const Permutation& component(int k) const {
    if (k < 1 || k > length()) {
      throw std::out_of_range("no strategy component of size " + std::to_string(k));
    }
    return components[static_cast<std::size_t>(k - 1)];
  }
};

/// Returns std::nullopt when all strategy invariants hold, otherwise a
/// diagnostic naming the first offending component.
inline std::optional<std::string> validate_strategy(const Strategy& strategy) {
  if (strategy.components.empty()) {
    return "strategy has no components";
  }
  const int n = strategy.length();
  for (int k = 1; k <= n; ++k) {
    const Permutation& c = strategy.components[static_cast<std::size_t>(k - 1)];
    if (c.size() != k) {
      return "component " + std::to_string(k) + " has length " +
             std::to_string(c.size()) + ", expected " + std::to_string(k);
    }
  }
  if (strategy.components[0] != Permutation::identity(1)) {
    return "component 1 must be [1]";
  }
  if (n >= 2 && strategy.components[1] != Permutation({2, 1})) {
    return "component 2 must be [2,1]";
  }
  for (int k = 2; k <= n; ++k) {
    const Permutation& c = strategy.components[static_cast<std::size_t>(k - 1)];
    for (int i = 1; i <= k; ++i) {
      if (c[i] == i) {
        return "component " + std::to_string(k) + " has a fixed point at position " +
               std::to_string(i);
      }
    }
  }
  return std::nullopt;
}

/// Positions where the guess matches the secret, ascending.
inline std::vector<int> feedback(const Permutation& guess, const Permutation& secret) {
  if (guess.size() != secret.size()) {
    throw std::invalid_argument("guess length " + std::to_string(guess.size()) +
                                " does not match secret length " +
                                std::to_string(secret.size()));
  }
  std::vector<int> correct;
  for (int i = 1; i <= guess.size(); ++i) {
    if (guess[i] == secret[i]) correct.push_back(i);
  }
  return correct;
}

/// Ascending complement of a sorted position set within 1..n.
inline std::vector<int> complement_positions(const std::vector<int>& positions, int n) {
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(n) - positions.size());
  std::size_t cursor = 0;
  for (int i = 1; i <= n; ++i) {
    if (cursor < positions.size() && positions[cursor] == i) {
      ++cursor;
    } else {
      rest.push_back(i);
    }
  }
  return rest;
}

/// Rearranges the entries at the incorrect positions: with sorted incorrect
/// positions p_1 < ... < p_m and v_j = guess[p_j], the result carries v_j at
/// position p_{component[j]} and keeps every other entry in place.
inline Permutation next_guess(const Permutation& guess,
                              const std::vector<int>& incorrect_positions,
                              const Permutation& component) {
  const int n = guess.size();
  const int m = static_cast<int>(incorrect_positions.size());
  if (m != component.size()) {
    throw std::invalid_argument("component length " + std::to_string(component.size()) +
                                " does not match " + std::to_string(m) +
                                " incorrect positions");
  }
  if (m < 2) {
    throw std::invalid_argument("rearrangement needs at least two incorrect positions");
  }
  for (int j = 0; j < m; ++j) {
    const int p = incorrect_positions[static_cast<std::size_t>(j)];
    if (p < 1 || p > n || (j > 0 && incorrect_positions[static_cast<std::size_t>(j - 1)] >= p)) {
      throw std::invalid_argument("incorrect positions must be ascending within 1.." +
                                  std::to_string(n));
    }
  }
  std::vector<int> entries = guess.entries();
  for (int j = 1; j <= m; ++j) {
    const int target = incorrect_positions[static_cast<std::size_t>(component[j] - 1)];
    entries[static_cast<std::size_t>(target - 1)] =
        guess[incorrect_positions[static_cast<std::size_t>(j - 1)]];
  }
  return Permutation(std::move(entries));
}

struct GuessRecord {
  int turn = 0;
  Permutation guess;
  std::vector<int> correct_positions;
};

enum class OutcomeKind { solved, loop_detected, aborted };

inline std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::solved: return "solved";
    case OutcomeKind::loop_detected: return "loop_detected";
    case OutcomeKind::aborted: return "aborted";
  }
  return "unknown";
}

/// solved: turn of the winning guess. loop_detected: turn of the first guess
/// that recurs without any new correct position. aborted: the turn budget.
struct Outcome {
  OutcomeKind kind = OutcomeKind::aborted;
  int turn = 0;

  friend bool operator==(const Outcome& a, const Outcome& b) = default;
};

/// An incorrect (position, value) pair offered on two or more turns.
struct RepetitionEvent {
  int position = 0;
  int value = 0;
  std::vector<int> turns;

  friend bool operator==(const RepetitionEvent& a, const RepetitionEvent& b) = default;
};

struct Transcript {
  Permutation secret;
  Strategy strategy;
  std::vector<GuessRecord> records;
  Outcome outcome;
  std::vector<RepetitionEvent> repetitions;
};

constexpr int default_max_turns(int n) { return n * n + n; }

struct PlayOptions {
  int max_turns = 0;        // 0 selects default_max_turns(n)
  bool detect_loops = true;
};

/// Every incorrect (position, value) pair appearing on two or more recorded
/// turns, ordered by first turn then position. Looping transcripts are
/// scanned over the finite prefix up to detection.
inline std::vector<RepetitionEvent> repetition_events(const Transcript& transcript) {
  const int n = transcript.secret.size();
  std::vector<std::vector<int>> turns_by_pair(static_cast<std::size_t>(n) *
                                              static_cast<std::size_t>(n));
  for (const GuessRecord& record : transcript.records) {
    for (int pos = 1; pos <= n; ++pos) {
      const int value = record.guess[pos];
      if (value != transcript.secret[pos]) {
        turns_by_pair[static_cast<std::size_t>(pos - 1) * static_cast<std::size_t>(n) +
                      static_cast<std::size_t>(value - 1)]
            .push_back(record.turn);
      }
    }
  }
  std::vector<RepetitionEvent> events;
  for (int pos = 1; pos <= n; ++pos) {
    for (int value = 1; value <= n; ++value) {
      auto& turns = turns_by_pair[static_cast<std::size_t>(pos - 1) *
                                      static_cast<std::size_t>(n) +
                                  static_cast<std::size_t>(value - 1)];
      if (turns.size() >= 2) {
        events.push_back(RepetitionEvent{pos, value, std::move(turns)});
      }
    }
  }
  std::sort(events.begin(), events.end(),
            [](const RepetitionEvent& a, const RepetitionEvent& b) {
              if (a.turns.front() != b.turns.front()) {
                return a.turns.front() < b.turns.front();
              }
              return a.position < b.position;
            });
  return events;
}

/// Plays a full game from the identity guess. Loop detection keeps the set
/// of guesses seen since the last strict growth of the correct set; a guess
/// recurring in that window can never make progress again, and the game ends
/// at the turn of first recurrence.
inline Transcript play(const Permutation& secret, const Strategy& strategy,
                       PlayOptions options = {}) {
  if (auto diagnostic = validate_strategy(strategy)) {
    throw std::invalid_argument("invalid strategy: " + *diagnostic);
  }
  const int n = strategy.length();
  if (secret.size() != n) {
    throw std::invalid_argument("secret length " + std::to_string(secret.size()) +
                                " does not match strategy length " + std::to_string(n));
  }
  const int max_turns = options.max_turns > 0 ? options.max_turns : default_max_turns(n);

  Transcript transcript{secret, strategy, {}, Outcome{OutcomeKind::aborted, max_turns}, {}};
  std::vector<Permutation> window;  // guesses since the last strict growth
  Permutation current = Permutation::identity(n);
  std::size_t locked_count = 0;

  for (int turn = 1; turn <= max_turns; ++turn) {
    std::vector<int> correct = feedback(current, secret);
    if (turn > 1) {
      const GuessRecord& previous = transcript.records.back();
      if (!std::includes(correct.begin(), correct.end(),
                         previous.correct_positions.begin(),
                         previous.correct_positions.end())) {
        throw std::logic_error("correct positions shrank between turns");
      }
      for (int pos : previous.correct_positions) {
        if (current[pos] != previous.guess[pos]) {
          throw std::logic_error("a locked entry moved between turns");
        }
      }
    }
    transcript.records.push_back(GuessRecord{turn, current, correct});

    if (static_cast<int>(correct.size()) == n) {
      transcript.outcome = Outcome{OutcomeKind::solved, turn};
      break;
    }
    if (correct.size() > locked_count) window.clear();
    locked_count = correct.size();
    if (options.detect_loops &&
        std::find(window.begin(), window.end(), current) != window.end()) {
      transcript.outcome = Outcome{OutcomeKind::loop_detected, turn};
      break;
    }
    window.push_back(current);

    std::vector<int> incorrect = complement_positions(correct, n);
    if (incorrect.size() == 1) {
      throw std::logic_error("exactly one incorrect position cannot occur");
    }
    current = next_guess(current, incorrect,
                         strategy.component(static_cast<int>(incorrect.size())));
  }

  transcript.repetitions = repetition_events(transcript);
  return transcript;
}

inline Transcript play(const Permutation& secret, const Strategy& strategy,
                       int max_turns) {
  return play(secret, strategy, PlayOptions{max_turns, true});
}

enum class Verdict { clean, repeating, looping, aborted };

inline std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::clean: return "clean";
    case Verdict::repeating: return "repeating";
    case Verdict::looping: return "looping";
    case Verdict::aborted: return "aborted";
  }
  return "unknown";
}

inline Verdict verdict_of(const Transcript& transcript) {
  switch (transcript.outcome.kind) {
    case OutcomeKind::solved:
      return transcript.repetitions.empty() ? Verdict::clean : Verdict::repeating;
    case OutcomeKind::loop_detected:
      return Verdict::looping;
    case OutcomeKind::aborted:
      return Verdict::aborted;
  }
  return Verdict::aborted;
}

/// Verdict for one secret under one strategy. aborted marks a game that
/// exhausted its turn budget and must never be read as clean.
struct OffenderVerdict {
  Verdict verdict = Verdict::clean;
  std::vector<RepetitionEvent> events;
};

inline OffenderVerdict is_offender(const Strategy& strategy, const Permutation& secret,
                                   PlayOptions options = {}) {
  Transcript transcript = play(secret, strategy, options);
  return OffenderVerdict{verdict_of(transcript), std::move(transcript.repetitions)};
}

}  // namespace permwordle
