#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permwordle/game.hpp"
#include "permwordle/permutation.hpp"

/// Strategy builders and offending-secret constructions. An offending secret
/// makes a strategy either repeat an incorrect (position, value) pair or
/// loop forever; the constructions here build one directly from the shape of
/// a strategy's top component and re-play the game to prove it.

namespace permwordle {

/// [2,3,...,m,1]; [1] when m = 1.
inline Permutation right_shift_component(int m) {
  if (m < 1) throw std::invalid_argument("component size must be at least 1");
  std::vector<int> entries(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    entries[static_cast<std::size_t>(i - 1)] = cyclic_index(i + 1, m);
  }
  return Permutation(std::move(entries));
}

/// [m,1,2,...,m-1]; [1] when m = 1.
inline Permutation left_shift_component(int m) {
  if (m < 1) throw std::invalid_argument("component size must be at least 1");
  std::vector<int> entries(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    entries[static_cast<std::size_t>(i - 1)] = cyclic_index(i - 1, m);
  }
  return Permutation(std::move(entries));
}

inline Permutation shift_component(int m, ShiftDirection direction) {
  return direction == ShiftDirection::right ? right_shift_component(m)
                                            : left_shift_component(m);
}

/// All components shift rightward.
inline Strategy cs_strategy(int n) {
  if (n < 1) throw std::invalid_argument("strategy length must be at least 1");
  Strategy strategy{"cs:" + std::to_string(n), {}};
  for (int k = 1; k <= n; ++k) strategy.components.push_back(right_shift_component(k));
  return strategy;
}

/// All components shift leftward.
inline Strategy lcs_strategy(int n) {
  if (n < 1) throw std::invalid_argument("strategy length must be at least 1");
  Strategy strategy{"lcs:" + std::to_string(n), {}};
  for (int k = 1; k <= n; ++k) strategy.components.push_back(left_shift_component(k));
  return strategy;
}

/// Right shifts below the top component, left shift at the top.
inline Strategy csl_strategy(int n) {
  if (n < 2) throw std::invalid_argument("mixed shift strategies need length >= 2");
  Strategy strategy{"csl:" + std::to_string(n), {}};
  for (int k = 1; k < n; ++k) strategy.components.push_back(right_shift_component(k));
  strategy.components.push_back(left_shift_component(n));
  return strategy;
}

/// Left shifts below the top component, right shift at the top.
inline Strategy csr_strategy(int n) {
  if (n < 2) throw std::invalid_argument("mixed shift strategies need length >= 2");
  Strategy strategy{"csr:" + std::to_string(n), {}};
  for (int k = 1; k < n; ++k) strategy.components.push_back(left_shift_component(k));
  strategy.components.push_back(right_shift_component(n));
  return strategy;
}

/// Base-direction shifts at every size below the top component.
inline Strategy inductive_strategy(const Permutation& top, ShiftDirection base) {
  const int n = top.size();
  if (n < 2) throw std::invalid_argument("inductive strategies need length >= 2");
  if (!is_derangement(top)) {
    throw std::invalid_argument("top component must be a derangement: " + to_string(top));
  }
  Strategy strategy{
      "inductive:" + std::string(to_string(base)) + ":" + to_string(top), {}};
  for (int k = 1; k < n; ++k) strategy.components.push_back(shift_component(k, base));
  strategy.components.push_back(top);
  return strategy;
}

inline bool is_pure_shift(const Strategy& strategy, ShiftDirection direction) {
  for (int k = 1; k <= strategy.length(); ++k) {
    if (strategy.component(k) != shift_component(k, direction)) return false;
  }
  return true;
}

enum class CaseTag {
  contains2,
  min_mu,
  involution_alternating,
  all_two_special,
  sub_csl,
  sub_csr,
  cycle_pairing,
  no_offender,
};

inline std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::contains2: return "contains2";
    case CaseTag::min_mu: return "min_mu";
    case CaseTag::involution_alternating: return "involution_alternating";
    case CaseTag::all_two_special: return "all_two_special";
    case CaseTag::sub_csl: return "sub_csl";
    case CaseTag::sub_csr: return "sub_csr";
    case CaseTag::cycle_pairing: return "cycle_pairing";
    case CaseTag::no_offender: return "no_offender";
  }
  return "unknown";
}

/// Which construction fired and the parameters it chose. k_set and mu/iota
/// are meaningful only for the displacement-driven cases.
struct ConstructionCase {
  CaseTag tag = CaseTag::no_offender;
  std::vector<int> k_set;
  std::vector<int> locked_positions;
  int mu = 0;
  int iota = 0;
};

/// A constructed offending secret together with the transcript that proves
/// it. Constructions are never returned unverified.
struct ConstructedOffender {
  Permutation omega;
  ConstructionCase construction;
  Transcript evidence;
};

namespace detail {

inline ConstructedOffender verify_repeating(Permutation omega, ConstructionCase c,
                                            const Strategy& strategy) {
  Transcript evidence = play(omega, strategy);
  const bool repetition_at_three =
      std::any_of(evidence.repetitions.begin(), evidence.repetitions.end(),
                  [](const RepetitionEvent& e) {
                    return std::find(e.turns.begin(), e.turns.end(), 3) != e.turns.end();
                  });
  if (evidence.outcome != Outcome{OutcomeKind::solved, 4} || !repetition_at_three) {
    throw std::logic_error("constructed secret " + to_string(omega) +
                           " failed verification against " + strategy.label);
  }
  return ConstructedOffender{std::move(omega), std::move(c), std::move(evidence)};
}

inline ConstructedOffender verify_looping(Permutation omega, ConstructionCase c,
                                          const Strategy& strategy) {
  Transcript evidence = play(omega, strategy);
  if (evidence.outcome.kind != OutcomeKind::loop_detected) {
    throw std::logic_error("constructed secret " + to_string(omega) +
                           " failed to loop against " + strategy.label);
  }
  return ConstructedOffender{std::move(omega), std::move(c), std::move(evidence)};
}

/// Shifts the unlocked inverse entries two steps along the unlocked
/// positions L: omega[L[j+2]] = inv[L[j]], cyclically in 1..|L|.
inline void shift_twice_along(std::vector<int>& omega_entries, const Permutation& inv,
                              const std::vector<int>& unlocked) {
  const int m = static_cast<int>(unlocked.size());
  for (int j = 1; j <= m; ++j) {
    const int target = unlocked[static_cast<std::size_t>(cyclic_index(j + 2, m) - 1)];
    omega_entries[static_cast<std::size_t>(target - 1)] =
        inv[unlocked[static_cast<std::size_t>(j - 1)]];
  }
}

}  // namespace detail

/// Secret defeating the strategy whose top component is the length-n left
/// shift over right-shift lower components: [2,n,1,3,...,n-1].
inline ConstructedOffender csl_offender(int n) {
  if (n < 4) {
    throw std::invalid_argument("mixed shift offenders need length >= 4");
  }
  std::vector<int> entries(static_cast<std::size_t>(n));
  entries[0] = 2;
  entries[1] = n;
  entries[2] = 1;
  for (int i = 4; i <= n; ++i) entries[static_cast<std::size_t>(i - 1)] = i - 1;
  return detail::verify_repeating(Permutation(std::move(entries)),
                                  ConstructionCase{CaseTag::sub_csl, {}, {1}, 0, 0},
                                  csl_strategy(n));
}

/// Secret defeating the strategy whose top component is the length-n right
/// shift over left-shift lower components: [n,3,...,n-1,1,2].
inline ConstructedOffender csr_offender(int n) {
  if (n < 4) {
    throw std::invalid_argument("mixed shift offenders need length >= 4");
  }
  std::vector<int> entries(static_cast<std::size_t>(n));
  entries[0] = n;
  for (int i = 2; i <= n - 2; ++i) entries[static_cast<std::size_t>(i - 1)] = i + 1;
  entries[static_cast<std::size_t>(n - 2)] = 1;
  entries[static_cast<std::size_t>(n - 1)] = 2;
  return detail::verify_repeating(Permutation(std::move(entries)),
                                  ConstructionCase{CaseTag::sub_csr, {}, {1}, 0, 0},
                                  csr_strategy(n));
}

/// Case split for a right-base top component, driven by the displacement of
/// its inverse. The right-shift component itself admits no offender.
inline CaseTag classify_top(const Permutation& top) {
  const int n = top.size();
  if (n < 4) throw std::invalid_argument("classification needs length >= 4");
  if (!is_derangement(top)) {
    throw std::invalid_argument("top component must be a derangement: " + to_string(top));
  }
  const DisplacementVector d = displacement(inverse(top));
  if (d.all_equal(n - 1)) return CaseTag::no_offender;
  if (d.all_equal(1)) return CaseTag::sub_csl;
  if (top == Permutation({3, 4, 1, 2})) return CaseTag::all_two_special;
  bool alternating = true;
  for (int i = 1; i <= n && alternating; ++i) {
    if ((d[i] != 1 && d[i] != n - 1) || d[i] == d[cyclic_index(i + 1, n)]) {
      alternating = false;
    }
  }
  if (alternating) return CaseTag::involution_alternating;
  if (d.contains(2)) return CaseTag::contains2;
  return CaseTag::min_mu;
}

/// Builds the offender for a top whose inverse displacement contains a 2.
/// Positions one past the chosen displaced indices K lock in on turn two;
/// every other inverse entry is shifted two steps along the unlocked
/// positions, which forces a turn-one value back into its old position on
/// turn three.
inline ConstructedOffender construct_contains2(const Permutation& top) {
  const int n = top.size();
  if (n < 4) throw std::invalid_argument("construction needs length >= 4");
  if (!is_derangement(top)) {
    throw std::invalid_argument("top component must be a derangement: " + to_string(top));
  }
  if (top == Permutation({3, 4, 1, 2})) {
    throw std::invalid_argument("[3,4,1,2] requires the involution construction");
  }
  const Permutation inv = inverse(top);
  const DisplacementVector d = displacement(inv);
  if (!d.contains(2)) {
    throw std::invalid_argument("inverse displacement of " + to_string(top) +
                                " contains no 2");
  }

  // Locked indices must be pairwise non-adjacent on the cycle, or an entry
  // that was meant to shift past one locked position gets frozen by the
  // other and the turn-three repetition never happens. The ascending scan
  // handles linear adjacency; index n additionally conflicts with index 1.
  std::vector<int> k_set;
  bool wrapped = false;
  for (int i = 1; i <= n && static_cast<int>(k_set.size()) < n - 3; ++i) {
    if (d[i] != 2) continue;
    if (!k_set.empty() && k_set.back() == i - 1) continue;
    if (i == n && !k_set.empty() && k_set.front() == 1) {
      wrapped = true;
      continue;
    }
    k_set.push_back(i);
  }
  // When the two ends of the cycle are the only displaced-by-2 indices,
  // keep n rather than 1.
  if (wrapped && k_set == std::vector<int>{1}) {
    bool interior_two = false;
    for (int j = 2; j <= n - 1 && !interior_two; ++j) interior_two = d[j] == 2;
    if (!interior_two) k_set = {n};
  }

  std::vector<int> locked;
  locked.reserve(k_set.size());
  for (int i : k_set) locked.push_back(cyclic_index(i + 1, n));
  std::sort(locked.begin(), locked.end());

  std::vector<int> omega_entries(static_cast<std::size_t>(n), 0);
  for (int pos : locked) omega_entries[static_cast<std::size_t>(pos - 1)] = inv[pos];
  detail::shift_twice_along(omega_entries, inv, complement_positions(locked, n));

  return detail::verify_repeating(
      Permutation(std::move(omega_entries)),
      ConstructionCase{CaseTag::contains2, std::move(k_set), std::move(locked), 0, 0},
      inductive_strategy(top, ShiftDirection::right));
}

/// Builds the offender for a top whose inverse displacement avoids 1 and 2
/// at some position: with mu the smallest displacement above 1 and iota its
/// first index, the mu-1 positions after iota lock in on turn two and the
/// rest shift two steps along the unlocked positions.
inline ConstructedOffender construct_min_mu(const Permutation& top) {
  const int n = top.size();
  if (n < 5) throw std::invalid_argument("construction needs length >= 5");
  if (!is_derangement(top)) {
    throw std::invalid_argument("top component must be a derangement: " + to_string(top));
  }
  const Permutation inv = inverse(top);
  const DisplacementVector d = displacement(inv);
  if (d.contains(2)) {
    throw std::invalid_argument("inverse displacement of " + to_string(top) +
                                " contains a 2");
  }
  int mu = n;
  for (int i = 1; i <= n; ++i) {
    if (d[i] != 1 && d[i] < mu) mu = d[i];
  }
  if (mu < 3 || mu > n - 2) {
    throw std::invalid_argument("inverse displacement of " + to_string(top) +
                                " has no entry in 3.." + std::to_string(n - 2));
  }
  int iota = 0;
  for (int i = 1; i <= n && iota == 0; ++i) {
    if (d[i] == mu) iota = i;
  }

  std::vector<int> k_set;
  for (int k = 1; k <= mu - 1; ++k) k_set.push_back(cyclic_index(iota + k, n));
  std::sort(k_set.begin(), k_set.end());

  std::vector<int> omega_entries(static_cast<std::size_t>(n), 0);
  for (int pos : k_set) omega_entries[static_cast<std::size_t>(pos - 1)] = inv[pos];
  detail::shift_twice_along(omega_entries, inv, complement_positions(k_set, n));

  std::vector<int> locked = k_set;
  return detail::verify_repeating(
      Permutation(std::move(omega_entries)),
      ConstructionCase{CaseTag::min_mu, std::move(k_set), std::move(locked), mu, iota},
      inductive_strategy(top, ShiftDirection::right));
}

/// Builds a looping secret for any top whose cycle lengths all occur at
/// least twice: cycles of equal length are paired up cyclically and each
/// cycle's elements are sent to the next cycle's positions, so no guess in
/// the top's orbit ever lands an entry correctly.
inline ConstructedOffender loop_offender(const Permutation& delta) {
  if (!is_derangement(delta)) {
    throw std::invalid_argument("top component must be a derangement: " + to_string(delta));
  }
  const CycleDecomposition decomposition = cycle_decomposition(delta);
  for (const auto& [length, count] : decomposition.multiplicities) {
    if (count < 2) {
      throw std::invalid_argument("cycle length " + std::to_string(length) +
                                  " appears only once in " + to_string(delta));
    }
  }

  std::map<int, std::vector<const std::vector<int>*>> groups;
  for (const auto& cycle : decomposition.cycles) {
    groups[static_cast<int>(cycle.size())].push_back(&cycle);
  }
  std::vector<int> omega_entries(static_cast<std::size_t>(delta.size()), 0);
  for (const auto& [length, cycles] : groups) {
    const std::size_t count = cycles.size();
    for (std::size_t j = 0; j < count; ++j) {
      const std::vector<int>& from = *cycles[j];
      const std::vector<int>& to = *cycles[(j + 1) % count];
      for (std::size_t a = 0; a < from.size(); ++a) {
        omega_entries[static_cast<std::size_t>(from[a] - 1)] = to[a];
      }
    }
  }
  return detail::verify_looping(Permutation(std::move(omega_entries)),
                                ConstructionCase{CaseTag::cycle_pairing, {}, {}, 0, 0},
                                inductive_strategy(delta, ShiftDirection::right));
}

/// Builds a looping secret for an adjacent-transposition involution top
/// (inverse displacement alternating between 1 and n-1), or for the special
/// top [3,4,1,2]. Both secrets keep every guess in the top's two-step orbit
/// away from every correct position.
inline ConstructedOffender construct_involution(const Permutation& top) {
  const int n = top.size();
  if (n < 4) throw std::invalid_argument("construction needs length >= 4");
  if (!is_derangement(top)) {
    throw std::invalid_argument("top component must be a derangement: " + to_string(top));
  }
  if (top == Permutation({3, 4, 1, 2})) {
    return detail::verify_looping(Permutation({2, 1, 4, 3}),
                                  ConstructionCase{CaseTag::all_two_special, {}, {}, 0, 0},
                                  inductive_strategy(top, ShiftDirection::right));
  }
  if (classify_top(top) != CaseTag::involution_alternating) {
    throw std::invalid_argument("inverse displacement of " + to_string(top) +
                                " does not alternate between 1 and " +
                                std::to_string(n - 1));
  }
  std::vector<int> entries(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    entries[static_cast<std::size_t>(i - 1)] = cyclic_index(i + 2, n);
  }
  return detail::verify_looping(
      Permutation(std::move(entries)),
      ConstructionCase{CaseTag::involution_alternating, {}, {}, 0, 0},
      inductive_strategy(top, ShiftDirection::right));
}

/// Dispatches a non-shift top component over right-shift lower components to
/// its construction.
inline ConstructedOffender construct_right_base(const Permutation& top) {
  switch (classify_top(top)) {
    case CaseTag::sub_csl:
      return csl_offender(top.size());
    case CaseTag::all_two_special:
    case CaseTag::involution_alternating:
      return construct_involution(top);
    case CaseTag::contains2:
      return construct_contains2(top);
    case CaseTag::min_mu:
      return construct_min_mu(top);
    default:
      throw std::invalid_argument("the pure right shift admits no offender");
  }
}

/// Builds an offender for any strategy that is not a pure cyclic shift.
/// The first non-shift component (size >= 4) is attacked: its offender is
/// built directly for a right base, or by mirror conjugation for a left
/// base, and extended with fixed points so the longer game locks the tail
/// immediately. Returns std::nullopt for pure shift strategies.
inline std::optional<ConstructedOffender> construct_general(const Strategy& strategy) {
  if (auto diagnostic = validate_strategy(strategy)) {
    throw std::invalid_argument("invalid strategy: " + *diagnostic);
  }
  const int n = strategy.length();
  if (n < 3) return std::nullopt;
  const ShiftDirection base = strategy.component(3) == right_shift_component(3)
                                  ? ShiftDirection::right
                                  : ShiftDirection::left;
  int kappa = 0;
  for (int k = 4; k <= n && kappa == 0; ++k) {
    if (strategy.component(k) != shift_component(k, base)) kappa = k;
  }
  if (kappa == 0) return std::nullopt;

  const Permutation& top = strategy.component(kappa);
  auto build_prefix = [&]() -> std::pair<Permutation, ConstructionCase> {
    if (base == ShiftDirection::right) {
      ConstructedOffender sub = construct_right_base(top);
      return {std::move(sub.omega), std::move(sub.construction)};
    }
    if (top == right_shift_component(kappa)) {
      ConstructedOffender sub = csr_offender(kappa);
      return {std::move(sub.omega), std::move(sub.construction)};
    }
    ConstructedOffender sub = construct_right_base(mirror(top));
    return {mirror(sub.omega), std::move(sub.construction)};
  };
  auto [prefix, construction] = build_prefix();

  std::vector<int> entries = prefix.entries();
  entries.reserve(static_cast<std::size_t>(n));
  for (int i = kappa + 1; i <= n; ++i) entries.push_back(i);
  Permutation omega(std::move(entries));

  Transcript evidence = play(omega, strategy);
  const Verdict verdict = verdict_of(evidence);
  if (verdict != Verdict::repeating && verdict != Verdict::looping) {
    throw std::logic_error("constructed secret " + to_string(omega) +
                           " classified " + std::string(to_string(verdict)) +
                           " against " + strategy.label);
  }
  return ConstructedOffender{std::move(omega), std::move(construction),
                             std::move(evidence)};
}

/// Parses the strategy grammar shared with the command line: cs:N, lcs:N,
/// csl:N, csr:N, inductive:right:[...], inductive:left:[...], or a path to
/// a file holding one component literal per line (# starts a comment).
inline Strategy load_strategy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open strategy file: " + path);
  }
  Strategy strategy{path, {}};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    strategy.components.push_back(
        parse_permutation(std::string_view(line).substr(begin, end - begin + 1)));
  }
  if (auto diagnostic = validate_strategy(strategy)) {
    throw std::invalid_argument("invalid strategy in " + path + ": " + *diagnostic);
  }
  return strategy;
}

inline Strategy parse_strategy_spec(const std::string& spec) {
  auto parse_length = [&](std::string_view prefix) -> std::optional<int> {
    if (spec.size() <= prefix.size() || spec.compare(0, prefix.size(), prefix) != 0) {
      return std::nullopt;
    }
    const std::string rest = spec.substr(prefix.size());
    for (char c : rest) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("bad strategy length in spec: " + spec);
      }
    }
    return std::stoi(rest);
  };
  if (auto n = parse_length("cs:")) return cs_strategy(*n);
  if (auto n = parse_length("lcs:")) return lcs_strategy(*n);
  if (auto n = parse_length("csl:")) return csl_strategy(*n);
  if (auto n = parse_length("csr:")) return csr_strategy(*n);
  constexpr std::string_view kRight = "inductive:right:";
  constexpr std::string_view kLeft = "inductive:left:";
  if (spec.compare(0, kRight.size(), kRight) == 0) {
    return inductive_strategy(parse_permutation(spec.substr(kRight.size())),
                              ShiftDirection::right);
  }
  if (spec.compare(0, kLeft.size(), kLeft) == 0) {
    return inductive_strategy(parse_permutation(spec.substr(kLeft.size())),
                              ShiftDirection::left);
  }
  return load_strategy_file(spec);
}

}  // namespace permwordle
