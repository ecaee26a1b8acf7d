#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/// One-indexed permutation algebra: inversion, composition, displacement
/// vectors, cycle structure, mirroring, literals, and lexicographic
/// enumeration partitionable by rank range.

namespace permwordle {

/// Maps an arbitrary one-indexed value onto the cyclic range 1..n.
inline int cyclic_index(int i, int n) {
  int r = (i - 1) % n;
  if (r < 0) r += n;
  return r + 1;
}

/// A permutation of {1,...,n}. Entries are one-indexed at the interface:
/// p[i] is the image of i, with 1 <= i <= n and n >= 1.
class Permutation {
 public:
  /// Validates that `entries` is a bijection on {1,...,size}; throws
  /// std::invalid_argument naming the out-of-range or duplicated value.
  explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
      throw std::invalid_argument("permutation must have at least one entry");
    }
    const int n = static_cast<int>(entries_.size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int value : entries_) {
      if (value < 1 || value > n) {
        throw std::invalid_argument("value " + std::to_string(value) +
                                    " out of range 1.." + std::to_string(n));
      }
      if (seen[static_cast<std::size_t>(value - 1)]) {
        throw std::invalid_argument("duplicate value " + std::to_string(value) +
                                    " (some value in 1.." + std::to_string(n) +
                                    " is missing)");
      }
      seen[static_cast<std::size_t>(value - 1)] = 1;
    }
  }

  static Permutation identity(int n) {
    if (n < 1) {
      throw std::invalid_argument("permutation length must be at least 1");
    }
    std::vector<int> entries(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) entries[static_cast<std::size_t>(i)] = i + 1;
    return Permutation(std::move(entries));
  }

  int size() const noexcept { return static_cast<int>(entries_.size()); }

  /// One-indexed access; i must lie in 1..size().
  int operator[](int i) const {
    if (i < 1 || i > size()) {
      throw std::out_of_range("index " + std::to_string(i) + " out of range 1.." +
                              std::to_string(size()));
    }
    return entries_[static_cast<std::size_t>(i - 1)];
  }

  /// Underlying entries; slot i-1 holds the image of i.
  const std::vector<int>& entries() const noexcept { return entries_; }

  friend bool operator==(const Permutation& a, const Permutation& b) = default;

 private:
  std::vector<int> entries_;
};

/// Lexicographic order on entry vectors.
inline bool lex_less(const Permutation& a, const Permutation& b) {
  return a.entries() < b.entries();
}

enum class ShiftDirection { right, left };

inline std::string_view to_string(ShiftDirection d) {
  return d == ShiftDirection::right ? "right" : "left";
}

/// Componentwise cyclic offset of a permutation from the identity, reduced
/// into 0..n-1. A derangement is exactly a permutation with no zero entry.
struct DisplacementVector {
  ShiftDirection direction = ShiftDirection::right;
  std::vector<int> values;

  int size() const noexcept { return static_cast<int>(values.size()); }

  int operator[](int i) const {
    if (i < 1 || i > size()) {
      throw std::out_of_range("index " + std::to_string(i) + " out of range 1.." +
                              std::to_string(size()));
    }
    return values[static_cast<std::size_t>(i - 1)];
  }

  bool contains(int value) const {
    return std::find(values.begin(), values.end(), value) != values.end();
  }

  bool all_equal(int value) const {
    return std::all_of(values.begin(), values.end(),
                       [value](int v) { return v == value; });
  }

  friend bool operator==(const DisplacementVector& a,
                         const DisplacementVector& b) = default;
};

inline Permutation inverse(const Permutation& p) {
  const int n = p.size();
  std::vector<int> entries(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) entries[static_cast<std::size_t>(p[i] - 1)] = i;
  return Permutation(std::move(entries));
}

/// Functional composition: (p after q)[i] = p[q[i]].
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("cannot compose permutations of lengths " +
                                std::to_string(p.size()) + " and " +
                                std::to_string(q.size()));
  }
  const int n = p.size();
  std::vector<int> entries(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) entries[static_cast<std::size_t>(i - 1)] = p[q[i]];
  return Permutation(std::move(entries));
}

inline bool is_derangement(const Permutation& p) {
  for (int i = 1; i <= p.size(); ++i) {
    if (p[i] == i) return false;
  }
  return true;
}

/// Rightward displacement: values[i] = (p[i] - i) mod n.
inline DisplacementVector displacement(const Permutation& p) {
  const int n = p.size();
  DisplacementVector d{ShiftDirection::right, {}};
  d.values.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) d.values.push_back(((p[i] - i) % n + n) % n);
  return d;
}

/// Leftward displacement: values[i] = (i - p[i]) mod n. For every position,
/// right and left displacements sum to 0 mod n.
inline DisplacementVector left_displacement(const Permutation& p) {
  const int n = p.size();
  DisplacementVector d{ShiftDirection::left, {}};
  d.values.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) d.values.push_back(((i - p[i]) % n + n) % n);
  return d;
}

/// Disjoint cycle structure in canonical form: each cycle starts at its
/// minimal element and cycles are ordered by minimal element. Fixed points
/// appear as length-1 cycles.
struct CycleDecomposition {
  std::vector<std::vector<int>> cycles;
  std::vector<int> cycle_type;      // cycle lengths, ascending
  std::map<int, int> multiplicities;  // cycle length -> number of cycles
};

inline CycleDecomposition cycle_decomposition(const Permutation& p) {
  const int n = p.size();
  CycleDecomposition result;
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  for (int start = 1; start <= n; ++start) {
    if (visited[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cycle;
    int current = start;
    do {
      visited[static_cast<std::size_t>(current - 1)] = 1;
      cycle.push_back(current);
      current = p[current];
    } while (current != start);
    result.cycles.push_back(std::move(cycle));
  }
  for (const auto& cycle : result.cycles) {
    result.cycle_type.push_back(static_cast<int>(cycle.size()));
  }
  std::sort(result.cycle_type.begin(), result.cycle_type.end());
  for (int length : result.cycle_type) ++result.multiplicities[length];
  return result;
}

/// Reversal conjugation: mirror(p)[i] = n+1 - p[n+1-i]. An involution on
/// permutations that exchanges right- and left-shift behaviour.
inline Permutation mirror(const Permutation& p) {
  const int n = p.size();
  std::vector<int> entries(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    entries[static_cast<std::size_t>(i - 1)] = n + 1 - p[n + 1 - i];
  }
  return Permutation(std::move(entries));
}

/// Formats as a bracketed literal, e.g. "[2,4,1,3]".
inline std::string to_string(const Permutation& p) {
  std::string out = "[";
  for (int i = 1; i <= p.size(); ++i) {
    if (i > 1) out += ',';
    out += std::to_string(p[i]);
  }
  out += ']';
  return out;
}

/// Parses a bracketed literal such as "[2,4,1,3]" (spaces allowed after
/// commas). Rejects non-bijections with a diagnostic naming the bad value.
inline Permutation parse_permutation(std::string_view text) {
  std::size_t pos = 0;
  auto skip_spaces = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_spaces();
  if (pos >= text.size() || text[pos] != '[') {
    throw std::invalid_argument("permutation literal must start with '[': " +
                                std::string(text));
  }
  ++pos;
  std::vector<int> entries;
  while (true) {
    skip_spaces();
    if (pos < text.size() && text[pos] == ']' && entries.empty()) {
      throw std::invalid_argument("permutation literal must not be empty");
    }
    std::size_t digits = 0;
    int value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + (text[pos] - '0');
      ++pos;
      ++digits;
    }
    if (digits == 0) {
      throw std::invalid_argument("expected a number in permutation literal: " +
                                  std::string(text));
    }
    entries.push_back(value);
    skip_spaces();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      break;
    }
    throw std::invalid_argument("expected ',' or ']' in permutation literal: " +
                                std::string(text));
  }
  skip_spaces();
  if (pos != text.size()) {
    throw std::invalid_argument("trailing characters after permutation literal: " +
                                std::string(text));
  }
  return Permutation(std::move(entries));
}

inline std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) {
    throw std::invalid_argument("factorial argument out of range 0..20");
  }
  std::uint64_t result = 1;
  for (int k = 2; k <= n; ++k) result *= static_cast<std::uint64_t>(k);
  return result;
}

/// Number of derangements of n elements: !n = (n-1)(!(n-1) + !(n-2)).
inline std::uint64_t subfactorial(int n) {
  if (n < 0 || n > 20) {
    throw std::invalid_argument("subfactorial argument out of range 0..20");
  }
  if (n == 0) return 1;
  if (n == 1) return 0;
  std::uint64_t two_back = 1;  // !0
  std::uint64_t one_back = 0;  // !1
  for (int k = 2; k <= n; ++k) {
    std::uint64_t current = static_cast<std::uint64_t>(k - 1) * (one_back + two_back);
    two_back = one_back;
    one_back = current;
  }
  return one_back;
}

/// Largest length enumeration routines accept. Defaults to 8; the
/// PERMWORDLE_MAX_N environment variable overrides it.
inline int enumeration_limit() {
  if (const char* raw = std::getenv("PERMWORDLE_MAX_N")) {
    char* end = nullptr;
    long parsed = std::strtol(raw, &end, 10);
    if (end != raw && *end == '\0' && parsed >= 1 && parsed <= 20) {
      return static_cast<int>(parsed);
    }
  }
  return 8;
}

inline void check_enumeration_length(int n) {
  if (n < 1) {
    throw std::invalid_argument("enumeration length must be at least 1");
  }
  const int limit = enumeration_limit();
  if (n > limit) {
    throw std::invalid_argument(
        "enumeration length " + std::to_string(n) + " exceeds limit " +
        std::to_string(limit) + " (override with PERMWORDLE_MAX_N)");
  }
}

/// Zero-based position of p in the lexicographic order of all permutations
/// of its length.
inline std::uint64_t lexicographic_rank(const Permutation& p) {
  const int n = p.size();
  std::uint64_t rank = 0;
  for (int i = 1; i <= n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j <= n; ++j) {
      if (p[j] < p[i]) ++smaller;
    }
    rank += static_cast<std::uint64_t>(smaller) * factorial(n - i);
  }
  return rank;
}

/// Permutation of {1,...,n} at the given zero-based lexicographic rank.
inline Permutation permutation_at_rank(int n, std::uint64_t rank) {
  if (n < 1) {
    throw std::invalid_argument("permutation length must be at least 1");
  }
  if (rank >= factorial(n)) {
    throw std::invalid_argument("rank " + std::to_string(rank) +
                                " out of range for length " + std::to_string(n));
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    const std::uint64_t block = factorial(i - 1);
    const auto index = static_cast<std::size_t>(rank / block);
    rank %= block;
    entries.push_back(pool[index]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(index));
  }
  return Permutation(std::move(entries));
}

/// Single-consumer stream over a lexicographic rank range [first, last) of
/// the permutations of {1,...,n}. Workers partition the full range by rank.
class PermutationStream {
 public:
  PermutationStream(int n, std::uint64_t first, std::uint64_t last)
      : n_(n), next_rank_(first), last_rank_(std::min(last, factorial(n))) {
    check_enumeration_length(n);
  }

  std::optional<Permutation> next() {
    if (next_rank_ >= last_rank_) return std::nullopt;
    if (current_.empty()) {
      current_ = permutation_at_rank(n_, next_rank_).entries();
    } else {
      std::next_permutation(current_.begin(), current_.end());
    }
    ++next_rank_;
    return Permutation(current_);
  }

 private:
  int n_;
  std::uint64_t next_rank_;
  std::uint64_t last_rank_;
  std::vector<int> current_;
};

inline PermutationStream enumerate_permutations(int n) {
  check_enumeration_length(n);
  return PermutationStream(n, 0, factorial(n));
}

/// Filters a permutation stream down to derangements, preserving order.
class DerangementStream {
 public:
  explicit DerangementStream(PermutationStream inner) : inner_(std::move(inner)) {}

  std::optional<Permutation> next() {
    while (auto p = inner_.next()) {
      if (is_derangement(*p)) return p;
    }
    return std::nullopt;
  }

 private:
  PermutationStream inner_;
};

inline DerangementStream enumerate_derangements(int n) {
  return DerangementStream(enumerate_permutations(n));
}

inline std::vector<Permutation> all_derangements(int n) {
  std::vector<Permutation> result;
  auto stream = enumerate_derangements(n);
  while (auto p = stream.next()) result.push_back(*p);
  return result;
}

}  // namespace permwordle
