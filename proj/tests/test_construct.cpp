#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <vector>

#include "permwordle/construct.hpp"
#include "permwordle/game.hpp"
#include "permwordle/permutation.hpp"

using namespace permwordle;

TEST_CASE("shift components") {
  CHECK(right_shift_component(4) == Permutation({2, 3, 4, 1}));
  CHECK(left_shift_component(5) == Permutation({5, 1, 2, 3, 4}));
  CHECK(right_shift_component(2) == left_shift_component(2));
  CHECK(right_shift_component(1) == Permutation({1}));
  CHECK(left_shift_component(1) == Permutation({1}));
  CHECK(shift_component(3, ShiftDirection::right) == Permutation({2, 3, 1}));
  CHECK(shift_component(3, ShiftDirection::left) == Permutation({3, 1, 2}));
  CHECK_THROWS_AS(right_shift_component(0), std::invalid_argument);
}

TEST_CASE("named strategy builders") {
  const Strategy cs = cs_strategy(4);
  CHECK(cs.label == "cs:4");
  CHECK(cs.components == std::vector<Permutation>{Permutation({1}), Permutation({2, 1}),
                                                  Permutation({2, 3, 1}),
                                                  Permutation({2, 3, 4, 1})});

  const Strategy csl = csl_strategy(4);
  CHECK(csl.label == "csl:4");
  CHECK(csl.components == std::vector<Permutation>{Permutation({1}), Permutation({2, 1}),
                                                   Permutation({2, 3, 1}),
                                                   Permutation({4, 1, 2, 3})});

  const Strategy csr = csr_strategy(5);
  CHECK(csr.components ==
        std::vector<Permutation>{Permutation({1}), Permutation({2, 1}),
                                 Permutation({3, 1, 2}), Permutation({4, 1, 2, 3}),
                                 Permutation({2, 3, 4, 5, 1})});

  const Strategy inductive =
      inductive_strategy(Permutation({2, 4, 1, 3}), ShiftDirection::right);
  CHECK(inductive.label == "inductive:right:[2,4,1,3]");
  CHECK(inductive.components ==
        std::vector<Permutation>{Permutation({1}), Permutation({2, 1}),
                                 Permutation({2, 3, 1}), Permutation({2, 4, 1, 3})});

  CHECK(lcs_strategy(3).components ==
        std::vector<Permutation>{Permutation({1}), Permutation({2, 1}),
                                 Permutation({3, 1, 2})});

  for (int n = 1; n <= 6; ++n) {
    CHECK_FALSE(validate_strategy(cs_strategy(n)).has_value());
    CHECK_FALSE(validate_strategy(lcs_strategy(n)).has_value());
    if (n >= 2) {
      CHECK_FALSE(validate_strategy(csl_strategy(n)).has_value());
      CHECK_FALSE(validate_strategy(csr_strategy(n)).has_value());
    }
  }
  CHECK_THROWS_AS(csl_strategy(1), std::invalid_argument);
  CHECK_THROWS_AS(inductive_strategy(Permutation({1, 2, 3}), ShiftDirection::right),
                  std::invalid_argument);
}

TEST_CASE("pure shift recognition") {
  CHECK(is_pure_shift(cs_strategy(5), ShiftDirection::right));
  CHECK_FALSE(is_pure_shift(cs_strategy(5), ShiftDirection::left));
  CHECK(is_pure_shift(lcs_strategy(5), ShiftDirection::left));
  CHECK_FALSE(is_pure_shift(csl_strategy(5), ShiftDirection::right));
  CHECK_FALSE(is_pure_shift(csl_strategy(5), ShiftDirection::left));
  // Below length 3 both shifts coincide.
  CHECK(is_pure_shift(cs_strategy(2), ShiftDirection::left));
}

TEST_CASE("top component classification") {
  CHECK(classify_top(right_shift_component(5)) == CaseTag::no_offender);
  CHECK(classify_top(left_shift_component(5)) == CaseTag::sub_csl);
  CHECK(classify_top(Permutation({3, 4, 1, 2})) == CaseTag::all_two_special);
  CHECK(classify_top(Permutation({2, 1, 4, 3})) == CaseTag::involution_alternating);
  CHECK(classify_top(Permutation({4, 3, 2, 1})) == CaseTag::involution_alternating);
  CHECK(classify_top(Permutation({2, 1, 4, 3, 6, 5})) == CaseTag::involution_alternating);
  CHECK(classify_top(Permutation({2, 4, 1, 3})) == CaseTag::contains2);
  CHECK(classify_top(Permutation({3, 4, 6, 5, 1, 2})) == CaseTag::min_mu);
  CHECK(classify_top(Permutation({3, 4, 5, 1, 2})) == CaseTag::min_mu);
  CHECK_THROWS_AS(classify_top(Permutation({2, 3, 1})), std::invalid_argument);
  CHECK_THROWS_AS(classify_top(Permutation({1, 3, 2, 4})), std::invalid_argument);
}

TEST_CASE("classification is total and partitions the derangements") {
  for (int n = 4; n <= 8; ++n) {
    std::map<CaseTag, int> hits;
    for (const Permutation& top : all_derangements(n)) {
      const CaseTag tag = classify_top(top);
      ++hits[tag];
      CHECK((tag == CaseTag::no_offender) == (top == right_shift_component(n)));
      if (tag == CaseTag::min_mu) CHECK(n >= 5);
    }
    int total = 0;
    for (const auto& [tag, count] : hits) total += count;
    CHECK(total == static_cast<int>(subfactorial(n)));
    CHECK(hits[CaseTag::no_offender] == 1);
    CHECK(hits[CaseTag::sub_csl] == 1);
    CHECK(hits[CaseTag::contains2] >= 1);
    // An alternating displacement two-colours the index cycle, so the
    // involution case only exists at even lengths.
    CHECK((hits[CaseTag::involution_alternating] >= 1) == (n % 2 == 0));
    if (n == 4) CHECK(hits[CaseTag::all_two_special] == 1);
    if (n >= 5) CHECK(hits[CaseTag::min_mu] >= 1);
  }
}

TEST_CASE("contains-2 construction reproduces the worked example") {
  const ConstructedOffender built = construct_contains2(Permutation({2, 4, 1, 3}));
  CHECK(built.omega == Permutation({4, 1, 2, 3}));
  CHECK(built.construction.tag == CaseTag::contains2);
  CHECK(built.construction.k_set == std::vector<int>{1});
  CHECK(built.construction.locked_positions == std::vector<int>{2});
  REQUIRE(built.evidence.records.size() == 4);
  CHECK(built.evidence.records[1].guess == Permutation({3, 1, 4, 2}));
  CHECK(built.evidence.records[2].guess == Permutation({2, 1, 3, 4}));
  CHECK(built.evidence.records[3].guess == Permutation({4, 1, 2, 3}));
  CHECK(built.evidence.outcome == Outcome{OutcomeKind::solved, 4});
}

TEST_CASE("contains-2 construction with every displacement equal to 2") {
  // inverse(top) = [3,4,5,6,1,2], displacement all 2s.
  const Permutation top = inverse(Permutation({3, 4, 5, 6, 1, 2}));
  const ConstructedOffender built = construct_contains2(top);
  CHECK(built.omega == Permutation({5, 4, 1, 6, 3, 2}));
  CHECK(built.construction.k_set == std::vector<int>{1, 3, 5});
  CHECK(built.evidence.outcome == Outcome{OutcomeKind::solved, 4});
}

TEST_CASE("contains-2 construction end-of-cycle special case") {
  // inverse(top) = [3,1,4,5,2] has displacement [2,4,1,1,2]: a 2 at each end
  // of the cycle and none between, so only the last index is kept.
  const Permutation top({2, 5, 1, 3, 4});
  const ConstructedOffender built = construct_contains2(top);
  CHECK(built.construction.k_set == std::vector<int>{5});
  CHECK(built.construction.locked_positions == std::vector<int>{1});
  CHECK(built.omega == Permutation({3, 5, 2, 1, 4}));
  CHECK(built.evidence.outcome == Outcome{OutcomeKind::solved, 4});
}

TEST_CASE("contains-2 construction never locks both ends of the cycle") {
  // inverse(top) = [3,4,6,7,1,5,2] has displacement [2,2,3,3,3,6,2]. A scan
  // guarding only linear adjacency would keep indices 1 and 7, and locking
  // the wrapped pair of positions {1,2} freezes the entry whose shift was
  // supposed to cause the repetition: the game then solves cleanly. Index n
  // must lose to index 1, leaving the interior layout intact.
  const Permutation top({5, 7, 1, 2, 6, 3, 4});
  const ConstructedOffender built = construct_contains2(top);
  CHECK(built.construction.k_set == std::vector<int>{1});
  CHECK(built.construction.locked_positions == std::vector<int>{2});
  CHECK(built.omega == Permutation({5, 4, 2, 3, 6, 7, 1}));
  CHECK(built.evidence.outcome == Outcome{OutcomeKind::solved, 4});
  const OffenderVerdict verdict =
      is_offender(inductive_strategy(top, ShiftDirection::right), built.omega);
  CHECK(verdict.verdict == Verdict::repeating);
}

TEST_CASE("contains-2 construction rejects bad tops") {
  CHECK_THROWS_AS(construct_contains2(Permutation({3, 4, 1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(construct_contains2(Permutation({3, 4, 5, 1, 2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(construct_contains2(Permutation({2, 1, 3, 4})), std::invalid_argument);
}

TEST_CASE("min-mu construction reproduces the worked example") {
  const ConstructedOffender built = construct_min_mu(Permutation({3, 4, 6, 5, 1, 2}));
  CHECK(built.omega == Permutation({5, 6, 4, 3, 1, 2}));
  CHECK(built.construction.tag == CaseTag::min_mu);
  CHECK(built.construction.mu == 3);
  CHECK(built.construction.iota == 6);
  CHECK(built.construction.k_set == std::vector<int>{1, 2});
  REQUIRE(built.evidence.records.size() == 4);
  CHECK(built.evidence.records[2].guess == Permutation({5, 6, 3, 1, 2, 4}));
  CHECK(built.evidence.outcome == Outcome{OutcomeKind::solved, 4});
}

TEST_CASE("min-mu construction rejects bad tops") {
  CHECK_THROWS_AS(construct_min_mu(Permutation({2, 4, 1, 3})), std::invalid_argument);
  CHECK_THROWS_AS(construct_min_mu(Permutation({2, 1, 4, 3, 6, 5})),
                  std::invalid_argument);
  CHECK_THROWS_AS(construct_min_mu(Permutation({4, 3, 2, 1})), std::invalid_argument);
}

TEST_CASE("loop construction pairs equal-length cycles") {
  const ConstructedOffender ten =
      loop_offender(Permutation({2, 3, 1, 5, 4, 7, 6, 9, 10, 8}));
  CHECK(ten.omega == Permutation({8, 9, 10, 6, 7, 4, 5, 1, 2, 3}));
  CHECK(ten.construction.tag == CaseTag::cycle_pairing);
  CHECK(ten.evidence.outcome.kind == OutcomeKind::loop_detected);

  const ConstructedOffender four = loop_offender(Permutation({2, 1, 4, 3}));
  CHECK(four.omega == Permutation({3, 4, 1, 2}));
  CHECK(four.evidence.outcome.kind == OutcomeKind::loop_detected);

  CHECK_THROWS_AS(loop_offender(Permutation({2, 3, 1})), std::invalid_argument);
  CHECK_THROWS_AS(loop_offender(Permutation({2, 1, 4, 5, 3})), std::invalid_argument);
}

TEST_CASE("involution construction") {
  const ConstructedOffender four = construct_involution(Permutation({2, 1, 4, 3}));
  CHECK(four.omega == Permutation({3, 4, 1, 2}));
  CHECK(four.construction.tag == CaseTag::involution_alternating);
  CHECK(four.evidence.outcome.kind == OutcomeKind::loop_detected);

  const ConstructedOffender special = construct_involution(Permutation({3, 4, 1, 2}));
  CHECK(special.omega == Permutation({2, 1, 4, 3}));
  CHECK(special.construction.tag == CaseTag::all_two_special);
  CHECK(special.evidence.outcome.kind == OutcomeKind::loop_detected);

  const ConstructedOffender six = construct_involution(Permutation({2, 1, 4, 3, 6, 5}));
  CHECK(six.omega == Permutation({3, 4, 5, 6, 1, 2}));
  CHECK(six.evidence.outcome.kind == OutcomeKind::loop_detected);

  CHECK_THROWS_AS(construct_involution(Permutation({2, 4, 1, 3})), std::invalid_argument);
}

TEST_CASE("mixed shift offender formulas") {
  const ConstructedOffender csl5 = csl_offender(5);
  CHECK(csl5.omega == Permutation({2, 5, 1, 3, 4}));
  CHECK(csl5.construction.tag == CaseTag::sub_csl);
  REQUIRE(csl5.evidence.records.size() == 4);
  CHECK(csl5.evidence.records[2].guess == Permutation({2, 1, 3, 4, 5}));
  CHECK(csl5.evidence.outcome == Outcome{OutcomeKind::solved, 4});

  const ConstructedOffender csr5 = csr_offender(5);
  CHECK(csr5.omega == Permutation({5, 3, 4, 1, 2}));
  CHECK(csr5.construction.tag == CaseTag::sub_csr);
  REQUIRE(csr5.evidence.records.size() == 4);
  CHECK(csr5.evidence.records[2].guess == Permutation({5, 2, 3, 4, 1}));
  CHECK(csr5.evidence.outcome == Outcome{OutcomeKind::solved, 4});

  CHECK(csl_offender(4).omega == Permutation({2, 4, 1, 3}));
  CHECK(csr_offender(4).omega == Permutation({4, 3, 1, 2}));
  for (int n = 4; n <= 8; ++n) {
    CHECK(csl_offender(n).evidence.outcome == Outcome{OutcomeKind::solved, 4});
    CHECK(csr_offender(n).evidence.outcome == Outcome{OutcomeKind::solved, 4});
  }
  CHECK_THROWS_AS(csl_offender(3), std::invalid_argument);
  CHECK_THROWS_AS(csr_offender(3), std::invalid_argument);
}

TEST_CASE("general construction handles the dispatch examples") {
  const auto contains2 =
      construct_general(inductive_strategy(Permutation({2, 4, 1, 3}), ShiftDirection::right));
  REQUIRE(contains2.has_value());
  CHECK(contains2->omega == Permutation({4, 1, 2, 3}));

  // A length-6 strategy that stops matching the right shift at size 4.
  Strategy mixed{"mixed", {Permutation({1}), Permutation({2, 1}), Permutation({2, 3, 1}),
                           Permutation({2, 1, 4, 3}), Permutation({3, 4, 5, 2, 1}),
                           Permutation({2, 1, 4, 3, 6, 5})}};
  const auto looped = construct_general(mixed);
  REQUIRE(looped.has_value());
  CHECK(looped->omega == Permutation({3, 4, 1, 2, 5, 6}));
  CHECK(looped->evidence.outcome.kind == OutcomeKind::loop_detected);

  CHECK_FALSE(construct_general(cs_strategy(6)).has_value());
  CHECK_FALSE(construct_general(lcs_strategy(6)).has_value());
  CHECK_FALSE(construct_general(cs_strategy(2)).has_value());
  CHECK_FALSE(construct_general(cs_strategy(1)).has_value());
  CHECK_FALSE(construct_general(cs_strategy(3)).has_value());
  CHECK_FALSE(construct_general(lcs_strategy(3)).has_value());
}

TEST_CASE("general construction covers mixed-shift strategies") {
  const auto csl = construct_general(csl_strategy(5));
  REQUIRE(csl.has_value());
  CHECK(csl->omega == Permutation({2, 5, 1, 3, 4}));

  const auto csr = construct_general(csr_strategy(5));
  REQUIRE(csr.has_value());
  CHECK(csr->omega == Permutation({5, 3, 4, 1, 2}));
  CHECK(csr->construction.tag == CaseTag::sub_csr);
}

TEST_CASE("general construction mirrors left-base strategies") {
  const auto left =
      construct_general(inductive_strategy(Permutation({2, 4, 1, 3}), ShiftDirection::left));
  REQUIRE(left.has_value());
  CHECK(left->omega == Permutation({2, 3, 4, 1}));
  const OffenderVerdict verdict =
      is_offender(inductive_strategy(Permutation({2, 4, 1, 3}), ShiftDirection::left),
                  left->omega);
  CHECK(verdict.verdict == Verdict::repeating);
}

TEST_CASE("constructed prefixes are derangements and tails lock immediately") {
  Strategy mixed{"mixed", {Permutation({1}), Permutation({2, 1}), Permutation({2, 3, 1}),
                           Permutation({2, 4, 1, 3}), Permutation({3, 4, 5, 2, 1}),
                           Permutation({4, 3, 6, 5, 2, 1})}};
  const auto built = construct_general(mixed);
  REQUIRE(built.has_value());
  // kappa = 4: positions 5 and 6 are fixed points of the secret.
  CHECK(built->omega[5] == 5);
  CHECK(built->omega[6] == 6);
  for (int i = 1; i <= 4; ++i) CHECK(built->omega[i] != i);
  CHECK(built->evidence.records[0].correct_positions == std::vector<int>{5, 6});
  CHECK(verdict_of(built->evidence) == Verdict::repeating);
}

TEST_CASE("mirror conjugation is sound for every small top") {
  for (int n = 4; n <= 6; ++n) {
    for (const Permutation& top : all_derangements(n)) {
      if (top == left_shift_component(n)) continue;  // pure left shift below
      const ConstructedOffender sub = construct_right_base(mirror(top));
      const Permutation omega = mirror(sub.omega);
      const OffenderVerdict verdict =
          is_offender(inductive_strategy(top, ShiftDirection::left), omega);
      const bool offending =
          verdict.verdict == Verdict::repeating || verdict.verdict == Verdict::looping;
      REQUIRE(offending);
    }
  }
}

TEST_CASE("strategy file loading") {
  const std::string path = "golden_strategy.txt";
  {
    std::ofstream out(path);
    out << "# size-ordered components, one per line\n";
    out << "[1]\n";
    out << "[2,1]\n";
    out << "\n";
    out << "[2,3,1]  # right shift\n";
    out << "[2,1,4,3]\n";
    out << "[3,4,5,2,1]\n";
  }
  const Strategy loaded = load_strategy_file(path);
  CHECK(loaded.label == path);
  REQUIRE(loaded.length() == 5);
  CHECK(loaded.component(4) == Permutation({2, 1, 4, 3}));
  CHECK(loaded.component(5) == Permutation({3, 4, 5, 2, 1}));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_strategy_file("does_not_exist.txt"), std::invalid_argument);

  const std::string bad_path = "bad_strategy.txt";
  {
    std::ofstream out(bad_path);
    out << "[1]\n[2,1]\n[1,2,3]\n";
  }
  CHECK_THROWS_WITH(load_strategy_file(bad_path),
                    Catch::Matchers::ContainsSubstring("bad_strategy.txt"));
  std::remove(bad_path.c_str());
}

TEST_CASE("strategy spec grammar") {
  CHECK(parse_strategy_spec("cs:5").components == cs_strategy(5).components);
  CHECK(parse_strategy_spec("lcs:4").components == lcs_strategy(4).components);
  CHECK(parse_strategy_spec("csl:6").components == csl_strategy(6).components);
  CHECK(parse_strategy_spec("csr:4").components == csr_strategy(4).components);
  CHECK(parse_strategy_spec("inductive:right:[2,4,1,3]").components ==
        inductive_strategy(Permutation({2, 4, 1, 3}), ShiftDirection::right).components);
  CHECK(parse_strategy_spec("inductive:left:[2,1,4,3]").components ==
        inductive_strategy(Permutation({2, 1, 4, 3}), ShiftDirection::left).components);
  CHECK_THROWS_AS(parse_strategy_spec("cs:x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy_spec("cs:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy_spec("inductive:right:[1,2,3]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_strategy_spec("no_such_file.strategy"), std::invalid_argument);
}
