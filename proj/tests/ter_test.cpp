#include <gtest/gtest.h>

#include "mteval/refmetrics.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace mteval {
namespace {

using testing::make_corpus;

TEST(EditDistance, Basics) {
  EXPECT_EQ(edit_distance(tokenize("a b c"), tokenize("a b c")), 0u);
  EXPECT_EQ(edit_distance(tokenize(""), tokenize("a b")), 2u);
  EXPECT_EQ(edit_distance(tokenize("a x c"), tokenize("a b c d")), 2u);
}

TEST(ApplyShift, MovesBlock) {
  EXPECT_EQ(apply_shift(tokenize("c d a b"), 0, 2, 2), tokenize("a b c d"));
  EXPECT_EQ(apply_shift(tokenize("a b c d"), 3, 1, 0), tokenize("d a b c"));
}

TEST(Ter, Identical) {
  EXPECT_DOUBLE_EQ(ter_score(make_corpus({{"a b c d e", {"a b c d e"}}})).corpus_score, 0.0);
}

TEST(Ter, OneSubstitution) {
  EXPECT_DOUBLE_EQ(ter_score(make_corpus({{"a b x d e", {"a b c d e"}}})).corpus_score, 0.2);
}

TEST(Ter, BlockShiftCountsOnce) {
  const auto s = ter_score(make_corpus({{"c d a b", {"a b c d"}}}));
  EXPECT_DOUBLE_EQ(s.corpus_score, 0.25);
  EXPECT_DOUBLE_EQ(s.details.at("shifts"), 1.0);
}

TEST(Ter, BestReferenceAndAverageLength) {
  // One edit against either reference; the normaliser is the mean of 3 and 5.
  const auto s = ter_score(make_corpus({{"a b c x", {"a b c", "a b c x y"}}}));
  EXPECT_DOUBLE_EQ(s.corpus_score, 1.0 / 4.0);
}

TEST(Ter, GreedyBetweenOptimalAndPlainEditDistance) {
  testing::SentenceGenerator gen(123, 4);
  for (int trial = 0; trial < 400; ++trial) {
    const auto hyp = gen.sentence(0, 6);
    const auto ref = gen.sentence(1, 6);
    const auto greedy = ter_edits(hyp, ref);
    const auto plain = oracle::levenshtein(hyp, ref);
    EXPECT_EQ(edit_distance(hyp, ref), plain);
    EXPECT_LE(greedy.edits, plain);
    EXPECT_GE(greedy.edits, oracle::optimal_shift_edits(hyp, ref));
    EXPECT_LE(greedy.shifts, greedy.edits);
  }
}

TEST(Ter, ShiftLimitsRespected) {
  TerLimits none;
  none.max_shift_size = 0;
  const auto a = ter_edits(tokenize("c d a b"), tokenize("a b c d"), none);
  EXPECT_EQ(a.shifts, 0u);
  EXPECT_EQ(a.edits, 4u);
}

}  // namespace
}  // namespace mteval
