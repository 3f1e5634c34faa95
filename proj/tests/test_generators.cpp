#include "apl/generators.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace apl;

namespace {

// Crossing of y = k^2 + tau x and y = M (x - j), both straight.
Point straight_meet(const PolyArrangement& arr, int h, int v) {
  Rational tau = arr.left_slopes[h], b = arr.y[h][0] - tau * arr.columns[0];
  Rational m = arr.left_slopes[v], c = arr.y[v][0] - m * arr.columns[0];
  Rational x = (c - b) / (tau - m);
  return {x, tau * x + b};
}

std::vector<bool> bits_of(unsigned mask, std::size_t count) {
  std::vector<bool> b(count);
  for (std::size_t k = 0; k < count; ++k) b[k] = (mask >> k) & 1u;
  return b;
}

int blocks_of_length(const PermSequence& seq, int len) {
  int count = 0;
  for (std::size_t k = 0; k + 1 < seq.perms.size(); ++k)
    for (const auto& blk : transposition_decomposition(seq.perms[k], seq.perms[k + 1]).blocks)
      count += blk.length() == len;
  return count;
}

}  // namespace

TEST(Baselines, PencilOfThree) {
  auto arr = pencil(3);
  EXPECT_TRUE(validate_approaching(arr, true).ok());
  EXPECT_EQ(sweep_sequence(arr), make_sequence({{1, 2, 3}, {3, 2, 1}}));
}

TEST(Baselines, RandomLinesDeterministicAndApproaching) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto a = random_lines(6, seed);
    EXPECT_EQ(a, random_lines(6, seed));
    EXPECT_TRUE(is_strictly_approaching(a));
    EXPECT_TRUE(validate_allowable(sweep_sequence(a)).ok());
  }
  EXPECT_NE(random_lines(6, 1), random_lines(6, 2));
}

TEST(Baselines, RandomPolygonalApproaching) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto a = random_approaching(1 + seed % 8, 1 + seed % 5, seed);
    EXPECT_TRUE(is_strictly_approaching(a));
  }
}

TEST(Matousek, SingleDecisionFlipsPredicate) {
  auto below = matousek_family(2, {false});
  auto above = matousek_family(2, {true});
  // Pair (1,1): parabola 1 against horizontal 2 and vertical 1.
  Point c = straight_meet(below, 1, 4);
  EXPECT_LT(evaluate(below, 2, c.x), c.y);
  c = straight_meet(above, 1, 4);
  EXPECT_GT(evaluate(above, 2, c.x), c.y);
  EXPECT_EQ(below.size(), 6);
}

TEST(Matousek, ExhaustiveThreeDistinctProfiles) {
  const auto count = matousek_pairs(3).size();
  ASSERT_EQ(count, 3u);
  std::set<std::vector<bool>> profiles;
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    auto bits = bits_of(mask, count);
    auto arr = matousek_family(3, bits);
    EXPECT_TRUE(is_strictly_approaching(arr));
    std::vector<bool> profile;
    for (auto [i, j] : matousek_pairs(3)) {
      Point c = straight_meet(arr, i + j - 1, 6 + j - 1);
      profile.push_back(evaluate(arr, 3 + i - 1, c.x) > c.y);
    }
    EXPECT_EQ(profile, bits);
    profiles.insert(profile);
  }
  EXPECT_EQ(profiles.size(), 8u);
}

TEST(Matousek, DecodeRecoversRandomBits) {
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + t % 5;
    std::vector<bool> bits(matousek_pairs(n).size());
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = rng() & 1u;
    EXPECT_EQ(matousek_decode(matousek_family(n, bits), n), bits) << "n = " << n;
  }
}

TEST(Matousek, RejectsWrongDecisionCount) {
  EXPECT_THROW(matousek_family(3, {true}), Error);
}

TEST(Superfactorial, TwoChoicesForThree) {
  auto a = superfactorial_family(3, {{1, 2}, {1}});
  auto b = superfactorial_family(3, {{2, 1}, {1}});
  EXPECT_TRUE(is_strictly_approaching(a));
  EXPECT_NE(sweep_sequence(a), sweep_sequence(b));
  EXPECT_EQ(superfactorial_count(3), 2u);
}

TEST(Superfactorial, ExhaustiveFourMatchesProduct) {
  std::set<std::vector<Permutation>> seqs;
  auto all = superfactorial_choices(4);
  EXPECT_EQ(all.size(), 12u);
  for (const auto& choice : all) {
    auto arr = superfactorial_family(4, choice);
    ASSERT_TRUE(is_strictly_approaching(arr));
    auto seq = sweep_sequence(arr);
    ASSERT_TRUE(validate_allowable(seq).ok());
    seqs.insert(seq.perms);
  }
  EXPECT_EQ(seqs.size(), superfactorial_count(4));
}

TEST(Superfactorial, CrossingsNearColumnFollowChoice) {
  // For j = 1 with choice (2 3 1): alpha_2 < alpha_3 < alpha_1, so from left
  // to right parabola 1 meets horizontal 2 first, then 3, then 2.
  auto arr = superfactorial_family(4, {{2, 3, 1}, {1, 2}, {1}});
  std::vector<std::pair<Rational, int>> hits;
  for (int i = 1; i <= 3; ++i) hits.emplace_back(pair_crossing(arr, i, 4 + i - 1).x, i);
  std::sort(hits.begin(), hits.end());
  EXPECT_EQ(hits[0].second, 1);
  EXPECT_EQ(hits[1].second, 3);
  EXPECT_EQ(hits[2].second, 2);
  for (auto& h : hits) {
    EXPECT_GT(h.first, make_rational(3, 4));
    EXPECT_LT(h.first, Rational(1));
  }
}

TEST(Superfactorial, RejectsMalformedChoice) {
  EXPECT_THROW(superfactorial_family(3, {{1, 1}, {1}}), Error);
  EXPECT_THROW(superfactorial_family(3, {{1, 2}}), Error);
}

TEST(Asinowski, FourIsEmpty) {
  auto res = asinowski_search(4);
  EXPECT_TRUE(res.exhausted);
  EXPECT_GT(res.candidates, 0u);
  EXPECT_TRUE(res.witnesses.empty());
}

TEST(Asinowski, BudgetCapsWork) {
  auto res = asinowski_search(4, 10);
  EXPECT_EQ(res.examined, 10u);
  EXPECT_FALSE(res.exhausted);
}

TEST(Wedge, TwoLinesGiveSixLineSequence) {
  auto out = wedge_augment(make_sequence({{1, 2}, {1, 2}, {2, 1}}));
  EXPECT_EQ(out.n, 6);
  EXPECT_TRUE(validate_allowable(out).ok());
  EXPECT_TRUE(is_simple_sequence(out));
  EXPECT_EQ(wedge_snapshots(out), make_sequence({{1, 2}, {1, 2}, {2, 1}}));
}

TEST(Wedge, RealizableTripleStaysRealizable) {
  auto sub = make_sequence({{1, 2, 3}, {2, 1, 3}, {2, 3, 1}});
  ASSERT_TRUE(decide_realizable(sub).realizable);
  auto out = wedge_augment(sub);
  EXPECT_EQ(wedge_snapshots(out), sub);
  auto d = decide_allowable(out, EncodingMode::Reduced);
  EXPECT_TRUE(d.realizable);
  EXPECT_TRUE(decide_realizable(out, EncodingMode::Reduced).realizable);
}

TEST(NonPappus, SequenceShape) {
  auto seq = non_pappus();
  EXPECT_EQ(seq.n, 9);
  EXPECT_TRUE(validate_allowable(seq).ok());
  EXPECT_EQ(blocks_of_length(seq, 3), 8);
  EXPECT_EQ(blocks_of_length(seq, 4), 0);
  // The unsplit dual sweep has all nine Pappus lines as triple points.
  EXPECT_EQ(blocks_of_length(point_set_sequence(pappus_points()), 3), 9);
}

TEST(NonPappus, RealizableByApproachingLines) {
  auto d = decide_allowable(non_pappus(), EncodingMode::Reduced);
  ASSERT_TRUE(d.realizable);
  EXPECT_TRUE(validate_approaching(*d.arrangement, false).ok());
  EXPECT_EQ(sweep_sequence(*d.arrangement), non_pappus());
}

TEST(Wedge, NonRealizableTripleStaysNonRealizable) {
  // First witness of the exhaustive six-line search.
  auto sub = make_sequence({{1, 2, 3, 4, 5, 6}, {2, 3, 6, 1, 4, 5}, {3, 6, 5, 2, 1, 4}});
  auto base = decide_realizable(sub, EncodingMode::Reduced);
  ASSERT_FALSE(base.realizable);
  EXPECT_TRUE(lp::verify_certificate(base.encoding->system, *base.certificate));
  auto out = wedge_augment(sub);
  EXPECT_TRUE(is_simple_sequence(out));
  auto d = decide_realizable(out, EncodingMode::Reduced);
  EXPECT_FALSE(d.realizable);
  ASSERT_TRUE(d.certificate.has_value());
  EXPECT_TRUE(lp::verify_certificate(d.encoding->system, *d.certificate));
}
