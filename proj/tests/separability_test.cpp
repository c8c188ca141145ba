#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "sepstab/separability.hpp"

using namespace sepstab;

namespace {

Word random_reduced(std::mt19937_64& rng, std::size_t rank, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(2 * rank - 1));
  Word w;
  while (w.size() < n) {
    Letter l = Letter::from_code(pick(rng));
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

// Distinct actions of moves on all reduced words up to length 2.
std::size_t distinct_actions(const std::vector<WhiteheadMove>& moves, std::size_t rank) {
  std::vector<Word> probes;
  for (std::uint32_t x = 0; x < 2 * rank; ++x) {
    probes.push_back({Letter::from_code(x)});
    for (std::uint32_t y = 0; y < 2 * rank; ++y) {
      if (y != (x ^ 1u)) probes.push_back({Letter::from_code(x), Letter::from_code(y)});
    }
  }
  std::set<std::vector<Word>> seen;
  for (const WhiteheadMove& m : moves) {
    std::vector<Word> images;
    for (const Word& p : probes) images.push_back(m.apply(p));
    seen.insert(images);
  }
  return seen.size();
}

}  // namespace

TEST(WhiteheadMoves, CountsForRankTwo) {
  auto all = whitehead_moves(2);
  std::size_t perms = 0, type2 = 0;
  for (const auto& m : all) (m.kind == WhiteheadMove::Kind::Permutation ? perms : type2)++;
  EXPECT_EQ(perms, 8u);   // 2! * 2^2 signed permutations
  EXPECT_EQ(type2, 16u);  // 2n choices of a, 2^(2n-2) subsets
  std::vector<WhiteheadMove> t2(all.begin() + 8, all.end());
  EXPECT_EQ(distinct_actions(t2, 2), 13u);  // 12 nontrivial actions and the identity
  EXPECT_TRUE(all.front().is_identity());
  EXPECT_THROW(whitehead_moves(1), Error);
}

TEST(WhiteheadMoves, InverseUndoesMove) {
  std::mt19937_64 rng(17);
  for (std::size_t rank : {2u, 3u}) {
    auto moves = whitehead_moves(rank);
    for (int i = 0; i < 100; ++i) {
      Word w = random_reduced(rng, rank, 1 + static_cast<std::size_t>(i % 12));
      for (const WhiteheadMove& m : moves) {
        EXPECT_EQ(inverse_move(m).apply(m.apply(w)), w);
      }
    }
  }
}

TEST(WhiteheadMoves, TypeTwoImages) {
  GroupSpec g = GroupSpec::free(2);
  std::vector<bool> z(4, false);
  z[Letter(0, false).code()] = true;  // a
  z[Letter(1, false).code()] = true;  // b
  WhiteheadMove m = type_two_move(2, Letter(0, false), z);
  EXPECT_EQ(g.spell(m.images[1]), "b a");
  z[Letter(1, true).code()] = true;  // B
  m = type_two_move(2, Letter(0, false), z);
  EXPECT_EQ(g.spell(m.images[1]), "A b a");
  EXPECT_EQ(g.spell(m.images[0]), "a");
}

TEST(PeakReduction, ReachesMinimalLength) {
  GroupSpec g = GroupSpec::free(2);
  PeakReduction p = peak_reduce(g.parse_word("a b a b b"), g);
  EXPECT_EQ(p.minimal.size(), 1u);  // a b a b b is primitive
  PeakReduction q = peak_reduce(g.parse_word("a b A B"), g);
  EXPECT_EQ(q.minimal.size(), 4u);
  EXPECT_TRUE(q.moves.empty());
}

TEST(Separability, FreeGroupExamples) {
  GroupSpec g = GroupSpec::free(2);
  auto status = [&](const char* w) { return is_separable(g.parse_word(w), g).status; };
  EXPECT_EQ(status("a"), Separability::Separable);
  EXPECT_EQ(status("a b"), Separability::Separable);
  EXPECT_EQ(status("a a a"), Separability::Separable);
  EXPECT_EQ(status("a b a b"), Separability::Separable);
  EXPECT_EQ(status("a b A B"), Separability::NotSeparable);
  EXPECT_EQ(status("a a b b"), Separability::NotSeparable);
  EXPECT_EQ(status("a a B B"), Separability::NotSeparable);
  EXPECT_THROW(is_separable(g.parse_word("a A"), g), Error);
}

TEST(Separability, WitnessMovesReproduceImage) {
  GroupSpec g = GroupSpec::free(3);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    Word w = random_reduced(rng, 3, 2 + static_cast<std::size_t>(i % 6));
    SeparabilityVerdict v;
    try {
      v = is_separable(w, g);
    } catch (const Error&) {
      continue;
    }
    if (v.status == Separability::Separable) {
      Word cur = v.form.letters();
      for (const auto& m : v.moves) cur = canonical_form(m.apply(cur), g).letters();
      EXPECT_EQ(cur, v.image);
      ASSERT_TRUE(v.omitted_factor);
      for (Letter l : v.image) EXPECT_NE(l.generator(), *v.omitted_factor);
    } else {
      EXPECT_EQ(v.status, Separability::NotSeparable);
      ASSERT_TRUE(v.certificate);
      EXPECT_TRUE(certifies_nonseparable(*v.certificate));
    }
  }
}

TEST(Separability, InvariantUnderConjugationAndAutomorphism) {
  GroupSpec g = GroupSpec::free(2);
  auto moves = whitehead_moves(2);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 80; ++i) {
    Word w = free_reduce(random_reduced(rng, 2, 2 + static_cast<std::size_t>(i % 6)));
    Word h = random_reduced(rng, 2, 3);
    Word conj = free_reduce(concat(concat(h, w), inverse(h)));
    const WhiteheadMove& m = moves[static_cast<std::size_t>(i) % moves.size()];
    Word image = m.apply(w);
    try {
      Separability s = is_separable(w, g).status;
      EXPECT_EQ(is_separable(conj, g).status, s);
      EXPECT_EQ(is_separable(image, g).status, s);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::TrivialElement);
    }
  }
}

TEST(Separability, MixedGroups) {
  GroupSpec g = GroupSpec::parse("S2*Z");
  auto verdict = [&](const char* w) { return is_separable(g.parse_word(w), g); };
  SeparabilityVerdict lone = verdict("a1 b1");
  EXPECT_EQ(lone.status, Separability::Separable);
  EXPECT_EQ(lone.omitted_factor, std::optional<std::size_t>(1));
  EXPECT_EQ(verdict("t1 t1").status, Separability::Separable);
  EXPECT_EQ(verdict("a1 t1 b1 T1").status, Separability::NotSeparable);
  EXPECT_EQ(verdict("a1 t1 a1 t1 a1 T1").status, Separability::NotSeparable);
  // One surface syllable: the ball graph has a cut pair, so no certificate.
  EXPECT_EQ(verdict("a1 t1").status, Separability::Unknown);
  EXPECT_THROW(peak_reduce(g.parse_word("a1"), g), Error);
}
