#include <gtest/gtest.h>

#include "modblob/rewriting.hpp"
#include "support.hpp"

using namespace modblob;
using namespace modblob::testing;

TEST(Kidney, Words) {
  EXPECT_EQ(word_string(kidney_word(1)), "[B0+ B2+ D1 D0]");
  EXPECT_TRUE(kidney_word(0).events.empty());
  EXPECT_TRUE(negate(kidney_word(1)).same_word(kidney_word(-1)));
  EXPECT_TRUE(kidney_word(2).same_word(compose_uplus(kidney_word(1), kidney_word(1))));
  EXPECT_TRUE(kidney(-3).embedded());
  EXPECT_EQ(kidney(3).doodle.events.size(), 12u);
}

TEST(Moves, EnumerationIsDeterministicAndApplicable) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 150; ++i) {
    const BlobDiagram b = random_blob(rng, false, 6);
    MoveFilter f;
    f.max_events = b.doodle.events.size() + 4;
    const auto moves = enumerate_moves(b.doodle, f);
    EXPECT_EQ(moves, enumerate_moves(b.doodle, f));
    for (const auto& m : moves) {
      const StrandDiagram w = apply_move(b.doodle, m, f);
      EXPECT_TRUE(validate(w).ok()) << word_string(b.doodle) << " " << describe(m);
      const Move inv = inverse_move(b.doodle, m);
      EXPECT_TRUE(apply_move(w, inv, MoveFilter{}).same_word(b.doodle)) << word_string(b.doodle) << " " << describe(m);
    }
  }
}

TEST(Moves, EmbeddedFilterStaysEmbedded) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const BlobDiagram b = random_blob(rng, true, 6);
    MoveFilter f = MoveFilter::embedded();
    f.max_events = b.doodle.events.size() + 4;
    for (const auto& m : enumerate_moves(b.doodle, f)) {
      EXPECT_NE(m.kind, MoveKind::M6_CrossPair);
      EXPECT_TRUE(apply_move(b, m, f).embedded()) << word_string(b.doodle) << " " << describe(m);
    }
  }
}

TEST(Moves, DiskInsertionOnEmpty) {
  Move m;
  m.kind = MoveKind::M2_DiskPair;
  m.orient_bit = true;
  const StrandDiagram w = apply_move(StrandDiagram{}, m);
  EXPECT_EQ(word_string(w), "[B0+ D0]");
  Move del = inverse_move(StrandDiagram{}, m);
  EXPECT_EQ(del.direction, MoveDirection::Inverse);
  EXPECT_TRUE(apply_move(w, del).events.empty());
}

TEST(Moves, KidneyPairInsertionKeepsJ) {
  Move m;
  m.kind = MoveKind::M5_KidneyPair;
  m.orient_bit = true;
  const StrandDiagram w = apply_move(StrandDiagram{}, m);
  EXPECT_EQ(w.events.size(), 8u);
  EXPECT_EQ(oracle_J(w), 0);
  EXPECT_EQ(oracle_concave(w), 2);
}

TEST(Moves, IllegalMovesThrow) {
  Move m;
  m.kind = MoveKind::M2_DiskPair;
  m.direction = MoveDirection::Inverse;
  try {
    apply_move(kidney_word(1), m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalMove);
  }
  Move slide;
  slide.position = 7;
  EXPECT_THROW(apply_move(kidney_word(1), slide), Error);
}

TEST(Moves, ThetaIsDropped) {
  StrandDiagram d = parse_word({"B0+", "D0"});
  d.events[0].theta = ratio(1, 3);
  d.events[1].theta = ratio(2, 3);
  const auto moves = enumerate_moves(d);
  ASSERT_FALSE(moves.empty());
  for (const auto& e : apply_move(d, moves.front()).events) EXPECT_FALSE(e.theta.has_value());
}

TEST(Scramble, DeterministicAndInvariant) {
  for (int n = -2; n <= 2; ++n) {
    const StrandDiagram a = scramble(kidney_word(n), 9, 40), b = scramble(kidney_word(n), 9, 40);
    EXPECT_EQ(a, b);
    EXPECT_EQ(oracle_J(a), n);
    EXPECT_TRUE(make_blob(a).embedded());
  }
  EXPECT_FALSE(scramble(kidney_word(1), 1, 40) == scramble(kidney_word(1), 2, 40));
}

TEST(Trace, ReplayChecksEveryMove) {
  const NormalizeResult r = normalize_embedded(make_blob(scramble(kidney_word(2), 3, 30)));
  EXPECT_TRUE(replay_trace(r.trace, MoveFilter::embedded()).same_word(kidney_word(2)));
  MoveTrace broken = r.trace;
  ASSERT_FALSE(broken.moves.empty());
  broken.moves.front().position += 100;
  EXPECT_THROW(replay_trace(broken, MoveFilter::embedded()), Error);
}

TEST(Normalize, ScrambledStacks) {
  for (int n = -3; n <= 3; ++n)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const StrandDiagram s = scramble(kidney_word(n), seed, 50);
      const NormalizeResult r = normalize_embedded(make_blob(s));
      EXPECT_TRUE(r.canonical.doodle.same_word(kidney_word(n))) << n << " " << seed;
      EXPECT_EQ(oracle_J(r.canonical.doodle), oracle_J(s));
    }
}

TEST(Normalize, KidneyPairCancels) {
  EXPECT_TRUE(normalize_embedded(compose_uplus(kidney(1), kidney(-1))).canonical.doodle.events.empty());
  EXPECT_TRUE(normalize_embedded(compose_uplus(kidney(-2), kidney(1))).canonical.doodle.same_word(kidney_word(-1)));
}

TEST(Normalize, RejectsImmersedBlobs) {
  try {
    normalize_embedded(make_blob(fixture("alpha1").word));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEmbedded);
  }
}

TEST(Equivalence, EmptyAndDisk) {
  const auto r = bounded_equivalence(StrandDiagram{}, parse_word({"B0+", "D0"}), {1});
  const auto* t = std::get_if<MoveTrace>(&r);
  ASSERT_NE(t, nullptr);
  ASSERT_EQ(t->moves.size(), 1u);
  EXPECT_EQ(t->moves[0].kind, MoveKind::M2_DiskPair);
}

TEST(Equivalence, FindsScrambles) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const StrandDiagram x = kidney_word(1);
    const StrandDiagram y = scramble(x, seed, 3);
    EquivalenceOptions o;
    o.depth = 3;
    const auto r = bounded_equivalence(x, y, o);
    const auto* t = std::get_if<MoveTrace>(&r);
    ASSERT_NE(t, nullptr) << seed;
    EXPECT_LE(t->moves.size(), 3u);
    EXPECT_TRUE(replay_trace(*t).same_word(y));
  }
}

TEST(Equivalence, JSeparates) {
  const auto r = bounded_equivalence(kidney_word(1), kidney_word(-1), {8});
  ASSERT_TRUE(std::holds_alternative<NotEquivalent>(r));
}

TEST(Equivalence, NestedNegativeKidney) {
  // inner birth below the outer arc, both deaths at the bottom
  const StrandDiagram w = parse_word({"B0+", "B1-", "D0", "D0"});
  EXPECT_EQ(invariant_J(make_blob(w)), -1);
  const auto r = bounded_equivalence(w, kidney_word(-1), {4});
  ASSERT_TRUE(std::holds_alternative<MoveTrace>(r));
  EXPECT_TRUE(replay_trace(std::get<MoveTrace>(r)).same_word(kidney_word(-1)));
}

TEST(Equivalence, DepthCap) {
  EquivalenceOptions o;
  o.depth = 40;
  try {
    bounded_equivalence(kidney_word(1), kidney_word(1), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DepthExceeded);
  }
}
