#include "fpbc/braid.hpp"

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "matrix_oracle.hpp"

using namespace fpbc;
namespace oracle = fpbc::testing;

namespace {

MajoranaString herm(int nm, std::vector<int> modes_1based) {
  for (int& m : modes_1based) --m;
  return MajoranaString::hermitian(nm, modes_1based);
}

BraidWord word_of(int nm, std::vector<BraidFactor> fs) {
  return BraidWord{nm, std::move(fs)};
}

}  // namespace

TEST_SUITE("braid") {

TEST_CASE("tableau_of: empty word is the identity tableau") {
  CHECK(tableau_of(word_of(6, {}), 6) == BraidTableau::identity(6));
}

TEST_CASE("tableau_of: elementary W2 exchange") {
  // exp(pi/4 g1 g2): g1 -> -g2, g2 -> g1, others fixed.
  auto w = word_of(4, {BraidFactor::make(
      MajoranaString::from_modes(4, std::vector<int>{0, 1}, 0), 1)});
  auto tab = tableau_of(w, 4);
  CHECK(tab.images[0] == MajoranaString::from_modes(4, std::vector<int>{1}, 2));
  CHECK(tab.images[1] == MajoranaString::single(4, 0));
  CHECK(tab.images[2] == MajoranaString::single(4, 2));
  CHECK(tab.images[3] == MajoranaString::single(4, 3));
}

TEST_CASE("tableau_of: W4 turns g1 into a logical Majorana") {
  // exp(i pi/4 g1 g2 g3 g4) sends g1 to -i g2 g3 g4 (weight 3, Hermitian).
  auto w = word_of(4, {BraidFactor::make(herm(4, {1, 2, 3, 4}), 1)});
  auto tab = tableau_of(w, 4);
  const auto expected =
      MajoranaString::from_modes(4, std::vector<int>{1, 2, 3}, 3);
  CHECK(tab.images[0] == expected);
  CHECK(expected.is_hermitian());
  CHECK(expected.weight() == 3);
  // matrix cross-check
  const oracle::CMat u =
      oracle::factor_unitary(BraidFactor::make(herm(4, {1, 2, 3, 4}), 1));
  const oracle::CMat lhs =
      u * oracle::string_matrix(MajoranaString::single(4, 0)) * u.adjoint();
  CHECK(oracle::mat_equal(lhs, oracle::string_matrix(expected)));
}

TEST_CASE("tableau invariants hold for random words") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    BraidWord w = random_word(10, 6, seed);
    BraidTableau tab = tableau_of(w, 10);
    CHECK(tableau_diagnostics(tab).empty());
  }
}

TEST_CASE("tableau diagnostics catch broken tableaux") {
  BraidTableau tab = BraidTableau::identity(6);
  tab.images[0] = scale_phase(tab.images[0], 2);  // -g1: breaks the product
  CHECK_FALSE(tableau_diagnostics(tab).empty());

  BraidTableau even = BraidTableau::identity(6);
  even.images[1] = herm(6, {1, 2});  // parity-even image
  CHECK_FALSE(tableau_diagnostics(even).empty());
}

TEST_CASE("synthesize: identity tableau gives an identity word") {
  BraidWord w = synthesize(BraidTableau::identity(8));
  CHECK(tableau_of(w, 8) == BraidTableau::identity(8));
  CHECK(w.factors.empty());
}

TEST_CASE("synthesize: basic-operator case emits exp(pi/4 Y g_2N) last") {
  // A tableau whose g_2N image lacks g_2N: built from that single factor.
  const MajoranaString upsilon =
      MajoranaString::from_modes(8, std::vector<int>{0, 1, 2}, 3);  // -i g1g2g3
  const MajoranaString g8 = MajoranaString::single(8, 7);
  BraidWord gen = word_of(8, {BraidFactor::make(multiply(upsilon, g8), 1)});
  BraidTableau tab = tableau_of(gen, 8);
  REQUIRE(tab.images[7] == upsilon);

  BraidWord out = synthesize(tab);
  REQUIRE_FALSE(out.factors.empty());
  CHECK(out.factors.back().generator == multiply(upsilon, g8));
  CHECK(out.factors.back().quarter_turns == 1);
  CHECK(tableau_of(out, 8) == tab);
}

TEST_CASE("synthesize round-trips random words") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    const int nm = 4 + 2 * int(seed % 5);  // 4..12 modes
    BraidWord w = random_word(nm, 2 + int(seed % 5), 100 + seed);
    BraidTableau tab = tableau_of(w, nm);
    BraidWord synth = synthesize(tab);
    CHECK(tableau_of(synth, nm) == tab);
  }
}

TEST_CASE("synthesized words match the unitary up to global phase") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const int nm = 4 + 2 * int(seed % 3);  // 4..8 modes
    BraidWord w = random_word(nm, 4, 300 + seed);
    BraidWord synth = synthesize(tableau_of(w, nm));
    CHECK(oracle::phase_overlap(oracle::word_unitary(w, nm),
                                oracle::word_unitary(synth, nm)) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("synthesize is deterministic") {
  BraidWord w = random_word(10, 5, 77);
  BraidTableau tab = tableau_of(w, 10);
  BraidWord a = synthesize(tab);
  BraidWord b = synthesize(tab);
  REQUIRE(a.factors.size() == b.factors.size());
  for (size_t i = 0; i < a.factors.size(); ++i) {
    CHECK(a.factors[i].generator == b.factors[i].generator);
    CHECK(a.factors[i].quarter_turns == b.factors[i].quarter_turns);
  }
}

TEST_CASE("synthesize rejects invalid tableaux") {
  BraidTableau tab = BraidTableau::identity(6);
  tab.images[0] = scale_phase(tab.images[0], 2);
  CHECK_THROWS_AS(synthesize(tab), std::invalid_argument);
}

TEST_CASE("reduce_to_w4: words of W2/W4 factors pass through unchanged") {
  BraidWord w = word_of(8, {BraidFactor::make(herm(8, {1, 2}), 1),
                            BraidFactor::make(herm(8, {2, 3, 5, 8}), -1)});
  BraidWord out = reduce_to_w4(w);
  REQUIRE(out.factors.size() == 2);
  CHECK(out.factors[0].generator == antiherm_normalize(herm(8, {1, 2})));
  CHECK(out.factors[1].generator == antiherm_normalize(herm(8, {2, 3, 5, 8})));
}

TEST_CASE("reduce_to_w4: W6 on 8 modes becomes weight-<=4 factors") {
  // W6 = exp(pi/4 g1...g6); the bare weight-6 string is anti-Hermitian.
  const MajoranaString w6 =
      MajoranaString::from_modes(8, std::vector<int>{0, 1, 2, 3, 4, 5}, 0);
  REQUIRE(w6.square_phase() == 2);
  BraidWord w = word_of(8, {BraidFactor::make(w6, 1)});
  BraidWord out = reduce_to_w4(w);
  for (const auto& f : out.factors) CHECK(f.generator.weight() <= 4);
  CHECK(tableau_of(out, 8) == tableau_of(w, 8));
  CHECK(oracle::phase_overlap(oracle::word_unitary(w, 8),
                              oracle::word_unitary(out, 8)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("reduce_to_w4 handles larger weights in random words") {
  Rng rng(501);
  for (int trial = 0; trial < 10; ++trial) {
    const int nm = 12;
    BraidWord w;
    w.num_modes = nm;
    for (int k = 0; k < 4; ++k) {
      // Weight 2..10, leaving a spare mode for the reduction.
      const int wgt = 2 * (1 + int(rng.below(5)));
      std::vector<int> pool(static_cast<size_t>(nm));
      for (int m = 0; m < nm; ++m) pool[size_t(m)] = m;
      for (size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[rng.below(i)]);
      pool.resize(size_t(wgt));
      std::sort(pool.begin(), pool.end());
      w.factors.push_back(
          BraidFactor::make(MajoranaString::hermitian(nm, pool), rng.coin_pm1()));
    }
    BraidWord out = reduce_to_w4(w);
    for (const auto& f : out.factors) CHECK(f.generator.weight() <= 4);
    CHECK(tableau_of(out, 12) == tableau_of(w, 12));
    CHECK(int(out.factors.size()) < 100000);
  }
}

TEST_CASE("reduce_to_w4 needs a spare mode") {
  const MajoranaString w6 =
      MajoranaString::from_modes(6, std::vector<int>{0, 1, 2, 3, 4, 5}, 3);
  BraidWord w = word_of(6, {BraidFactor::make(w6, 1)});
  CHECK_THROWS_AS(reduce_to_w4(w), std::invalid_argument);
}

TEST_CASE("string-change identity via a weight-4 conjugating pair") {
  // exp(pi/4 ga Y) = U exp(pi/4 gb Y) U+ with
  // U = exp(pi/4 ga Y') exp(pi/4 Y' gb), Y' a 3-Majorana string with even
  // overlap with Y. Checked as tableau and matrix equality on 8 modes.
  const int nm = 8;
  const MajoranaString y = herm(nm, {4});  // Y = g4
  const MajoranaString yp =
      MajoranaString::from_modes(nm, std::vector<int>{4, 5, 6}, 3);  // -i g5g6g7
  const MajoranaString ga = MajoranaString::single(nm, 0);
  const MajoranaString gb = MajoranaString::single(nm, 1);

  BraidWord lhs = word_of(nm, {BraidFactor::make(multiply(ga, y), 1)});
  // Time order: U+ factors, the gb-exponential, then U's factors.
  BraidWord rhs = word_of(
      nm, {BraidFactor::make(multiply(ga, yp), -1),
           BraidFactor::make(multiply(yp, gb), -1),
           BraidFactor::make(multiply(gb, y), 1),
           BraidFactor::make(multiply(yp, gb), 1),
           BraidFactor::make(multiply(ga, yp), 1)});
  CHECK(tableau_of(lhs, nm) == tableau_of(rhs, nm));
  CHECK(oracle::mat_equal(oracle::word_unitary(lhs, nm),
                          oracle::word_unitary(rhs, nm)));
}

TEST_CASE("word JSON round-trip") {
  BraidWord w = random_word(10, 4, 900);
  BraidWord back = parse_word(serialize_word(w));
  REQUIRE(back.factors.size() == w.factors.size());
  CHECK(back.num_modes == w.num_modes);
  for (size_t i = 0; i < w.factors.size(); ++i) {
    CHECK(back.factors[i].generator == w.factors[i].generator);
    CHECK(back.factors[i].quarter_turns == w.factors[i].quarter_turns);
  }
  CHECK_THROWS_AS(parse_word("{\"factors\": []}"), std::invalid_argument);
}

TEST_CASE("simplify cancels adjacent inverses") {
  const MajoranaString s = herm(6, {1, 2});
  BraidWord w = word_of(6, {BraidFactor::make(s, 1), BraidFactor::make(s, -1),
                            BraidFactor::make(s, 1)});
  CHECK(simplify(w).factors.size() == 1);
}

}  // TEST_SUITE
