#pragma once

#include <string>
#include <vector>

#include "fpbc/majorana.hpp"
#include "fpbc/rng.hpp"

namespace fpbc {

// One factor of a braid word: the unitary exp(quarter_turns * pi/4 * W(S)).
// The stored generator is kept anti-Hermitian-normalized (S^2 = -1), so the
// factor is always unitary and the normalization is unambiguous.
struct BraidFactor {
  MajoranaString generator;
  int quarter_turns = 1;

  static BraidFactor make(const MajoranaString& s, int quarter_turns);
};

struct BraidWord {
  int num_modes = 0;
  std::vector<BraidFactor> factors;  // applied left to right in time
};

// Conjugated images U g_i U^dag of every generator; the tableau of a
// Clifford-like unitary, which pins it down up to global phase.
struct BraidTableau {
  int num_modes = 0;
  std::vector<MajoranaString> images;

  static BraidTableau identity(int num_modes);
  friend bool operator==(const BraidTableau& a, const BraidTableau& b) {
    return a.num_modes == b.num_modes && a.images == b.images;
  }
};

// Empty iff the tableau is a valid logical-braid image: every image
// Hermitian, odd, unit square; images pairwise anticommuting; and
// i^N img_1 ... img_2N equal to +Gamma_2N (parity preservation).
std::vector<std::string> tableau_diagnostics(const BraidTableau& tableau);

// Image of c under conjugation by the whole word, U c U^dag.
MajoranaString conjugate_by_word(const MajoranaString& c, const BraidWord& word);

BraidTableau tableau_of(const BraidWord& word, int num_modes);

// Factorization into elementary exponentials by peeling one generator at a
// time: when the image of the current highest generator lacks that
// generator, a single exp(pi/4 * Upsilon * g_k) fixes it; otherwise a
// deterministic lowest-index pre-rotation exp(-pi/4 g_k g_j) removes g_k
// first. Throws std::invalid_argument on an invalid tableau.
BraidWord synthesize(const BraidTableau& tableau);

// Rewrites every factor of weight >= 6 into weight-2/4 factors with the same
// tableau, by conjugating with weight-4 braids that lower the weight two at
// a time. Needs a spare mode outside the factor support.
BraidWord reduce_to_w4(const BraidWord& word, int max_factors = 100000);

// Greedy cancellation of adjacent inverse factors.
BraidWord simplify(const BraidWord& word);

BraidWord random_word(int num_modes, int factor_count, uint64_t seed);

// JSON: {"num_modes": int,
//        "factors": [{"string": "...", "angle_quarter_turns": +-1}]}
std::string serialize_word(const BraidWord& word);
BraidWord parse_word(const std::string& json_text);

}  // namespace fpbc
