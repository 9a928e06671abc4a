#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpbc/bitvec.hpp"

namespace fpbc {

// A phase-tracked product of Majorana operators,
//
//   i^phase_power * g_{a1} g_{a2} ... g_{aw}   (indices ascending),
//
// the unique canonical form of any word in the generators. Values are
// immutable in spirit: all operations return new strings.
struct MajoranaString {
  int num_modes = 0;     // total generator count, positive and even
  BitVec support;        // bit j set iff g_{j+1} appears (0-based modes)
  int phase_power = 0;   // exponent of i, mod 4

  static MajoranaString identity(int num_modes);
  static MajoranaString single(int num_modes, int mode);  // bare g_{mode+1}
  static MajoranaString from_modes(int num_modes, std::span<const int> modes,
                                   int phase_power);
  // Hermitian representative with phase_power in {0,1} for a given support.
  static MajoranaString hermitian(int num_modes, std::span<const int> modes);
  // i^{K} g_1 ... g_{2K}, the total parity of the register.
  static MajoranaString total_parity(int num_modes);

  int weight() const { return support.popcount(); }
  bool is_even() const { return (weight() & 1) == 0; }
  bool is_identity_support() const { return support.none(); }

  // A string is Hermitian iff phase_power == w(w-1)/2 (mod 2); it then
  // squares to +1. Otherwise it is anti-Hermitian and squares to -1.
  bool is_hermitian() const;

  // Phase power of s*s; always 0 or 2.
  int square_phase() const;

  friend bool operator==(const MajoranaString& a, const MajoranaString& b) {
    return a.num_modes == b.num_modes && a.phase_power == b.phase_power &&
           a.support == b.support;
  }
};

// Canonical-form product. Throws std::invalid_argument on mode mismatch.
MajoranaString multiply(const MajoranaString& a, const MajoranaString& b);

// Strings either commute or anticommute: true iff (-1)^{|a||b| - overlap} = +1.
bool commutes(const MajoranaString& a, const MajoranaString& b);

// The anti-Hermitian normalization W of s: W = i*s when s is Hermitian,
// W = s otherwise. Satisfies W^2 = -1, so exp(theta*W) is unitary.
MajoranaString antiherm_normalize(const MajoranaString& s);

// Image of c under conjugation U^dag c U with U = exp(quarter_turns*pi/4*W(s)).
// Commuting c is returned unchanged; anticommuting c maps to the single
// string quarter_turns * c * W(s).
MajoranaString conjugate_by_braid(const MajoranaString& c,
                                  const MajoranaString& s,
                                  int quarter_turns = 1);

// Same-support copy with phase shifted by i^k.
MajoranaString scale_phase(MajoranaString s, int k);

// Re-homes a string into a larger register, shifting all modes by offset.
MajoranaString embed(const MajoranaString& s, int new_num_modes, int offset);

// Text form "i^p g1 g3"; identity renders as "i^0". Round-trip exact.
std::string to_text(const MajoranaString& s);
MajoranaString parse_text(const std::string& text, int num_modes);

// candidate == sign * product of history[members] (ascending member order,
// all strings mutually commuting so the order is immaterial).
struct SignedRelation {
  std::vector<int> members;
  int sign = 1;
};

// Incremental GF(2) dependency solver over mutually commuting Hermitian
// strings, with exact sign resolution via canonical multiplication.
class DependencyBasis {
 public:
  explicit DependencyBasis(int num_modes) : num_modes_(num_modes) {}

  int size() const { return int(history_.size()); }
  const MajoranaString& at(int i) const { return history_[size_t(i)]; }

  // Appends a string to the history (no commutation checks here).
  void add(const MajoranaString& s);

  // Returns the relation expressing candidate over the history, if any.
  std::optional<SignedRelation> solve(const MajoranaString& candidate) const;

 private:
  int num_modes_;
  int mask_width_ = 64;
  std::vector<MajoranaString> history_;
  // Row-reduced supports with the history-index combination that built them.
  std::vector<std::pair<BitVec, BitVec>> rows_;
};

// One-shot wrapper over DependencyBasis. Validates that all inputs are
// parity-even and mutually commuting (throws std::invalid_argument).
std::optional<SignedRelation> find_dependency(
    std::span<const MajoranaString> history, const MajoranaString& candidate);

}  // namespace fpbc
