#pragma once

#include <cstdint>
#include <vector>

namespace fpbc {

// Fixed-length bit set backed by 64-bit words. Sized at construction;
// all binary operations require equal sizes.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  int size() const { return nbits_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set(int i, bool value = true) {
    const uint64_t mask = uint64_t(1) << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(int i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    for (size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  int popcount() const {
    int c = 0;
    for (uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }

  int and_popcount(const BitVec& o) const {
    int c = 0;
    for (size_t k = 0; k < words_.size(); ++k)
      c += __builtin_popcountll(words_[k] & o.words_[k]);
    return c;
  }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  // Number of set bits with index strictly greater than i.
  int count_above(int i) const {
    const int wi = i >> 6;
    const int bi = i & 63;
    const uint64_t above = bi == 63 ? 0 : words_[wi] & (~uint64_t(0) << (bi + 1));
    int c = __builtin_popcountll(above);
    for (size_t k = wi + 1; k < words_.size(); ++k)
      c += __builtin_popcountll(words_[k]);
    return c;
  }

  int lowest_set() const {  // -1 when empty
    for (size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return int(k * 64 + __builtin_ctzll(words_[k]));
    return -1;
  }

  int highest_set() const {  // -1 when empty
    for (size_t k = words_.size(); k-- > 0;)
      if (words_[k]) return int(k * 64 + 63 - __builtin_clzll(words_[k]));
    return -1;
  }

  std::vector<int> set_bits() const {
    std::vector<int> out;
    out.reserve(popcount());
    for (size_t k = 0; k < words_.size(); ++k) {
      uint64_t w = words_[k];
      while (w) {
        out.push_back(int(k * 64 + __builtin_ctzll(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }

  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.nbits_ != b.nbits_) return a.nbits_ < b.nbits_;
    return a.words_ < b.words_;
  }

 private:
  int nbits_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace fpbc
