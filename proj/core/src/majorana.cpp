#include "fpbc/majorana.hpp"

#include <sstream>
#include <stdexcept>

namespace fpbc {

namespace {

void check_num_modes(int num_modes) {
  if (num_modes <= 0 || (num_modes & 1) != 0)
    throw std::invalid_argument("num_modes must be positive and even, got " +
                                std::to_string(num_modes));
}

void check_same_register(const MajoranaString& a, const MajoranaString& b) {
  if (a.num_modes != b.num_modes)
    throw std::invalid_argument("mode-count mismatch: " +
                                std::to_string(a.num_modes) + " vs " +
                                std::to_string(b.num_modes));
}

}  // namespace

MajoranaString MajoranaString::identity(int num_modes) {
  check_num_modes(num_modes);
  return {num_modes, BitVec(num_modes), 0};
}

MajoranaString MajoranaString::single(int num_modes, int mode) {
  check_num_modes(num_modes);
  if (mode < 0 || mode >= num_modes)
    throw std::invalid_argument("mode index out of range");
  MajoranaString s{num_modes, BitVec(num_modes), 0};
  s.support.set(mode);
  return s;
}

MajoranaString MajoranaString::from_modes(int num_modes,
                                          std::span<const int> modes,
                                          int phase_power) {
  check_num_modes(num_modes);
  MajoranaString s{num_modes, BitVec(num_modes), ((phase_power % 4) + 4) % 4};
  for (int m : modes) {
    if (m < 0 || m >= num_modes)
      throw std::invalid_argument("mode index out of range");
    if (s.support.test(m)) throw std::invalid_argument("repeated mode index");
    s.support.set(m);
  }
  return s;
}

MajoranaString MajoranaString::hermitian(int num_modes,
                                         std::span<const int> modes) {
  MajoranaString s = from_modes(num_modes, modes, 0);
  const int w = s.weight();
  s.phase_power = (w * (w - 1) / 2) % 2;
  return s;
}

MajoranaString MajoranaString::total_parity(int num_modes) {
  check_num_modes(num_modes);
  MajoranaString s{num_modes, BitVec(num_modes), (num_modes / 2) % 4};
  for (int m = 0; m < num_modes; ++m) s.support.set(m);
  return s;
}

bool MajoranaString::is_hermitian() const {
  const int w = weight();
  return ((phase_power - w * (w - 1) / 2) % 2 + 2) % 2 == 0;
}

int MajoranaString::square_phase() const {
  const int w = weight();
  return (2 * phase_power + w * (w - 1)) % 4;
}

MajoranaString multiply(const MajoranaString& a, const MajoranaString& b) {
  check_same_register(a, b);
  // Reordering g_A g_B into ascending order: each generator of b passes every
  // generator of a with a larger index; coincident pairs square to +1 after
  // the same number of transpositions, so the parity below covers both.
  int swaps = 0;
  for (int j : b.support.set_bits()) swaps += a.support.count_above(j);
  MajoranaString r{a.num_modes, a.support ^ b.support,
                   (a.phase_power + b.phase_power + 2 * (swaps & 1)) % 4};
  return r;
}

bool commutes(const MajoranaString& a, const MajoranaString& b) {
  check_same_register(a, b);
  const int e = a.weight() * b.weight() - a.support.and_popcount(b.support);
  return (e & 1) == 0;
}

MajoranaString antiherm_normalize(const MajoranaString& s) {
  return s.square_phase() == 0 ? scale_phase(s, 1) : s;
}

MajoranaString conjugate_by_braid(const MajoranaString& c,
                                  const MajoranaString& s, int quarter_turns) {
  check_same_register(c, s);
  if (quarter_turns != 1 && quarter_turns != -1)
    throw std::invalid_argument("quarter_turns must be +1 or -1");
  if (commutes(c, s)) return c;
  MajoranaString r = multiply(c, antiherm_normalize(s));
  if (quarter_turns == -1) r.phase_power = (r.phase_power + 2) % 4;
  return r;
}

MajoranaString scale_phase(MajoranaString s, int k) {
  s.phase_power = ((s.phase_power + k) % 4 + 4) % 4;
  return s;
}

MajoranaString embed(const MajoranaString& s, int new_num_modes, int offset) {
  check_num_modes(new_num_modes);
  if (offset < 0 || (s.support.any() &&
                     s.support.highest_set() + offset >= new_num_modes))
    throw std::invalid_argument("embed target too small");
  MajoranaString r{new_num_modes, BitVec(new_num_modes), s.phase_power};
  for (int m : s.support.set_bits()) r.support.set(m + offset);
  return r;
}

std::string to_text(const MajoranaString& s) {
  std::ostringstream oss;
  oss << "i^" << s.phase_power;
  for (int m : s.support.set_bits()) oss << " g" << (m + 1);
  return oss.str();
}

MajoranaString parse_text(const std::string& text, int num_modes) {
  check_num_modes(num_modes);
  MajoranaString s{num_modes, BitVec(num_modes), 0};
  std::istringstream iss(text);
  std::string tok;
  bool first = true;
  while (iss >> tok) {
    if (first && tok.rfind("i^", 0) == 0) {
      first = false;
      size_t pos = 0;
      int p = std::stoi(tok.substr(2), &pos);
      if (pos != tok.size() - 2)
        throw std::invalid_argument("bad phase token '" + tok + "'");
      s.phase_power = ((p % 4) + 4) % 4;
      continue;
    }
    first = false;
    if (tok.size() < 2 || tok[0] != 'g')
      throw std::invalid_argument("bad generator token '" + tok + "'");
    size_t pos = 0;
    int idx = std::stoi(tok.substr(1), &pos);
    if (pos != tok.size() - 1)
      throw std::invalid_argument("bad generator token '" + tok + "'");
    if (idx < 1 || idx > num_modes)
      throw std::invalid_argument("generator g" + std::to_string(idx) +
                                  " out of range for " +
                                  std::to_string(num_modes) + " modes");
    if (s.support.test(idx - 1))
      throw std::invalid_argument("repeated generator g" + std::to_string(idx));
    s.support.set(idx - 1);
  }
  return s;
}

void DependencyBasis::add(const MajoranaString& s) {
  if (s.num_modes != num_modes_)
    throw std::invalid_argument("mode-count mismatch in dependency basis");
  const int idx = int(history_.size());
  history_.push_back(s);

  // All combination masks share one width, doubled when history outgrows it.
  if (idx >= mask_width_) {
    int nw = mask_width_;
    while (nw <= idx) nw *= 2;
    for (auto& [rv, rm] : rows_) {
      BitVec wider(nw);
      for (int b : rm.set_bits()) wider.set(b);
      rm = wider;
    }
    mask_width_ = nw;
  }

  BitVec v = s.support;
  BitVec mask(mask_width_);
  mask.set(idx);
  for (const auto& [rv, rm] : rows_) {
    const int pivot = rv.lowest_set();
    if (pivot >= 0 && v.test(pivot)) {
      v ^= rv;
      mask ^= rm;
    }
  }
  if (v.any()) rows_.emplace_back(v, mask);
}

std::optional<SignedRelation> DependencyBasis::solve(
    const MajoranaString& candidate) const {
  if (candidate.num_modes != num_modes_)
    throw std::invalid_argument("mode-count mismatch in dependency basis");
  BitVec v = candidate.support;
  BitVec mask(mask_width_);
  for (const auto& [rv, rm] : rows_) {
    const int pivot = rv.lowest_set();
    if (pivot >= 0 && v.test(pivot)) {
      v ^= rv;
      mask ^= rm;
    }
  }
  if (v.any()) return std::nullopt;

  SignedRelation rel;
  rel.members = mask.set_bits();
  MajoranaString prod = MajoranaString::identity(num_modes_);
  for (int i : rel.members) prod = multiply(prod, history_[size_t(i)]);
  if (!(prod.support == candidate.support))
    throw std::logic_error("dependency solver produced wrong support");
  const int d = ((candidate.phase_power - prod.phase_power) % 4 + 4) % 4;
  if (d != 0 && d != 2)
    throw std::logic_error("dependency sign is not +-1; non-Hermitian input?");
  rel.sign = d == 0 ? 1 : -1;
  return rel;
}

std::optional<SignedRelation> find_dependency(
    std::span<const MajoranaString> history, const MajoranaString& candidate) {
  for (size_t i = 0; i < history.size(); ++i) {
    if (!history[i].is_even() || !candidate.is_even())
      throw std::invalid_argument("find_dependency requires parity-even strings");
    if (!commutes(history[i], candidate))
      throw std::invalid_argument("candidate does not commute with history[" +
                                  std::to_string(i) + "]");
    for (size_t j = i + 1; j < history.size(); ++j)
      if (!commutes(history[i], history[j]))
        throw std::invalid_argument("history strings " + std::to_string(i) +
                                    " and " + std::to_string(j) +
                                    " do not commute");
  }
  DependencyBasis basis(candidate.num_modes);
  for (const auto& h : history) basis.add(h);
  return basis.solve(candidate);
}

}  // namespace fpbc
