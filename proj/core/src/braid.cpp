#include "fpbc/braid.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpbc {

using nlohmann::json;

BraidFactor BraidFactor::make(const MajoranaString& s, int quarter_turns) {
  if (quarter_turns != 1 && quarter_turns != -1)
    throw std::invalid_argument("braid factor angle must be +-1 quarter turns");
  if (s.weight() == 0)
    throw std::invalid_argument("braid factor generator is a scalar");
  return {antiherm_normalize(s), quarter_turns};
}

BraidTableau BraidTableau::identity(int num_modes) {
  BraidTableau t;
  t.num_modes = num_modes;
  for (int m = 0; m < num_modes; ++m)
    t.images.push_back(MajoranaString::single(num_modes, m));
  return t;
}

std::vector<std::string> tableau_diagnostics(const BraidTableau& tableau) {
  std::vector<std::string> out;
  const int nm = tableau.num_modes;
  if (nm <= 0 || (nm & 1) != 0) {
    out.push_back("num_modes must be positive and even");
    return out;
  }
  if (int(tableau.images.size()) != nm) {
    out.push_back("expected one image per generator");
    return out;
  }
  for (int i = 0; i < nm; ++i) {
    const auto& img = tableau.images[size_t(i)];
    if (img.num_modes != nm) {
      out.push_back("image " + std::to_string(i) + " lives on wrong register");
      return out;
    }
    if (!img.is_hermitian())
      out.push_back("image " + std::to_string(i) + " is not Hermitian");
    if (img.is_even())
      out.push_back("image " + std::to_string(i) + " is parity-even");
    for (int j = i + 1; j < nm; ++j)
      if (commutes(img, tableau.images[size_t(j)]))
        out.push_back("images " + std::to_string(i) + " and " +
                      std::to_string(j) + " commute");
  }
  if (out.empty()) {
    MajoranaString prod = MajoranaString::identity(nm);
    prod.phase_power = (nm / 2) % 4;
    for (const auto& img : tableau.images) prod = multiply(prod, img);
    if (!(prod == MajoranaString::total_parity(nm)))
      out.push_back("images do not compose to +Gamma (total parity not "
                    "preserved)");
  }
  return out;
}

MajoranaString conjugate_by_word(const MajoranaString& c, const BraidWord& word) {
  // U c U^dag with U = F_r ... F_1 (F_1 first in time): innermost factor is
  // F_1, so fold in time order with the U-side conjugation direction.
  MajoranaString r = c;
  for (const BraidFactor& f : word.factors)
    r = conjugate_by_braid(r, f.generator, -f.quarter_turns);
  return r;
}

BraidTableau tableau_of(const BraidWord& word, int num_modes) {
  if (word.num_modes != 0 && word.num_modes != num_modes)
    throw std::invalid_argument("braid word is on a different register");
  for (const auto& f : word.factors) {
    if (f.generator.num_modes != num_modes)
      throw std::invalid_argument("factor generator on wrong register");
    if (f.generator.square_phase() != 2)
      throw std::invalid_argument("factor generator violates unitary form");
  }
  BraidTableau t = BraidTableau::identity(num_modes);
  for (auto& img : t.images)
    for (const BraidFactor& f : word.factors)
      img = conjugate_by_braid(img, f.generator, -f.quarter_turns);
  return t;
}

namespace {

// Appends the factors of the basic operator W with W g_k W^dag = target,
// following the appendix recursion, and returns the updated residual images
// (conjugated by W^dag ... W).
void emit_basic_operator(int k, const MajoranaString& target, int num_modes,
                         std::vector<BraidFactor>& emitted) {
  const MajoranaString gk = MajoranaString::single(num_modes, k);
  if (target == gk) return;
  if (!target.support.test(k)) {
    // W = exp(pi/4 * target * g_k)
    emitted.push_back(BraidFactor::make(multiply(target, gk), 1));
    return;
  }
  // Pre-rotate with exp(-pi/4 g_k g_j) for the lowest j outside the support.
  int j = -1;
  for (int m = 0; m < num_modes; ++m)
    if (m != k && !target.support.test(m)) {
      j = m;
      break;
    }
  if (j < 0)
    throw std::invalid_argument(
        "synthesis stuck: image saturates the register");
  const MajoranaString gj = MajoranaString::single(num_modes, j);
  const MajoranaString pre = multiply(gk, gj);  // exp(+pi/4 g_k g_j) rotates
  // target' = P target P^dag with P = exp(pi/4 g_k g_j); P appears inverted
  // in the word, so the emitted factor is the -1 quarter turn.
  const MajoranaString rotated = conjugate_by_braid(target, pre, -1);
  if (rotated.support.test(k))
    throw std::logic_error("pre-rotation failed to clear the generator");
  emitted.push_back(BraidFactor::make(multiply(rotated, gk), 1));
  emitted.push_back(BraidFactor::make(pre, -1));
}

}  // namespace

BraidWord synthesize(const BraidTableau& tableau) {
  auto diags = tableau_diagnostics(tableau);
  if (!diags.empty()) {
    std::ostringstream oss;
    oss << "invalid tableau:";
    for (const auto& d : diags) oss << "\n  " << d;
    throw std::invalid_argument(oss.str());
  }
  const int nm = tableau.num_modes;
  std::vector<MajoranaString> images = tableau.images;
  // Emission happens highest generator first; in the word those factors act
  // last, so each stage's factors are prepended to the result.
  std::vector<std::vector<BraidFactor>> stages;
  for (int k = nm - 1; k >= 1; --k) {
    std::vector<BraidFactor> emitted;
    emit_basic_operator(k, images[size_t(k)], nm, emitted);
    // Residual U' = W^dag U: conjugate every image by W^dag (fold the
    // emitted factors, latest first, in the U^dag ... U direction).
    for (auto& img : images)
      for (auto it = emitted.rbegin(); it != emitted.rend(); ++it)
        img = conjugate_by_braid(img, it->generator, it->quarter_turns);
    if (!(images[size_t(k)] == MajoranaString::single(nm, k)))
      throw std::logic_error("synthesis failed to fix a generator");
    stages.push_back(std::move(emitted));
  }
  if (!(images[0] == MajoranaString::single(nm, 0)))
    throw std::logic_error("synthesis residue is not the identity");

  BraidWord word;
  word.num_modes = nm;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it)
    word.factors.insert(word.factors.end(), it->begin(), it->end());
  return simplify(word);
}

BraidWord reduce_to_w4(const BraidWord& word, int max_factors) {
  BraidWord out;
  out.num_modes = word.num_modes;
  for (const BraidFactor& f : word.factors) {
    if (!f.generator.is_even())
      throw std::invalid_argument("reduce_to_w4 requires even-weight factors");
    // Peel two modes at a time: G F' G^dag = F with G a weight-4 braid
    // overlapping the factor support in exactly three modes.
    std::vector<BraidFactor> pre, post;
    BraidFactor cur = f;
    while (cur.generator.weight() > 4) {
      const auto modes = cur.generator.support.set_bits();
      int fresh = -1;
      for (int m = 0; m < word.num_modes; ++m)
        if (!cur.generator.support.test(m)) {
          fresh = m;
          break;
        }
      if (fresh < 0)
        throw std::invalid_argument(
            "reduce_to_w4 needs a mode outside the factor support (register "
            "too small for weight-" +
            std::to_string(cur.generator.weight()) + " factor)");
      std::vector<int> tmodes{modes[0], modes[1], modes[2], fresh};
      std::sort(tmodes.begin(), tmodes.end());
      const MajoranaString t4 =
          antiherm_normalize(MajoranaString::hermitian(word.num_modes, tmodes));
      pre.push_back(BraidFactor::make(t4, -1));
      post.push_back(BraidFactor::make(t4, 1));
      // F' has generator G^dag W G, two modes lighter.
      cur = BraidFactor::make(conjugate_by_braid(cur.generator, t4, 1),
                              cur.quarter_turns);
    }
    out.factors.insert(out.factors.end(), pre.begin(), pre.end());
    out.factors.push_back(cur);
    out.factors.insert(out.factors.end(), post.rbegin(), post.rend());
    if (int(out.factors.size()) > max_factors)
      throw std::logic_error("reduce_to_w4 exceeded the factor ceiling");
  }
  return simplify(out);
}

BraidWord simplify(const BraidWord& word) {
  BraidWord out;
  out.num_modes = word.num_modes;
  for (const BraidFactor& f : word.factors) {
    if (!out.factors.empty() &&
        out.factors.back().generator == f.generator &&
        out.factors.back().quarter_turns == -f.quarter_turns)
      out.factors.pop_back();
    else
      out.factors.push_back(f);
  }
  return out;
}

BraidWord random_word(int num_modes, int factor_count, uint64_t seed) {
  Rng rng = Rng(seed).substream("random_word");
  BraidWord w;
  w.num_modes = num_modes;
  for (int i = 0; i < factor_count; ++i) {
    const int half = 1 + int(rng.below(uint64_t(num_modes / 2)));
    std::vector<int> pool(static_cast<size_t>(num_modes));
    for (int m = 0; m < num_modes; ++m) pool[size_t(m)] = m;
    for (size_t k = pool.size(); k > 1; --k)
      std::swap(pool[k - 1], pool[rng.below(k)]);
    pool.resize(size_t(2 * half));
    std::sort(pool.begin(), pool.end());
    w.factors.push_back(BraidFactor::make(
        MajoranaString::hermitian(num_modes, pool), rng.coin_pm1()));
  }
  return w;
}

std::string serialize_word(const BraidWord& word) {
  json j;
  j["num_modes"] = word.num_modes;
  j["factors"] = json::array();
  for (const auto& f : word.factors)
    j["factors"].push_back({{"string", to_text(f.generator)},
                            {"angle_quarter_turns", f.quarter_turns}});
  return j.dump(2);
}

BraidWord parse_word(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("braid word JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("num_modes") ||
      !j["num_modes"].is_number_integer())
    throw std::invalid_argument("braid word JSON needs integer /num_modes");
  BraidWord w;
  w.num_modes = j["num_modes"].get<int>();
  if (!j.contains("factors") || !j["factors"].is_array())
    throw std::invalid_argument("braid word JSON needs array /factors");
  for (size_t i = 0; i < j["factors"].size(); ++i) {
    const json& jf = j["factors"][i];
    const std::string path = "/factors/" + std::to_string(i);
    if (!jf.is_object() || !jf.contains("string") || !jf["string"].is_string() ||
        !jf.contains("angle_quarter_turns") ||
        !jf["angle_quarter_turns"].is_number_integer())
      throw std::invalid_argument("bad braid factor at " + path);
    w.factors.push_back(
        BraidFactor::make(parse_text(jf["string"].get<std::string>(), w.num_modes),
                          jf["angle_quarter_turns"].get<int>()));
  }
  return w;
}

}  // namespace fpbc
