#include "fpbc/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "fpbc/circuit.hpp"

namespace fpbc {

namespace {

using cx = std::complex<double>;

constexpr cx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_state(const StateVector& state, const MajoranaString& s) {
  if (state.num_modes != s.num_modes)
    throw std::invalid_argument("state/string mode-count mismatch");
}

}  // namespace

StateVector StateVector::basis_state(int num_modes, uint64_t bits) {
  if (num_modes <= 0 || (num_modes & 1) != 0)
    throw std::invalid_argument("num_modes must be positive and even");
  StateVector st;
  st.num_modes = num_modes;
  st.amps.assign(size_t(1) << (num_modes / 2), cx(0, 0));
  st.amps[bits] = cx(1, 0);
  return st;
}

double StateVector::norm() const {
  double n2 = 0;
  for (const cx& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

void apply_string(StateVector& state, const MajoranaString& s) {
  check_state(state, s);
  const auto modes = s.support.set_bits();
  const size_t dim = state.amps.size();
  std::vector<cx> out(dim, cx(0, 0));
  for (size_t b = 0; b < dim; ++b) {
    const cx a = state.amps[b];
    if (a == cx(0, 0)) continue;
    uint64_t bits = b;
    cx phase = kIPow[s.phase_power];
    // Ascending product, so the highest-index generator hits the ket first.
    for (auto it = modes.rbegin(); it != modes.rend(); ++it) {
      const int mode = *it;
      const int q = mode / 2;
      const uint64_t below = bits & ((uint64_t(1) << q) - 1);
      if (__builtin_popcountll(below) & 1) phase = -phase;  // Z chain
      if (mode & 1) {  // Y_q
        phase *= (bits >> q) & 1 ? cx(0, -1) : cx(0, 1);
      }
      bits ^= uint64_t(1) << q;  // X_q or Y_q both flip
    }
    out[bits] += phase * a;
  }
  state.amps = std::move(out);
}

void apply_exponential(StateVector& state, const MajoranaString& s,
                       double theta) {
  check_state(state, s);
  StateVector ss = state;
  apply_string(ss, s);
  const int sq = s.square_phase();
  const double c = sq == 2 ? std::cos(theta) : std::cosh(theta);
  const double d = sq == 2 ? std::sin(theta) : std::sinh(theta);
  for (size_t i = 0; i < state.amps.size(); ++i)
    state.amps[i] = c * state.amps[i] + d * ss.amps[i];
}

double expectation(const StateVector& state, const MajoranaString& s) {
  check_state(state, s);
  if (!s.is_hermitian())
    throw std::invalid_argument("expectation of non-Hermitian string");
  StateVector sv = state;
  apply_string(sv, s);
  cx e(0, 0);
  for (size_t i = 0; i < state.amps.size(); ++i)
    e += std::conj(state.amps[i]) * sv.amps[i];
  if (std::abs(e.imag()) > 1e-9)
    throw std::logic_error("Hermitian expectation came out complex");
  return e.real();
}

double prob_plus(const StateVector& state, const MajoranaString& m) {
  return 0.5 * (1.0 + expectation(state, m));
}

void project_parity(StateVector& state, const MajoranaString& m, int outcome,
                    double min_probability) {
  check_state(state, m);
  if (!m.is_hermitian() || !m.is_even())
    throw std::invalid_argument("measurement requires a Hermitian even string");
  if (outcome != 1 && outcome != -1)
    throw std::invalid_argument("outcome must be +-1");
  StateVector mv = state;
  apply_string(mv, m);
  for (size_t i = 0; i < state.amps.size(); ++i)
    state.amps[i] = 0.5 * (state.amps[i] + double(outcome) * mv.amps[i]);
  const double nrm = state.norm();
  if (nrm * nrm < min_probability)
    throw std::invalid_argument("projection onto a ~zero-probability branch");
  for (cx& a : state.amps) a /= nrm;
}

int measure_parity(StateVector& state, const MajoranaString& m, Rng& rng) {
  const double p = prob_plus(state, m);
  int outcome;
  if (p >= 1.0 - 1e-12)
    outcome = 1;
  else if (p <= 1e-12)
    outcome = -1;
  else
    outcome = rng.uniform01() < p ? 1 : -1;
  project_parity(state, m, outcome);
  return outcome;
}

MajoranaString magic_x_string(int j, int t) {
  if (t < 1 || j < 1 || j > t)
    throw std::invalid_argument("magic_x_string needs 1 <= j <= t");
  const int nm = 2 * t + 2;
  // Qubit bit-flip on encoded position k is Z_{<k} * g_{2k-1}; with
  // Z_l = -i g_{2l-1} g_{2l}. Build the product of flips on positions
  // j and t+1 exactly.
  auto qubit_flip = [&](int k) {  // 1-based encoded position
    MajoranaString f = MajoranaString::identity(nm);
    for (int l = 1; l < k; ++l) {
      MajoranaString z = MajoranaString::hermitian(
          nm, std::vector<int>{2 * l - 2, 2 * l - 1});
      f = multiply(f, scale_phase(z, 2));  // -s_l = Z_l
    }
    return multiply(f, MajoranaString::single(nm, 2 * k - 2));
  };
  return multiply(qubit_flip(j), qubit_flip(t + 1));
}

void prepare_magic_register_in_place(StateVector& state, int mode_offset,
                                     int t) {
  // Expects `state` to already occupy the intended parity sector on the
  // embedded 2t+2 modes (a basis state with those s_j at +1 works).
  const int nm = state.num_modes;
  for (int j = 1; j <= t; ++j) {
    MajoranaString xj = embed(magic_x_string(j, t), nm, mode_offset);
    project_parity(state, xj, 1);
  }
  for (int j = 1; j <= t; ++j) {
    MajoranaString pair = MajoranaString::from_modes(
        nm, std::vector<int>{mode_offset + 2 * j - 2, mode_offset + 2 * j - 1},
        0);
    apply_exponential(state, pair, M_PI / 8);
  }
}

StateVector prepare_magic_register(int t, int parity_sector) {
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  if (parity_sector != 1 && parity_sector != -1)
    throw std::invalid_argument("parity_sector must be +-1");
  const int K = t + 1;
  uint64_t bits = (uint64_t(1) << K) - 1;       // all s_j = +1, parity +1
  if (parity_sector == -1) bits ^= uint64_t(1) << t;  // flip the spare pair
  StateVector st = StateVector::basis_state(2 * t + 2, bits);
  prepare_magic_register_in_place(st, 0, t);
  return st;
}

std::map<std::string, double> simulate_circuit_exact(
    const FermionicCircuit& circuit) {
  const int n = circuit.n;
  const int nm = circuit.rn_modes();
  const int K = n + 1;
  if (K > 26) throw std::invalid_argument("circuit too large for dense oracle");
  uint64_t bits = (uint64_t(1) << K) - 1;
  if (circuit.parity_sector == -1) bits ^= uint64_t(1) << n;
  StateVector st = StateVector::basis_state(nm, bits);

  for (const Gate& g : circuit.gates) {
    if (std::holds_alternative<BraidGate>(g)) {
      const auto& bg = std::get<BraidGate>(g);
      apply_exponential(st, antiherm_normalize(bg.generator),
                        bg.quarter_turns * M_PI / 4);
    } else {
      const auto& t2 = std::get<T2Gate>(g);
      MajoranaString prod =
          multiply(MajoranaString::single(nm, t2.a - 1),
                   MajoranaString::single(nm, t2.b - 1));
      apply_exponential(st, prod, M_PI / 8);
    }
  }

  // s_j^(c) is diagonal: outcome +1 iff qubit j-1 is set.
  std::map<std::string, double> dist;
  for (size_t b = 0; b < st.amps.size(); ++b) {
    const double p = std::norm(st.amps[b]);
    if (p == 0) continue;
    std::string key(size_t(n), '0');
    for (int j = 0; j < n; ++j)
      if ((b >> j) & 1) key[size_t(j)] = '1';
    dist[key] += p;
  }
  return dist;
}

double total_variation(const std::map<std::string, double>& p,
                       const std::map<std::string, double>& q) {
  double tv = 0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q)
    if (!p.count(k)) tv += std::abs(v);
  return 0.5 * tv;
}

}  // namespace fpbc
