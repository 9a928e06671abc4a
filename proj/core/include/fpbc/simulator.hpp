#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "fpbc/majorana.hpp"
#include "fpbc/rng.hpp"

namespace fpbc {

struct FermionicCircuit;  // circuit.hpp

// Exact state vector over K = num_modes/2 Jordan-Wigner qubits. Convention
// (fixed so tests are bit-exact): mode 2q -> Z^{<q} X_q, mode 2q+1 ->
// Z^{<q} Y_q, with qubit q stored in bit q of the amplitude index.
// Under it, s_j = i g_{2j-1} g_{2j} acts as -Z_{j-1}, so the +1 eigenstate
// of every s_j is the all-ones basis state.
struct StateVector {
  int num_modes = 0;
  std::vector<std::complex<double>> amps;

  static StateVector basis_state(int num_modes, uint64_t bits);
  int num_qubits() const { return num_modes / 2; }
  double norm() const;
};

// amps <- matrix(s) * amps. Strings act as phased bit permutations.
void apply_string(StateVector& state, const MajoranaString& s);

// amps <- exp(theta * s) * amps, via the cos/sin (or cosh/sinh) split
// according to s^2 = -1 or +1.
void apply_exponential(StateVector& state, const MajoranaString& s,
                       double theta);

// <state| s |state>; requires Hermitian s (real by construction).
double expectation(const StateVector& state, const MajoranaString& s);

// Probability that measuring m yields +1, i.e. (1 + <m>)/2.
double prob_plus(const StateVector& state, const MajoranaString& m);

// Projects onto the `outcome` eigenspace of m and renormalizes.
// Throws std::invalid_argument if that branch has ~zero probability.
void project_parity(StateVector& state, const MajoranaString& m, int outcome,
                    double min_probability = 1e-12);

// Samples an outcome with Born probability and collapses the state. A branch
// with probability within 1e-12 of 0 or 1 is taken deterministically without
// consuming randomness.
int measure_parity(StateVector& state, const MajoranaString& m, Rng& rng);

// The Jordan-Wigner string realizing the X_j flip operator of the dense
// magic-state encoding: the image of the qubit bit-flips on encoded
// positions j and t+1 (1-based j <= t). Anticommutes with s_j, commutes
// with every other s_k and with all X_k, and is parity-even and Hermitian.
MajoranaString magic_x_string(int j, int t);

// |psi^(t)> = T_{2,12} T_{2,34} ... T_{2,2t-1 2t} |psi^X> on 2t+2 modes,
// within the requested total-parity sector.
StateVector prepare_magic_register(int t, int parity_sector);

// Same construction embedded at mode_offset inside a larger register whose
// basis state already fixes the sector of the embedded modes.
void prepare_magic_register_in_place(StateVector& state, int mode_offset,
                                     int t);

// Exact output distribution of the gadget-free circuit: T2 gates applied as
// unitaries, braids as exp(quarter*pi/4*W(S)), final s_j^(c) read out
// directly. Keys are bitstrings b_1..b_n with '1' for outcome +1.
std::map<std::string, double> simulate_circuit_exact(
    const FermionicCircuit& circuit);

// Total variation distance between two distributions (missing keys = 0).
double total_variation(const std::map<std::string, double>& p,
                       const std::map<std::string, double>& q);

}  // namespace fpbc
