#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fpbc/majorana.hpp"
#include "fpbc/rng.hpp"

namespace fpbc {

// Gates of the universal set. Braid generators live on the 2n+2 modes of
// R_n; T2 gates exp(pi/8 g_a g_b) name two distinct R_n Majoranas (1-based).
struct BraidGate {
  MajoranaString generator;
  int quarter_turns = 1;  // exp(quarter_turns * pi/4 * W(generator))
};

struct T2Gate {
  int a = 0;  // 1-based Majorana indices into R_n
  int b = 0;
};

using Gate = std::variant<BraidGate, T2Gate>;

// A fermionic circuit on register R_n (2n+2 Majoranas) drawing t magic
// states from R_t (2t+2 Majoranas). The final measurement of all s_j^(c)
// is implicit. The initial state is the +1 eigenstate of every s_j^(c)
// within the given total-parity sector.
struct FermionicCircuit {
  int n = 0;
  int t = 0;
  int parity_sector = 1;
  std::vector<Gate> gates;

  int rn_modes() const { return 2 * n + 2; }
  int rt_modes() const { return 2 * t + 2; }
};

struct Diagnostic {
  int gate_index = -1;  // -1 for circuit-level problems
  std::string message;
};

// Empty iff all invariants hold. Total function: never throws on content.
std::vector<Diagnostic> validate(const FermionicCircuit& circuit);

// JSON schema:
//   {"n": int, "t": int, "parity_sector": +-1,
//    "gates": [{"kind":"braid","string":"i^p g…","angle":+-1}
//              | {"kind":"t2","a":int,"b":int}]}
// parse throws std::invalid_argument with a JSON-path message on schema
// violations and runs validate() afterwards.
FermionicCircuit parse_circuit(const std::string& json_text);
std::string serialize_circuit(const FermionicCircuit& circuit);

FermionicCircuit load_circuit_file(const std::string& path);

// Deterministic per seed. Braids drawn as random even-weight Hermitian
// generators on R_n with random direction; exactly t T2 gates at random
// positions. The result always passes validate().
FermionicCircuit random_circuit(int n, int t, int braid_count, uint64_t seed);

}  // namespace fpbc
