#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpbc/circuit.hpp"
#include "fpbc/majorana.hpp"
#include "fpbc/rng.hpp"
#include "fpbc/simulator.hpp"

namespace fpbc {

// ---------------------------------------------------------------------------
// Pipeline data model. A circuit expands into a timeline of fermion-parity
// measurements and braid factors on the combined 2(n+t+2)-mode register
// (R_n first, R_t shifted up by 2n+2). Gadget correction braids carry a
// condition: they are applied only on the +1 branch of their gadget's
// measurement outcome, so downstream conjugations are resolved at execution
// once that outcome is known.
// ---------------------------------------------------------------------------

struct Origin {
  enum class Kind { Dummy, Gadget, Final };
  Kind kind = Kind::Final;
  int index = 0;  // 1-based j within its kind

  friend bool operator==(const Origin&, const Origin&) = default;
};

std::string to_string(const Origin& o);
Origin parse_origin(const std::string& text);

struct MeasurementOp {
  MajoranaString op;  // Hermitian, parity-even, on the combined register
  Origin origin;
  std::optional<int> output_slot;  // 0-based position in b for finals
};

struct PipelineBraid {
  MajoranaString generator;  // anti-Hermitian normalized
  int quarter_turns = 1;
  std::optional<int> condition_gadget;  // applied iff m_j == +1
};

using PipelineEvent = std::variant<MeasurementOp, PipelineBraid>;

// ---------------------------------------------------------------------------
// Compilation passes. Each is usable standalone; CompiledProgram threads
// them per execution path since gadget corrections make downstream
// measurement strings outcome-dependent.
// ---------------------------------------------------------------------------

// Replaces every T2 gate with its magic-state gadget (two-register
// measurement plus the adaptive correction braid), keeps braids as-is, and
// appends the final s_j^(c) measurement ops.
std::vector<PipelineEvent> insert_gadgets(const FermionicCircuit& circuit);

// Prepends the n dummy measurements of all s_j^(c) (fixed outcome +1).
std::vector<PipelineEvent> prepend_dummies(std::vector<PipelineEvent> events,
                                           int n);

// Commutes all braids past the measurements (each measurement is conjugated
// by every braid preceding it; trailing braids drop out). Conditional
// factors consult `gadget_outcomes` and throw std::logic_error when an
// outcome they need is missing.
std::vector<MeasurementOp> eliminate_braids(
    const std::vector<PipelineEvent>& events,
    const std::map<int, int>& gadget_outcomes);

// Incremental form of the Eq.-style anticommuting sweep: ops are offered in
// order; an op anticommuting with an earlier survivor is deleted and
// replaced by the braid V(lambda_i, lambda_j) = exp(pi/4 li lj Mi Mj),
// which conjugates every later op. Survivor outcomes are committed by the
// caller as they become known.
class SweepState {
 public:
  // Folds the pending V conjugations into an incoming op.
  MajoranaString resolve(const MajoranaString& op) const;

  // Index of the earliest anticommuting survivor, or nullopt (op survives).
  std::optional<int> anticommuting_partner(const MajoranaString& resolved) const;

  // Registers a surviving op; its outcome must be committed before any
  // later op gets swept against it.
  int keep(const MajoranaString& resolved);
  void commit_outcome(int survivor_index, int lambda);

  // Deletes `resolved` against survivor `partner` with coin value `lambda`.
  void sweep(const MajoranaString& resolved, int partner, int lambda);

  int survivor_count() const { return int(survivors_.size()); }
  const MajoranaString& survivor(int i) const { return survivors_[size_t(i)]; }
  int outcome(int i) const;

 private:
  std::vector<MajoranaString> survivors_;
  std::vector<std::optional<int>> outcomes_;
  std::vector<MajoranaString> v_generators_;  // sign lambda_i lambda_j folded
};

struct SweepCoin {
  int op_index = 0;      // position in the input op list
  int partner_index = 0; // survivor it anticommuted with
  int lambda = 0;
};

struct SweepResult {
  std::vector<MeasurementOp> commuting_ops;
  std::vector<SweepCoin> coins;
};

// Whole-list sweep. `survivor_outcome(i, op)` supplies the measurement
// outcome of each survivor, consulted lazily when a V braid needs it
// (dummies are +1; in the full pipeline outcomes come from the execution).
SweepResult sweep_anticommuting(
    const std::vector<MeasurementOp>& ops, Rng& rng,
    const std::function<int(int, const MeasurementOp&)>& survivor_outcome);

// Restriction of one commuting op to R_t: its R_n factor is necessarily a
// product of s_j^(c) and Gamma_{2n+2}; that factor is replaced by its known
// eigenvalue (+1 per dummy, parity_sector for Gamma). Returns the signed
// string re-homed to the 2t+2 modes of R_t. Throws std::logic_error if the
// R_n factor is not in that span (an upstream bug).
MajoranaString restrict_to_rt(const MajoranaString& op, int n, int t,
                              int parity_sector);
std::vector<MeasurementOp> restrict_to_rt(const std::vector<MeasurementOp>& ops,
                                          int n, int t, int parity_sector);

// Dependency classification of commuting R_t ops, in order. Index 0 of a
// relation refers to Gamma_{2t+2} (eigenvalue parity_sector); index k >= 1
// refers to the (k-1)-th op classified Quantum.
struct OpClassification {
  bool quantum = false;
  std::optional<SignedRelation> relation;  // set when derived
};
std::vector<OpClassification> resolve_dependencies(
    const std::vector<MeasurementOp>& rt_ops, int t);

// ---------------------------------------------------------------------------
// Compiled program: the adaptive program over R_t. Steps materialize per
// execution path; the serialized form is the outcome-independent skeleton.
// ---------------------------------------------------------------------------

struct StepQuantum {
  MajoranaString rt_op;
  Origin origin;
  std::optional<int> output_slot;
  int outcome = 0;
};
struct StepCoin {
  Origin origin;
  std::optional<int> output_slot;
  int lambda = 0;
};
struct StepDerived {
  bool uses_gamma = false;
  std::vector<int> quantum_refs;  // indices into prior quantum steps
  int sign = 1;
  Origin origin;
  std::optional<int> output_slot;
  int outcome = 0;
};
using Step = std::variant<StepQuantum, StepCoin, StepDerived>;

struct ProgramTrace {
  std::vector<Step> steps;  // dummies excluded
  std::vector<int> b;       // +-1 outcomes, slot order
  int quantum_count = 0;
  int coin_count = 0;
  int derived_count = 0;
};

struct ProgramStats {
  int paths = 0;
  int max_quantum = 0;
  int max_coins = 0;
  int max_derived = 0;
};

class CompiledProgram {
 public:
  int n = 0;
  int t = 0;
  int parity_sector = 1;
  std::vector<PipelineEvent> events;

  int combined_modes() const { return 2 * (n + t + 2); }

  static CompiledProgram compile(const FermionicCircuit& circuit);

  // One faithful shot: prepare |psi^(t)>, walk the steps, draw coins,
  // measure adaptively, fill b. Deterministic for a fixed rng state.
  ProgramTrace execute_shot(Rng& rng) const;

  // Sample counts over bitstring keys ('1' = outcome +1).
  std::map<std::string, uint64_t> run(int shots, uint64_t seed) const;

  // Exact output distribution: coins and measurement branches enumerated
  // analytically (coins as uniform mixtures, measurements by Born weight).
  std::map<std::string, double> exact_distribution() const;

  // Oracle variant for the sweep property: every V replacement is undone by
  // actually measuring the eliminated ops on the combined register (no
  // sweep, no restriction). Exact by branch enumeration.
  std::map<std::string, double> exact_distribution_measured() const;

  // Enumerates all execution paths, checking program invariants on each
  // (quantum strings commute and stay on R_t, quantum count <= t, every b
  // slot written exactly once). Throws std::logic_error on violation.
  ProgramStats validate_and_stats() const;

  std::string serialize() const;
  static CompiledProgram parse(const std::string& json_text);
};

CompiledProgram load_program_file(const std::string& path);

}  // namespace fpbc
