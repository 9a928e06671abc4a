#include "fpbc/compiler.hpp"

#include <cmath>
#include <complex>
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

FermionicCircuit one_t2_circuit(int n, int a, int b) {
  FermionicCircuit c;
  c.n = n;
  c.t = 1;
  c.gates.emplace_back(T2Gate{a, b});
  return c;
}

// Random R_n state in the +1 sector, tensored with the magic register.
StateVector combined_state(const StateVector& rn, int n, int t) {
  const int nm = 2 * (n + t + 2);
  StateVector rt = prepare_magic_register(t, 1);
  StateVector out = StateVector::basis_state(nm, 0);
  out.amps.assign(out.amps.size(), {0, 0});
  const int kn = n + 1;
  for (size_t i = 0; i < rn.amps.size(); ++i)
    for (size_t j = 0; j < rt.amps.size(); ++j)
      out.amps[i | (j << kn)] = rn.amps[i] * rt.amps[j];
  return out;
}

StateVector random_sector_state(int n, Rng& rng) {
  StateVector st = StateVector::basis_state(2 * n + 2, 0);
  for (auto& a : st.amps)
    a = std::complex<double>(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  project_parity(st, MajoranaString::total_parity(2 * n + 2), 1, 1e-6);
  return st;
}

// Fidelity of the R_n reduction of `full` against `target` on R_n.
double rn_fidelity(const StateVector& full, const StateVector& target, int n,
                   int t) {
  const int kn = n + 1;
  const size_t rn_dim = size_t(1) << kn;
  const size_t rt_dim = full.amps.size() / rn_dim;
  double f2 = 0;
  for (size_t j = 0; j < rt_dim; ++j) {
    std::complex<double> overlap = 0;
    for (size_t i = 0; i < rn_dim; ++i)
      overlap += std::conj(target.amps[i]) * full.amps[i | (j << kn)];
    f2 += std::norm(overlap);
  }
  (void)t;
  return std::sqrt(f2);
}

void apply_pipeline_braid(StateVector& st, const PipelineBraid& f) {
  apply_exponential(st, f.generator, f.quarter_turns * M_PI / 4);
}

}  // namespace

TEST_SUITE("compiler") {

TEST_CASE("insert_gadgets: braid-only circuits gain only final measurements") {
  FermionicCircuit c;
  c.n = 2;
  c.t = 0;
  BraidGate bg;
  bg.generator = herm(6, {1, 2, 3, 4});
  c.gates.emplace_back(bg);
  auto events = insert_gadgets(c);
  REQUIRE(events.size() == 3);  // the braid + two final measurements
  CHECK(std::holds_alternative<PipelineBraid>(events[0]));
  for (int f = 1; f <= 2; ++f) {
    const auto& m = std::get<MeasurementOp>(events[size_t(f)]);
    CHECK(m.origin.kind == Origin::Kind::Final);
    CHECK(m.output_slot == f - 1);
  }
}

TEST_CASE("insert_gadgets: one T2 becomes measurement plus two-branch braid") {
  FermionicCircuit c = one_t2_circuit(1, 2, 3);
  auto events = insert_gadgets(c);
  REQUIRE(events.size() == 4);  // measure, F1, conditional F2, final
  const auto& meas = std::get<MeasurementOp>(events[0]);
  CHECK(meas.origin.kind == Origin::Kind::Gadget);
  CHECK(meas.origin.index == 1);
  // i s_1 g_2 g_3 on the 8-mode combined register (R_t pair at modes 5,6).
  CHECK(meas.op == scale_phase(multiply(herm(8, {5, 6}), multiply(MajoranaString::single(8, 1), MajoranaString::single(8, 2))), 1));
  const auto& f1 = std::get<PipelineBraid>(events[1]);
  CHECK_FALSE(f1.condition_gadget.has_value());
  const auto& f2 = std::get<PipelineBraid>(events[2]);
  CHECK(f2.condition_gadget == 1);
  CHECK(f2.generator ==
        multiply(MajoranaString::single(8, 2), MajoranaString::single(8, 1)));
}

TEST_CASE("gadget reproduces T2 on both outcome branches") {
  Rng rng(31);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const int a = 1 + int(rng.below(uint64_t(2 * n + 2)));
      int b = a;
      while (b == a) b = 1 + int(rng.below(uint64_t(2 * n + 2)));
      FermionicCircuit c = one_t2_circuit(n, a, b);
      auto events = insert_gadgets(c);
      const auto& meas = std::get<MeasurementOp>(events[0]);
      const auto& f1 = std::get<PipelineBraid>(events[1]);
      const auto& f2 = std::get<PipelineBraid>(events[2]);

      StateVector rn = random_sector_state(n, rng);
      StateVector expected = rn;
      {
        const int nm = 2 * n + 2;
        MajoranaString pair = multiply(MajoranaString::single(nm, a - 1),
                                       MajoranaString::single(nm, b - 1));
        apply_exponential(expected, pair, M_PI / 8);
      }
      for (int outcome : {1, -1}) {
        StateVector st = combined_state(rn, n, 1);
        CHECK(prob_plus(st, meas.op) == doctest::Approx(0.5).epsilon(1e-10));
        project_parity(st, meas.op, outcome);
        apply_pipeline_braid(st, f1);
        if (outcome == 1) apply_pipeline_braid(st, f2);
        CHECK(rn_fidelity(st, expected, n, 1) ==
              doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("prepend_dummies") {
  FermionicCircuit c = one_t2_circuit(2, 1, 2);
  auto events = prepend_dummies(insert_gadgets(c), 2);
  const auto& d1 = std::get<MeasurementOp>(events[0]);
  const auto& d2 = std::get<MeasurementOp>(events[1]);
  CHECK(d1.origin.kind == Origin::Kind::Dummy);
  CHECK(d1.op == herm(10, {1, 2}));
  CHECK(d2.op == herm(10, {3, 4}));
  // Dummies commute with everything initially present on R_t.
  for (size_t k = 2; k < events.size(); ++k)
    if (std::holds_alternative<MeasurementOp>(events[k])) {
      const auto& op = std::get<MeasurementOp>(events[k]).op;
      if (op.support.lowest_set() >= 6) CHECK(commutes(d1.op, op));
    }
  // n = 0 dummies is a no-op.
  auto same = prepend_dummies(insert_gadgets(c), 0);
  CHECK(same.size() == insert_gadgets(c).size());
}

TEST_CASE("eliminate_braids: braid-free input returns the ops unchanged") {
  FermionicCircuit c = one_t2_circuit(1, 1, 2);
  std::vector<PipelineEvent> events;
  for (auto& ev : insert_gadgets(c))
    if (std::holds_alternative<MeasurementOp>(ev)) events.push_back(ev);
  auto ops = eliminate_braids(events, {});
  REQUIRE(ops.size() == 2);
  CHECK(ops[0].op == std::get<MeasurementOp>(events[0]).op);
  CHECK(ops[1].op == std::get<MeasurementOp>(events[1]).op);
}

TEST_CASE("eliminate_braids: a braid after the last measurement is dropped") {
  const int nm = 8;
  std::vector<PipelineEvent> events;
  events.emplace_back(MeasurementOp{herm(nm, {1, 2}), {Origin::Kind::Final, 1}, 0});
  events.emplace_back(PipelineBraid{antiherm_normalize(herm(nm, {1, 3})), 1, std::nullopt});
  auto ops = eliminate_braids(events, {});
  REQUIRE(ops.size() == 1);
  CHECK(ops[0].op == herm(nm, {1, 2}));
}

TEST_CASE("eliminate_braids: a braid before a measurement conjugates it") {
  const int nm = 8;
  const MajoranaString gen = antiherm_normalize(herm(nm, {2, 3}));
  const MajoranaString meas = herm(nm, {1, 2});
  std::vector<PipelineEvent> events;
  events.emplace_back(PipelineBraid{gen, 1, std::nullopt});
  events.emplace_back(MeasurementOp{meas, {Origin::Kind::Final, 1}, 0});
  auto ops = eliminate_braids(events, {});
  REQUIRE(ops.size() == 1);
  CHECK(ops[0].op == conjugate_by_braid(meas, gen, 1));
  // matrix check of the same statement
  const oracle::CMat u = oracle::factor_unitary(BraidFactor::make(gen, 1));
  const oracle::CMat lhs = u.adjoint() * oracle::string_matrix(meas) * u;
  CHECK(oracle::mat_equal(lhs, oracle::string_matrix(ops[0].op)));
}

TEST_CASE("sweep: already-commuting ops survive with no coins") {
  std::vector<MeasurementOp> ops{
      {herm(8, {1, 2}), {Origin::Kind::Dummy, 1}, std::nullopt},
      {herm(8, {3, 4}), {Origin::Kind::Final, 1}, 0}};
  Rng rng(32);
  auto res = sweep_anticommuting(ops, rng, [](int, const MeasurementOp&) {
    return 1;
  });
  CHECK(res.coins.empty());
  REQUIRE(res.commuting_ops.size() == 2);
  CHECK(res.commuting_ops[1].op == ops[1].op);
}

TEST_CASE("sweep: the second of two anticommuting ops is replaced") {
  std::vector<MeasurementOp> ops{
      {herm(8, {1, 2}), {Origin::Kind::Dummy, 1}, std::nullopt},
      {herm(8, {2, 3}), {Origin::Kind::Final, 1}, 0}};
  Rng rng(33);
  auto res = sweep_anticommuting(ops, rng, [](int, const MeasurementOp&) {
    return 1;
  });
  REQUIRE(res.coins.size() == 1);
  CHECK(res.coins[0].op_index == 1);
  CHECK(res.coins[0].partner_index == 0);
  CHECK(res.commuting_ops.size() == 1);
}

TEST_CASE("sweep: V conjugation updates later anticommuting ops") {
  // op2 anticommutes with op0; op3 anticommutes with V = op2*op0 pattern.
  std::vector<MeasurementOp> ops{
      {herm(8, {1, 2}), {Origin::Kind::Dummy, 1}, std::nullopt},
      {herm(8, {2, 3}), {Origin::Kind::Gadget, 1}, std::nullopt},
      {herm(8, {3, 4}), {Origin::Kind::Final, 1}, 0}};
  Rng rng(34);
  auto res = sweep_anticommuting(ops, rng, [](int, const MeasurementOp&) {
    return 1;
  });
  REQUIRE(res.coins.size() == 1);
  // The surviving final op was conjugated by V = exp(pi/4 l1 l2 M1 M0):
  // {g3g4, M1 M0 = i^? g1 g3} anticommute, so its string changed.
  REQUIRE(res.commuting_ops.size() == 2);
  CHECK_FALSE(res.commuting_ops[1].op == ops[2].op);
  // All survivors commute pairwise.
  CHECK(commutes(res.commuting_ops[0].op, res.commuting_ops[1].op));
}

TEST_CASE("restrict_to_rt: op already on R_t is unchanged") {
  // n=1, t=1: combined 8 modes; R_t local pair s_1 sits at modes 5,6.
  const MajoranaString op = herm(8, {5, 6});
  CHECK(restrict_to_rt(op, 1, 1, 1) == herm(4, {1, 2}));
}

TEST_CASE("restrict_to_rt: dummy eigenvalue substitution") {
  // op = s_1^(c) * (R_t string): the R_n factor drops at +1.
  const MajoranaString op = multiply(herm(8, {1, 2}), herm(8, {5, 6}));
  CHECK(restrict_to_rt(op, 1, 1, 1) == herm(4, {1, 2}));
}

TEST_CASE("restrict_to_rt: Gamma substitution flips the sign in sector -1") {
  MajoranaString gamma_n = MajoranaString::identity(8);
  for (int m = 0; m < 4; ++m) gamma_n.support.set(m);
  gamma_n.phase_power = 2;  // i^2 g1 g2 g3 g4 = Gamma_4 for n=1
  const MajoranaString op = multiply(gamma_n, herm(8, {5, 6}));
  CHECK(restrict_to_rt(op, 1, 1, 1) == herm(4, {1, 2}));
  CHECK(restrict_to_rt(op, 1, 1, -1) == scale_phase(herm(4, {1, 2}), 2));
}

TEST_CASE("restrict_to_rt: an R_n factor outside the span is an error") {
  const MajoranaString op = multiply(
      multiply(MajoranaString::single(8, 0), MajoranaString::single(8, 2)),
      herm(8, {5, 6}));
  CHECK_THROWS_AS(restrict_to_rt(scale_phase(op, 1), 1, 1, 1),
                  std::logic_error);
}

TEST_CASE("resolve_dependencies: independent, derived, and Gamma cases") {
  const int t = 2;
  std::vector<MeasurementOp> ops{
      {herm(6, {1, 2}), {Origin::Kind::Gadget, 1}, std::nullopt},
      {herm(6, {3, 4}), {Origin::Kind::Gadget, 2}, std::nullopt},
      {scale_phase(multiply(herm(6, {1, 2}), herm(6, {3, 4})), 2),
       {Origin::Kind::Final, 1}, 0},
      {MajoranaString::total_parity(6), {Origin::Kind::Final, 2}, 1}};
  auto cls = resolve_dependencies(ops, t);
  REQUIRE(cls.size() == 4);
  CHECK(cls[0].quantum);
  CHECK(cls[1].quantum);
  REQUIRE_FALSE(cls[2].quantum);
  CHECK(cls[2].relation->members == std::vector<int>{1, 2});
  CHECK(cls[2].relation->sign == -1);
  REQUIRE_FALSE(cls[3].quantum);
  CHECK(cls[3].relation->members == std::vector<int>{0});  // Gamma itself
  CHECK(cls[3].relation->sign == 1);
}

TEST_CASE("compile: empty circuit gives n derived +1 outputs") {
  FermionicCircuit c;
  c.n = 3;
  c.t = 0;
  CompiledProgram p = CompiledProgram::compile(c);
  Rng rng(35);
  ProgramTrace tr = p.execute_shot(rng);
  CHECK(tr.quantum_count == 0);
  CHECK(tr.coin_count == 0);
  CHECK(tr.derived_count == 3);
  CHECK(tr.b == std::vector<int>{1, 1, 1});
  for (const auto& step : tr.steps) {
    REQUIRE(std::holds_alternative<StepDerived>(step));
    CHECK(std::get<StepDerived>(step).outcome == 1);
  }
}

TEST_CASE("compile: single-T2 program uses at most one quantum measurement") {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 4}}) {
    CompiledProgram p = CompiledProgram::compile(one_t2_circuit(1, a, b));
    ProgramStats stats = p.validate_and_stats();
    CHECK(stats.max_quantum <= 1);
  }
}

TEST_CASE("compile matches the dense oracle on random circuits") {
  int checked = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 1 + int(seed % 3);
    const int t = 1 + int((seed / 3) % 3);
    FermionicCircuit c = random_circuit(n, t, 4, 7000 + seed);
    CompiledProgram p = CompiledProgram::compile(c);
    const double tv =
        total_variation(p.exact_distribution(), simulate_circuit_exact(c));
    CHECK(tv < 1e-10);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("sweep property: V replacement equals actual measurement") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    FermionicCircuit c = random_circuit(2, 2, 3, 8000 + seed);
    CompiledProgram p = CompiledProgram::compile(c);
    const double tv = total_variation(p.exact_distribution(),
                                      p.exact_distribution_measured());
    CHECK(tv < 1e-10);
  }
}

TEST_CASE("execute: derived-only program is constant") {
  FermionicCircuit c;
  c.n = 2;
  c.t = 0;
  CompiledProgram p = CompiledProgram::compile(c);
  auto counts = p.run(50, 3);
  REQUIRE(counts.size() == 1);
  CHECK(counts.at("11") == 50);
}

TEST_CASE("execute: sampled distribution approaches the exact one") {
  CompiledProgram p = CompiledProgram::compile(one_t2_circuit(1, 2, 3));
  const int shots = 20000;
  auto counts = p.run(shots, 9);
  std::map<std::string, double> empirical;
  for (const auto& [k, v] : counts) empirical[k] = double(v) / shots;
  CHECK(total_variation(empirical, p.exact_distribution()) < 0.05);
}

TEST_CASE("execute: identical seed gives an identical sample stream") {
  CompiledProgram p = CompiledProgram::compile(one_t2_circuit(2, 2, 3));
  CHECK(p.run(200, 1234) == p.run(200, 1234));
  CHECK(p.run(200, 1234) != p.run(200, 1235));
}

TEST_CASE("program JSON round-trip preserves behavior") {
  FermionicCircuit c = random_circuit(2, 2, 3, 11);
  CompiledProgram p = CompiledProgram::compile(c);
  CompiledProgram q = CompiledProgram::parse(p.serialize());
  CHECK(p.serialize() == q.serialize());
  CHECK(total_variation(p.exact_distribution(), q.exact_distribution()) <
        1e-12);
  CHECK_THROWS_AS(CompiledProgram::parse("{}"), std::invalid_argument);
}

TEST_CASE("origin text round-trip") {
  for (const char* txt : {"dummy 1", "gadget 3", "final 2"})
    CHECK(to_string(parse_origin(txt)) == txt);
  CHECK_THROWS_AS(parse_origin("bogus 1"), std::invalid_argument);
}

}  // TEST_SUITE
