#include "fpbc/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpbc {

using nlohmann::json;

std::string to_string(const Origin& o) {
  switch (o.kind) {
    case Origin::Kind::Dummy:
      return "dummy " + std::to_string(o.index);
    case Origin::Kind::Gadget:
      return "gadget " + std::to_string(o.index);
    case Origin::Kind::Final:
      return "final " + std::to_string(o.index);
  }
  return "?";
}

Origin parse_origin(const std::string& text) {
  std::istringstream iss(text);
  std::string kind;
  int index = 0;
  if (!(iss >> kind >> index))
    throw std::invalid_argument("bad origin '" + text + "'");
  Origin o;
  o.index = index;
  if (kind == "dummy")
    o.kind = Origin::Kind::Dummy;
  else if (kind == "gadget")
    o.kind = Origin::Kind::Gadget;
  else if (kind == "final")
    o.kind = Origin::Kind::Final;
  else
    throw std::invalid_argument("bad origin kind '" + kind + "'");
  return o;
}

namespace {

// s_j^(c) on the combined register (1-based j), i g_{2j-1} g_{2j}.
MajoranaString s_c(int j, int nm) {
  return MajoranaString::hermitian(nm, std::vector<int>{2 * j - 2, 2 * j - 1});
}

}  // namespace

std::vector<PipelineEvent> insert_gadgets(const FermionicCircuit& circuit) {
  auto diags = validate(circuit);
  if (!diags.empty())
    throw std::invalid_argument("insert_gadgets: circuit fails validation (" +
                                diags.front().message + ")");
  const int n = circuit.n;
  const int t = circuit.t;
  const int nm = 2 * (n + t + 2);
  const int rt_off = 2 * n + 2;

  std::vector<PipelineEvent> events;
  int j = 0;
  for (const Gate& g : circuit.gates) {
    if (std::holds_alternative<BraidGate>(g)) {
      const auto& bg = std::get<BraidGate>(g);
      events.emplace_back(PipelineBraid{
          antiherm_normalize(embed(bg.generator, nm, 0)), bg.quarter_turns,
          std::nullopt});
      continue;
    }
    const auto& t2 = std::get<T2Gate>(g);
    ++j;
    const MajoranaString ga = MajoranaString::single(nm, t2.a - 1);
    const MajoranaString gb = MajoranaString::single(nm, t2.b - 1);
    const MajoranaString sj = MajoranaString::hermitian(
        nm, std::vector<int>{rt_off + 2 * j - 2, rt_off + 2 * j - 1});

    // Two-register measurement i s_j g_a g_b.
    MajoranaString meas = scale_phase(
        multiply(multiply(sj, ga), gb), 1);
    if (!meas.is_hermitian() || !meas.is_even())
      throw std::logic_error("gadget measurement is not a parity operator");
    events.emplace_back(
        MeasurementOp{meas, {Origin::Kind::Gadget, j}, std::nullopt});

    // Correction R_j = [exp(pi/4 g_b g_a)]^{(1+m_j)/2} exp(pi/4 g_a g_b X_j).
    const MajoranaString xj = embed(magic_x_string(j, t), nm, rt_off);
    events.emplace_back(PipelineBraid{multiply(multiply(ga, gb), xj), 1,
                                      std::nullopt});
    events.emplace_back(PipelineBraid{multiply(gb, ga), 1, j});
  }
  for (int f = 1; f <= n; ++f)
    events.emplace_back(
        MeasurementOp{s_c(f, nm), {Origin::Kind::Final, f}, f - 1});
  return events;
}

std::vector<PipelineEvent> prepend_dummies(std::vector<PipelineEvent> events,
                                           int n) {
  if (events.empty()) return events;
  int nm = 0;
  for (const auto& ev : events) {
    nm = std::holds_alternative<MeasurementOp>(ev)
             ? std::get<MeasurementOp>(ev).op.num_modes
             : std::get<PipelineBraid>(ev).generator.num_modes;
    break;
  }
  std::vector<PipelineEvent> out;
  out.reserve(events.size() + size_t(n));
  for (int j = 1; j <= n; ++j)
    out.emplace_back(
        MeasurementOp{s_c(j, nm), {Origin::Kind::Dummy, j}, std::nullopt});
  out.insert(out.end(), std::make_move_iterator(events.begin()),
             std::make_move_iterator(events.end()));
  return out;
}

namespace {

MajoranaString fold_braids(const MajoranaString& op,
                           const std::vector<PipelineBraid>& braids,
                           size_t count,
                           const std::map<int, int>& gadget_outcomes) {
  MajoranaString r = op;
  for (size_t i = count; i-- > 0;) {
    const PipelineBraid& f = braids[i];
    if (f.condition_gadget) {
      auto it = gadget_outcomes.find(*f.condition_gadget);
      if (it == gadget_outcomes.end())
        throw std::logic_error("conditional braid before its gadget outcome");
      if (it->second != 1) continue;
    }
    r = conjugate_by_braid(r, f.generator, f.quarter_turns);
  }
  return r;
}

}  // namespace

std::vector<MeasurementOp> eliminate_braids(
    const std::vector<PipelineEvent>& events,
    const std::map<int, int>& gadget_outcomes) {
  std::vector<PipelineBraid> braids;
  std::vector<MeasurementOp> out;
  for (const auto& ev : events) {
    if (std::holds_alternative<PipelineBraid>(ev)) {
      const auto& f = std::get<PipelineBraid>(ev);
      if (f.generator.square_phase() != 2)
        throw std::invalid_argument("non-unitary braid factor in pipeline");
      braids.push_back(f);
    } else {
      MeasurementOp m = std::get<MeasurementOp>(ev);
      m.op = fold_braids(m.op, braids, braids.size(), gadget_outcomes);
      out.push_back(std::move(m));
    }
  }
  return out;
}

MajoranaString SweepState::resolve(const MajoranaString& op) const {
  // Each V was already commuted past the remaining tail when it was
  // created, so an incoming op folds the V's in creation order (the
  // earliest V innermost) -- the opposite nesting from original braids,
  // which coexist in the sequence and fold latest-first.
  MajoranaString r = op;
  for (const auto& v : v_generators_) r = conjugate_by_braid(r, v, 1);
  return r;
}

std::optional<int> SweepState::anticommuting_partner(
    const MajoranaString& resolved) const {
  for (size_t j = 0; j < survivors_.size(); ++j)
    if (!commutes(resolved, survivors_[j])) return int(j);
  return std::nullopt;
}

int SweepState::keep(const MajoranaString& resolved) {
  survivors_.push_back(resolved);
  outcomes_.push_back(std::nullopt);
  return int(survivors_.size()) - 1;
}

void SweepState::commit_outcome(int survivor_index, int lambda) {
  outcomes_[size_t(survivor_index)] = lambda;
}

int SweepState::outcome(int i) const {
  if (!outcomes_[size_t(i)])
    throw std::logic_error("survivor outcome not committed yet");
  return *outcomes_[size_t(i)];
}

void SweepState::sweep(const MajoranaString& resolved, int partner,
                       int lambda) {
  const int lj = outcome(partner);
  MajoranaString v = multiply(resolved, survivors_[size_t(partner)]);
  if (v.square_phase() != 2)
    throw std::logic_error("sweep V generator is not anti-Hermitian");
  if (lambda * lj < 0) v = scale_phase(v, 2);
  v_generators_.push_back(std::move(v));
}

SweepResult sweep_anticommuting(
    const std::vector<MeasurementOp>& ops, Rng& rng,
    const std::function<int(int, const MeasurementOp&)>& survivor_outcome) {
  SweepState state;
  SweepResult res;
  for (size_t i = 0; i < ops.size(); ++i) {
    const MajoranaString r = state.resolve(ops[i].op);
    if (auto partner = state.anticommuting_partner(r)) {
      const int lam = rng.coin_pm1();
      state.sweep(r, *partner, lam);
      res.coins.push_back({int(i), *partner, lam});
    } else {
      const int idx = state.keep(r);
      state.commit_outcome(idx, survivor_outcome(int(i), ops[i]));
      res.commuting_ops.push_back({r, ops[i].origin, ops[i].output_slot});
    }
  }
  return res;
}

MajoranaString restrict_to_rt(const MajoranaString& op, int n, int t,
                              int parity_sector) {
  const int nm = 2 * (n + t + 2);
  const int rn = 2 * n + 2;
  if (op.num_modes != nm)
    throw std::invalid_argument("restrict_to_rt: op on wrong register");

  // Does the R_n part of `support` decompose over the first n pairs?
  auto pair_decomposition =
      [&](bool with_gamma) -> std::optional<std::vector<int>> {
    std::vector<int> pairs;
    for (int j = 1; j <= n + 1; ++j) {
      const bool b0 = op.support.test(2 * j - 2) ^ with_gamma;
      const bool b1 = op.support.test(2 * j - 1) ^ with_gamma;
      if (b0 != b1) return std::nullopt;
      if (b0) {
        if (j == n + 1) return std::nullopt;  // spare pair only via Gamma
        pairs.push_back(j);
      }
    }
    return pairs;
  };

  bool with_gamma = false;
  auto pairs = pair_decomposition(false);
  if (!pairs) {
    pairs = pair_decomposition(true);
    with_gamma = true;
  }
  if (!pairs)
    throw std::logic_error(
        "restrict_to_rt: R_n factor outside <s_j^(c), Gamma> for op " +
        to_text(op));

  MajoranaString f = MajoranaString::identity(nm);
  for (int j : *pairs) f = multiply(f, s_c(j, nm));
  if (with_gamma) {
    MajoranaString gamma_n{nm, BitVec(nm), (n + 1) % 4};
    for (int m = 0; m < rn; ++m) gamma_n.support.set(m);
    f = multiply(f, gamma_n);
  }

  MajoranaString residual = multiply(f, op);  // f is its own inverse
  for (int m = 0; m < rn; ++m)
    if (residual.support.test(m))
      throw std::logic_error("restrict_to_rt: residual still touches R_n");

  // Dummy outcomes are all +1; Gamma contributes the sector eigenvalue.
  if (with_gamma && parity_sector == -1) residual = scale_phase(residual, 2);

  MajoranaString rt{2 * t + 2, BitVec(2 * t + 2), residual.phase_power};
  for (int m : residual.support.set_bits()) rt.support.set(m - rn);
  return rt;
}

std::vector<MeasurementOp> restrict_to_rt(const std::vector<MeasurementOp>& ops,
                                          int n, int t, int parity_sector) {
  std::vector<MeasurementOp> out;
  for (const auto& m : ops) {
    if (m.origin.kind == Origin::Kind::Dummy) continue;
    out.push_back(
        {restrict_to_rt(m.op, n, t, parity_sector), m.origin, m.output_slot});
  }
  return out;
}

std::vector<OpClassification> resolve_dependencies(
    const std::vector<MeasurementOp>& rt_ops, int t) {
  DependencyBasis basis(2 * t + 2);
  basis.add(MajoranaString::total_parity(2 * t + 2));
  std::vector<OpClassification> out;
  for (const auto& m : rt_ops) {
    OpClassification c;
    if (auto rel = basis.solve(m.op)) {
      c.quantum = false;
      c.relation = std::move(rel);
    } else {
      c.quantum = true;
      basis.add(m.op);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Execution engine
// ---------------------------------------------------------------------------

namespace {

struct OpsView {
  std::vector<MeasurementOp> ops;
  std::vector<PipelineBraid> braids;
  std::vector<size_t> braid_prefix;  // per op
};

OpsView split_events(const std::vector<PipelineEvent>& events) {
  OpsView v;
  for (const auto& ev : events) {
    if (std::holds_alternative<PipelineBraid>(ev)) {
      v.braids.push_back(std::get<PipelineBraid>(ev));
    } else {
      v.ops.push_back(std::get<MeasurementOp>(ev));
      v.braid_prefix.push_back(v.braids.size());
    }
  }
  return v;
}

struct WalkState {
  StateVector rt_state;
  SweepState sweep;
  DependencyBasis rt_basis;
  std::vector<int> basis_outcomes;  // [0] = Gamma sector eigenvalue
  std::map<int, int> gadget_outcomes;
  std::vector<int> b;
  ProgramTrace trace;
  double weight = 1.0;

  explicit WalkState(const CompiledProgram& p)
      : rt_state(prepare_magic_register(p.t, p.parity_sector)),
        rt_basis(2 * p.t + 2),
        b(size_t(p.n), 0) {
    rt_basis.add(MajoranaString::total_parity(2 * p.t + 2));
    basis_outcomes.push_back(p.parity_sector);
  }
};

void bind_outcome(WalkState& st, const MeasurementOp& mop, int lambda) {
  if (mop.origin.kind == Origin::Kind::Gadget)
    st.gadget_outcomes[mop.origin.index] = lambda;
  if (mop.output_slot) {
    if (st.b[size_t(*mop.output_slot)] != 0)
      throw std::logic_error("output slot written twice");
    st.b[size_t(*mop.output_slot)] = lambda;
  }
}

// Processes ops starting at `opi`, calling `emit` for each completed path.
// `chooser(p_plus)` resolves nondeterministic binary choices when sampling;
// when null every branch is enumerated with exact weights.
void walk(const CompiledProgram& prog, const OpsView& view, WalkState st,
          size_t opi, const std::function<int(double)>* chooser,
          const std::function<void(WalkState&&)>& emit) {
  for (; opi < view.ops.size(); ++opi) {
    const MeasurementOp& mop = view.ops[opi];
    MajoranaString r = fold_braids(mop.op, view.braids, view.braid_prefix[opi],
                                   st.gadget_outcomes);
    r = st.sweep.resolve(r);

    if (auto partner = st.sweep.anticommuting_partner(r)) {
      if (mop.origin.kind == Origin::Kind::Dummy)
        throw std::logic_error("dummy measurement got swept");
      if (chooser) {
        const int lam = (*chooser)(0.5);
        st.sweep.sweep(r, *partner, lam);
        bind_outcome(st, mop, lam);
        st.trace.steps.emplace_back(StepCoin{mop.origin, mop.output_slot, lam});
        ++st.trace.coin_count;
        continue;
      }
      for (int lam : {1, -1}) {
        WalkState branch = st;
        branch.weight *= 0.5;
        branch.sweep.sweep(r, *partner, lam);
        bind_outcome(branch, mop, lam);
        branch.trace.steps.emplace_back(
            StepCoin{mop.origin, mop.output_slot, lam});
        ++branch.trace.coin_count;
        walk(prog, view, std::move(branch), opi + 1, chooser, emit);
      }
      return;
    }

    const int kept = st.sweep.keep(r);
    const MajoranaString rt =
        restrict_to_rt(r, prog.n, prog.t, prog.parity_sector);

    if (auto rel = st.rt_basis.solve(rt)) {
      int lam = rel->sign;
      StepDerived step;
      for (int m : rel->members) {
        lam *= st.basis_outcomes[size_t(m)];
        if (m == 0)
          step.uses_gamma = true;
        else
          step.quantum_refs.push_back(m - 1);
      }
      step.sign = rel->sign;
      step.origin = mop.origin;
      step.output_slot = mop.output_slot;
      step.outcome = lam;
      st.sweep.commit_outcome(kept, lam);
      bind_outcome(st, mop, lam);
      if (mop.origin.kind != Origin::Kind::Dummy) {
        st.trace.steps.emplace_back(std::move(step));
        ++st.trace.derived_count;
      }
      continue;
    }

    if (!rt.is_hermitian() || !rt.is_even())
      throw std::logic_error("quantum op is not a parity operator");
    if (st.trace.quantum_count + 1 > prog.t)
      throw std::logic_error("quantum measurement budget exceeded");

    const double p = prob_plus(st.rt_state, rt);
    auto take = [&](WalkState& ws, int lam, double w) {
      ws.weight *= w;
      project_parity(ws.rt_state, rt, lam);
      ws.rt_basis.add(rt);
      ws.basis_outcomes.push_back(lam);
      ws.sweep.commit_outcome(kept, lam);
      bind_outcome(ws, mop, lam);
      ws.trace.steps.emplace_back(
          StepQuantum{rt, mop.origin, mop.output_slot, lam});
      ++ws.trace.quantum_count;
    };

    if (p >= 1.0 - 1e-12 || p <= 1e-12) {
      take(st, p >= 0.5 ? 1 : -1, 1.0);
      continue;
    }
    if (chooser) {
      take(st, (*chooser)(p), 1.0);
      continue;
    }
    for (int lam : {1, -1}) {
      WalkState branch = st;
      take(branch, lam, lam == 1 ? p : 1.0 - p);
      walk(prog, view, std::move(branch), opi + 1, chooser, emit);
    }
    return;
  }

  for (int v : st.b)
    if (v == 0) throw std::logic_error("output slot never written");
  emit(std::move(st));
}

std::string bits_key(const std::vector<int>& b) {
  std::string key(b.size(), '0');
  for (size_t i = 0; i < b.size(); ++i)
    if (b[i] == 1) key[i] = '1';
  return key;
}

}  // namespace

CompiledProgram CompiledProgram::compile(const FermionicCircuit& circuit) {
  auto diags = validate(circuit);
  if (!diags.empty()) {
    std::ostringstream oss;
    oss << "cannot compile invalid circuit:";
    for (const auto& d : diags)
      oss << "\n  gate " << d.gate_index << ": " << d.message;
    throw std::invalid_argument(oss.str());
  }
  CompiledProgram p;
  p.n = circuit.n;
  p.t = circuit.t;
  p.parity_sector = circuit.parity_sector;
  p.events = prepend_dummies(insert_gadgets(circuit), circuit.n);
  return p;
}

ProgramTrace CompiledProgram::execute_shot(Rng& rng) const {
  const OpsView view = split_events(events);
  WalkState st(*this);
  std::function<int(double)> chooser = [&rng](double p_plus) {
    if (p_plus == 0.5) return rng.coin_pm1();
    return rng.uniform01() < p_plus ? 1 : -1;
  };
  ProgramTrace result;
  walk(*this, view, std::move(st), 0, &chooser, [&](WalkState&& ws) {
    result = std::move(ws.trace);
    result.b = std::move(ws.b);
  });
  return result;
}

std::map<std::string, uint64_t> CompiledProgram::run(int shots,
                                                     uint64_t seed) const {
  std::map<std::string, uint64_t> counts;
  const Rng base(seed);
  for (int i = 0; i < shots; ++i) {
    Rng shot_rng = base.substream("shot", uint64_t(i));
    ProgramTrace tr = execute_shot(shot_rng);
    counts[bits_key(tr.b)] += 1;
  }
  return counts;
}

std::map<std::string, double> CompiledProgram::exact_distribution() const {
  const OpsView view = split_events(events);
  std::map<std::string, double> dist;
  walk(*this, view, WalkState(*this), 0, nullptr, [&](WalkState&& ws) {
    dist[bits_key(ws.b)] += ws.weight;
  });
  return dist;
}

ProgramStats CompiledProgram::validate_and_stats() const {
  const OpsView view = split_events(events);
  ProgramStats stats;
  walk(*this, view, WalkState(*this), 0, nullptr, [&](WalkState&& ws) {
    ++stats.paths;
    stats.max_quantum = std::max(stats.max_quantum, ws.trace.quantum_count);
    stats.max_coins = std::max(stats.max_coins, ws.trace.coin_count);
    stats.max_derived = std::max(stats.max_derived, ws.trace.derived_count);
    // Quantum strings must pairwise commute and live on R_t; both hold by
    // construction of the dependency basis, re-checked here.
    std::vector<const MajoranaString*> q;
    for (const auto& step : ws.trace.steps)
      if (std::holds_alternative<StepQuantum>(step))
        q.push_back(&std::get<StepQuantum>(step).rt_op);
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = i + 1; j < q.size(); ++j)
        if (!commutes(*q[i], *q[j]))
          throw std::logic_error("quantum measurements do not commute");
  });
  return stats;
}

std::map<std::string, double> CompiledProgram::exact_distribution_measured()
    const {
  const OpsView view = split_events(events);
  const int nm = combined_modes();
  const int K = nm / 2;

  uint64_t bits = (uint64_t(1) << K) - 1;
  if (parity_sector == -1) {
    bits ^= uint64_t(1) << n;            // R_n spare pair
    bits ^= uint64_t(1) << (K - 1);      // R_t spare pair
  }
  StateVector init = StateVector::basis_state(nm, bits);
  prepare_magic_register_in_place(init, 2 * n + 2, t);

  std::map<std::string, double> dist;

  struct Frame {
    StateVector state;
    std::map<int, int> gadget_outcomes;
    std::vector<int> b;
    double weight;
  };

  std::function<void(Frame&&, size_t)> go = [&](Frame&& fr, size_t opi) {
    for (; opi < view.ops.size(); ++opi) {
      const MeasurementOp& mop = view.ops[opi];
      const MajoranaString r = fold_braids(
          mop.op, view.braids, view.braid_prefix[opi], fr.gadget_outcomes);
      const double p = prob_plus(fr.state, r);
      auto apply = [&](Frame& f2, int lam, double w) {
        f2.weight *= w;
        project_parity(f2.state, r, lam);
        if (mop.origin.kind == Origin::Kind::Gadget)
          f2.gadget_outcomes[mop.origin.index] = lam;
        if (mop.output_slot) f2.b[size_t(*mop.output_slot)] = lam;
      };
      if (mop.origin.kind == Origin::Kind::Dummy) {
        if (p < 1.0 - 1e-9)
          throw std::logic_error("dummy measurement not deterministic");
        continue;  // outcome +1, state unchanged
      }
      if (p >= 1.0 - 1e-12 || p <= 1e-12) {
        apply(fr, p >= 0.5 ? 1 : -1, 1.0);
        continue;
      }
      for (int lam : {1, -1}) {
        Frame f2 = fr;
        apply(f2, lam, lam == 1 ? p : 1.0 - p);
        go(std::move(f2), opi + 1);
      }
      return;
    }
    dist[bits_key(fr.b)] += fr.weight;
  };

  go(Frame{std::move(init), {}, std::vector<int>(size_t(n), -1), 1.0}, 0);
  return dist;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string CompiledProgram::serialize() const {
  json j;
  j["format"] = "fpbc-program-v1";
  j["n"] = n;
  j["t"] = t;
  j["parity_sector"] = parity_sector;
  j["events"] = json::array();
  for (const auto& ev : events) {
    json je;
    if (std::holds_alternative<MeasurementOp>(ev)) {
      const auto& m = std::get<MeasurementOp>(ev);
      je["type"] = "measure";
      je["string"] = to_text(m.op);
      je["origin"] = to_string(m.origin);
      if (m.output_slot) je["slot"] = *m.output_slot;
    } else {
      const auto& f = std::get<PipelineBraid>(ev);
      je["type"] = "braid";
      je["string"] = to_text(f.generator);
      je["quarter_turns"] = f.quarter_turns;
      if (f.condition_gadget) je["condition_gadget"] = *f.condition_gadget;
    }
    j["events"].push_back(je);
  }
  return j.dump(2);
}

CompiledProgram CompiledProgram::parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("program JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object() || j.value("format", "") != "fpbc-program-v1")
    throw std::invalid_argument("not a fpbc-program-v1 file");
  CompiledProgram p;
  p.n = j.at("n").get<int>();
  p.t = j.at("t").get<int>();
  p.parity_sector = j.at("parity_sector").get<int>();
  const int nm = p.combined_modes();
  if (p.n < 1 || p.t < 0)
    throw std::invalid_argument("program has invalid n or t");
  for (const auto& je : j.at("events")) {
    const std::string type = je.at("type").get<std::string>();
    if (type == "measure") {
      MeasurementOp m;
      m.op = parse_text(je.at("string").get<std::string>(), nm);
      m.origin = parse_origin(je.at("origin").get<std::string>());
      if (je.contains("slot")) m.output_slot = je["slot"].get<int>();
      if (!m.op.is_hermitian() || !m.op.is_even())
        throw std::invalid_argument("measurement op is not a parity operator");
      p.events.emplace_back(std::move(m));
    } else if (type == "braid") {
      PipelineBraid f;
      f.generator = antiherm_normalize(
          parse_text(je.at("string").get<std::string>(), nm));
      f.quarter_turns = je.at("quarter_turns").get<int>();
      if (f.quarter_turns != 1 && f.quarter_turns != -1)
        throw std::invalid_argument("braid quarter_turns must be +-1");
      if (je.contains("condition_gadget"))
        f.condition_gadget = je["condition_gadget"].get<int>();
      p.events.emplace_back(std::move(f));
    } else {
      throw std::invalid_argument("unknown event type '" + type + "'");
    }
  }
  return p;
}

CompiledProgram load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open program file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return CompiledProgram::parse(ss.str());
}

}  // namespace fpbc
