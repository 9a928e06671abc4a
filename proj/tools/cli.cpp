#include "cli.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fpbc/braid.hpp"
#include "fpbc/braid_cost.hpp"
#include "fpbc/circuit.hpp"
#include "fpbc/compiler.hpp"
#include "fpbc/device.hpp"
#include "fpbc/io.hpp"
#include "fpbc/layout.hpp"
#include "fpbc/simulator.hpp"

namespace fpbc::cli {

using nlohmann::json;

namespace {

struct Emit {
  std::optional<std::string> out_path;
  std::string format = "json";
  std::ostream& out;
  std::ostream& err;

  // Writes the result plus its manifest; stdout stays reserved for results.
  void result(const std::string& content, RunManifest manifest) const {
    if (out_path) {
      atomic_write_file(*out_path, content);
      manifest.add_output_content(*out_path, content);
      atomic_write_file(*out_path + ".manifest.json", manifest.to_json());
    } else {
      out << content;
      if (!content.empty() && content.back() != '\n') out << '\n';
      err << manifest.to_json() << '\n';
    }
  }
};

template <typename V>
std::string render_map(const std::map<std::string, V>& m,
                       const std::string& format) {
  if (format == "csv") {
    std::ostringstream oss;
    for (const auto& [k, v] : m) oss << k << ',' << v << '\n';
    return oss.str();
  }
  json j(m);
  return j.dump(2);
}

int cmd_oracle(const std::string& circuit_path, bool exact, int shots,
               uint64_t seed, bool have_seed, const Emit& emit) {
  FermionicCircuit c = load_circuit_file(circuit_path);
  RunManifest man;
  man.command = "oracle";
  man.add_input(circuit_path);
  if (exact) {
    emit.result(render_map(simulate_circuit_exact(c), emit.format), man);
    return 0;
  }
  if (!have_seed) throw std::invalid_argument("--shots needs --seed");
  man.seed = seed;
  man.has_seed = true;
  // Shot sampling from the exact circuit distribution.
  auto dist = simulate_circuit_exact(c);
  std::map<std::string, uint64_t> counts;
  Rng base(seed);
  for (int i = 0; i < shots; ++i) {
    Rng r = base.substream("oracle-shot", uint64_t(i));
    double u = r.uniform01();
    std::string picked = dist.rbegin()->first;
    for (const auto& [k, p] : dist) {
      u -= p;
      if (u <= 0) {
        picked = k;
        break;
      }
    }
    counts[picked] += 1;
  }
  emit.result(render_map(counts, emit.format), man);
  return 0;
}

int cmd_compile(const std::string& circuit_path, bool stats, const Emit& emit) {
  FermionicCircuit c = load_circuit_file(circuit_path);
  CompiledProgram p = CompiledProgram::compile(c);
  RunManifest man;
  man.command = "compile";
  man.add_input(circuit_path);
  if (stats || p.t <= 8) {
    const ProgramStats s = p.validate_and_stats();
    emit.err << "paths=" << s.paths << " max_quantum=" << s.max_quantum
             << " max_coins=" << s.max_coins
             << " max_derived=" << s.max_derived << '\n';
  }
  emit.result(p.serialize(), man);
  return 0;
}

int cmd_run(const std::string& program_path, int shots, uint64_t seed,
            const Emit& emit) {
  CompiledProgram p = load_program_file(program_path);
  RunManifest man;
  man.command = "run";
  man.add_input(program_path);
  man.seed = seed;
  man.has_seed = true;
  emit.result(render_map(p.run(shots, seed), emit.format), man);
  return 0;
}

int cmd_layout(const std::string& mzms_csv, int columns,
               const std::string& couplings_path, const Emit& emit) {
  LadderLayout layout = LadderLayout::make(columns);
  RunManifest man;
  man.command = "layout";
  if (!couplings_path.empty()) {
    man.add_input(couplings_path);
    json j = json::parse(read_file(couplings_path));
    const auto& arr = j.at("A");
    if (int(arr.size()) != layout.num_junctions())
      throw std::invalid_argument("couplings file needs one A per junction");
    for (size_t k = 0; k < arr.size(); ++k)
      for (int a = 0; a < 3; ++a)
        layout.couplings[k].A[size_t(a)] = arr[k][size_t(a)].get<double>();
  }
  std::vector<int> mzms;
  std::stringstream ss(mzms_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) mzms.push_back(std::stoi(tok));
  IslandConfig cfg = config_for_parity(mzms, layout);
  if (auto bad = realizability_error(cfg, layout))
    throw std::logic_error("produced config fails realizability: " + *bad);
  emit.result(serialize_config(cfg, layout, mzms), man);
  return 0;
}

int cmd_shift(const std::string& config_path, const std::string& device_path,
              const Emit& emit) {
  const ConfigSummary cfg = parse_config_summary(read_file(config_path));
  const DeviceParams dev = load_device_file(device_path);
  RunManifest man;
  man.command = "shift";
  man.add_input(config_path);
  man.add_input(device_path);
  if (!dev.transmon_regime_ok())
    emit.err << "warning: E_J/E_C < 20, outside the transmon regime\n";
  if (!dev.dispersive_ok())
    emit.err << "warning: dispersive condition violated\n";
  json j;
  j["omega_shift"] =
      0.5 * shift_constant(dev) * (dev.delta_eps1 + dev.delta_eps0) *
      cfg.shift_product;
  j["C"] = shift_constant(dev);
  j["delta_eps"] = {dev.delta_eps0, dev.delta_eps1};
  j["shift_product"] = cfg.shift_product;
  j["shift_magnitude"] = cfg.shift_magnitude;
  emit.result(j.dump(2), man);
  return 0;
}

int cmd_braid_cost(int m, int d, int c, int r, int R, uint64_t trials,
                   uint64_t seed, bool exhaustive, const Emit& emit) {
  CubicLattice lattice{m, d, c, r};
  RunManifest man;
  man.command = "braid-cost";
  man.seed = seed;
  man.has_seed = true;
  if (emit.format == "csv") {
    std::ostringstream oss;
    if (exhaustive) {
      const double f = exhaustive_fraction(lattice, R);
      oss << "exhaustive,bound\n"
          << f << ',' << analytic_bound(m, d, r, R, c) << '\n';
    } else {
      const FractionEstimate fe = estimate_fraction(lattice, R, trials, seed);
      oss << "estimate,stderr,bound\n"
          << fe.estimate << ',' << fe.stderr_ << ',' << fe.bound << '\n';
    }
    emit.result(oss.str(), man);
    return 0;
  }
  json j;
  if (exhaustive) {
    j["exhaustive"] = exhaustive_fraction(lattice, R);
  } else {
    const FractionEstimate fe = estimate_fraction(lattice, R, trials, seed);
    j["estimate"] = fe.estimate;
    j["stderr"] = fe.stderr_;
    j["trials"] = fe.trials;
  }
  j["bound"] = analytic_bound(m, d, r, R, c);
  emit.result(j.dump(2), man);
  return 0;
}

int cmd_synthesize(const std::string& word_path, int random_count, int modes,
                   uint64_t seed, bool reduce, const Emit& emit) {
  RunManifest man;
  man.command = "synthesize";
  BraidWord input;
  if (!word_path.empty()) {
    man.add_input(word_path);
    input = parse_word(read_file(word_path));
  } else {
    man.seed = seed;
    man.has_seed = true;
    input = random_word(modes, random_count, seed);
  }
  const BraidTableau target = tableau_of(input, input.num_modes);
  BraidWord synth = synthesize(target);
  if (reduce) synth = reduce_to_w4(synth);
  if (!(tableau_of(synth, input.num_modes) == target))
    throw std::logic_error("synthesized word does not reproduce the tableau");
  emit.result(serialize_word(synth), man);
  return 0;
}

int cmd_selftest(std::ostream& out);

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"fpbc: fermion-parity-based computation toolkit"};
  app.require_subcommand(1);

  std::string circuit_path, program_path, config_path, device_path, word_path,
      couplings_path, out_path, format = "json", mzms_csv;
  int shots = 0, columns = 0, random_count = 5, modes = 8;
  int m = 8, d = 1, c = 2, r = 1, R = 2;
  uint64_t seed = 0, trials = 10000;
  bool exact = false, stats = false, exhaustive = false, reduce = false;
  bool have_seed = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", out_path, "write result to this file");
    sub->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* oracle = app.add_subcommand("oracle", "exact circuit distribution");
  oracle->add_option("--circuit", circuit_path)->required();
  oracle->add_flag("--exact", exact);
  oracle->add_option("--shots", shots);
  oracle->add_option("--seed", seed)->each([&](const std::string&) {
    have_seed = true;
  });
  add_common(oracle);

  auto* compile = app.add_subcommand("compile", "circuit -> program");
  compile->add_option("--circuit", circuit_path)->required();
  compile->add_flag("--stats", stats);
  add_common(compile);

  auto* run = app.add_subcommand("run", "sample a compiled program");
  run->add_option("--program", program_path)->required();
  run->add_option("--shots", shots)->required();
  run->add_option("--seed", seed)->required();
  add_common(run);

  auto* layout = app.add_subcommand("layout", "measurement configuration");
  layout->add_option("--mzms", mzms_csv)->required();
  layout->add_option("--columns", columns)->required();
  layout->add_option("--couplings", couplings_path);
  add_common(layout);

  auto* shift = app.add_subcommand("shift", "resonator shift for a config");
  shift->add_option("--config", config_path)->required();
  shift->add_option("--device", device_path)->required();
  add_common(shift);

  auto* bc = app.add_subcommand("braid-cost", "R-measurable fraction");
  bc->add_option("--m", m)->required();
  bc->add_option("--d", d)->required();
  bc->add_option("--c", c)->required();
  bc->add_option("--r", r)->required();
  bc->add_option("--R", R)->required();
  bc->add_option("--trials", trials);
  bc->add_option("--seed", seed);
  bc->add_flag("--exhaustive", exhaustive);
  add_common(bc);

  auto* synth = app.add_subcommand("synthesize", "braid word factorization");
  synth->add_option("--word", word_path);
  synth->add_option("--random", random_count);
  synth->add_option("--modes", modes);
  synth->add_option("--seed", seed);
  synth->add_flag("--reduce", reduce);
  add_common(synth);

  app.add_subcommand("selftest", "run the built-in invariant checks");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  }

  Emit emit{out_path.empty() ? std::nullopt
                             : std::optional<std::string>(out_path),
            format, out, err};
  try {
    if (app.got_subcommand("oracle"))
      return cmd_oracle(circuit_path, exact || shots == 0, shots, seed,
                        have_seed, emit);
    if (app.got_subcommand("compile")) return cmd_compile(circuit_path, stats, emit);
    if (app.got_subcommand("run")) return cmd_run(program_path, shots, seed, emit);
    if (app.got_subcommand("layout"))
      return cmd_layout(mzms_csv, columns, couplings_path, emit);
    if (app.got_subcommand("shift")) return cmd_shift(config_path, device_path, emit);
    if (app.got_subcommand("braid-cost"))
      return cmd_braid_cost(m, d, c, r, R, trials, seed, exhaustive, emit);
    if (app.got_subcommand("synthesize"))
      return cmd_synthesize(word_path, random_count, modes, seed, reduce, emit);
    if (app.got_subcommand("selftest")) return cmd_selftest(out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  err << "error: unknown subcommand\n";
  return 1;
}

namespace {

int cmd_selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  {  // algebra: associativity and Hermitian squares
    Rng rng(101);
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      auto rand_str = [&](int nm) {
        MajoranaString s = MajoranaString::identity(nm);
        for (int mm = 0; mm < nm; ++mm)
          if (rng.next_u64() & 1) s.support.set(mm);
        s.phase_power = int(rng.below(4));
        return s;
      };
      auto a = rand_str(10), b = rand_str(10), cc = rand_str(10);
      ok = multiply(multiply(a, b), cc) == multiply(a, multiply(b, cc));
      if (ok) {
        const int w = a.weight();
        a.phase_power = (w * (w - 1) / 2) % 2;
        ok = multiply(a, a) == MajoranaString::identity(10);
      }
      if (ok) ok = parse_text(to_text(b), 10) == b;
    }
    check("majorana algebra invariants", ok);
  }

  {  // braid synthesis round trip
    bool ok = true;
    for (uint64_t s = 0; s < 4 && ok; ++s) {
      BraidWord w = random_word(8, 5, 2000 + s);
      BraidTableau tab = tableau_of(w, 8);
      ok = tableau_of(synthesize(tab), 8) == tab;
    }
    check("braid synthesis round trip", ok);
  }

  {  // W6 reduction
    BraidWord w;
    w.num_modes = 8;
    w.factors.push_back(BraidFactor::make(
        MajoranaString::hermitian(8, std::vector<int>{0, 1, 2, 3, 4, 5}), 1));
    BraidWord red = reduce_to_w4(w);
    bool ok = tableau_of(red, 8) == tableau_of(w, 8);
    for (const auto& f : red.factors) ok = ok && f.generator.weight() <= 4;
    check("weight-6 factor reduction", ok);
  }

  {  // compiled programs match the dense oracle
    bool ok = true;
    for (uint64_t s = 0; s < 6 && ok; ++s) {
      FermionicCircuit circ =
          random_circuit(1 + int(s % 2), 1 + int(s / 3), 3, 3000 + s);
      CompiledProgram prog = CompiledProgram::compile(circ);
      ok = total_variation(prog.exact_distribution(),
                           simulate_circuit_exact(circ)) < 1e-9;
      if (ok) ok = prog.validate_and_stats().max_quantum <= circ.t;
    }
    check("compiler matches dense oracle", ok);
  }

  {  // layout endpoint invariant + realizability
    LadderLayout layout = LadderLayout::make(8);
    Rng rng(104);
    bool ok = true;
    for (int trial = 0; trial < 300 && ok; ++trial) {
      std::vector<int> mzms;
      for (int rank = 1; rank <= layout.num_mzms(); ++rank)
        if (rng.next_u64() & 1) mzms.push_back(rank);
      if (mzms.size() % 2) mzms.pop_back();
      if (mzms.empty()) continue;
      IslandConfig cfg = config_for_parity(mzms, layout);
      ok = !realizability_error(cfg, layout).has_value();
      if (ok) {
        auto q = readout_operator(cfg, layout);
        std::vector<int> support;
        for (int mode : q.q_string.support.set_bits())
          support.push_back(mode + 1);
        ok = support == mzms;
      }
    }
    check("layout endpoint invariant", ok);
  }

  {  // braid cost: division lemma and the counting bound
    CubicLattice lattice{6, 1, 2, 1};
    Rng rng(105);
    bool ok = true;
    for (int trial = 0; trial < 3000 && ok; ++trial) {
      ParitySample s = random_even_sample(lattice, rng);
      if (is_R_measurable(s, lattice, 2))
        ok = even_division_exists(s, lattice, 2);
    }
    if (ok) {
      CubicLattice tiny{4, 1, 2, 1};
      ok = exhaustive_fraction(tiny, 2) <= analytic_bound(4, 1, 1, 2, 2);
    }
    check("braid-cost lemmas", ok);
  }

  {  // dispersive second-order formula vs exact block
    DeviceParams dev;
    dev.E_J = 50;
    dev.E_C = 1;
    dev.g = 0.3;
    dev.omega0 = dev.transmon_splitting() - 4.0;
    dev.delta_eps0 = 0.01;
    dev.delta_eps1 = 0.02;
    const double exact =
        dispersive_shift_exact(dev, 1) - dispersive_shift_exact(dev, -1);
    const double approx = shift_constant(dev) * dev.delta_plus();
    const double gd = dev.g / dev.detuning();
    const double dd = dev.delta_plus() / dev.detuning();
    check("dispersive shift expansion",
          std::abs(exact - approx) / std::abs(exact) <=
              5 * gd * gd + 5 * dd * dd);
  }

  {  // manifest hashing
    check("sha256 test vector",
          sha256_hex("abc") ==
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace

}  // namespace fpbc::cli
