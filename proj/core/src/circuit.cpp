#include "fpbc/circuit.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpbc {

using nlohmann::json;

std::vector<Diagnostic> validate(const FermionicCircuit& circuit) {
  std::vector<Diagnostic> out;
  if (circuit.n < 1) out.push_back({-1, "n must be >= 1"});
  if (circuit.t < 0) out.push_back({-1, "t must be >= 0"});
  if (circuit.parity_sector != 1 && circuit.parity_sector != -1)
    out.push_back({-1, "parity_sector must be +1 or -1"});
  const int nm = circuit.rn_modes();
  int t2_count = 0;
  for (size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    if (std::holds_alternative<BraidGate>(g)) {
      const auto& bg = std::get<BraidGate>(g);
      if (bg.generator.num_modes != nm)
        out.push_back({int(i), "braid generator not on the 2n+2 modes of R_n"});
      else if (!bg.generator.is_even())
        out.push_back({int(i), "braid generator has odd weight; parity-"
                               "preserving unitaries need even generators"});
      else if (bg.generator.weight() == 0)
        out.push_back({int(i), "braid generator is the identity"});
      if (bg.quarter_turns != 1 && bg.quarter_turns != -1)
        out.push_back({int(i), "braid angle must be +-1 quarter turns"});
    } else {
      const auto& t2 = std::get<T2Gate>(g);
      ++t2_count;
      if (t2.a < 1 || t2.a > nm || t2.b < 1 || t2.b > nm)
        out.push_back({int(i), "t2 index out of range 1..2n+2"});
      else if (t2.a == t2.b)
        out.push_back({int(i), "t2 gate needs two distinct Majoranas"});
    }
  }
  if (t2_count != circuit.t)
    out.push_back({-1, "t=" + std::to_string(circuit.t) + " but circuit has " +
                           std::to_string(t2_count) + " t2 gates"});
  return out;
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw std::invalid_argument("circuit schema error at " + path + ": " + what);
}

int require_int(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) schema_error(path + "/" + key, "missing field");
  if (!j[key].is_number_integer()) schema_error(path + "/" + key, "expected integer");
  return j[key].get<int>();
}

}  // namespace

FermionicCircuit parse_circuit(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("circuit JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object()) schema_error("/", "expected object");
  FermionicCircuit c;
  c.n = require_int(j, "", "n");
  c.t = require_int(j, "", "t");
  c.parity_sector = j.contains("parity_sector")
                        ? require_int(j, "", "parity_sector")
                        : 1;
  if (c.n < 1) schema_error("/n", "must be >= 1");
  if (c.t < 0) schema_error("/t", "must be >= 0");
  if (!j.contains("gates")) schema_error("/gates", "missing field");
  if (!j["gates"].is_array()) schema_error("/gates", "expected array");
  const int nm = c.rn_modes();
  for (size_t i = 0; i < j["gates"].size(); ++i) {
    const json& jg = j["gates"][i];
    const std::string path = "/gates/" + std::to_string(i);
    if (!jg.is_object()) schema_error(path, "expected object");
    if (!jg.contains("kind") || !jg["kind"].is_string())
      schema_error(path + "/kind", "expected string");
    const std::string kind = jg["kind"].get<std::string>();
    if (kind == "braid") {
      if (!jg.contains("string") || !jg["string"].is_string())
        schema_error(path + "/string", "expected string");
      BraidGate bg;
      try {
        bg.generator = parse_text(jg["string"].get<std::string>(), nm);
      } catch (const std::invalid_argument& e) {
        schema_error(path + "/string", e.what());
      }
      bg.quarter_turns = require_int(jg, path, "angle");
      c.gates.emplace_back(bg);
    } else if (kind == "t2") {
      T2Gate t2;
      t2.a = require_int(jg, path, "a");
      t2.b = require_int(jg, path, "b");
      c.gates.emplace_back(t2);
    } else {
      schema_error(path + "/kind", "unknown kind '" + kind + "'");
    }
  }
  auto diags = validate(c);
  if (!diags.empty()) {
    std::ostringstream oss;
    oss << "circuit validation failed:";
    for (const auto& d : diags)
      oss << "\n  gate " << d.gate_index << ": " << d.message;
    throw std::invalid_argument(oss.str());
  }
  return c;
}

std::string serialize_circuit(const FermionicCircuit& circuit) {
  json j;
  j["n"] = circuit.n;
  j["t"] = circuit.t;
  j["parity_sector"] = circuit.parity_sector;
  j["gates"] = json::array();
  for (const Gate& g : circuit.gates) {
    json jg;
    if (std::holds_alternative<BraidGate>(g)) {
      const auto& bg = std::get<BraidGate>(g);
      jg["kind"] = "braid";
      jg["string"] = to_text(bg.generator);
      jg["angle"] = bg.quarter_turns;
    } else {
      const auto& t2 = std::get<T2Gate>(g);
      jg["kind"] = "t2";
      jg["a"] = t2.a;
      jg["b"] = t2.b;
    }
    j["gates"].push_back(jg);
  }
  return j.dump(2);
}

FermionicCircuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open circuit file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

FermionicCircuit random_circuit(int n, int t, int braid_count, uint64_t seed) {
  if (n < 1 || t < 0 || braid_count < 0)
    throw std::invalid_argument("random_circuit needs n>=1, t>=0, braids>=0");
  FermionicCircuit c;
  c.n = n;
  c.t = t;
  c.parity_sector = 1;
  Rng rng = Rng(seed).substream("random_circuit");
  const int nm = c.rn_modes();

  // Positions of t2 gates among braid_count + t slots.
  std::vector<int> kinds(size_t(braid_count), 0);
  kinds.insert(kinds.end(), size_t(t), 1);
  for (size_t i = kinds.size(); i > 1; --i)
    std::swap(kinds[i - 1], kinds[rng.below(i)]);

  for (int kind : kinds) {
    if (kind == 1) {
      int a = 1 + int(rng.below(uint64_t(nm)));
      int b;
      do {
        b = 1 + int(rng.below(uint64_t(nm)));
      } while (b == a);
      c.gates.emplace_back(T2Gate{a, b});
    } else {
      const int max_w = nm;
      const int w = 2 * (1 + int(rng.below(uint64_t(max_w / 2))));
      std::vector<int> pool(static_cast<size_t>(nm));
      for (int m = 0; m < nm; ++m) pool[size_t(m)] = m;
      for (size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[rng.below(i)]);
      pool.resize(size_t(w));
      BraidGate bg;
      bg.generator = MajoranaString::hermitian(nm, pool);
      bg.quarter_turns = rng.coin_pm1();
      c.gates.emplace_back(bg);
    }
  }
  return c;
}

}  // namespace fpbc
