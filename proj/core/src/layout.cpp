#include "fpbc/layout.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpbc {

using nlohmann::json;

LadderLayout LadderLayout::make(int columns) {
  if (columns < 2)
    throw std::invalid_argument("ladder layout needs at least 2 columns");
  LadderLayout l;
  l.columns = columns;
  l.couplings.assign(size_t(2 * columns), TriJunctionCouplings{});

  // Default junction graph: every horizontal island has a JJ to both plates;
  // verticals reach a plate only through neighbors at their junctions.
  for (int i = 0; i < columns; ++i) {
    l.jj_edges.emplace_back(l.top_island(i), l.bus_node());
    l.jj_edges.emplace_back(l.top_island(i), l.ground_node());
    l.jj_edges.emplace_back(l.bottom_island(i), l.ground_node());
    l.jj_edges.emplace_back(l.bottom_island(i), l.bus_node());
  }
  for (int j = 0; j < 2 * columns; ++j) {
    const auto isl = l.junction_islands(j);
    l.jj_edges.emplace_back(isl[0], isl[1]);
    l.jj_edges.emplace_back(isl[0], isl[2]);
    l.jj_edges.emplace_back(isl[1], isl[2]);
  }
  return l;
}

int LadderLayout::junction_of_rank(int rank) const {
  if (rank < 1 || rank > num_mzms())
    throw std::invalid_argument("MZM rank out of range");
  const int col = (rank - 1) / 2;
  const int row = (rank - 1) % 2;
  return row == 0 ? col : columns + col;
}

int LadderLayout::rank_of_junction(int junction) const {
  return junction < columns ? 2 * junction + 1
                            : 2 * (junction - columns) + 2;
}

std::array<int, 3> LadderLayout::junction_islands(int junction) const {
  const int C = columns;
  if (junction < C) {
    const int i = junction;
    return {top_island((i - 1 + C) % C), top_island(i), vert_island(i)};
  }
  const int i = junction - C;
  return {bottom_island((i - 1 + C) % C), bottom_island(i), vert_island(i)};
}

std::string LadderLayout::island_name(int island) const {
  const int C = columns;
  if (island < C) return "vert" + std::to_string(island);
  if (island < 2 * C) return "top" + std::to_string(island - C);
  if (island < 3 * C) return "bottom" + std::to_string(island - 2 * C);
  if (island == bus_node()) return "bus";
  if (island == ground_node()) return "ground";
  throw std::invalid_argument("bad island id");
}

std::vector<std::pair<int, int>> order_and_pair(const std::vector<int>& mzms,
                                                const LadderLayout& layout) {
  if (mzms.size() % 2 != 0)
    throw std::invalid_argument("parity operators need an even MZM set");
  std::vector<int> sorted = mzms;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 1])
      throw std::invalid_argument("repeated MZM rank");
  for (int r : sorted)
    if (r < 1 || r > layout.num_mzms())
      throw std::invalid_argument("MZM rank out of range");
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i + 1 < sorted.size(); i += 2)
    pairs.emplace_back(sorted[i], sorted[i + 1]);
  return pairs;
}

std::vector<int> basic_path(std::pair<int, int> pair,
                            const LadderLayout& layout) {
  const int C = layout.columns;
  const auto decode = [&](int rank) {
    return std::pair<int, int>{(rank - 1) / 2, (rank - 1) % 2};  // col, row
  };
  auto [ca, ra] = decode(pair.first);
  auto [cb, rb] = decode(pair.second);
  if (pair.first >= pair.second)
    throw std::invalid_argument("basic_path expects an ordered rank pair");

  std::vector<int> isl;
  auto top_span = [&](int from, int to) {  // islands between top junctions
    for (int i = from; i < to; ++i) isl.push_back(layout.top_island(i));
  };
  if (ra == 0 && rb == 0) {  // A: top-rail segment
    top_span(ca, cb);
  } else if (ra == 0 && rb == 1 && ca == cb) {
    // Same-column hook: clockwise over the next column.
    isl.push_back(layout.top_island(ca));
    isl.push_back(layout.vert_island((ca + 1) % C));
    isl.push_back(layout.bottom_island(ca));
  } else if (ra == 0 && rb == 1) {  // B: segment + terminal vertical
    top_span(ca, cb);
    isl.push_back(layout.vert_island(cb));
  } else if (ra == 1 && rb == 0) {  // C: initial vertical + segment
    isl.push_back(layout.vert_island(ca));
    top_span(ca, cb);
  } else if (cb == ca + 1) {  // E: single bottom island
    isl.push_back(layout.bottom_island(ca));
  } else {  // D: vertical + segment + vertical
    isl.push_back(layout.vert_island(ca));
    top_span(ca, cb);
    isl.push_back(layout.vert_island(cb));
  }
  return isl;
}

namespace {

// BFS forest over same-assignment JJ edges rooted at each plate; returns the
// chosen on-edges or the set of islands cut off from their plate.
struct Routing {
  std::vector<char> jj_on;
  std::vector<int> unreachable;
};

Routing route(const std::vector<char>& bus_assigned,
              const LadderLayout& layout) {
  const int nodes = layout.num_islands() + 2;
  std::vector<std::vector<int>> incident(static_cast<size_t>(nodes));
  for (size_t e = 0; e < layout.jj_edges.size(); ++e) {
    incident[size_t(layout.jj_edges[e].first)].push_back(int(e));
    incident[size_t(layout.jj_edges[e].second)].push_back(int(e));
  }
  auto assigned_bus = [&](int node) {
    if (node == layout.bus_node()) return true;
    if (node == layout.ground_node()) return false;
    return bus_assigned[size_t(node)] != 0;
  };

  Routing r;
  r.jj_on.assign(layout.jj_edges.size(), 0);
  std::vector<char> seen(size_t(nodes), 0);
  for (int root : {layout.bus_node(), layout.ground_node()}) {
    std::deque<int> queue{root};
    seen[size_t(root)] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int e : incident[size_t(u)]) {
        const auto [x, y] = layout.jj_edges[size_t(e)];
        const int v = x == u ? y : x;
        if (v == layout.bus_node() || v == layout.ground_node()) continue;
        if (assigned_bus(v) != assigned_bus(u) || seen[size_t(v)]) continue;
        seen[size_t(v)] = 1;
        r.jj_on[size_t(e)] = 1;
        queue.push_back(v);
      }
    }
  }
  for (int isl = 0; isl < layout.num_islands(); ++isl)
    if (!seen[size_t(isl)]) r.unreachable.push_back(isl);
  return r;
}

}  // namespace

IslandConfig config_for_parity(const std::vector<int>& mzms,
                               const LadderLayout& layout) {
  IslandConfig cfg;
  cfg.bus_assigned.assign(size_t(layout.num_islands()), 0);
  for (const auto& pair : order_and_pair(mzms, layout))
    for (int isl : basic_path(pair, layout))
      cfg.bus_assigned[size_t(isl)] ^= 1;

  Routing r = route(cfg.bus_assigned, layout);
  if (!r.unreachable.empty()) {
    std::ostringstream oss;
    oss << "no JJ state satisfies connectivity; cut off from their plate:";
    for (int isl : r.unreachable) oss << ' ' << layout.island_name(isl);
    throw std::invalid_argument(oss.str());
  }
  cfg.jj_on = std::move(r.jj_on);
  return cfg;
}

std::optional<std::string> realizability_error(const IslandConfig& config,
                                               const LadderLayout& layout) {
  const int nodes = layout.num_islands() + 2;
  auto assigned_bus = [&](int node) {
    if (node == layout.bus_node()) return true;
    if (node == layout.ground_node()) return false;
    return config.bus_assigned[size_t(node)] != 0;
  };
  // No on-JJ may join the subsystems.
  for (size_t e = 0; e < layout.jj_edges.size(); ++e) {
    if (!config.jj_on[e]) continue;
    const auto [x, y] = layout.jj_edges[e];
    if (assigned_bus(x) != assigned_bus(y))
      return "on-JJ joins bus and ground subsystems: " +
             layout.island_name(x) + "-" + layout.island_name(y);
  }
  // Every island must reach its plate through on-JJs.
  std::vector<std::vector<int>> adj(static_cast<size_t>(nodes));
  for (size_t e = 0; e < layout.jj_edges.size(); ++e) {
    if (!config.jj_on[e]) continue;
    adj[size_t(layout.jj_edges[e].first)].push_back(layout.jj_edges[e].second);
    adj[size_t(layout.jj_edges[e].second)].push_back(layout.jj_edges[e].first);
  }
  std::vector<char> seen(size_t(nodes), 0);
  std::deque<int> queue{layout.bus_node(), layout.ground_node()};
  seen[size_t(layout.bus_node())] = 1;
  seen[size_t(layout.ground_node())] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[size_t(u)])
      if (!seen[size_t(v)]) {
        seen[size_t(v)] = 1;
        queue.push_back(v);
      }
  }
  for (int isl = 0; isl < layout.num_islands(); ++isl)
    if (!seen[size_t(isl)])
      return "island " + layout.island_name(isl) + " cut off from its plate";
  return std::nullopt;
}

namespace {

// The joint bus-island parity as a string over junction-leg modes
// (3 per junction, padded even), one i gamma gamma factor per bus island.
MajoranaString bus_parity_string(const IslandConfig& config,
                                 const LadderLayout& layout) {
  const int J = layout.num_junctions();
  const int leg_modes = ((3 * J + 1) / 2) * 2;
  MajoranaString p = MajoranaString::identity(leg_modes);
  for (int isl = 0; isl < layout.num_islands(); ++isl) {
    if (!config.bus_assigned[size_t(isl)]) continue;
    std::vector<int> ends;
    for (int j = 0; j < J; ++j) {
      const auto legs = layout.junction_islands(j);
      for (int a = 0; a < 3; ++a)
        if (legs[size_t(a)] == isl) ends.push_back(3 * j + a);
    }
    if (ends.size() != 2)
      throw std::logic_error("island does not have exactly two junction ends");
    p = multiply(p, MajoranaString::hermitian(leg_modes, ends));
  }
  return p;
}

}  // namespace

ReadoutOperator readout_operator(const IslandConfig& config,
                                 const LadderLayout& layout) {
  const MajoranaString parity = bus_parity_string(config, layout);
  const ProjectedString proj = project_low_energy(parity, layout.couplings);

  // proj.q_string is indexed by junction id; re-index by MZM rank,
  // tracking the reordering sign of the gamma_{j,0} product.
  const std::vector<int> jids = proj.q_string.support.set_bits();
  std::vector<int> ranks;
  for (int j : jids) ranks.push_back(layout.rank_of_junction(j) - 1);
  int inversions = 0;
  for (size_t i = 0; i < ranks.size(); ++i)
    for (size_t k = i + 1; k < ranks.size(); ++k)
      if (ranks[i] > ranks[k]) ++inversions;

  ReadoutOperator out;
  const int q_modes = ((layout.num_mzms() + 1) / 2) * 2;
  out.q_string = MajoranaString::identity(q_modes);
  for (int r : ranks) out.q_string.support.set(r);
  out.q_string.phase_power =
      (proj.q_string.phase_power + 2 * (inversions & 1)) % 4;
  out.scalar = proj.scalar;
  out.shift_magnitude = proj.shift_magnitude;

  // Fold a negative scalar's sign into the string so Q = scalar * q_string
  // keeps scalar's sign explicit and the string Hermitian-canonical.
  if (!out.q_string.is_hermitian())
    throw std::logic_error("projected readout operator is not Hermitian");
  return out;
}

double shift_product(const IslandConfig& config, const LadderLayout& layout) {
  const MajoranaString parity = bus_parity_string(config, layout);
  double prod = 1.0;
  for (int j = 0; j < layout.num_junctions(); ++j) {
    int count = 0;
    double factor = 1.0;
    std::vector<int> legs;
    for (int a = 1; a <= 3; ++a)
      if (parity.support.test(3 * j + a - 1)) legs.push_back(a);
    const auto& c = layout.couplings[size_t(j)];
    const double norm = c.A_norm();
    if (legs.size() == 1) {
      count = 1;
      factor = c.A[size_t(legs[0] - 1)] / norm;
    } else if (legs.size() == 2) {
      const int a = legs[0], b = legs[1];
      const int cidx = 6 - a - b;
      const int eps = (a == 1 && b == 2) || (a == 2 && b == 3) ? 1 : -1;
      count = 2;
      factor = -double(eps) * c.A[size_t(cidx - 1)] / norm;
    }
    if (count > 0) prod *= factor;
  }
  return prod;
}

double omega_shift(const IslandConfig& config, const LadderLayout& layout,
                   const DeviceParams& device) {
  return 0.5 * shift_constant(device) *
         (device.delta_eps1 + device.delta_eps0) *
         shift_product(config, layout);
}

std::string serialize_config(const IslandConfig& config,
                             const LadderLayout& layout,
                             const std::vector<int>& mzms) {
  const ReadoutOperator q = readout_operator(config, layout);
  json j;
  j["columns"] = layout.columns;
  j["mzms"] = mzms;
  json bus = json::array(), ground = json::array();
  for (int isl = 0; isl < layout.num_islands(); ++isl)
    (config.bus_assigned[size_t(isl)] ? bus : ground)
        .push_back(layout.island_name(isl));
  j["bus_islands"] = bus;
  j["ground_islands"] = ground;
  json on = json::array();
  for (size_t e = 0; e < layout.jj_edges.size(); ++e)
    if (config.jj_on[e])
      on.push_back({layout.island_name(layout.jj_edges[e].first),
                    layout.island_name(layout.jj_edges[e].second)});
  j["jj_on"] = on;
  j["q_string"] = to_text(q.q_string);
  j["scalar"] = q.scalar;
  j["shift_magnitude"] = q.shift_magnitude;
  j["shift_product"] = shift_product(config, layout);
  json coup = json::array();
  for (const auto& c : layout.couplings)
    coup.push_back({{"E_M", c.E_M}, {"A", c.A}});
  j["couplings"] = coup;
  return j.dump(2);
}

ConfigSummary parse_config_summary(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config JSON parse error: ") +
                                e.what());
  }
  ConfigSummary s;
  s.columns = j.at("columns").get<int>();
  s.shift_product = j.at("shift_product").get<double>();
  s.shift_magnitude = j.at("shift_magnitude").get<double>();
  return s;
}

}  // namespace fpbc
