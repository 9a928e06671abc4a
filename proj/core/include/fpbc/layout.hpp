#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpbc/device.hpp"
#include "fpbc/majorana.hpp"

namespace fpbc {

// Ladder hardware model with C columns, closed into a ring so every
// tri-junction has exactly three incident island ends (the paper's layout
// continues indefinitely in both directions; the ring is the finite
// closure). Islands, by id:
//   vert[i]   = i          between top junction i and bottom junction i
//   top[i]    = C + i      between top junctions i and (i+1) mod C
//   bottom[i] = 2C + i     between bottom junctions i and (i+1) mod C
// Tri-junctions: top junction i has id i, bottom junction i has id C+i.
// Each junction's legs are 1 = left island, 2 = right island, 3 = vertical,
// matching the coupling components A_{j,1..3}.
//
// MZMs are ranked column-major, top before bottom (1-based): rank 2i+1 is
// the top junction of column i, rank 2i+2 the bottom one. "Right of or
// directly below" therefore means higher rank.
struct LadderLayout {
  int columns = 0;
  std::vector<TriJunctionCouplings> couplings;      // per junction id, 2C
  std::vector<std::pair<int, int>> jj_edges;        // island/terminal graph

  static LadderLayout make(int columns);

  int num_islands() const { return 3 * columns; }
  int num_junctions() const { return 2 * columns; }
  int num_mzms() const { return 2 * columns; }
  int bus_node() const { return num_islands(); }
  int ground_node() const { return num_islands() + 1; }

  int vert_island(int col) const { return col; }
  int top_island(int col) const { return columns + col; }
  int bottom_island(int col) const { return 2 * columns + col; }

  // rank is 1-based; junction ids as above.
  int junction_of_rank(int rank) const;
  int rank_of_junction(int junction) const;

  // The three (island, leg) incidences of a junction, legs 1..3.
  std::array<int, 3> junction_islands(int junction) const;

  std::string island_name(int island) const;
};

struct IslandConfig {
  std::vector<char> bus_assigned;  // per island id
  std::vector<char> jj_on;         // per layout.jj_edges index
};

// Total order per the layout rule, then consecutive pairing. Throws on an
// odd-size set.
std::vector<std::pair<int, int>> order_and_pair(const std::vector<int>& mzms,
                                                const LadderLayout& layout);

// Shortest clockwise island path joining a rank pair (from the catalog of
// basic shapes: top-rail segment, segment + terminal vertical, initial
// vertical + segment, vertical + segment + vertical, single bottom island,
// and the three-island hook for a same-column pair).
std::vector<int> basic_path(std::pair<int, int> pair,
                            const LadderLayout& layout);

// XOR of the basic paths -> bus assignment; jj_on picked as BFS forests
// hanging every island off its own plate. Throws std::invalid_argument
// naming the cut when no on-assignment satisfies the connectivity rules.
IslandConfig config_for_parity(const std::vector<int>& mzms,
                               const LadderLayout& layout);

// Empty when the config's on-JJs connect every island to its plate and no
// on-JJ joins the two subsystems.
std::optional<std::string> realizability_error(const IslandConfig& config,
                                               const LadderLayout& layout);

// Dispersively measured operator for a configuration: Q = scalar * q_string
// with q_string over MZM ranks (mode = rank - 1), Hermitian-canonical, and
// scalar carrying every per-junction projection factor. shift_magnitude is
// the |A_alpha|/|A| product over junctions with one or two bus islands.
struct ReadoutOperator {
  MajoranaString q_string;
  double scalar = 1.0;
  double shift_magnitude = 1.0;
};

ReadoutOperator readout_operator(const IslandConfig& config,
                                 const LadderLayout& layout);

// Resonance shift (C/2)(de1 + de0) * prod A_{j,alpha_j}/|A_j| over
// junctions with one or two bus-connected islands.
double omega_shift(const IslandConfig& config, const LadderLayout& layout,
                   const DeviceParams& device);

// The signed product in omega_shift, exposed for serialization.
double shift_product(const IslandConfig& config, const LadderLayout& layout);

std::string serialize_config(const IslandConfig& config,
                             const LadderLayout& layout,
                             const std::vector<int>& mzms);

// Reads back what `shift` needs from a config file: the signed factor
// product (plus echo of columns for sanity checks).
struct ConfigSummary {
  int columns = 0;
  double shift_product = 1.0;
  double shift_magnitude = 1.0;
};
ConfigSummary parse_config_summary(const std::string& json_text);

}  // namespace fpbc
