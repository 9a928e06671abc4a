#pragma once

#include <cstdint>
#include <vector>

#include "fpbc/bitvec.hpp"
#include "fpbc/rng.hpp"

namespace fpbc {

// Periodic d-dimensional cubic lattice of readout islands, c MZMs each.
struct CubicLattice {
  int m = 0;  // side length
  int d = 1;  // dimension
  int c = 2;  // MZMs per island, even
  int r = 1;  // braid radius

  int64_t sites() const;
  int64_t mzm_count() const { return sites() * c; }
  std::vector<int> coords(int64_t site) const;
  int64_t site_of(const std::vector<int>& coords) const;
  // L1 distance with periodic wrap, counted in lattice links.
  int distance(int64_t a, int64_t b) const;
};

// Occupancy pattern of a fermion parity operator over all MZMs.
struct ParitySample {
  BitVec occupancy;  // mzm_count bits, even popcount
};

ParitySample random_even_sample(const CubicLattice& lattice, Rng& rng);

struct BraidCost {
  int cost = 0;
  bool exact = true;  // min-weight matching solved exactly (<= 12 odd islands)
};

// 0 when every island has even weight; otherwise the minimum over perfect
// matchings of odd-weight islands of sum ceil(distance / r).
BraidCost braid_cost_detail(const ParitySample& sample,
                            const CubicLattice& lattice);
int braid_cost_of(const ParitySample& sample, const CubicLattice& lattice);

// Strict: braid cost < R.
bool is_R_measurable(const ParitySample& sample, const CubicLattice& lattice,
                     int R);

// True iff some translated division into d-cubes of side rR has even sample
// weight in every region. Requires rR | m.
bool even_division_exists(const ParitySample& sample,
                          const CubicLattice& lattice, int R);

// (rR)^d * 2^{1 - (m/rR)^d}; the c parameter cancels out of the ratio.
double analytic_bound(int m, int d, int r, int R, int c);

struct FractionEstimate {
  double estimate = 0;
  double stderr_ = 0;
  double bound = 0;
  uint64_t trials = 0;
};

// Monte Carlo over uniform even-weight samples; deterministic per seed and
// independent of the thread count (per-trial substreams). Threads capped by
// the FPBC_THREADS environment variable.
FractionEstimate estimate_fraction(const CubicLattice& lattice, int R,
                                   uint64_t trials, uint64_t seed);

// Exact fraction by enumerating all even samples; needs mzm_count <= 20.
double exhaustive_fraction(const CubicLattice& lattice, int R);

}  // namespace fpbc
