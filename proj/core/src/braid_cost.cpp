#include "fpbc/braid_cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace fpbc {

int64_t CubicLattice::sites() const {
  int64_t s = 1;
  for (int k = 0; k < d; ++k) s *= m;
  return s;
}

std::vector<int> CubicLattice::coords(int64_t site) const {
  std::vector<int> x(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    x[size_t(k)] = int(site % m);
    site /= m;
  }
  return x;
}

int64_t CubicLattice::site_of(const std::vector<int>& coords) const {
  int64_t s = 0;
  for (int k = d; k-- > 0;) s = s * m + coords[size_t(k)];
  return s;
}

int CubicLattice::distance(int64_t a, int64_t b) const {
  const auto xa = coords(a), xb = coords(b);
  int dist = 0;
  for (int k = 0; k < d; ++k) {
    const int delta = std::abs(xa[size_t(k)] - xb[size_t(k)]);
    dist += std::min(delta, m - delta);
  }
  return dist;
}

ParitySample random_even_sample(const CubicLattice& lattice, Rng& rng) {
  const int64_t M = lattice.mzm_count();
  ParitySample s;
  s.occupancy = BitVec(int(M));
  for (int64_t i = 0; i < M; ++i)
    if (rng.next_u64() & 1) s.occupancy.set(int(i));
  if (s.occupancy.popcount() & 1) s.occupancy.flip(int(M) - 1);
  return s;
}

namespace {

std::vector<int64_t> odd_islands(const ParitySample& sample,
                                 const CubicLattice& lattice) {
  std::vector<int64_t> odd;
  for (int64_t v = 0; v < lattice.sites(); ++v) {
    int w = 0;
    for (int k = 0; k < lattice.c; ++k)
      w += sample.occupancy.test(int(v * lattice.c + k));
    if (w & 1) odd.push_back(v);
  }
  return odd;
}

int pair_cost(int64_t a, int64_t b, const CubicLattice& lattice) {
  return (lattice.distance(a, b) + lattice.r - 1) / lattice.r;
}

// Exact min-weight perfect matching by branching on the first unmatched
// island; fine up to ~12 odd islands ((11)!! pairings).
int match_exact(std::vector<int64_t>& odd, const CubicLattice& lattice,
                int best_so_far) {
  if (odd.empty()) return 0;
  const int64_t first = odd[0];
  int best = best_so_far;
  for (size_t i = 1; i < odd.size(); ++i) {
    const int c0 = pair_cost(first, odd[size_t(i)], lattice);
    if (c0 >= best) continue;
    std::vector<int64_t> rest;
    rest.reserve(odd.size() - 2);
    for (size_t k = 1; k < odd.size(); ++k)
      if (k != i) rest.push_back(odd[k]);
    const int sub = match_exact(rest, lattice, best - c0);
    if (c0 + sub < best) best = c0 + sub;
  }
  return best;
}

int match_greedy(std::vector<int64_t> odd, const CubicLattice& lattice) {
  int total = 0;
  while (!odd.empty()) {
    const int64_t first = odd[0];
    size_t pick = 1;
    int best = pair_cost(first, odd[1], lattice);
    for (size_t i = 2; i < odd.size(); ++i) {
      const int ci = pair_cost(first, odd[i], lattice);
      if (ci < best) {
        best = ci;
        pick = i;
      }
    }
    total += best;
    odd.erase(odd.begin() + long(pick));
    odd.erase(odd.begin());
  }
  return total;
}

int env_threads() {
  if (const char* env = std::getenv("FPBC_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

}  // namespace

BraidCost braid_cost_detail(const ParitySample& sample,
                            const CubicLattice& lattice) {
  if (sample.occupancy.popcount() & 1)
    throw std::invalid_argument("parity sample has odd weight");
  std::vector<int64_t> odd = odd_islands(sample, lattice);
  if (odd.size() & 1)
    throw std::logic_error("odd count of odd-weight islands");
  if (odd.empty()) return {0, true};
  if (odd.size() <= 12) {
    const int upper = match_greedy(odd, lattice) + 1;
    return {match_exact(odd, lattice, upper), true};
  }
  return {match_greedy(std::move(odd), lattice), false};
}

int braid_cost_of(const ParitySample& sample, const CubicLattice& lattice) {
  return braid_cost_detail(sample, lattice).cost;
}

bool is_R_measurable(const ParitySample& sample, const CubicLattice& lattice,
                     int R) {
  // Cheap lower bound first: every pair costs at least 1.
  const auto odd = odd_islands(sample, lattice);
  if (int(odd.size()) / 2 >= R) return false;
  if (odd.empty()) return R >= 1;
  return braid_cost_detail(sample, lattice).cost < R;
}

bool even_division_exists(const ParitySample& sample,
                          const CubicLattice& lattice, int R) {
  const int block = lattice.r * R;
  if (block <= 0 || lattice.m % block != 0)
    throw std::invalid_argument("even_division_exists needs rR | m");
  const int regions_per_dim = lattice.m / block;

  const auto odd = odd_islands(sample, lattice);
  if (odd.empty()) return true;
  std::vector<std::vector<int>> odd_coords;
  for (int64_t v : odd) odd_coords.push_back(lattice.coords(v));

  // Enumerate the (rR)^d translated divisions.
  std::vector<int> offset(size_t(lattice.d), 0);
  while (true) {
    int64_t regions = 1;
    for (int k = 0; k < lattice.d; ++k) regions *= regions_per_dim;
    std::vector<int> parity(size_t(regions), 0);
    for (const auto& x : odd_coords) {
      int64_t rid = 0;
      for (int k = lattice.d; k-- > 0;) {
        const int shifted = (x[size_t(k)] - offset[size_t(k)] + lattice.m) %
                            lattice.m;
        rid = rid * regions_per_dim + shifted / block;
      }
      parity[size_t(rid)] ^= 1;
    }
    if (std::all_of(parity.begin(), parity.end(),
                    [](int p) { return p == 0; }))
      return true;
    int k = 0;
    while (k < lattice.d && ++offset[size_t(k)] == block) {
      offset[size_t(k)] = 0;
      ++k;
    }
    if (k == lattice.d) break;
  }
  return false;
}

double analytic_bound(int m, int d, int r, int R, int c) {
  (void)c;  // the MZM count per island cancels out of the ratio
  if (m < 1 || d < 1 || r < 1 || R < 1)
    throw std::invalid_argument("analytic_bound needs positive parameters");
  const double rR = double(r) * double(R);
  return std::pow(rR, d) * std::exp2(1.0 - std::pow(double(m) / rR, d));
}

FractionEstimate estimate_fraction(const CubicLattice& lattice, int R,
                                   uint64_t trials, uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  const Rng base(seed);
  const int threads = std::min<int>(env_threads(), 64);
  std::vector<uint64_t> hits(size_t(threads), 0);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      uint64_t local = 0;
      for (uint64_t i = uint64_t(w); i < trials; i += uint64_t(threads)) {
        Rng rng = base.substream("trial", i);
        const ParitySample s = random_even_sample(lattice, rng);
        if (is_R_measurable(s, lattice, R)) ++local;
      }
      hits[size_t(w)] = local;
    });
  }
  for (auto& th : pool) th.join();
  uint64_t total = 0;
  for (uint64_t h : hits) total += h;

  FractionEstimate fe;
  fe.trials = trials;
  fe.estimate = double(total) / double(trials);
  fe.stderr_ = std::sqrt(fe.estimate * (1.0 - fe.estimate) / double(trials));
  fe.bound = analytic_bound(lattice.m, lattice.d, lattice.r, R, lattice.c);
  return fe;
}

double exhaustive_fraction(const CubicLattice& lattice, int R) {
  const int64_t M = lattice.mzm_count();
  if (M > 20)
    throw std::invalid_argument("exhaustive_fraction limited to <= 20 MZMs");
  uint64_t hits = 0, evens = 0;
  for (uint64_t u = 0; u < (uint64_t(1) << M); ++u) {
    if (__builtin_popcountll(u) & 1) continue;
    ++evens;
    ParitySample s;
    s.occupancy = BitVec(int(M));
    for (int i = 0; i < M; ++i)
      if ((u >> i) & 1) s.occupancy.set(i);
    if (is_R_measurable(s, lattice, R)) ++hits;
  }
  return double(hits) / double(evens);
}

}  // namespace fpbc
