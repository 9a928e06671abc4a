#pragma once

#include <array>
#include <string>
#include <vector>

#include "fpbc/majorana.hpp"

namespace fpbc {

// Couplings of one tri-junction: energy scale E_M and the three
// bound-state couplings A = (A_1, A_2, A_3).
struct TriJunctionCouplings {
  double E_M = 1.0;
  std::array<double, 3> A{1.0, 1.0, 1.0};

  double A_norm() const;
};

using Vec3 = std::array<double, 3>;

// Orthonormal frame (A_hat, A_plus, A_minus) with A_plus x A_minus = A_hat.
struct JunctionFrame {
  Vec3 a_hat;
  Vec3 a_plus;
  Vec3 a_minus;
};

JunctionFrame frame_decomposition(const Vec3& A);

// Eigenvalues of the tri-junction Hamiltonian built on 4 Majoranas (3
// junction legs + 1 spectator) through the Jordan-Wigner map. Sorted
// ascending; always {-E_M |A| (x2), +E_M |A| (x2)}.
std::vector<double> trijunction_spectrum(const TriJunctionCouplings& c);

// Low-energy projection of a string over junction-leg Majoranas. Leg a of
// junction j (both 1-based) is mode 3(j-1) + (a-1); the result lives on one
// gamma_{j,0} mode per junction. The three per-junction rules:
//   single leg a      ->  A_a/|A| gamma_0
//   leg pair (a,b)    ->  scalar -sum_c eps_{abc} A_c/|A|   (times i^-1 fold)
//   all three legs    ->  -gamma_0                          (times i^-1 fold)
struct ProjectedString {
  MajoranaString q_string;  // over gamma_{j,0} modes, one per junction
  double scalar = 1.0;      // signed magnitude product, phases folded
  double shift_magnitude = 1.0;  // product of |A_alpha|/|A| factors
};

ProjectedString project_low_energy(
    const MajoranaString& s, const std::vector<TriJunctionCouplings>& junctions);

struct DeviceParams {
  double E_J = 0;
  double E_C = 0;
  double omega0 = 0;  // resonator frequency (angular, hbar = 1)
  double g = 0;       // transmon-resonator coupling
  double delta_eps0 = 0;
  double delta_eps1 = 0;

  double transmon_splitting() const;  // Omega_0 ~ sqrt(8 E_J E_C)
  double detuning() const { return transmon_splitting() - omega0; }
  double delta_plus() const { return 0.5 * (delta_eps1 + delta_eps0); }
  double delta_minus() const { return 0.5 * (delta_eps1 - delta_eps0); }
  bool transmon_regime_ok() const { return E_J >= 20.0 * E_C; }
  bool dispersive_ok(int photon_number = 0) const;
};

// Asymptotic transmon charge dispersion |delta_eps_m| for level m.
double charge_dispersion(double E_J, double E_C, int m);

// delta_eps at system size L islands, with E_J(L) = L E_J1, E_C(L) = E_C1/L.
double suppression_scaling(int L, double E_J1, double E_C1, int m = 0);

// Effective resonance frequency to second order in g/delta_omega:
// omega_eff = omega0 - g^2 / (delta_omega + 2 delta_plus Q).
double dispersive_shift_second_order(const DeviceParams& d, int q_eigenvalue);

// Exact dressed resonance frequency from the two-level Jaynes-Cummings
// block {|0,1>, |1,0>}; cross-validates the second-order formula.
double dispersive_shift_exact(const DeviceParams& d, int q_eigenvalue);

// The prefactor C = 4 g^2 / delta_omega^2 of the readout shift.
double shift_constant(const DeviceParams& d);

// Device JSON: {"E_J":, "E_C":, "omega0":, "g":,
//               "delta_eps": [e0, e1] | "derive"}
DeviceParams parse_device(const std::string& json_text);
DeviceParams load_device_file(const std::string& path);

}  // namespace fpbc
