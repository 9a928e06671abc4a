#include "fpbc/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fpbc/simulator.hpp"

namespace fpbc {

using nlohmann::json;

double TriJunctionCouplings::A_norm() const {
  return std::sqrt(A[0] * A[0] + A[1] * A[1] + A[2] * A[2]);
}

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(dot(v, v));
  if (n <= 0) throw std::invalid_argument("cannot normalize zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

JunctionFrame frame_decomposition(const Vec3& A) {
  JunctionFrame f;
  f.a_hat = normalized(A);
  // Reference axis least aligned with A_hat, lowest index on ties.
  int ref = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(f.a_hat[size_t(k)]) < std::abs(f.a_hat[size_t(ref)])) ref = k;
  Vec3 e{0, 0, 0};
  e[size_t(ref)] = 1;
  const double proj = dot(e, f.a_hat);
  f.a_plus = normalized({e[0] - proj * f.a_hat[0], e[1] - proj * f.a_hat[1],
                         e[2] - proj * f.a_hat[2]});
  f.a_minus = cross(f.a_hat, f.a_plus);  // then a_plus x a_minus = a_hat
  return f;
}

namespace {

// Dense matrix of a string through the simulator's Jordan-Wigner map.
Eigen::MatrixXcd string_matrix(const MajoranaString& s) {
  const int dim = 1 << (s.num_modes / 2);
  Eigen::MatrixXcd M(dim, dim);
  for (int col = 0; col < dim; ++col) {
    StateVector st = StateVector::basis_state(s.num_modes, uint64_t(col));
    apply_string(st, s);
    for (int row = 0; row < dim; ++row) M(row, col) = st.amps[size_t(row)];
  }
  return M;
}

}  // namespace

std::vector<double> trijunction_spectrum(const TriJunctionCouplings& c) {
  // V = E_M * (A_1 i g2 g3 + A_2 i g3 g1 + A_3 i g1 g2) on 4 modes
  // (legs 1..3 plus one spectator).
  const int nm = 4;
  auto herm = [&](int x, int y) {  // i g_{x} g_{y}, 1-based ascending
    return MajoranaString::hermitian(nm, std::vector<int>{x - 1, y - 1});
  };
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(4, 4);
  V += c.A[0] * string_matrix(herm(2, 3));
  V += c.A[1] * string_matrix(scale_phase(herm(1, 3), 2));  // i g3 g1
  V += c.A[2] * string_matrix(herm(1, 2));
  V *= c.E_M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(V);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace {

struct JunctionFactor {
  bool gamma0 = false;   // does gamma_{j,0} survive the projection
  int phase_power = 0;   // extra i power
  double scalar = 1.0;   // real factor
  bool counts_for_shift = false;
  double shift_factor = 1.0;
};

// Projection of the (possibly empty) leg set of one junction, legs given as
// an ascending list drawn from {1,2,3}.
JunctionFactor project_junction(const std::vector<int>& legs,
                                const TriJunctionCouplings& c) {
  JunctionFactor f;
  const double norm = c.A_norm();
  if (norm <= 0) throw std::invalid_argument("junction couplings have |A| = 0");
  switch (legs.size()) {
    case 0:
      break;
    case 1:
      f.gamma0 = true;
      f.scalar = c.A[size_t(legs[0] - 1)] / norm;
      f.counts_for_shift = true;
      f.shift_factor = f.scalar;
      break;
    case 2: {
      // g_a g_b = -i (i g_a g_b) -> -i * (-eps_{abc} A_c/|A|).
      const int a = legs[0], b = legs[1];
      const int cidx = 6 - a - b;  // the absent leg
      const int eps = (a == 1 && b == 2) || (a == 2 && b == 3) ? 1 : -1;
      f.phase_power = 3;
      f.scalar = -double(eps) * c.A[size_t(cidx - 1)] / norm;
      f.counts_for_shift = true;
      f.shift_factor = f.scalar;
      break;
    }
    case 3:
      // g1 g2 g3 = -i (i g1 g2 g3) -> -i * (-gamma_0) = i gamma_0.
      f.gamma0 = true;
      f.phase_power = 3;
      f.scalar = -1.0;
      break;
    default:
      throw std::logic_error("junction with more than three legs");
  }
  return f;
}

}  // namespace

ProjectedString project_low_energy(
    const MajoranaString& s,
    const std::vector<TriJunctionCouplings>& junctions) {
  const int J = int(junctions.size());
  const int leg_modes = ((3 * J + 1) / 2) * 2;
  if (s.num_modes != leg_modes)
    throw std::invalid_argument(
        "string register does not match the junction count (expected " +
        std::to_string(leg_modes) + " modes)");
  for (int m : s.support.set_bits())
    if (m >= 3 * J)
      throw std::invalid_argument("string touches a padding mode");

  const int q_modes = ((J + 1) / 2) * 2;
  ProjectedString out;
  out.q_string = MajoranaString::identity(q_modes);
  int phase = s.phase_power;
  for (int j = 0; j < J; ++j) {
    std::vector<int> legs;
    for (int a = 1; a <= 3; ++a)
      if (s.support.test(3 * j + a - 1)) legs.push_back(a);
    JunctionFactor f = project_junction(legs, junctions[size_t(j)]);
    phase = (phase + f.phase_power) % 4;
    out.scalar *= f.scalar;
    if (f.counts_for_shift) out.shift_magnitude *= std::abs(f.shift_factor);
    if (f.gamma0) out.q_string.support.set(j);
  }
  // Fold the sign of the real factor into scalar, leaving i^phase on the
  // string itself.
  out.q_string.phase_power = phase;
  return out;
}

double DeviceParams::transmon_splitting() const {
  return std::sqrt(8.0 * E_J * E_C);
}

bool DeviceParams::dispersive_ok(int photon_number) const {
  const double dw = detuning();
  return dw * dw > 10.0 * g * g * double(photon_number + 1);
}

double charge_dispersion(double E_J, double E_C, int m) {
  if (E_J <= 0 || E_C <= 0)
    throw std::invalid_argument("charge dispersion needs positive E_J, E_C");
  double mfact = 1;
  for (int k = 2; k <= m; ++k) mfact *= k;
  const double ratio = E_J / (2.0 * E_C);
  return E_C * std::pow(2.0, 4 * m + 5) / mfact * std::sqrt(2.0 / M_PI) *
         std::pow(ratio, 0.5 * m + 0.75) * std::exp(-std::sqrt(8.0 * E_J / E_C));
}

double suppression_scaling(int L, double E_J1, double E_C1, int m) {
  if (L < 1) throw std::invalid_argument("island count L must be >= 1");
  return charge_dispersion(double(L) * E_J1, E_C1 / double(L), m);
}

double dispersive_shift_second_order(const DeviceParams& d, int q_eigenvalue) {
  return d.omega0 -
         d.g * d.g / (d.detuning() + 2.0 * d.delta_plus() * q_eigenvalue);
}

double dispersive_shift_exact(const DeviceParams& d, int q_eigenvalue) {
  const double Q = double(q_eigenvalue);
  const double e1 = +(0.5 * d.transmon_splitting() + Q * d.delta_plus()) +
                    Q * d.delta_minus();
  const double e0 = -(0.5 * d.transmon_splitting() + Q * d.delta_plus()) +
                    Q * d.delta_minus();
  // Block {|n=0,m=1>, |n=1,m=0>}; the dressed |1,0> branch tracks the
  // resonator. Ground |0,0> is uncoupled.
  const double h11 = e1 + 0.5 * d.omega0;
  const double h22 = e0 + 1.5 * d.omega0;
  const double mean = 0.5 * (h11 + h22);
  const double half_gap = 0.5 * (h11 - h22);
  const double lam =
      mean - std::copysign(std::sqrt(half_gap * half_gap + d.g * d.g), half_gap);
  const double ground = e0 + 0.5 * d.omega0;
  return lam - ground;
}

double shift_constant(const DeviceParams& d) {
  const double dw = d.detuning();
  return 4.0 * d.g * d.g / (dw * dw);
}

DeviceParams parse_device(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("device JSON parse error: ") +
                                e.what());
  }
  DeviceParams d;
  for (const char* key : {"E_J", "E_C", "omega0", "g"})
    if (!j.contains(key) || !j[key].is_number())
      throw std::invalid_argument(std::string("device JSON needs numeric /") +
                                  key);
  d.E_J = j["E_J"].get<double>();
  d.E_C = j["E_C"].get<double>();
  d.omega0 = j["omega0"].get<double>();
  d.g = j["g"].get<double>();
  if (!j.contains("delta_eps"))
    throw std::invalid_argument("device JSON needs /delta_eps");
  if (j["delta_eps"].is_string() && j["delta_eps"] == "derive") {
    d.delta_eps0 = charge_dispersion(d.E_J, d.E_C, 0);
    d.delta_eps1 = charge_dispersion(d.E_J, d.E_C, 1);
  } else if (j["delta_eps"].is_array() && j["delta_eps"].size() == 2) {
    d.delta_eps0 = j["delta_eps"][0].get<double>();
    d.delta_eps1 = j["delta_eps"][1].get<double>();
  } else {
    throw std::invalid_argument("/delta_eps must be [e0,e1] or \"derive\"");
  }
  return d;
}

DeviceParams load_device_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open device file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_device(ss.str());
}

}  // namespace fpbc
