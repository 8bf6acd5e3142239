#include "qoc/system.hpp"

#include "qoc/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qoc {

QuantumSystem make_quantum_system(ComplexMatrix h0, ComplexMatrix dipole) {
  if (h0.rows() < 2 || h0.rows() != h0.cols()) {
    throw std::invalid_argument("make_quantum_system: h0 must be square with dimension >= 2");
  }
  if (dipole.rows() != h0.rows() || dipole.cols() != h0.cols()) {
    throw std::invalid_argument("make_quantum_system: dipole dimension does not match h0");
  }
  if (!is_hermitian(h0, 1e-12)) {
    throw std::invalid_argument("make_quantum_system: h0 is not Hermitian within 1e-12");
  }
  if (!is_hermitian(dipole, 1e-12)) {
    throw std::invalid_argument("make_quantum_system: dipole is not Hermitian within 1e-12");
  }
  return {static_cast<int>(h0.rows()), std::move(h0), std::move(dipole)};
}

QuantumSystem build_rotor_system(int dimension, double lambda, double dipole_decay,
                                 double diagonal_dipole) {
  if (dimension < 2) {
    throw std::invalid_argument("build_rotor_system: dimension must be >= 2");
  }
  if (!(dipole_decay > 0.0 && dipole_decay <= 1.0)) {
    throw std::invalid_argument("build_rotor_system: dipole decay must lie in (0, 1]");
  }
  ComplexMatrix h0 = ComplexMatrix::Zero(dimension, dimension);
  ComplexMatrix mu = ComplexMatrix::Zero(dimension, dimension);
  for (int j = 0; j < dimension; ++j) {
    h0(j, j) = lambda * j * (j + 1);
    mu(j, j) = diagonal_dipole;
    for (int k = 0; k < dimension; ++k) {
      if (j == k) continue;
      mu(j, k) = std::pow(dipole_decay, std::abs(j - k)) / dipole_decay;
    }
  }
  return make_quantum_system(std::move(h0), std::move(mu));
}

TransitionBounds transition_frequency_bounds(const QuantumSystem& system) {
  const ComplexMatrix& h0 = system.h0;
  ComplexMatrix off = h0;
  off.diagonal().setZero();
  if (off.norm() > 1e-12) {
    throw std::invalid_argument("transition_frequency_bounds: h0 must be diagonal");
  }
  const int n = system.dimension;
  double e_scale = 0.0;
  for (int j = 0; j < n; ++j) e_scale = std::max(e_scale, std::abs(h0(j, j).real()));
  const double zero_tol = 1e-12 * std::max(1.0, e_scale);

  TransitionBounds bounds{std::numeric_limits<double>::infinity(), 0.0};
  bool found = false;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double gap = std::abs(h0(j, j).real() - h0(k, k).real());
      if (gap <= zero_tol) continue;
      found = true;
      bounds.omega_min = std::min(bounds.omega_min, gap);
      bounds.omega_max = std::max(bounds.omega_max, gap);
    }
  }
  if (!found) {
    throw std::invalid_argument(
        "transition_frequency_bounds: fully degenerate spectrum has no transition frequencies");
  }
  return bounds;
}

ComplexMatrix random_unitary_target(int dimension, std::uint64_t seed) {
  if (dimension < 2) {
    throw std::invalid_argument("random_unitary_target: dimension must be >= 2");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  SplitMix64 rng(seed);
  ComplexMatrix a(dimension, dimension);
  for (int j = 0; j < dimension; ++j) {
    for (int k = j + 1; k < dimension; ++k) {
      const double re = rng.uniform(0.0, two_pi);
      const double im = rng.uniform(0.0, two_pi);
      a(j, k) = Complex(re, im);
      a(k, j) = std::conj(a(j, k));
    }
  }
  for (int j = 0; j < dimension; ++j) a(j, j) = rng.uniform(0.0, two_pi);
  // exp(i A) = exp(-i A * (-1))
  return expm_unitary(a, -1.0);
}

namespace {

ComplexMatrix polar_unitary_factor(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix matrix_from_entries(const double (*entries)[2], int n) {
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      m(j, k) = Complex(entries[j * n + k][0], entries[j * n + k][1]);
    }
  }
  return m;
}

PresetTargets build_preset_targets() {
  static const double w1_entries[25][2] = {
      {0.456, -0.034}, {0.064, 0.711},   {0.055, 0.108},  {0.222, 0.163},   {0.409, -0.154},
      {-0.031, -0.246}, {-0.418, 0.232}, {0.621, -0.342}, {-0.137, -0.417}, {-0.101, -0.067},
      {-0.399, -0.008}, {-0.236, 0.003}, {-0.076, 0.216}, {-0.327, 0.139},  {0.278, -0.727},
      {-0.485, -0.329}, {0.112, 0.326},  {0.198, 0.521},  {-0.123, 0.156},  {-0.071, 0.427},
      {0.075, 0.471},   {0.225, 0.190},  {-0.074, 0.337}, {-0.347, -0.668}, {-0.035, 0.004}};
  static const double w2_entries[25][2] = {
      {0.131, 0.215},   {-0.005, -0.039}, {-0.121, 0.034},  {0.292, 0.332},   {0.603, 0.601},
      {0.084, -0.732},  {0.317, -0.420},  {0.122, 0.240},   {-0.232, 0.059},  {0.123, 0.187},
      {0.119, -0.023},  {0.082, 0.098},   {0.749, -0.486},  {0.087, -0.318},  {0.055, 0.245},
      {0.083, -0.584},  {-0.239, 0.423},  {-0.126, -0.214}, {0.474, 0.287},   {-0.217, 0.031},
      {-0.105, -0.143}, {-0.241, 0.641},  {0.099, 0.208},   {-0.575, -0.017}, {0.330, 0.080}};
  PresetTargets t;
  t.w1_raw = matrix_from_entries(w1_entries, 5);
  t.w2_raw = matrix_from_entries(w2_entries, 5);
  t.w1 = polar_unitary_factor(t.w1_raw);
  t.w2 = polar_unitary_factor(t.w2_raw);
  return t;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back({m(j, k).real(), m(j, k).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

const PresetTargets& preset_targets() {
  static const PresetTargets targets = build_preset_targets();
  return targets;
}

std::string preset_targets_fixture_json() {
  const PresetTargets& t = preset_targets();
  nlohmann::json doc;
  doc["w1_raw"] = matrix_to_json(t.w1_raw);
  doc["w2_raw"] = matrix_to_json(t.w2_raw);
  doc["w1"] = matrix_to_json(t.w1);
  doc["w2"] = matrix_to_json(t.w2);
  return doc.dump(2) + "\n";
}

}  // namespace qoc
