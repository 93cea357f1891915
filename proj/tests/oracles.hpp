#pragma once

// Reference implementations used only by the tests. They are written from
// the textbook definitions and share no code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nmrqc/io.hpp"
#include "nmrqc/spin_system.hpp"

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
constexpr double kPi = 3.14159265358979323846;

// Expected outputs for the inputs 11 10 01 00, per gate.
inline const std::vector<std::pair<std::string, std::string>> kGateTable = {
    {"NOP", "11 10 01 00"},           {"NOT(I1)", "01 00 11 10"},        {"NOT(I2)", "10 11 00 01"},
    {"NOT(I1,I2)", "00 01 10 11"},    {"XOR1", "01 10 11 00"},           {"XOR2", "10 11 01 00"},
    {"XNOR1", "11 00 01 10"},         {"XNOR2", "11 10 00 01"},          {"SWAP", "11 01 10 00"},
    {"SWAP+NOT", "00 10 01 11"},      {"SWAP+XOR1", "01 11 10 00"},      {"SWAP+XOR2", "10 01 11 00"},
    {"SWAP+XNOR1", "11 01 00 10"},    {"SWAP+XNOR2", "11 00 10 01"},     {"SWAP+NOT+XOR1", "00 10 11 01"},
    {"SWAP+NOT+XOR2", "00 11 01 10"}, {"SWAP+NOT+XNOR1", "10 00 01 11"}, {"SWAP+NOT+XNOR2", "01 10 00 11"},
    {"NOT(I1)+XOR2", "01 00 10 11"},  {"NOT(I2)+XOR1", "10 01 00 11"},   {"NOT(I1)+XNOR2", "00 01 11 10"},
    {"NOT(I2)+XNOR1", "00 11 10 01"}, {"SWAP+NOT(I1)", "01 11 00 10"},   {"SWAP+NOT(I2)", "10 00 11 01"},
};

inline M pauli(char which) {
  M s(2, 2);
  if (which == 'x') s << 0, 1, 1, 0;
  if (which == 'y') s << 0, C(0, -1), C(0, 1), 0;
  if (which == 'z') s << 1, 0, 0, -1;
  if (which == 'i') s << 1, 0, 0, 1;
  return s;
}

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Spin operator I_which of `spin` in an n-spin space; spin 0 is the leftmost factor.
inline M spin_op(std::size_t n, std::size_t spin, char which) {
  M out = M::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) out = kron(out, k == spin ? M(0.5 * pauli(which)) : pauli('i'));
  return out;
}

/// exp(-i H) for Hermitian H via eigen-decomposition.
inline M expm_herm(const M& h) {
  Eigen::SelfAdjointEigenSolver<M> es(h);
  Eigen::VectorXcd phases = (es.eigenvalues().cast<C>() * C(0, -1)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Energy from the explicit double sum with m = +1/2 for bit 0.
inline double energy(const std::vector<double>& nu, const std::vector<std::vector<double>>& j, std::uint32_t index) {
  const std::size_t n = nu.size();
  std::vector<double> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = ((index >> (n - 1 - i)) & 1u) ? -0.5 : 0.5;
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) e += nu[i] * m[i];
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) e += j[a][b] * m[a] * m[b];
  return e;
}

inline nmrqc::SpinSystem system(const std::vector<double>& nu, const std::vector<std::vector<double>>& j,
                                std::vector<nmrqc::SpinRole> roles = {}) {
  nmrqc::SystemConfig c;
  c.shifts_hz = nu;
  c.j_hz = j;
  if (roles.empty()) {
    roles.push_back(nmrqc::SpinRole::Observer);
    while (roles.size() < nu.size()) roles.push_back(nmrqc::SpinRole::Input);
  }
  c.roles = roles;
  return nmrqc::SpinSystem::build(c);
}

/// Demo systems shipped under data/systems.
inline nmrqc::SpinSystem demo(const std::string& name) {
  return nmrqc::load_system(std::string(NMRQC_DATA_DIR) + "/systems/" + name);
}

/// Naive 2D DFT with the library's axis convention (index k -> k - N/2 after shift).
inline std::vector<C> dft2(const std::vector<C>& grid, std::size_t rows, std::size_t cols) {
  std::vector<C> out(rows * cols);
  for (std::size_t k1 = 0; k1 < rows; ++k1)
    for (std::size_t k2 = 0; k2 < cols; ++k2) {
      C acc = 0;
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b)
          acc += grid[a * cols + b] * std::polar(1.0, -2 * kPi * (double(k1 * a) / rows + double(k2 * b) / cols));
      out[((k1 + rows / 2) % rows) * cols + (k2 + cols / 2) % cols] = acc / std::sqrt(double(rows * cols));
    }
  return out;
}

inline M random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  M a(dim, dim);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) a(i, k) = C(g(rng), g(rng));
  M h = 0.5 * (a + a.adjoint());
  h -= (h.trace() / double(dim)) * M::Identity(dim, dim);
  return h;
}

}  // namespace oracle
