#include "nmrqc/density.hpp"

#include <cmath>
#include <numbers>

namespace nmrqc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dimension(std::size_t n_spins, const ComplexMatrix& m, const char* what) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_spins);
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(std::string(what) + " dimension does not match 2^" + std::to_string(n_spins));
  }
}

// exp(-i angle (cos(phase) sx + sin(phase) sy) / 2)
Eigen::Matrix2cd rotation_2x2(double angle, double phase) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex minus_i_e_minus = Complex(0.0, -s) * std::polar(1.0, -phase);
  const Complex minus_i_e_plus = Complex(0.0, -s) * std::polar(1.0, phase);
  Eigen::Matrix2cd r;
  r << c, minus_i_e_minus, minus_i_e_plus, c;
  return r;
}

}  // namespace

Propagator make_trusted_propagator(std::size_t n_spins, ComplexMatrix m) {
  return Propagator(n_spins, std::move(m), true);
}

// ---------------------------------------------------------------------------

DensityState::DensityState(std::size_t n_spins, ComplexMatrix matrix)
    : n_spins_(n_spins), matrix_(std::move(matrix)) {
  require_dimension(n_spins_, matrix_, "density matrix");
  double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kTolerance * scale)
    throw Error("density matrix is not Hermitian");
  if (std::abs(matrix_.trace()) > kTolerance * scale) throw Error("density matrix is not traceless");
}

Propagator Propagator::identity(std::size_t n_spins) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_spins);
  return Propagator(n_spins, ComplexMatrix::Identity(dim, dim), true);
}

Propagator::Propagator(std::size_t n_spins, ComplexMatrix matrix)
    : n_spins_(n_spins), matrix_(std::move(matrix)) {
  require_dimension(n_spins_, matrix_, "propagator");
  if (unitarity_defect(matrix_) > kTolerance) throw Error("propagator is not unitary");
}

Propagator operator*(const Propagator& later, const Propagator& earlier) {
  if (later.spins() != earlier.spins()) throw Error("propagator dimension mismatch");
  return Propagator(later.spins(), later.matrix_ * earlier.matrix_, true);
}

double unitarity_defect(const ComplexMatrix& u) {
  const auto id = ComplexMatrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

DensityState equilibrium_state(const SpinSystem& system) {
  const std::size_t n = system.size();
  const auto dim = static_cast<Eigen::Index>(system.dimension());
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    BasisLabel label(n, static_cast<std::uint32_t>(k));
    double iz = 0.0;
    for (std::size_t i = 0; i < n; ++i) iz += 0.5 - label.bit(i);
    rho(k, k) = iz;
  }
  return DensityState(n, std::move(rho));
}

Propagator hard_pulse(const SpinSystem& system, std::span<const std::size_t> spins, double angle,
                      double phase) {
  const std::size_t n = system.size();
  if (spins.empty()) throw Error("hard pulse needs at least one spin");
  std::vector<bool> selected(n, false);
  for (std::size_t s : spins) {
    if (s >= n) throw Error("pulse spin index out of range");
    selected[s] = true;
  }
  const Eigen::Matrix2cd rot = rotation_2x2(angle, phase);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  // Kronecker product with spin 0 as the leftmost factor.
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Matrix2cd& factor = selected[i] ? rot : id;
    ComplexMatrix next(u.rows() * 2, u.cols() * 2);
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index c = 0; c < u.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = u(r, c) * factor;
    u = std::move(next);
  }
  return make_trusted_propagator(n, std::move(u));
}

Propagator transition_pulse(const SpinSystem& system, const TransitionRef& t, double angle,
                            double phase) {
  const std::size_t n = system.size();
  if (t.lower.size() != n || t.upper.size() != n)
    throw Error("transition " + t.str() + " does not match a " + std::to_string(n) + "-spin system");
  if (coherence_order_class(t.lower, t.upper) != CoherenceClass::SingleQuantum)
    throw Error("transition " + t.str() + " is not single-quantum");

  const auto dim = static_cast<Eigen::Index>(system.dimension());
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  const Eigen::Matrix2cd rot = rotation_2x2(angle, phase);
  const Eigen::Index lo = t.lower.index();
  const Eigen::Index hi = t.upper.index();
  u(lo, lo) = rot(0, 0);
  u(lo, hi) = rot(0, 1);
  u(hi, lo) = rot(1, 0);
  u(hi, hi) = rot(1, 1);
  return make_trusted_propagator(n, std::move(u));
}

std::vector<TransitionRef> degenerate_with(const SpinSystem& system, const TransitionRef& t,
                                           double tolerance_hz) {
  const double f = transition_offset(system, t);
  std::vector<TransitionRef> out;
  for (std::size_t spin = 0; spin < system.size(); ++spin) {
    for (const auto& other : enumerate_single_quantum(system, spin)) {
      if (other == t) continue;
      if (std::abs(transition_offset(system, other) - f) <= tolerance_hz) out.push_back(other);
    }
  }
  return out;
}

Propagator free_evolution(const SpinSystem& system, double duration) {
  if (duration < 0.0) throw Error("evolution time must be non-negative");
  const std::size_t n = system.size();
  const auto dim = static_cast<Eigen::Index>(system.dimension());
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    double e = level_energy(system, BasisLabel(n, static_cast<std::uint32_t>(k)));
    u(k, k) = std::polar(1.0, -kTwoPi * e * duration);
  }
  return make_trusted_propagator(n, std::move(u));
}

DensityState gradient_crush(const DensityState& state) {
  ComplexMatrix diag = state.matrix().diagonal().asDiagonal();
  return DensityState(state.spins(), std::move(diag));
}

DensityState apply(const DensityState& state, const Propagator& u) {
  if (state.spins() != u.spins()) throw Error("state/propagator dimension mismatch");
  ComplexMatrix rho = u.matrix() * state.matrix() * u.matrix().adjoint();
  // Remove the rounding-level anti-Hermitian part so long sequences stay valid.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityState(state.spins(), std::move(rho));
}

namespace {

struct DetectTerm {
  Eigen::Index upper;
  Eigen::Index lower;
};

// Tr(rho I+) picks rho(upper, lower) for every transition of the spin.
std::vector<DetectTerm> detect_terms(std::size_t n_spins, std::span<const std::size_t> spins) {
  if (spins.empty()) throw Error("detection needs at least one spin");
  std::vector<DetectTerm> terms;
  const std::uint32_t dim = std::uint32_t{1} << n_spins;
  for (std::size_t s : spins) {
    if (s >= n_spins) throw Error("detect spin index out of range");
    for (std::uint32_t k = 0; k < dim; ++k) {
      BasisLabel label(n_spins, k);
      if (label.bit(s) == 0) terms.push_back({label.flipped(s).index(), label.index()});
    }
  }
  return terms;
}

}  // namespace

Complex detect(const DensityState& state, std::span<const std::size_t> spins) {
  Complex sum = 0.0;
  for (const auto& term : detect_terms(state.spins(), spins)) sum += state.matrix()(term.upper, term.lower);
  return sum;
}

std::vector<Complex> run_fid(const SpinSystem& system, const DensityState& state,
                             std::span<const std::size_t> spins, std::size_t n_points,
                             double dwell, double carrier_hz) {
  if (n_points == 0) throw Error("FID needs at least one point");
  if (!(dwell > 0.0)) throw Error("dwell time must be positive");
  if (state.spins() != system.size()) throw Error("state does not match system");

  // Each detected element rho(u, l) rotates as exp(+i 2 pi (E_l - E_u) t).
  struct Line {
    Complex amplitude;
    double frequency;
  };
  std::vector<Line> lines;
  const std::size_t n = system.size();
  for (const auto& term : detect_terms(n, spins)) {
    Complex a = state.matrix()(term.upper, term.lower);
    if (a == Complex(0.0, 0.0)) continue;
    double f = level_energy(system, BasisLabel(n, static_cast<std::uint32_t>(term.lower))) -
               level_energy(system, BasisLabel(n, static_cast<std::uint32_t>(term.upper)));
    lines.push_back({a, f - carrier_hz});
  }

  std::vector<Complex> fid(n_points, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n_points; ++k) {
    const double t = static_cast<double>(k) * dwell;
    Complex sum = 0.0;
    for (const auto& line : lines) sum += line.amplitude * std::polar(1.0, kTwoPi * line.frequency * t);
    fid[k] = sum;
  }
  return fid;
}

}  // namespace nmrqc
