#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nmrqc/spin_system.hpp"

namespace nmrqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Traceless Hermitian deviation density matrix over the 2^n level space.
class DensityState {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Checks dimension, Hermiticity and tracelessness.
  DensityState(std::size_t n_spins, ComplexMatrix matrix);

  std::size_t spins() const { return n_spins_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex element(const BasisLabel& row, const BasisLabel& col) const {
    return matrix_(row.index(), col.index());
  }

 private:
  std::size_t n_spins_;
  ComplexMatrix matrix_;
};

/// Unitary acting on the 2^n level space.
class Propagator {
 public:
  static constexpr double kTolerance = 1e-10;

  static Propagator identity(std::size_t n_spins);
  /// Checks unitarity.
  Propagator(std::size_t n_spins, ComplexMatrix matrix);

  std::size_t spins() const { return n_spins_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// `later * earlier`: apply `earlier` first.
  friend Propagator operator*(const Propagator& later, const Propagator& earlier);

 private:
  Propagator(std::size_t n_spins, ComplexMatrix matrix, bool /*trusted*/)
      : n_spins_(n_spins), matrix_(std::move(matrix)) {}

  std::size_t n_spins_;
  ComplexMatrix matrix_;

  friend Propagator make_trusted_propagator(std::size_t, ComplexMatrix);
};

/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const ComplexMatrix& u);

/// High-temperature equilibrium sum_i I_iz with equal weights.
DensityState equilibrium_state(const SpinSystem& system);

/// exp(-i angle (cos(phase) I_x + sin(phase) I_y)) on each listed spin.
Propagator hard_pulse(const SpinSystem& system, std::span<const std::size_t> spins, double angle,
                      double phase);

/// Rotation of the two-level subspace (lower, upper); identity elsewhere.
Propagator transition_pulse(const SpinSystem& system, const TransitionRef& t, double angle,
                            double phase);

/// Other transitions of the system resonating within `tolerance_hz` of `t`.
std::vector<TransitionRef> degenerate_with(const SpinSystem& system, const TransitionRef& t,
                                           double tolerance_hz = 1e-6);

/// Diagonal propagator exp(-i 2 pi E duration).
Propagator free_evolution(const SpinSystem& system, double duration);

/// Zeroes every off-diagonal element.
DensityState gradient_crush(const DensityState& state);

/// U rho U^dagger
DensityState apply(const DensityState& state, const Propagator& u);

/// Tr(rho sum_{i in spins} I_i^+)
Complex detect(const DensityState& state, std::span<const std::size_t> spins);

/// detect() sampled at k * dwell under free evolution. The samples are
/// demodulated by exp(-i 2 pi carrier t), as a receiver referenced to
/// `carrier_hz` would.
std::vector<Complex> run_fid(const SpinSystem& system, const DensityState& state,
                             std::span<const std::size_t> spins, std::size_t n_points,
                             double dwell, double carrier_hz = 0.0);

}  // namespace nmrqc
