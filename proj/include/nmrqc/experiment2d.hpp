#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nmrqc/gate_library.hpp"
#include "nmrqc/pulse_program.hpp"
#include "nmrqc/spin_system.hpp"

namespace nmrqc {

/// How the t1 dimension is made complex.
///  - Complex: one scan per increment; the coherence detected in t2 already
///    carried its t1 phase (no z-storage in between).
///  - States: two scans per increment, the second with every pulse before t1
///    shifted by -90 deg, combined as cos + i sin. Needed when the labelled
///    magnetization passes through z (amplitude modulation).
///  - Auto: States when a gradient follows t1, Complex otherwise.
enum class F1Quadrature { Auto, Complex, States };

struct Acquisition {
  std::size_t n_t1 = 128;
  std::size_t n_t2 = 128;
  double dwell1 = 1e-3;  // s
  double dwell2 = 1e-3;  // s
  double carrier1_hz = 0.0;
  double carrier2_hz = 0.0;
  F1Quadrature quadrature = F1Quadrature::Auto;
  unsigned jobs = 1;
};

/// Window centred on the observer multiplet, wide enough that adjacent
/// observer lines sit at least 4 bins apart with room to spare.
Acquisition default_gate_acquisition(const SpinSystem& system, std::size_t points = 128);

/// Window covering every spin's multiplet, centred between the extreme shifts.
Acquisition default_dj_acquisition(const SpinSystem& system, std::size_t points = 128);

struct RawData2D {
  std::size_t n_t1 = 0;
  std::size_t n_t2 = 0;
  double dwell1 = 0.0;
  double dwell2 = 0.0;
  double carrier1_hz = 0.0;
  double carrier2_hz = 0.0;
  std::vector<std::complex<double>> grid;  // row-major, one row per t1 value

  std::complex<double>& at(std::size_t i1, std::size_t i2) { return grid[i1 * n_t2 + i2]; }
  const std::complex<double>& at(std::size_t i1, std::size_t i2) const { return grid[i1 * n_t2 + i2]; }
};

/// equilibrium -> events before t1 -> free evolution k*dwell1 -> remaining
/// events -> FID of n_t2 points on the acquired spins.
RawData2D run_2d(const SpinSystem& system, const PulseProgram& program, const Acquisition& acq);

struct ProcessOptions {
  std::size_t zerofill = 2;
  /// Exponential line broadening (Hz) on both axes; defaults to 2/(n*dwell)
  /// per axis.
  std::optional<double> line_broaden_hz;
};

struct Spectrum2D {
  std::size_t rows = 0;  // F1
  std::size_t cols = 0;  // F2
  std::vector<double> magnitudes;
  std::vector<double> axis1;  // Hz, ascending
  std::vector<double> axis2;

  double at(std::size_t r, std::size_t c) const { return magnitudes[r * cols + c]; }
  double bin1() const { return axis1.size() > 1 ? axis1[1] - axis1[0] : 0.0; }
  double bin2() const { return axis2.size() > 1 ? axis2[1] - axis2[0] : 0.0; }
};

/// Apodization exp(-pi lb t), zero-fill, 2D DFT (unitary scaling) and
/// magnitude. Frequencies run from carrier - SW/2 upward.
Spectrum2D process(const RawData2D& raw, const ProcessOptions& options = {});

/// The apodized, zero-filled time-domain grid that process() transforms,
/// row-major with `rows` x `cols` entries.
std::vector<std::complex<double>> apodize_and_zerofill(const RawData2D& raw, const ProcessOptions& options,
                                                       std::size_t& rows, std::size_t& cols);

struct Peak {
  double f1 = 0.0;
  double f2 = 0.0;
  double magnitude = 0.0;
};

/// Strict local maxima (all 8 neighbours lower) above rel_threshold times the
/// global maximum, refined by 3-point parabolic interpolation on each axis.
/// Plateaus produce no peaks. Sorted by decreasing magnitude.
std::vector<Peak> pick_peaks(const Spectrum2D& spectrum, double rel_threshold = 0.2);

struct CorrelationMap {
  std::set<std::pair<BasisLabel, BasisLabel>> pairs;
};

/// Observer lines as (input label, signed frequency), descending labels.
std::vector<std::pair<BasisLabel, double>> observer_lines(const SpinSystem& system);

/// Assigns each peak's F1 and F2 to the nearest observer line. Throws when a
/// coordinate lies more than half the smallest line spacing from every line.
CorrelationMap correlation_map(std::span<const Peak> peaks, const SpinSystem& system);

struct GateMismatch {
  BasisLabel input;
  BasisLabel expected;
  std::vector<BasisLabel> observed;
};

struct GateReport {
  std::string gate;
  bool pass = false;
  std::vector<GateMismatch> mismatches;
  /// Pairs whose input label is not part of the gate's domain.
  std::vector<std::pair<BasisLabel, BasisLabel>> unexpected;
};

GateReport verify_gate(const CorrelationMap& map, const GateSpec& spec);

/// compile_gate -> run_2d -> process -> pick_peaks -> correlation_map.
struct GateRun {
  PulseProgram program;
  Acquisition acquisition;
  Spectrum2D spectrum;
  std::vector<Peak> peaks;
  CorrelationMap map;
  GateReport report;
};

struct GateRunOptions {
  std::optional<Acquisition> acquisition;
  ProcessOptions processing;
  double rel_threshold = 0.2;
};

GateRun run_gate(const GateSpec& spec, const SpinSystem& system, const GateRunOptions& options = {});

}  // namespace nmrqc
