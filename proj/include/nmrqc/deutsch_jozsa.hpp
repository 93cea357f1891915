#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nmrqc/experiment2d.hpp"
#include "nmrqc/pulse_program.hpp"
#include "nmrqc/spin_system.hpp"

namespace nmrqc {

enum class FunctionKind { Constant, Balanced };
std::string_view to_string(FunctionKind kind);

/// Boolean function of 1 or 2 input bits.
struct FunctionSpec {
  std::size_t bits = 1;
  std::string name;
  /// Output for each input label, indexed by the label read as binary
  /// (first input qubit most significant).
  std::vector<int> table;
  FunctionKind kind = FunctionKind::Constant;

  int operator()(const BasisLabel& input) const { return table.at(input.index()); }
};

/// f1..f4 for one bit, f1..f8 for two bits; f1 and f2 are the constants.
std::vector<FunctionSpec> function_catalog(std::size_t bits);
FunctionSpec find_function(std::size_t bits, std::string_view name);

/// Events realizing |r>|s> -> |r XOR f(s)>|s> on the work spin (spin 0): a
/// transition π_x on the work transition labelled by every input state with
/// f = 1. The all-ones function is a single spin-selective π_x.
std::vector<PulseEvent> compile_uf(const FunctionSpec& f, const SpinSystem& system);

/// (π/2)_y on all spins, t1, U_f, acquire all spins.
PulseProgram dj_program(const FunctionSpec& f, const SpinSystem& system);

struct SpinBand {
  std::size_t spin = 0;
  double low_hz = 0.0;
  double high_hz = 0.0;
};

struct DJOutcome {
  std::string function;
  std::size_t bits = 1;
  std::vector<SpinBand> bands;             // work spin first, then inputs
  double work_band_energy = 0.0;
  std::vector<double> input_band_energy;   // one per input qubit
  FunctionKind verdict = FunctionKind::Constant;
  Spectrum2D spectrum;

  /// Input band energy relative to the work band, per input qubit.
  std::vector<double> ratios() const;
};

struct DJOptions {
  std::optional<Acquisition> acquisition;
  ProcessOptions processing;
  double presence_threshold = 0.1;
};

/// Simulates the experiment and calls it constant iff every input qubit's
/// band keeps at least presence_threshold of the work band energy.
DJOutcome run_dj(const SpinSystem& system, const FunctionSpec& f, const DJOptions& options = {});

/// F2 band of each spin: shift +- (sum of |J| to all partners + 2 bins).
/// Throws if bands overlap or leave the spectral window.
std::vector<SpinBand> multiplet_bands(const SpinSystem& system, const Spectrum2D& spectrum);

/// Sum of squared magnitudes over all F1 rows and the F2 columns of `band`.
double band_energy(const Spectrum2D& spectrum, const SpinBand& band);

struct IOCorrelationRow {
  std::size_t input_qubit = 1;  // spin index of the flipped input qubit
  BasisLabel in_lower;
  BasisLabel in_upper;
  BasisLabel out_lower;  // images of in_lower / in_upper under U_f
  BasisLabel out_upper;
  CoherenceClass out_class = CoherenceClass::SingleQuantum;
  bool observable = true;
};

/// Every input-qubit transition pushed through U_f on the basis labels
/// (work bit first), grouped by input qubit, ascending labels within a group.
std::vector<IOCorrelationRow> symbolic_io(const FunctionSpec& f);

}  // namespace nmrqc
