#include "nmrqc/deutsch_jozsa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nmrqc {

namespace {

constexpr double kPi = std::numbers::pi;

FunctionSpec make_function(std::size_t bits, std::string name, std::vector<int> table) {
  const bool constant = std::all_of(table.begin(), table.end(), [&](int v) { return v == table.front(); });
  const auto ones = std::count(table.begin(), table.end(), 1);
  if (!constant && static_cast<std::size_t>(ones) * 2 != table.size())
    throw Error("function " + name + " is neither constant nor balanced");
  return {bits, std::move(name), std::move(table), constant ? FunctionKind::Constant : FunctionKind::Balanced};
}

void require_dj_system(const SpinSystem& system, std::size_t bits) {
  if (system.role(system.control_spin()) != SpinRole::Work)
    throw Error("Deutsch-Jozsa runs need a work spin");
  if (system.input_count() != bits) {
    throw Error(std::to_string(bits) + "-bit function needs " + std::to_string(bits) +
                " input qubit(s), system has " + std::to_string(system.input_count()));
  }
}

}  // namespace

std::string_view to_string(FunctionKind kind) {
  return kind == FunctionKind::Constant ? "constant" : "balanced";
}

std::vector<FunctionSpec> function_catalog(std::size_t bits) {
  if (bits == 1) {
    // Outputs for s = 0, 1.
    return {make_function(1, "f1", {0, 0}), make_function(1, "f2", {1, 1}),
            make_function(1, "f3", {0, 1}), make_function(1, "f4", {1, 0})};
  }
  if (bits == 2) {
    // Outputs for (s,t) = 00, 01, 10, 11.
    return {make_function(2, "f1", {0, 0, 0, 0}), make_function(2, "f2", {1, 1, 1, 1}),
            make_function(2, "f3", {0, 0, 1, 1}), make_function(2, "f4", {1, 1, 0, 0}),
            make_function(2, "f5", {1, 0, 1, 0}), make_function(2, "f6", {0, 1, 0, 1}),
            make_function(2, "f7", {1, 0, 0, 1}), make_function(2, "f8", {0, 1, 1, 0})};
  }
  throw Error("unsupported bits: " + std::to_string(bits) + " (only 1 and 2)");
}

FunctionSpec find_function(std::size_t bits, std::string_view name) {
  for (auto& f : function_catalog(bits))
    if (f.name == name) return f;
  throw Error("unknown function '" + std::string(name) + "' for " + std::to_string(bits) + " bit(s)");
}

std::vector<PulseEvent> compile_uf(const FunctionSpec& f, const SpinSystem& system) {
  require_dj_system(system, f.bits);
  const std::size_t work = system.control_spin();
  std::vector<PulseEvent> events;
  if (std::all_of(f.table.begin(), f.table.end(), [](int v) { return v == 1; })) {
    events.push_back(event::SelectivePulse{work, kPi, 0.0});
    return events;
  }
  for (std::uint32_t s = 0; s < f.table.size(); ++s) {
    if (f.table[s] != 1) continue;
    BasisLabel input(f.bits, s);
    auto t = TransitionRef::between(input.with_inserted(work, 0), input.with_inserted(work, 1));
    events.push_back(event::TransitionPulse{t, kPi, 0.0});
  }
  return events;
}

PulseProgram dj_program(const FunctionSpec& f, const SpinSystem& system) {
  PulseProgram p;
  p.name = "DJ " + std::to_string(f.bits) + "-bit " + f.name;
  p.events.push_back(event::HardPulse{SpinSelection::every(), kPi / 2, kPi / 2});
  p.events.push_back(event::EvolveT1{});
  for (auto& ev : compile_uf(f, system)) p.events.push_back(std::move(ev));
  p.events.push_back(event::Acquire{SpinSelection::every()});
  return p;
}

std::vector<double> DJOutcome::ratios() const {
  std::vector<double> out;
  for (double e : input_band_energy) out.push_back(work_band_energy > 0.0 ? e / work_band_energy : 0.0);
  return out;
}

std::vector<SpinBand> multiplet_bands(const SpinSystem& system, const Spectrum2D& spectrum) {
  if (spectrum.cols < 2) throw Error("spectrum too small for band integration");
  const double bin = spectrum.bin2();
  std::vector<SpinBand> bands;
  for (std::size_t i = 0; i < system.size(); ++i) {
    double jsum = 0.0;
    for (std::size_t j = 0; j < system.size(); ++j) jsum += std::abs(system.coupling(i, j));
    const double half = jsum + 2.0 * bin;
    SpinBand band{i, system.shift(i) - half, system.shift(i) + half};
    if (band.low_hz < spectrum.axis2.front() || band.high_hz > spectrum.axis2.back())
      throw Error("multiplet band of spin I" + std::to_string(i) + " leaves the spectral window");
    bands.push_back(band);
  }
  for (std::size_t a = 0; a < bands.size(); ++a) {
    for (std::size_t b = a + 1; b < bands.size(); ++b) {
      if (bands[a].low_hz <= bands[b].high_hz && bands[b].low_hz <= bands[a].high_hz)
        throw Error("multiplet bands of spins I" + std::to_string(a) + " and I" + std::to_string(b) + " overlap");
    }
  }
  return bands;
}

double band_energy(const Spectrum2D& spectrum, const SpinBand& band) {
  double sum = 0.0;
  for (std::size_t c = 0; c < spectrum.cols; ++c) {
    const double f = spectrum.axis2[c];
    if (f < band.low_hz || f > band.high_hz) continue;
    for (std::size_t r = 0; r < spectrum.rows; ++r) {
      const double m = spectrum.at(r, c);
      sum += m * m;
    }
  }
  return sum;
}

DJOutcome run_dj(const SpinSystem& system, const FunctionSpec& f, const DJOptions& options) {
  require_dj_system(system, f.bits);
  const Acquisition acq = options.acquisition ? *options.acquisition : default_dj_acquisition(system);

  DJOutcome out;
  out.function = f.name;
  out.bits = f.bits;
  out.spectrum = process(run_2d(system, dj_program(f, system), acq), options.processing);
  out.bands = multiplet_bands(system, out.spectrum);
  out.work_band_energy = band_energy(out.spectrum, out.bands[system.control_spin()]);
  bool all_present = true;
  for (std::size_t spin : system.input_spins()) {
    const double e = band_energy(out.spectrum, out.bands[spin]);
    out.input_band_energy.push_back(e);
    if (e < options.presence_threshold * out.work_band_energy) all_present = false;
  }
  out.verdict = all_present ? FunctionKind::Constant : FunctionKind::Balanced;
  return out;
}

std::vector<IOCorrelationRow> symbolic_io(const FunctionSpec& f) {
  const std::size_t n = f.bits + 1;  // work bit first
  auto apply_uf = [&](const BasisLabel& label) {
    return f(label.without(0)) == 1 ? label.flipped(0) : label;
  };
  std::vector<IOCorrelationRow> rows;
  for (std::size_t qubit = 1; qubit < n; ++qubit) {
    for (std::uint32_t k = 0; k < (std::uint32_t{1} << (n - 1)); ++k) {
      BasisLabel spectator(n - 1, k);
      IOCorrelationRow row;
      row.input_qubit = qubit;
      row.in_lower = spectator.with_inserted(qubit, 0);
      row.in_upper = spectator.with_inserted(qubit, 1);
      row.out_lower = apply_uf(row.in_lower);
      row.out_upper = apply_uf(row.in_upper);
      row.out_class = coherence_order_class(row.out_lower, row.out_upper);
      row.observable = row.out_class == CoherenceClass::SingleQuantum &&
                       (row.out_lower.index() ^ row.out_upper.index()) == (row.in_lower.index() ^ row.in_upper.index());
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace nmrqc
