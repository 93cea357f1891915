#include "nmrqc/experiment2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "nmrqc/density.hpp"

namespace nmrqc {

namespace {

constexpr double kPi = std::numbers::pi;

Propagator event_propagator(const SpinSystem& system, const PulseEvent& ev, double phase_shift) {
  const std::size_t n = system.size();
  if (const auto* p = std::get_if<event::HardPulse>(&ev)) {
    auto spins = p->spins.resolve(n);
    return hard_pulse(system, spins, p->angle, p->phase + phase_shift);
  }
  if (const auto* p = std::get_if<event::SelectivePulse>(&ev)) {
    std::size_t spin = p->spin;
    return hard_pulse(system, std::span<const std::size_t>(&spin, 1), p->angle, p->phase + phase_shift);
  }
  if (const auto* p = std::get_if<event::TransitionPulse>(&ev)) {
    return transition_pulse(system, p->transition, p->angle, p->phase + phase_shift);
  }
  if (const auto* d = std::get_if<event::Delay>(&ev)) return free_evolution(system, d->seconds);
  throw Error("event has no propagator");
}

// Runs `events` on `state`; gradients crush, markers are skipped.
DensityState run_events(const SpinSystem& system, DensityState state, std::span<const PulseEvent> events,
                        double phase_shift) {
  for (const auto& ev : events) {
    if (std::holds_alternative<event::Gradient>(ev)) {
      state = gradient_crush(state);
    } else if (std::holds_alternative<event::EvolveT1>(ev) || std::holds_alternative<event::Acquire>(ev)) {
      continue;
    } else {
      state = apply(state, event_propagator(system, ev, phase_shift));
    }
  }
  return state;
}

std::vector<double> sorted_unique_gaps(std::vector<double> freqs) {
  std::sort(freqs.begin(), freqs.end());
  std::vector<double> gaps;
  for (std::size_t i = 1; i < freqs.size(); ++i) gaps.push_back(freqs[i] - freqs[i - 1]);
  return gaps;
}

double min_spacing(const std::vector<std::pair<BasisLabel, double>>& lines) {
  std::vector<double> freqs;
  for (const auto& [label, f] : lines) freqs.push_back(f);
  auto gaps = sorted_unique_gaps(freqs);
  return gaps.empty() ? 0.0 : *std::min_element(gaps.begin(), gaps.end());
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::pair<BasisLabel, double>> observer_lines(const SpinSystem& system) {
  std::vector<std::pair<BasisLabel, double>> out;
  for (const auto& t : enumerate_single_quantum(system, system.control_spin()))
    out.emplace_back(t.spectator(), transition_offset(system, t));
  return out;
}

Acquisition default_gate_acquisition(const SpinSystem& system, std::size_t points) {
  auto lines = observer_lines(system);
  const double carrier = system.shift(system.control_spin());
  double half = 0.0;
  for (const auto& [label, f] : lines) half = std::max(half, std::abs(f - carrier));
  const double spacing = min_spacing(lines);
  double sw = spacing > 0.0 ? 2.0 * (half + 2.0 * spacing) : 2.0 * half + 20.0;
  Acquisition acq;
  acq.n_t1 = acq.n_t2 = points;
  acq.dwell1 = acq.dwell2 = 1.0 / sw;
  acq.carrier1_hz = acq.carrier2_hz = carrier;
  return acq;
}

Acquisition default_dj_acquisition(const SpinSystem& system, std::size_t points) {
  const std::size_t n = system.size();
  double lo = system.shift(0);
  double hi = system.shift(0);
  double max_jsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, system.shift(i));
    hi = std::max(hi, system.shift(i));
    double jsum = 0.0;
    for (std::size_t j = 0; j < n; ++j) jsum += std::abs(system.coupling(i, j));
    max_jsum = std::max(max_jsum, jsum);
  }
  const double carrier = 0.5 * (lo + hi);
  const double half = 1.1 * 0.5 * (hi - lo) + 2.0 * max_jsum + 1.0;
  Acquisition acq;
  acq.n_t1 = acq.n_t2 = points;
  acq.dwell1 = acq.dwell2 = 1.0 / (2.0 * half);
  acq.carrier1_hz = acq.carrier2_hz = carrier;
  return acq;
}

RawData2D run_2d(const SpinSystem& system, const PulseProgram& program, const Acquisition& acq) {
  check_against(program, system);
  if (acq.n_t1 < 8 || acq.n_t2 < 8) throw Error("acquisition needs at least 8 points per dimension");
  if (!(acq.dwell1 > 0.0) || !(acq.dwell2 > 0.0)) throw Error("dwell times must be positive");

  const auto& events = program.events;
  auto t1_it = std::find_if(events.begin(), events.end(),
                            [](const PulseEvent& e) { return std::holds_alternative<event::EvolveT1>(e); });
  if (t1_it == events.end()) throw Error("program has no t1 marker");
  const auto t1_pos = static_cast<std::size_t>(t1_it - events.begin());
  const std::span<const PulseEvent> before(events.data(), t1_pos);
  const std::span<const PulseEvent> after(events.data() + t1_pos + 1, events.size() - t1_pos - 1);
  const auto detected = std::get<event::Acquire>(events.back()).spins.resolve(system.size());

  bool states = acq.quadrature == F1Quadrature::States;
  if (acq.quadrature == F1Quadrature::Auto) {
    states = std::any_of(after.begin(), after.end(),
                         [](const PulseEvent& e) { return std::holds_alternative<event::Gradient>(e); });
  }

  const DensityState eq = equilibrium_state(system);
  const DensityState prepared_cos = run_events(system, eq, before, 0.0);
  const std::optional<DensityState> prepared_sin =
      states ? std::optional<DensityState>(run_events(system, eq, before, -0.5 * kPi)) : std::nullopt;

  RawData2D raw;
  raw.n_t1 = acq.n_t1;
  raw.n_t2 = acq.n_t2;
  raw.dwell1 = acq.dwell1;
  raw.dwell2 = acq.dwell2;
  raw.carrier1_hz = acq.carrier1_hz;
  raw.carrier2_hz = acq.carrier2_hz;
  raw.grid.assign(acq.n_t1 * acq.n_t2, {0.0, 0.0});

  auto scan = [&](const DensityState& prepared, double t1) {
    DensityState rho = apply(prepared, free_evolution(system, t1));
    rho = run_events(system, std::move(rho), after, 0.0);
    return run_fid(system, rho, detected, acq.n_t2, acq.dwell2, acq.carrier2_hz);
  };

  auto row = [&](std::size_t k) {
    const double t1 = static_cast<double>(k) * acq.dwell1;
    auto fid = scan(prepared_cos, t1);
    if (prepared_sin) {
      auto fid_sin = scan(*prepared_sin, t1);
      for (std::size_t j = 0; j < fid.size(); ++j) fid[j] += std::complex<double>(0.0, 1.0) * fid_sin[j];
    }
    const auto demod = std::polar(1.0, -2.0 * kPi * acq.carrier1_hz * t1);
    for (std::size_t j = 0; j < fid.size(); ++j) raw.at(k, j) = fid[j] * demod;
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(acq.jobs, static_cast<unsigned>(acq.n_t1)));
  if (jobs == 1) {
    for (std::size_t k = 0; k < acq.n_t1; ++k) row(k);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t k = w; k < acq.n_t1; k += jobs) row(k);
      });
    }
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Peaks and correlation maps

std::vector<Peak> pick_peaks(const Spectrum2D& spectrum, double rel_threshold) {
  if (spectrum.rows == 0 || spectrum.cols == 0) throw Error("empty spectrum");
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) throw Error("relative threshold must lie in (0, 1)");
  const double global = *std::max_element(spectrum.magnitudes.begin(), spectrum.magnitudes.end());
  std::vector<Peak> peaks;
  if (!(global > 0.0)) return peaks;
  const double floor = rel_threshold * global;
  const auto rows = static_cast<long>(spectrum.rows);
  const auto cols = static_cast<long>(spectrum.cols);

  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      const double v = spectrum.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      if (v < floor) continue;
      bool is_max = true;
      for (long dr = -1; dr <= 1 && is_max; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          long rr = r + dr;
          long cc = c + dc;
          if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
          if (spectrum.at(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc)) >= v) {
            is_max = false;
            break;
          }
        }
      }
      if (!is_max) continue;

      auto refine = [](double left, double mid, double right) {
        double denom = left - 2.0 * mid + right;
        return denom == 0.0 ? 0.0 : 0.5 * (left - right) / denom;
      };
      double d1 = 0.0;
      double d2 = 0.0;
      if (r > 0 && r + 1 < rows)
        d1 = refine(spectrum.at(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c)), v,
                    spectrum.at(static_cast<std::size_t>(r + 1), static_cast<std::size_t>(c)));
      if (c > 0 && c + 1 < cols)
        d2 = refine(spectrum.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c - 1)), v,
                    spectrum.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c + 1)));
      peaks.push_back({spectrum.axis1[static_cast<std::size_t>(r)] + d1 * spectrum.bin1(),
                       spectrum.axis2[static_cast<std::size_t>(c)] + d2 * spectrum.bin2(), v});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
  return peaks;
}

CorrelationMap correlation_map(std::span<const Peak> peaks, const SpinSystem& system) {
  const auto lines = observer_lines(system);
  const double spacing = min_spacing(lines);
  if (!(spacing > 1e-9)) throw Error("observer line frequencies are not pairwise distinct");
  const double tolerance = 0.5 * spacing;

  auto nearest = [&](double f) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < lines.size(); ++i)
      if (std::abs(lines[i].second - f) < std::abs(lines[best].second - f)) best = i;
    return best;
  };

  CorrelationMap map;
  std::ostringstream offending;
  std::size_t n_bad = 0;
  for (const auto& p : peaks) {
    std::size_t in = nearest(p.f1);
    std::size_t out = nearest(p.f2);
    if (std::abs(lines[in].second - p.f1) > tolerance || std::abs(lines[out].second - p.f2) > tolerance) {
      offending << (n_bad++ ? ", " : "") << "(" << p.f1 << " Hz, " << p.f2 << " Hz)";
      continue;
    }
    map.pairs.emplace(lines[in].first, lines[out].first);
  }
  if (n_bad) throw Error("ambiguous peak assignment: " + offending.str());
  return map;
}

GateReport verify_gate(const CorrelationMap& map, const GateSpec& spec) {
  GateReport report;
  report.gate = spec.name;
  for (const auto& [in, out] : map.pairs)
    if (in.size() != spec.arity || out.size() != spec.arity) report.unexpected.emplace_back(in, out);
  for (const auto& [in, expected] : spec.truth_table.pairs()) {
    std::vector<BasisLabel> observed;
    for (const auto& [a, b] : map.pairs)
      if (a == in) observed.push_back(b);
    if (observed.size() != 1 || observed.front() != expected)
      report.mismatches.push_back({in, expected, std::move(observed)});
  }
  report.pass = report.mismatches.empty() && report.unexpected.empty();
  return report;
}

GateRun run_gate(const GateSpec& spec, const SpinSystem& system, const GateRunOptions& options) {
  GateRun run;
  run.program = compile_gate(spec, system);
  run.acquisition = options.acquisition ? *options.acquisition : default_gate_acquisition(system);
  run.spectrum = process(run_2d(system, run.program, run.acquisition), options.processing);
  run.peaks = pick_peaks(run.spectrum, options.rel_threshold);
  run.map = correlation_map(run.peaks, system);
  run.report = verify_gate(run.map, spec);
  return run;
}

}  // namespace nmrqc
