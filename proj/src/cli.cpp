#include "nmrqc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "nmrqc/deutsch_jozsa.hpp"
#include "nmrqc/experiment2d.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/io.hpp"
#include "nmrqc/pulse_program.hpp"

namespace nmrqc::cli {

namespace fs = std::filesystem;

namespace {

struct AcquisitionFlags {
  std::size_t n_t1 = 0;
  std::size_t n_t2 = 0;
  double dwell1 = 0.0;
  double dwell2 = 0.0;
  std::size_t zerofill = 2;
  double threshold = 0.2;
  double line_broaden = 0.0;
  unsigned jobs = 1;

  void add_to(CLI::App* app) {
    app->add_option("--n-t1", n_t1, "t1 increments")->check(CLI::PositiveNumber);
    app->add_option("--n-t2", n_t2, "complex points per FID")->check(CLI::PositiveNumber);
    app->add_option("--dwell1", dwell1, "t1 increment, s")->check(CLI::PositiveNumber);
    app->add_option("--dwell2", dwell2, "t2 dwell time, s")->check(CLI::PositiveNumber);
    app->add_option("--zerofill", zerofill, "zero-fill factor per axis")->check(CLI::PositiveNumber);
    app->add_option("--threshold", threshold, "peak threshold relative to the maximum")->check(CLI::Range(0.0, 1.0));
    app->add_option("--lb", line_broaden, "exponential line broadening, Hz")->check(CLI::PositiveNumber);
    app->add_option("--jobs", jobs, "threads for the t1 loop")->check(CLI::PositiveNumber);
  }

  // Overrides on top of the experiment's default window.
  Acquisition apply(Acquisition acq) const {
    // Point counts change resolution; the spectral window stays put.
    if (n_t1) acq.n_t1 = n_t1;
    if (n_t2) acq.n_t2 = n_t2;
    if (dwell1 > 0.0) acq.dwell1 = dwell1;
    if (dwell2 > 0.0) acq.dwell2 = dwell2;
    acq.jobs = jobs;
    return acq;
  }

  ProcessOptions processing() const {
    ProcessOptions p;
    p.zerofill = zerofill;
    if (line_broaden > 0.0) p.line_broaden_hz = line_broaden;
    return p;
  }
};

struct CommonFlags {
  std::string system_path;
  std::string out_dir;
  bool contour = false;
  AcquisitionFlags acq;

  void add_to(CLI::App* app) {
    app->add_option("--system", system_path, "system description (JSON)")->required();
    app->add_option("--out", out_dir, std::string("output directory (default $") + kOutputDirEnv + " or ./nmrqc-out)");
    app->add_flag("--contour", contour, "print an ASCII contour plot of the spectrum");
    acq.add_to(app);
  }

  fs::path output_dir() const {
    fs::path dir;
    if (!out_dir.empty()) {
      dir = out_dir;
    } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
      dir = env;
    } else {
      dir = "nmrqc-out";
    }
    fs::create_directories(dir);
    return dir;
  }
};

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_spectrum(const fs::path& dir, const Spectrum2D& spectrum) {
  std::ofstream csv(dir / "spectrum.csv", std::ios::binary);
  if (!csv) throw Error("cannot write " + (dir / "spectrum.csv").string());
  write_spectrum_csv(csv, spectrum);
}

std::string table_line(const Permutation& table) {
  std::string out;
  for (const auto& [in, o] : table.pairs()) out += (out.empty() ? "" : " ") + in.str() + "->" + o.str();
  return out;
}

// ---------------------------------------------------------------------------

int cmd_gates_list(std::optional<std::size_t> arity, bool json, std::ostream& out) {
  if (json) {
    out << dump(gate_catalog_json(arity));
    return kOk;
  }
  for (const auto& g : gate_library()) {
    if (arity && g.arity != *arity) continue;
    out << g.name << "  arity=" << g.arity << "  " << table_line(g.truth_table) << "\n";
  }
  return kOk;
}

int cmd_run_gate(const std::string& name, const std::string& expect, const CommonFlags& flags, std::ostream& out,
                 std::ostream& err) {
  const SpinSystem system = load_system(flags.system_path);
  for (const auto& w : system.warnings()) err << "warning: " << w << "\n";
  const GateSpec& gate = find_gate(name, system.input_count());
  const GateSpec& expected = expect.empty() ? gate : find_gate(expect, system.input_count());

  GateRunOptions options;
  options.acquisition = flags.acq.apply(default_gate_acquisition(system));
  options.processing = flags.acq.processing();
  options.rel_threshold = flags.acq.threshold;

  const PulseProgram program = compile_gate(gate, system);
  const Spectrum2D spectrum = process(run_2d(system, program, *options.acquisition), options.processing);
  const auto peaks = pick_peaks(spectrum, options.rel_threshold);

  const fs::path dir = flags.output_dir();
  write_spectrum(dir, spectrum);
  write_text_file(dir / "peaks.json", dump(peaks_json(peaks)));
  if (flags.contour) out << ascii_contour(spectrum);

  CorrelationMap map;
  try {
    map = correlation_map(peaks, system);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  }
  write_text_file(dir / "correlation.json", dump(correlation_json(map)));
  const GateReport report = verify_gate(map, expected);
  write_text_file(dir / "report.json", dump(gate_report_json(report)));

  out << "gate " << gate.name << ": ";
  for (auto it = map.pairs.rbegin(); it != map.pairs.rend(); ++it)
    out << it->first.str() << "->" << it->second.str() << " ";
  out << "\n";
  out << "verify against " << expected.name << ": " << (report.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& m : report.mismatches) {
    out << "  input " << m.input.str() << ": expected " << m.expected.str() << ", observed";
    if (m.observed.empty()) out << " nothing";
    for (const auto& o : m.observed) out << " " << o.str();
    out << "\n";
  }
  return report.pass ? kOk : kMismatch;
}

int cmd_run_dj(std::size_t bits, const std::string& function, const CommonFlags& flags, std::ostream& out,
               std::ostream& err) {
  const FunctionSpec f = find_function(bits, function);
  const SpinSystem system = load_system(flags.system_path);
  for (const auto& w : system.warnings()) err << "warning: " << w << "\n";

  DJOptions options;
  options.acquisition = flags.acq.apply(default_dj_acquisition(system));
  options.processing = flags.acq.processing();
  const DJOutcome outcome = run_dj(system, f, options);
  const auto rows = symbolic_io(f);

  const fs::path dir = flags.output_dir();
  write_spectrum(dir, outcome.spectrum);
  write_text_file(dir / "verdict.json", dump(dj_report_json(outcome, rows)));
  if (flags.contour) out << ascii_contour(outcome.spectrum);

  const auto ratios = outcome.ratios();
  out << bits << "-bit " << f.name << ": verdict " << to_string(outcome.verdict) << " (declared "
      << to_string(f.kind) << ")\n";
  for (std::size_t i = 0; i < ratios.size(); ++i)
    out << "  I" << (i + 1) << " band energy / work band energy = " << ratios[i] << "\n";
  return outcome.verdict == f.kind ? kOk : kMismatch;
}

int cmd_run_program(const std::string& path, const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  const PulseProgram program = parse_program(read_text_file(path), fs::path(path).stem().string());
  const SpinSystem system = load_system(flags.system_path);
  for (const auto& w : system.warnings()) err << "warning: " << w << "\n";
  for (const auto& w : check_against(program, system)) err << "warning: " << w << "\n";

  const bool observer = system.role(system.control_spin()) == SpinRole::Observer;
  const Acquisition acq =
      flags.acq.apply(observer ? default_gate_acquisition(system) : default_dj_acquisition(system));
  const Spectrum2D spectrum = process(run_2d(system, program, acq), flags.acq.processing());
  const auto peaks = pick_peaks(spectrum, flags.acq.threshold);

  const fs::path dir = flags.output_dir();
  write_spectrum(dir, spectrum);
  write_text_file(dir / "peaks.json", dump(peaks_json(peaks)));
  if (flags.contour) out << ascii_contour(spectrum);
  out << "program " << program.name << ": " << peaks.size() << " peak(s)\n";

  if (observer) {
    try {
      const CorrelationMap map = correlation_map(peaks, system);
      write_text_file(dir / "correlation.json", dump(correlation_json(map)));
      for (auto it = map.pairs.rbegin(); it != map.pairs.rend(); ++it)
        out << "  " << it->first.str() << "->" << it->second.str() << "\n";
    } catch (const Error& e) {
      err << "note: no correlation map: " << e.what() << "\n";
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-dimensional NMR quantum-computing simulator", "nmrqc"};
  app.require_subcommand(1);

  auto* gates = app.add_subcommand("gates", "logic-gate catalog and experiments");
  gates->require_subcommand(1);
  auto* gates_list = gates->add_subcommand("list", "list the gate catalog");
  std::size_t list_arity = 0;
  bool list_json = false;
  gates_list->add_option("--arity", list_arity, "only gates with this many input qubits")->check(CLI::Range(2, 3));
  gates_list->add_flag("--json", list_json, "machine-readable catalog");

  auto* gates_run = gates->add_subcommand("run", "simulate a gate and verify its truth table");
  std::string gate_name;
  std::string expect;
  CommonFlags gate_flags;
  gates_run->add_option("name", gate_name, "gate name, e.g. XOR1")->required();
  gates_run->add_option("--expect", expect, "verify against this gate instead");
  gate_flags.add_to(gates_run);

  auto* dj = app.add_subcommand("dj", "Deutsch-Jozsa algorithm");
  dj->require_subcommand(1);
  auto* dj_run = dj->add_subcommand("run", "simulate one function and report the verdict");
  std::size_t bits = 1;
  std::string function;
  CommonFlags dj_flags;
  dj_run->add_option("--bits", bits, "input bits (1 or 2)")->required();
  dj_run->add_option("--function", function, "function name f1..f8")->required();
  dj_flags.add_to(dj_run);

  auto* program = app.add_subcommand("program", "user pulse programs");
  program->require_subcommand(1);
  auto* program_run = program->add_subcommand("run", "run a pulse program through the 2D pipeline");
  std::string program_path;
  CommonFlags program_flags;
  program_run->add_option("file", program_path, "pulse-program source")->required();
  program_flags.add_to(program_run);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (gates_list->parsed()) {
      std::optional<std::size_t> arity;
      if (gates_list->count("--arity")) arity = list_arity;
      return cmd_gates_list(arity, list_json, out);
    }
    if (gates_run->parsed()) return cmd_run_gate(gate_name, expect, gate_flags, out, err);
    if (dj_run->parsed()) return cmd_run_dj(bits, function, dj_flags, out, err);
    if (program_run->parsed()) return cmd_run_program(program_path, program_flags, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace nmrqc::cli
