#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nmrqc/cli.hpp"
#include "nmrqc/deutsch_jozsa.hpp"
#include "nmrqc/experiment2d.hpp"
#include "nmrqc/gate_library.hpp"
#include "nmrqc/io.hpp"
#include "nmrqc/pulse_program.hpp"

namespace py = pybind11;
using namespace nmrqc;

namespace {

// Results cross the boundary as JSON text; the Python side decodes them.

SpinSystem system_of(const std::string& text) { return system_from_json(Json::parse(text)); }

std::string run_gate_json(const std::string& name, const std::string& system_text) {
  const SpinSystem system = system_of(system_text);
  const GateRun run = run_gate(find_gate(name, system.input_count()), system);
  Json doc;
  doc["peaks"] = peaks_json(run.peaks);
  doc["correlation"] = correlation_json(run.map);
  doc["report"] = gate_report_json(run.report);
  return doc.dump();
}

std::string run_dj_json(std::size_t bits, const std::string& name, const std::string& system_text) {
  const FunctionSpec f = find_function(bits, name);
  const DJOutcome outcome = run_dj(system_of(system_text), f);
  return dj_report_json(outcome, symbolic_io(f)).dump();
}

std::string compile_gate_text(const std::string& name, const std::string& system_text) {
  const SpinSystem system = system_of(system_text);
  return serialize_program(compile_gate(find_gate(name, system.input_count()), system));
}

std::string normalize_program(const std::string& text) { return serialize_program(parse_program(text)); }

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_nmrqc, m) {
  m.doc() = "NMR quantum-computing simulator core";
  py::register_exception<Error>(m, "NmrqcError", PyExc_ValueError);

  m.def("gate_catalog", [] { return gate_catalog_json().dump(); });
  m.def("run_gate", &run_gate_json, py::arg("name"), py::arg("system"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_dj", &run_dj_json, py::arg("bits"), py::arg("function"), py::arg("system"),
        py::call_guard<py::gil_scoped_release>());
  m.def("compile_gate", &compile_gate_text, py::arg("name"), py::arg("system"));
  m.def("normalize_program", &normalize_program, py::arg("text"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
