#include "nmrqc/gate_library.hpp"

#include <algorithm>
#include <numbers>

namespace nmrqc {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::size_t arity, std::vector<std::uint32_t> image)
    : arity_(arity), image_(std::move(image)) {
  const std::size_t n = std::size_t{1} << arity_;
  if (image_.size() != n) throw Error("permutation size does not match arity");
  std::vector<bool> seen(n, false);
  for (auto v : image_) {
    if (v >= n || seen[v]) throw Error("truth table is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t arity) {
  std::vector<std::uint32_t> image(std::size_t{1} << arity);
  for (std::uint32_t i = 0; i < image.size(); ++i) image[i] = i;
  return Permutation(arity, std::move(image));
}

Permutation Permutation::from_pairs(std::size_t arity,
                                   const std::vector<std::pair<std::string, std::string>>& pairs) {
  const std::size_t n = std::size_t{1} << arity;
  if (pairs.size() != n) throw Error("truth table needs one row per input label");
  std::vector<std::uint32_t> image(n, 0);
  std::vector<bool> assigned(n, false);
  for (const auto& [in, out] : pairs) {
    BasisLabel a = BasisLabel::parse(in);
    BasisLabel b = BasisLabel::parse(out);
    if (a.size() != arity || b.size() != arity) throw Error("truth table label has wrong length");
    if (assigned[a.index()]) throw Error("truth table repeats input " + in);
    assigned[a.index()] = true;
    image[a.index()] = b.index();
  }
  return Permutation(arity, std::move(image));
}

BasisLabel Permutation::operator()(const BasisLabel& input) const {
  if (input.size() != arity_) throw Error("label length does not match permutation arity");
  return BasisLabel(arity_, image_[input.index()]);
}

std::vector<std::pair<BasisLabel, BasisLabel>> Permutation::pairs() const {
  std::vector<std::pair<BasisLabel, BasisLabel>> out;
  for (std::uint32_t i = static_cast<std::uint32_t>(image_.size()); i-- > 0;)
    out.emplace_back(BasisLabel(arity_, i), BasisLabel(arity_, image_[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Library

namespace {

constexpr double kPi = std::numbers::pi;

// "I1" is a spin-selective π_x; "110-111" a transition-selective π_x.
std::vector<PulseEvent> recipe(std::initializer_list<std::string_view> steps) {
  std::vector<PulseEvent> out;
  for (auto step : steps) {
    if (step.front() == 'I') {
      out.push_back(event::SelectivePulse{static_cast<std::size_t>(step[1] - '0'), kPi, 0.0});
    } else {
      out.push_back(event::TransitionPulse{TransitionRef::parse(step), kPi, 0.0});
    }
  }
  return out;
}

std::vector<PulseEvent> concat(std::vector<PulseEvent> a, const std::vector<PulseEvent>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Output column for inputs 11 10 01 00.
GateSpec two_qubit(std::string name, std::string_view outputs, std::vector<PulseEvent> steps) {
  static constexpr std::string_view kInputs[] = {"11", "10", "01", "00"};
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t i = 0; i < 4; ++i)
    rows.emplace_back(std::string(kInputs[i]), std::string(outputs.substr(3 * i, 2)));
  return GateSpec{std::move(name), 2, Permutation::from_pairs(2, rows), std::move(steps)};
}

template <typename Rule>
Permutation three_qubit_table(Rule flips_control) {
  std::vector<std::uint32_t> image(8);
  for (std::uint32_t i = 0; i < 8; ++i) {
    BasisLabel in(3, i);
    image[i] = flips_control(in.bit(1), in.bit(2)) ? in.flipped(0).index() : i;
  }
  return Permutation(3, std::move(image));
}

std::vector<GateSpec> build_library() {
  const auto swap_zq = recipe({"110-111", "010-011", "101-111", "001-011", "110-111", "010-011"});

  std::vector<GateSpec> gates;
  gates.push_back(two_qubit("NOP", "11 10 01 00", {}));
  gates.push_back(two_qubit("NOT(I1)", "01 00 11 10", recipe({"I1"})));
  gates.push_back(two_qubit("NOT(I2)", "10 11 00 01", recipe({"I2"})));
  gates.push_back(two_qubit("NOT(I1,I2)", "00 01 10 11", recipe({"I1", "I2"})));
  gates.push_back(two_qubit("XOR1", "01 10 11 00", recipe({"111-101", "011-001"})));
  gates.push_back(two_qubit("XOR2", "10 11 01 00", recipe({"111-110", "011-010"})));
  gates.push_back(two_qubit("XNOR1", "11 00 01 10", recipe({"100-110", "000-010"})));
  gates.push_back(two_qubit("XNOR2", "11 10 00 01", recipe({"101-100", "001-000"})));
  gates.push_back(two_qubit("SWAP", "11 01 10 00", swap_zq));
  gates.push_back(two_qubit("SWAP+NOT", "00 10 01 11",
                            recipe({"110-111", "010-011", "100-110", "000-010", "110-111", "010-011"})));
  gates.push_back(two_qubit("SWAP+XOR1", "01 11 10 00", recipe({"101-111", "001-011", "110-111", "010-011"})));
  gates.push_back(two_qubit("SWAP+XOR2", "10 01 11 00", recipe({"110-111", "010-011", "101-111", "001-011"})));
  gates.push_back(two_qubit("SWAP+XNOR1", "11 01 00 10", recipe({"100-110", "000-010", "100-101", "000-001"})));
  gates.push_back(two_qubit("SWAP+XNOR2", "11 00 10 01", recipe({"100-101", "000-001", "100-110", "000-010"})));
  gates.push_back(two_qubit("SWAP+NOT+XOR1", "00 10 11 01", recipe({"101-111", "001-011", "100-101", "000-001"})));
  gates.push_back(two_qubit("SWAP+NOT+XOR2", "00 11 01 10", recipe({"110-111", "010-011", "100-110", "000-010"})));
  gates.push_back(two_qubit("SWAP+NOT+XNOR1", "10 00 01 11", recipe({"100-110", "000-010", "110-111", "010-011"})));
  gates.push_back(two_qubit("SWAP+NOT+XNOR2", "01 10 00 11", recipe({"100-101", "000-001", "101-111", "001-011"})));
  gates.push_back(two_qubit("NOT(I1)+XOR2", "01 00 10 11", recipe({"I1", "111-110", "011-010"})));
  gates.push_back(two_qubit("NOT(I2)+XOR1", "10 01 00 11", recipe({"I2", "111-101", "011-001"})));
  gates.push_back(two_qubit("NOT(I1)+XNOR2", "00 01 11 10", recipe({"I1", "101-100", "001-000"})));
  gates.push_back(two_qubit("NOT(I2)+XNOR1", "00 11 10 01", recipe({"I2", "100-110", "000-010"})));
  gates.push_back(two_qubit("SWAP+NOT(I1)", "01 11 00 10", concat(swap_zq, recipe({"I1"}))));
  gates.push_back(two_qubit("SWAP+NOT(I2)", "10 00 11 01", concat(swap_zq, recipe({"I2"}))));

  // Three input qubits |s,t,u> = I1 I2 I3; transitions of the control spin I1
  // are named by the states of I0, I2, I3.
  gates.push_back(GateSpec{"NOP3", 3, Permutation::identity(3), {}});
  gates.push_back(GateSpec{"NOT(I1)", 3, three_qubit_table([](int, int) { return true; }), recipe({"I1"})});
  gates.push_back(GateSpec{"TOFFOLI", 3, three_qubit_table([](int t, int u) { return (t & u) == 1; }),
                           recipe({"0011-0111", "1011-1111"})});
  gates.push_back(GateSpec{"ORNOR", 3, three_qubit_table([](int t, int u) { return (t | u) == 1; }),
                           recipe({"1011-1111", "0011-0111", "1010-1110", "0010-0110", "1001-1101", "0001-0101"})});
  return gates;
}

}  // namespace

const std::vector<GateSpec>& gate_library() {
  static const std::vector<GateSpec> library = build_library();
  return library;
}

const GateSpec& find_gate(std::string_view name, std::size_t arity) {
  bool other_arity = false;
  for (const auto& g : gate_library()) {
    if (g.name != name) continue;
    if (g.arity == arity) return g;
    other_arity = true;
  }
  if (other_arity) {
    throw Error("gate " + std::string(name) + " is not defined for " + std::to_string(arity) +
                " input qubit(s)");
  }
  throw Error("unknown gate '" + std::string(name) + "'");
}

const GateSpec& find_gate(std::string_view name) {
  const GateSpec* found = nullptr;
  for (const auto& g : gate_library()) {
    if (g.name != name) continue;
    if (found) throw Error("gate name '" + std::string(name) + "' is ambiguous; give the arity");
    found = &g;
  }
  if (!found) throw Error("unknown gate '" + std::string(name) + "'");
  return *found;
}

bool gate_exists(std::string_view name) {
  return std::any_of(gate_library().begin(), gate_library().end(),
                     [&](const GateSpec& g) { return g.name == name; });
}

const Permutation& truth_table_of(const GateSpec& spec) { return spec.truth_table; }

PulseProgram compile_gate(const GateSpec& spec, const SpinSystem& system) {
  if (system.role(system.control_spin()) != SpinRole::Observer)
    throw Error("gate experiments need an observer spin");
  if (system.input_count() != spec.arity) {
    throw Error("gate " + spec.name + " needs " + std::to_string(spec.arity) + " input qubits, system has " +
                std::to_string(system.input_count()));
  }
  const std::size_t obs = system.control_spin();
  PulseProgram p;
  p.name = spec.name;
  p.events.push_back(event::SelectivePulse{obs, kPi / 2, kPi / 2});
  p.events.push_back(event::EvolveT1{});
  p.events.push_back(event::SelectivePulse{obs, kPi / 2, 1.5 * kPi});
  p.events.push_back(event::Gradient{});
  p.events.insert(p.events.end(), spec.recipe.begin(), spec.recipe.end());
  p.events.push_back(event::SelectivePulse{obs, kPi / 2, kPi / 2});
  p.events.push_back(event::Acquire{SpinSelection::of({obs})});
  check_against(p, system);
  return p;
}

}  // namespace nmrqc
