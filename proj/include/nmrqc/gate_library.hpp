#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmrqc/pulse_program.hpp"
#include "nmrqc/spin_system.hpp"

namespace nmrqc {

/// Bijection on the 2^arity input labels.
class Permutation {
 public:
  Permutation() = default;
  /// `image[i]` is the output label index of input label index i.
  Permutation(std::size_t arity, std::vector<std::uint32_t> image);
  static Permutation identity(std::size_t arity);
  /// Pairs written like a truth table, e.g. {{"11","01"}, {"10","10"}, ...}.
  static Permutation from_pairs(std::size_t arity,
                                const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t arity() const { return arity_; }
  BasisLabel operator()(const BasisLabel& input) const;
  /// (input, output) pairs, input labels in descending order.
  std::vector<std::pair<BasisLabel, BasisLabel>> pairs() const;
  const std::vector<std::uint32_t>& image() const { return image_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::size_t arity_ = 0;
  std::vector<std::uint32_t> image_;
};

struct GateSpec {
  std::string name;
  std::size_t arity = 0;
  Permutation truth_table;
  /// Mixing events for an observer + `arity` input system, in execution
  /// order. Cascades on shared levels do not commute, so order matters.
  std::vector<PulseEvent> recipe;
};

/// The 24 two-qubit gates followed by the 3-qubit NOP, NOT(I1), TOFFOLI and ORNOR.
const std::vector<GateSpec>& gate_library();

/// Lookup by name and arity (NOP3 aside, names repeat across arities).
const GateSpec& find_gate(std::string_view name, std::size_t arity);
/// Lookup by name alone; throws if the name is unknown or ambiguous.
const GateSpec& find_gate(std::string_view name);
bool gate_exists(std::string_view name);

const Permutation& truth_table_of(const GateSpec& spec);

/// Full 2D experiment around the recipe:
///   pulse I0 90 y / t1 / pulse I0 90 -y / grad / recipe / pulse I0 90 y / acquire I0
/// The 90 -y after t1 stores the frequency-labelled observer magnetization
/// along z so it survives the crusher; the final 90 y reads it out.
PulseProgram compile_gate(const GateSpec& spec, const SpinSystem& system);

}  // namespace nmrqc
