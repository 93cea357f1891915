#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nmrqc/spin_system.hpp"

namespace nmrqc {

/// Either every spin of the bound system or an explicit list.
struct SpinSelection {
  bool all = false;
  std::vector<std::size_t> spins;

  static SpinSelection every() { return {true, {}}; }
  static SpinSelection of(std::vector<std::size_t> s) { return {false, std::move(s)}; }
  std::vector<std::size_t> resolve(std::size_t n_spins) const;

  friend bool operator==(const SpinSelection&, const SpinSelection&) = default;
};

namespace event {

struct HardPulse {
  SpinSelection spins;
  double angle = 0.0;  // radians
  double phase = 0.0;  // radians
  friend bool operator==(const HardPulse&, const HardPulse&);
};

struct SelectivePulse {
  std::size_t spin = 0;
  double angle = 0.0;
  double phase = 0.0;
  friend bool operator==(const SelectivePulse&, const SelectivePulse&);
};

struct TransitionPulse {
  TransitionRef transition;
  double angle = 0.0;
  double phase = 0.0;
  friend bool operator==(const TransitionPulse&, const TransitionPulse&);
};

struct Delay {
  double seconds = 0.0;
  friend bool operator==(const Delay&, const Delay&);
};

struct Gradient {
  friend bool operator==(const Gradient&, const Gradient&) = default;
};

struct EvolveT1 {
  friend bool operator==(const EvolveT1&, const EvolveT1&) = default;
};

struct Acquire {
  SpinSelection spins;
  friend bool operator==(const Acquire&, const Acquire&) = default;
};

}  // namespace event

using PulseEvent = std::variant<event::HardPulse, event::SelectivePulse, event::TransitionPulse,
                                event::Delay, event::Gradient, event::EvolveT1, event::Acquire>;

struct PulseProgram {
  std::string name;
  std::vector<PulseEvent> events;

  friend bool operator==(const PulseProgram&, const PulseProgram&) = default;
};

/// Syntax or structure error with a 1-based source position (0 when the
/// error is not tied to a line, e.g. a missing acquire).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Line-oriented pulse-program source. One statement per line, '#' starts a
/// comment:
///
///   pulse <all|Ik|Ij,Ik,...> <angle_deg> <x|y|-x|-y|phase_deg>
///   tpulse <bits>-<bits> <angle_deg> <phase>
///   delay <seconds>
///   grad
///   t1
///   acquire <all|Ik|Ij,Ik,...>
PulseProgram parse_program(std::string_view text, std::string name = {});

/// Canonical text, one event per line.
std::string serialize_program(const PulseProgram& program);
std::string serialize_event(const PulseEvent& event);

/// Throws ParseError unless t1 appears at most once and acquire exactly once,
/// as the last event.
void check_structure(const PulseProgram& program);

/// Throws Error when spin indices or transition labels do not fit `system`.
/// Returns advisories (e.g. transition pulses on degenerate lines).
std::vector<std::string> check_against(const PulseProgram& program, const SpinSystem& system);

}  // namespace nmrqc
