#include "nmrqc/pulse_program.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>

#include "nmrqc/density.hpp"

namespace nmrqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegree = kPi / 180.0;

bool same_value(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool same_phase(double a, double b) {
  double d = std::remainder(a - b, 2.0 * kPi);
  return std::abs(d) <= 1e-12;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_phase(double phase) {
  static constexpr std::pair<double, const char*> kNames[] = {
      {0.0, "x"}, {0.5 * kPi, "y"}, {kPi, "-x"}, {1.5 * kPi, "-y"}};
  for (const auto& [value, name] : kNames)
    if (same_phase(phase, value)) return name;
  return format_number(phase / kDegree);
}

std::string format_spins(const SpinSelection& sel) {
  if (sel.all) return "all";
  std::string out;
  for (std::size_t i = 0; i < sel.spins.size(); ++i) {
    if (i) out += ',';
    out += "I" + std::to_string(sel.spins[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::vector<Token> tokens)
      : line_(line_no), tokens_(std::move(tokens)) {}

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(line_, at.column, message);
  }

  void expect_args(std::size_t n) const {
    const Token& head = tokens_.front();
    if (tokens_.size() - 1 < n)
      fail(head, "'" + std::string(head.text) + "' expects " + std::to_string(n) + " argument(s)");
    if (tokens_.size() - 1 > n) fail(tokens_[n + 1], "unexpected token '" + std::string(tokens_[n + 1].text) + "'");
  }

  const Token& arg(std::size_t i) const { return tokens_.at(i + 1); }

  double number(const Token& tok) const {
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
      fail(tok, "malformed number '" + std::string(tok.text) + "'");
    return value;
  }

  double phase(const Token& tok) const {
    if (tok.text == "x") return 0.0;
    if (tok.text == "y") return 0.5 * kPi;
    if (tok.text == "-x") return kPi;
    if (tok.text == "-y") return 1.5 * kPi;
    return number(tok) * kDegree;
  }

  std::size_t spin_index(const Token& tok, std::string_view text) const {
    if (text.size() < 2 || text[0] != 'I') fail(tok, "malformed spin '" + std::string(text) + "'");
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), index);
    if (ec != std::errc() || ptr != text.data() + text.size())
      fail(tok, "malformed spin '" + std::string(text) + "'");
    return index;
  }

  SpinSelection spins(const Token& tok) const {
    if (tok.text == "all") return SpinSelection::every();
    SpinSelection sel;
    std::string_view rest = tok.text;
    while (true) {
      auto comma = rest.find(',');
      std::size_t spin = spin_index(tok, rest.substr(0, comma));
      for (std::size_t s : sel.spins)
        if (s == spin) fail(tok, "spin I" + std::to_string(spin) + " listed twice");
      sel.spins.push_back(spin);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return sel;
  }

  TransitionRef transition(const Token& tok) const {
    try {
      return TransitionRef::parse(tok.text);
    } catch (const Error& e) {
      fail(tok, "malformed transition label '" + std::string(tok.text) + "': " + e.what());
    }
  }

  PulseEvent parse() const {
    const Token& head = tokens_.front();
    const std::string_view m = head.text;
    if (m == "pulse") {
      expect_args(3);
      SpinSelection sel = spins(arg(0));
      double angle = number(arg(1)) * kDegree;
      double ph = phase(arg(2));
      if (!sel.all && sel.spins.size() == 1) return event::SelectivePulse{sel.spins[0], angle, ph};
      return event::HardPulse{std::move(sel), angle, ph};
    }
    if (m == "tpulse") {
      expect_args(3);
      return event::TransitionPulse{transition(arg(0)), number(arg(1)) * kDegree, phase(arg(2))};
    }
    if (m == "delay") {
      expect_args(1);
      double seconds = number(arg(0));
      if (seconds < 0.0) fail(arg(0), "delay must be non-negative");
      return event::Delay{seconds};
    }
    if (m == "grad") {
      expect_args(0);
      return event::Gradient{};
    }
    if (m == "t1") {
      expect_args(0);
      return event::EvolveT1{};
    }
    if (m == "acquire") {
      expect_args(1);
      return event::Acquire{spins(arg(0))};
    }
    fail(head, "unknown mnemonic '" + std::string(m) + "'");
  }

 private:
  std::size_t line_;
  std::vector<Token> tokens_;
};

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::size_t> SpinSelection::resolve(std::size_t n_spins) const {
  if (all) {
    std::vector<std::size_t> out(n_spins);
    for (std::size_t i = 0; i < n_spins; ++i) out[i] = i;
    return out;
  }
  for (std::size_t s : spins)
    if (s >= n_spins) throw Error("spin I" + std::to_string(s) + " does not exist in a " + std::to_string(n_spins) + "-spin system");
  return spins;
}

namespace event {

bool operator==(const HardPulse& a, const HardPulse& b) {
  return a.spins == b.spins && same_value(a.angle, b.angle) && same_phase(a.phase, b.phase);
}
bool operator==(const SelectivePulse& a, const SelectivePulse& b) {
  return a.spin == b.spin && same_value(a.angle, b.angle) && same_phase(a.phase, b.phase);
}
bool operator==(const TransitionPulse& a, const TransitionPulse& b) {
  return a.transition == b.transition && same_value(a.angle, b.angle) && same_phase(a.phase, b.phase);
}
bool operator==(const Delay& a, const Delay& b) { return same_value(a.seconds, b.seconds); }

}  // namespace event

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(line == 0 ? message
                      : "line " + std::to_string(line) + ": " + message +
                            (column ? " (column " + std::to_string(column) + ")" : "")),
      line_(line),
      column_(column),
      message_(message) {}

PulseProgram parse_program(std::string_view text, std::string name) {
  PulseProgram program;
  program.name = std::move(name);
  std::vector<std::size_t> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++line_no;
    auto tokens = split_line(line);
    if (!tokens.empty()) {
      program.events.push_back(LineParser(line_no, std::move(tokens)).parse());
      lines.push_back(line_no);
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }

  // Structural checks, reported at the offending line.
  std::optional<std::size_t> t1_line;
  std::optional<std::size_t> acquire_index;
  for (std::size_t i = 0; i < program.events.size(); ++i) {
    const auto& ev = program.events[i];
    if (std::holds_alternative<event::EvolveT1>(ev)) {
      if (t1_line) throw ParseError(lines[i], 1, "duplicate t1 marker (first at line " + std::to_string(*t1_line) + ")");
      t1_line = lines[i];
    } else if (std::holds_alternative<event::Acquire>(ev)) {
      if (acquire_index) throw ParseError(lines[i], 1, "duplicate acquire");
      acquire_index = i;
    } else if (acquire_index) {
      throw ParseError(lines[i], 1, "statement after acquire");
    }
  }
  if (!acquire_index) throw ParseError(0, 0, "missing acquire");
  return program;
}

void check_structure(const PulseProgram& program) {
  std::size_t t1 = 0;
  for (std::size_t i = 0; i < program.events.size(); ++i) {
    const auto& ev = program.events[i];
    if (std::holds_alternative<event::EvolveT1>(ev) && ++t1 > 1) throw ParseError(0, 0, "duplicate t1 marker");
    if (std::holds_alternative<event::Acquire>(ev) && i + 1 != program.events.size())
      throw ParseError(0, 0, "acquire must be the last statement");
  }
  if (program.events.empty() || !std::holds_alternative<event::Acquire>(program.events.back()))
    throw ParseError(0, 0, "missing acquire");
}

std::string serialize_event(const PulseEvent& ev) {
  struct Visitor {
    std::string operator()(const event::HardPulse& p) const {
      return "pulse " + format_spins(p.spins) + " " + format_number(p.angle / kDegree) + " " + format_phase(p.phase);
    }
    std::string operator()(const event::SelectivePulse& p) const {
      return "pulse I" + std::to_string(p.spin) + " " + format_number(p.angle / kDegree) + " " + format_phase(p.phase);
    }
    std::string operator()(const event::TransitionPulse& p) const {
      return "tpulse " + p.transition.str() + " " + format_number(p.angle / kDegree) + " " + format_phase(p.phase);
    }
    std::string operator()(const event::Delay& d) const { return "delay " + format_number(d.seconds); }
    std::string operator()(const event::Gradient&) const { return "grad"; }
    std::string operator()(const event::EvolveT1&) const { return "t1"; }
    std::string operator()(const event::Acquire& a) const { return "acquire " + format_spins(a.spins); }
  };
  return std::visit(Visitor{}, ev);
}

std::string serialize_program(const PulseProgram& program) {
  std::string out;
  if (!program.name.empty()) out += "# " + program.name + "\n";
  for (const auto& ev : program.events) out += serialize_event(ev) + "\n";
  return out;
}

std::vector<std::string> check_against(const PulseProgram& program, const SpinSystem& system) {
  check_structure(program);
  const std::size_t n = system.size();
  std::vector<std::string> warnings;
  std::set<std::string> reported;
  for (const auto& ev : program.events) {
    if (const auto* p = std::get_if<event::HardPulse>(&ev)) {
      if (p->spins.resolve(n).empty()) throw Error("pulse with an empty spin list");
    } else if (const auto* p = std::get_if<event::SelectivePulse>(&ev)) {
      if (p->spin >= n) throw Error("spin I" + std::to_string(p->spin) + " does not exist in a " + std::to_string(n) + "-spin system");
    } else if (const auto* p = std::get_if<event::TransitionPulse>(&ev)) {
      if (p->transition.lower.size() != n)
        throw Error("transition " + p->transition.str() + " is not resolvable in a " + std::to_string(n) + "-spin system");
      auto twins = degenerate_with(system, p->transition);
      if (!twins.empty() && reported.insert(p->transition.str()).second) {
        warnings.push_back("transition " + p->transition.str() + " is degenerate with " + twins.front().str() +
                           "; ideal selectivity assumed");
      }
    } else if (const auto* a = std::get_if<event::Acquire>(&ev)) {
      if (a->spins.resolve(n).empty()) throw Error("acquire with an empty spin list");
    }
  }
  return warnings;
}

}  // namespace nmrqc
