#include "nmrqc/spin_system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace nmrqc {

std::string_view to_string(SpinRole role) {
  switch (role) {
    case SpinRole::Observer: return "observer";
    case SpinRole::Work: return "work";
    case SpinRole::Input: return "input";
  }
  return "?";
}

SpinRole parse_role(std::string_view text) {
  if (text == "observer") return SpinRole::Observer;
  if (text == "work") return SpinRole::Work;
  // "input1", "input2", ... name the same role.
  if (text.starts_with("input") &&
      std::all_of(text.begin() + 5, text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return SpinRole::Input;
  throw Error("unknown spin role '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// BasisLabel

BasisLabel::BasisLabel(std::size_t n_bits, std::uint32_t index)
    : index_(index), n_bits_(static_cast<std::uint8_t>(n_bits)) {
  if (n_bits == 0 || n_bits > kMaxBits) throw Error("basis label length must be 1-16");
  if (index >= (std::uint32_t{1} << n_bits)) throw Error("basis label index out of range");
}

BasisLabel BasisLabel::parse(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxBits)
    throw Error("malformed basis label '" + std::string(bits) + "'");
  std::uint32_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("malformed basis label '" + std::string(bits) + "'");
    index = (index << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return BasisLabel(bits.size(), index);
}

int BasisLabel::bit(std::size_t position) const {
  if (position >= n_bits_) throw Error("bit position out of range");
  return static_cast<int>((index_ >> (n_bits_ - 1 - position)) & 1u);
}

BasisLabel BasisLabel::flipped(std::size_t position) const {
  if (position >= n_bits_) throw Error("bit position out of range");
  return BasisLabel(n_bits_, index_ ^ (std::uint32_t{1} << (n_bits_ - 1 - position)));
}

BasisLabel BasisLabel::without(std::size_t position) const {
  if (position >= n_bits_ || n_bits_ < 2) throw Error("cannot remove bit from label");
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < n_bits_; ++i) {
    if (i == position) continue;
    index = (index << 1) | static_cast<std::uint32_t>(bit(i));
  }
  return BasisLabel(n_bits_ - 1u, index);
}

BasisLabel BasisLabel::with_inserted(std::size_t position, int value) const {
  if (position > n_bits_) throw Error("insert position out of range");
  std::uint32_t index = 0;
  for (std::size_t i = 0; i <= n_bits_; ++i) {
    int b = i == position ? value : bit(i < position ? i : i - 1);
    index = (index << 1) | static_cast<std::uint32_t>(b & 1);
  }
  return BasisLabel(n_bits_ + 1u, index);
}

std::string BasisLabel::str() const {
  std::string out;
  for (std::size_t i = 0; i < n_bits_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

// ---------------------------------------------------------------------------
// TransitionRef

TransitionRef TransitionRef::between(const BasisLabel& a, const BasisLabel& b) {
  if (a.size() != b.size()) throw Error("transition levels have different lengths");
  std::uint32_t diff = a.index() ^ b.index();
  if (std::popcount(diff) != 1)
    throw Error("transition " + a.str() + "-" + b.str() + " is not single-quantum");
  std::size_t spin = a.size() - 1 - static_cast<std::size_t>(std::countr_zero(diff));
  if (a.bit(spin) == 0) return {a, b, spin};
  return {b, a, spin};
}

TransitionRef TransitionRef::parse(std::string_view text) {
  auto dash = text.find('-');
  if (dash == std::string_view::npos)
    throw Error("malformed transition label '" + std::string(text) + "'");
  return between(BasisLabel::parse(text.substr(0, dash)), BasisLabel::parse(text.substr(dash + 1)));
}

std::string TransitionRef::str() const { return lower.str() + "-" + upper.str(); }

// ---------------------------------------------------------------------------
// SpinSystem

SpinSystem SpinSystem::build(const SystemConfig& config) {
  const std::size_t n = config.shifts_hz.size();
  if (n < kMinSpins || n > kMaxSpins) {
    throw Error("n_spins must be between 2 and 4 (got " + std::to_string(n) + ")");
  }
  if (config.roles.size() != n) throw Error("roles list length does not match spin count");
  if (config.j_hz.size() != n) throw Error("coupling matrix must be n x n");
  for (const auto& row : config.j_hz) {
    if (row.size() != n) throw Error("coupling matrix must be n x n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(config.shifts_hz[i])) throw Error("non-finite shift");
    if (config.j_hz[i][i] != 0.0) throw Error("coupling matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(config.j_hz[i][j])) throw Error("non-finite coupling");
      if (config.j_hz[i][j] != config.j_hz[j][i]) throw Error("asymmetric couplings");
    }
  }

  auto n_control = std::count_if(config.roles.begin(), config.roles.end(), [](SpinRole r) {
    return r == SpinRole::Observer || r == SpinRole::Work;
  });
  if (n_control == 0) throw Error("no observer/work spin");
  if (n_control > 1) throw Error("duplicate observer/work role");
  if (config.roles[0] == SpinRole::Input) throw Error("observer/work role must be on spin 0");

  SpinSystem s;
  s.shifts_ = config.shifts_hz;
  s.couplings_ = config.j_hz;
  s.roles_ = config.roles;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double jij = config.j_hz[i][j];
      if (jij != 0.0 && std::abs(jij) >= std::abs(config.shifts_hz[i] - config.shifts_hz[j])) {
        s.weakly_coupled_ = false;
        std::ostringstream msg;
        msg << "weak-coupling condition violated for spins " << i << "," << j << ": |J| = "
            << std::abs(jij) << " Hz >= |shift difference| = "
            << std::abs(config.shifts_hz[i] - config.shifts_hz[j]) << " Hz";
        s.warnings_.push_back(msg.str());
      }
    }
  }

  auto lines = enumerate_single_quantum(s, s.control_spin());
  std::vector<double> freqs;
  for (const auto& t : lines) freqs.push_back(transition_offset(s, t));
  std::sort(freqs.begin(), freqs.end());
  if (std::adjacent_find(freqs.begin(), freqs.end(), [](double a, double b) {
        return std::abs(a - b) < 1e-9;
      }) != freqs.end()) {
    s.warnings_.push_back("degenerate spectrum: observer/work lines coincide");
  }
  return s;
}

std::vector<std::size_t> SpinSystem::input_spins() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (roles_[i] == SpinRole::Input) out.push_back(i);
  return out;
}

SystemConfig SpinSystem::config() const { return {shifts_, couplings_, roles_}; }

// ---------------------------------------------------------------------------
// Energies and transitions

namespace {

double magnetic_number(const BasisLabel& label, std::size_t spin) {
  return 0.5 - static_cast<double>(label.bit(spin));
}

void require_length(const SpinSystem& system, const BasisLabel& label) {
  if (label.size() != system.size()) {
    throw Error("label " + label.str() + " has length " + std::to_string(label.size()) +
                ", system has " + std::to_string(system.size()) + " spins");
  }
}

}  // namespace

double level_energy(const SpinSystem& system, const BasisLabel& label) {
  require_length(system, label);
  const std::size_t n = system.size();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mi = magnetic_number(label, i);
    e += system.shift(i) * mi;
    for (std::size_t j = i + 1; j < n; ++j) e += system.coupling(i, j) * mi * magnetic_number(label, j);
  }
  return e;
}

double transition_offset(const SpinSystem& system, const TransitionRef& t) {
  if (coherence_order_class(t.lower, t.upper) != CoherenceClass::SingleQuantum)
    throw Error("transition " + t.str() + " is not single-quantum");
  return level_energy(system, t.lower) - level_energy(system, t.upper);
}

double transition_frequency(const SpinSystem& system, const TransitionRef& t) {
  return std::abs(transition_offset(system, t));
}

std::vector<TransitionRef> enumerate_single_quantum(const SpinSystem& system, std::size_t spin) {
  const std::size_t n = system.size();
  if (spin >= n) throw Error("spin index out of range");
  std::vector<TransitionRef> out;
  const std::uint32_t n_spectator = std::uint32_t{1} << (n - 1);
  for (std::uint32_t k = n_spectator; k-- > 0;) {
    BasisLabel spectator(n - 1, k);
    out.push_back(TransitionRef{spectator.with_inserted(spin, 0), spectator.with_inserted(spin, 1), spin});
  }
  return out;
}

std::string_view to_string(CoherenceClass c) {
  switch (c) {
    case CoherenceClass::Population: return "population";
    case CoherenceClass::SingleQuantum: return "SQ";
    case CoherenceClass::ZeroQuantum: return "ZQ";
    case CoherenceClass::DoubleQuantum: return "DQ";
    case CoherenceClass::Higher: return "higher";
  }
  return "?";
}

CoherenceClass coherence_order_class(const BasisLabel& a, const BasisLabel& b) {
  if (a.size() != b.size()) throw Error("label length mismatch");
  std::uint32_t diff = a.index() ^ b.index();
  switch (std::popcount(diff)) {
    case 0: return CoherenceClass::Population;
    case 1: return CoherenceClass::SingleQuantum;
    case 2: {
      // Same-direction flips leave a's bits in the two positions equal.
      std::uint32_t flipped_up = diff & ~a.index();
      return std::popcount(flipped_up) == 1 ? CoherenceClass::ZeroQuantum
                                            : CoherenceClass::DoubleQuantum;
    }
    default: return CoherenceClass::Higher;
  }
}

std::string_view to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Progressive: return "progressive";
    case Connectivity::Regressive: return "regressive";
    case Connectivity::Unconnected: return "unconnected";
  }
  return "?";
}

Connectivity connectivity(const TransitionRef& a, const TransitionRef& b) {
  int shared = 0;
  bool a_upper = false;
  bool b_upper = false;
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      const BasisLabel& la = ia ? a.upper : a.lower;
      const BasisLabel& lb = ib ? b.upper : b.lower;
      if (la == lb) {
        ++shared;
        a_upper = ia == 1;
        b_upper = ib == 1;
      }
    }
  }
  if (shared != 1) return Connectivity::Unconnected;
  return a_upper == b_upper ? Connectivity::Regressive : Connectivity::Progressive;
}

}  // namespace nmrqc
