#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nmrqc {

/// Raised for malformed systems, labels and mismatched arguments.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SpinRole { Observer, Work, Input };

std::string_view to_string(SpinRole role);
SpinRole parse_role(std::string_view text);

/// Computational basis state of an n-spin system.
///
/// Spin 0 is the most significant bit, so the label "011" is matrix index 3.
/// Bit 0 is the alpha state (m = +1/2), bit 1 the beta state (m = -1/2).
class BasisLabel {
 public:
  static constexpr std::size_t kMaxBits = 16;

  BasisLabel() = default;
  BasisLabel(std::size_t n_bits, std::uint32_t index);

  static BasisLabel parse(std::string_view bits);

  std::size_t size() const { return n_bits_; }
  std::uint32_t index() const { return index_; }
  int bit(std::size_t position) const;
  BasisLabel flipped(std::size_t position) const;
  /// Label with `position` removed, e.g. the spectator label of a transition.
  BasisLabel without(std::size_t position) const;
  /// Label with `value` inserted at `position`.
  BasisLabel with_inserted(std::size_t position, int value) const;
  std::string str() const;

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;

 private:
  std::uint32_t index_ = 0;
  std::uint8_t n_bits_ = 0;
};

/// A single-quantum transition. `lower` carries bit 0 at `flipped_spin`.
struct TransitionRef {
  BasisLabel lower;
  BasisLabel upper;
  std::size_t flipped_spin = 0;

  /// Normalizes the order of the two levels; throws unless they differ in
  /// exactly one bit.
  static TransitionRef between(const BasisLabel& a, const BasisLabel& b);
  static TransitionRef parse(std::string_view text);  // "110-111"

  /// States of every spin except the flipped one.
  BasisLabel spectator() const { return lower.without(flipped_spin); }
  std::string str() const;

  friend bool operator==(const TransitionRef&, const TransitionRef&) = default;
};

struct SystemConfig {
  std::vector<double> shifts_hz;
  std::vector<std::vector<double>> j_hz;
  std::vector<SpinRole> roles;
};

class SpinSystem {
 public:
  static constexpr std::size_t kMinSpins = 2;
  static constexpr std::size_t kMaxSpins = 4;

  /// Validates the configuration; advisories end up in warnings().
  static SpinSystem build(const SystemConfig& config);

  std::size_t size() const { return shifts_.size(); }
  std::size_t dimension() const { return std::size_t{1} << size(); }
  double shift(std::size_t spin) const { return shifts_.at(spin); }
  double coupling(std::size_t a, std::size_t b) const { return couplings_.at(a).at(b); }
  SpinRole role(std::size_t spin) const { return roles_.at(spin); }
  const std::vector<SpinRole>& roles() const { return roles_; }

  /// The observer (gate experiments) or work (Deutsch-Jozsa) spin; always 0.
  std::size_t control_spin() const { return 0; }
  std::size_t input_count() const { return size() - 1; }
  std::vector<std::size_t> input_spins() const;

  bool weakly_coupled() const { return weakly_coupled_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  SystemConfig config() const;

 private:
  std::vector<double> shifts_;
  std::vector<std::vector<double>> couplings_;
  std::vector<SpinRole> roles_;
  bool weakly_coupled_ = true;
  std::vector<std::string> warnings_;
};

/// First-order energy sum_i nu_i m_i + sum_{i<j} J_ij m_i m_j in Hz.
double level_energy(const SpinSystem& system, const BasisLabel& label);

/// Signed line position E(lower) - E(upper): where the transition shows up
/// in a spectrum detected with I+.
double transition_offset(const SpinSystem& system, const TransitionRef& t);

/// |E(lower) - E(upper)|.
double transition_frequency(const SpinSystem& system, const TransitionRef& t);

/// All 2^(n-1) transitions of `spin`, spectator labels in descending order.
std::vector<TransitionRef> enumerate_single_quantum(const SpinSystem& system, std::size_t spin);

enum class CoherenceClass { Population, SingleQuantum, ZeroQuantum, DoubleQuantum, Higher };
std::string_view to_string(CoherenceClass c);
CoherenceClass coherence_order_class(const BasisLabel& a, const BasisLabel& b);

enum class Connectivity { Progressive, Regressive, Unconnected };
std::string_view to_string(Connectivity c);
Connectivity connectivity(const TransitionRef& a, const TransitionRef& b);

}  // namespace nmrqc
