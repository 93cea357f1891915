#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "nmrqc/gate_library.hpp"
#include "nmrqc/pulse_program.hpp"
#include "oracles.hpp"

using namespace nmrqc;
using oracle::kPi;

namespace {

SpinSystem gate3() { return oracle::demo("gate3.json"); }
SpinSystem gate4() { return oracle::demo("gate4.json"); }

// Index permutation of the full level space induced by a recipe, computed on
// basis labels: a transition pi swaps its two levels, a pi on a spin flips
// that bit everywhere.
std::vector<std::uint32_t> level_permutation(const std::vector<PulseEvent>& recipe, std::size_t n) {
  std::vector<std::uint32_t> where(std::size_t{1} << n);
  for (std::uint32_t i = 0; i < where.size(); ++i) where[i] = i;
  auto flip = [&](std::size_t spin) {
    for (auto& w : where) w ^= 1u << (n - 1 - spin);
  };
  for (const auto& ev : recipe) {
    if (const auto* t = std::get_if<event::TransitionPulse>(&ev)) {
      REQUIRE(std::abs(t->angle - kPi) < 1e-12);
      const auto a = t->transition.lower.index(), b = t->transition.upper.index();
      for (auto& w : where) w = w == a ? b : w == b ? a : w;
    } else if (const auto* s = std::get_if<event::SelectivePulse>(&ev)) {
      REQUIRE(std::abs(s->angle - kPi) < 1e-12);
      flip(s->spin);
    } else if (const auto* h = std::get_if<event::HardPulse>(&ev)) {
      REQUIRE(std::abs(h->angle - kPi) < 1e-12);
      for (auto spin : h->spins.resolve(n)) flip(spin);
    } else {
      FAIL("unexpected mixing event");
    }
  }
  return where;
}

}  // namespace

TEST_CASE("parse the XOR1 example") {
  const auto p = parse_program("pulse all 90 y\nt1\ngrad\ntpulse 111-101 180 x\ntpulse 011-001 180 x\nacquire I0");
  REQUIRE(p.events.size() == 6);
  const auto& first = std::get<event::HardPulse>(p.events[0]);
  CHECK(first.spins.all);
  CHECK(first.angle == doctest::Approx(kPi / 2));
  CHECK(first.phase == doctest::Approx(kPi / 2));
  CHECK(std::holds_alternative<event::EvolveT1>(p.events[1]));
  CHECK(std::holds_alternative<event::Gradient>(p.events[2]));
  const auto& t = std::get<event::TransitionPulse>(p.events[3]);
  CHECK(t.transition.str() == "101-111");
  CHECK(t.angle == doctest::Approx(kPi));
  CHECK(std::get<event::Acquire>(p.events[5]).spins.spins == std::vector<std::size_t>{0});
  CHECK(parse_program(serialize_program(p)) == p);
}

TEST_CASE("parse diagnostics") {
  auto message = [](std::string_view text) {
    try {
      parse_program(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("") == "missing acquire");
  CHECK(message("pulse all 90 y\nfoo 1\nacquire I0").find("line 2: unknown mnemonic") == 0);
  CHECK(message("tpulse 11-101 180 x\nacquire I0").find("line 1: malformed transition label") == 0);
  CHECK(message("tpulse 111-100 180 x\nacquire I0").find("line 1: malformed transition label") == 0);
  CHECK(message("t1\nt1\nacquire I0").find("line 2: duplicate t1") == 0);
  CHECK(message("acquire I0\ngrad").find("line 2:") == 0);
  CHECK(message("pulse all ninety y\nacquire I0").find("line 1:") == 0);
  CHECK(message("pulse all 90 z\nacquire I0").find("line 1:") == 0);
  CHECK(message("delay -1\nacquire I0").find("line 1:") == 0);
}

TEST_CASE("comments, blank lines and spin lists") {
  const auto p = parse_program("# header\n\n  pulse I1,I2 180 -x  # trailing\ndelay 0.001\nacquire all\n");
  REQUIRE(p.events.size() == 3);
  const auto& h = std::get<event::HardPulse>(p.events[0]);
  CHECK(h.spins.spins == std::vector<std::size_t>{1, 2});
  CHECK(h.phase == doctest::Approx(kPi));
  CHECK(std::get<event::Delay>(p.events[1]).seconds == doctest::Approx(1e-3));
  CHECK(std::get<event::Acquire>(p.events[2]).spins.all);
  CHECK(std::holds_alternative<event::SelectivePulse>(parse_program("pulse I1 180 x\nacquire I0").events[0]));
}

TEST_CASE("canonical serialization") {
  CHECK(serialize_event(event::Gradient{}) == "grad");
  CHECK(serialize_event(event::EvolveT1{}) == "t1");
  CHECK(serialize_event(event::TransitionPulse{TransitionRef::parse("110-111"), kPi, 0.0}) == "tpulse 110-111 180 x");
  CHECK(serialize_event(event::SelectivePulse{2, kPi / 2, 3 * kPi / 2}) == "pulse I2 90 -y");
  CHECK(serialize_event(event::HardPulse{SpinSelection::every(), kPi / 2, kPi / 2}) == "pulse all 90 y");
  CHECK(serialize_event(event::Acquire{SpinSelection::of({0, 2})}) == "acquire I0,I2");
}

TEST_CASE("structure checks") {
  PulseProgram p;
  p.events = {event::Acquire{SpinSelection::of({0})}, event::Gradient{}};
  CHECK_THROWS_AS(check_structure(p), ParseError);
  p.events = {event::EvolveT1{}, event::EvolveT1{}, event::Acquire{SpinSelection::of({0})}};
  CHECK_THROWS_AS(check_structure(p), ParseError);
  p.events = {event::EvolveT1{}, event::Acquire{SpinSelection::of({0})}};
  CHECK_NOTHROW(check_structure(p));

  const auto s = gate3();
  CHECK_THROWS_AS(check_against(parse_program("tpulse 1101-1111 180 x\nacquire I0"), s), Error);
  CHECK_THROWS_AS(check_against(parse_program("pulse I3 180 x\nacquire I0"), s), Error);
  CHECK(check_against(parse_program("tpulse 101-111 180 x\nacquire I0"), s).empty());
}

TEST_CASE("gate library contents") {
  const auto& lib = gate_library();
  CHECK(std::count_if(lib.begin(), lib.end(), [](const GateSpec& g) { return g.arity == 2; }) == 24);
  std::set<std::string> three;
  for (const auto& g : lib)
    if (g.arity == 3) three.insert(g.name);
  CHECK(three == std::set<std::string>{"NOP3", "NOT(I1)", "TOFFOLI", "ORNOR"});

  for (const auto& [name, out] : oracle::kGateTable) {
    CAPTURE(name);
    const auto& g = find_gate(name, 2);
    const std::vector<std::string> inputs = {"11", "10", "01", "00"};
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(truth_table_of(g)(BasisLabel::parse(inputs[i])).str() == out.substr(i * 3, 2));
  }
  CHECK_THROWS_AS(find_gate("NOT(I1)"), Error);
  CHECK(find_gate("SWAP").arity == 2);
  CHECK_THROWS_AS(find_gate("FREDKIN", 2), Error);
  CHECK(gate_exists("ORNOR"));
  CHECK_FALSE(gate_exists("FREDKIN"));
}

TEST_CASE("three-qubit truth tables") {
  const auto& toffoli = truth_table_of(find_gate("TOFFOLI", 3));
  const auto& ornor = truth_table_of(find_gate("ORNOR", 3));
  for (std::uint32_t i = 0; i < 8; ++i) {
    const BasisLabel in(3, i);
    const int s = in.bit(0), t = in.bit(1), u = in.bit(2);
    CHECK(toffoli(in).bit(0) == (s ^ (t & u)));
    CHECK(ornor(in).bit(0) == (s ^ (t | u)));
    CHECK(toffoli(in).without(0) == in.without(0));
    CHECK(ornor(in).without(0) == in.without(0));
  }
  CHECK(toffoli(BasisLabel::parse("011")).str() == "111");
  CHECK(toffoli(BasisLabel::parse("111")).str() == "011");
  CHECK(truth_table_of(find_gate("NOP3", 3)) == Permutation::identity(3));
}

TEST_CASE("recipes") {
  CHECK(find_gate("NOP", 2).recipe.empty());
  std::vector<std::string> swap;
  for (const auto& ev : find_gate("SWAP", 2).recipe) swap.push_back(serialize_event(ev));
  CHECK(swap == std::vector<std::string>{"tpulse 110-111 180 x", "tpulse 010-011 180 x", "tpulse 101-111 180 x",
                                         "tpulse 001-011 180 x", "tpulse 110-111 180 x", "tpulse 010-011 180 x"});
  const auto& not12 = find_gate("NOT(I1,I2)", 2).recipe;
  REQUIRE(not12.size() == 2);
  CHECK(std::get<event::SelectivePulse>(not12[0]).spin == 1);
  CHECK(std::get<event::SelectivePulse>(not12[1]).spin == 2);
  std::vector<std::string> toffoli;
  for (const auto& ev : find_gate("TOFFOLI", 3).recipe) toffoli.push_back(serialize_event(ev));
  CHECK(toffoli == std::vector<std::string>{"tpulse 0011-0111 180 x", "tpulse 1011-1111 180 x"});
  // OR/NOR touches six of the eight control transitions.
  CHECK(find_gate("ORNOR", 3).recipe.size() == 6);
}

TEST_CASE("recipes realize their truth tables in both observer manifolds") {
  for (const auto& g : gate_library()) {
    CAPTURE(g.name);
    const std::size_t n = g.arity + 1;
    const auto where = level_permutation(g.recipe, n);
    for (std::uint32_t obs = 0; obs < 2; ++obs) {
      for (std::uint32_t in = 0; in < (1u << g.arity); ++in) {
        const std::uint32_t level = (obs << g.arity) | in;
        CHECK((where[level] >> g.arity) == obs);
        CHECK(BasisLabel(g.arity, where[level] & ((1u << g.arity) - 1)) == g.truth_table(BasisLabel(g.arity, in)));
      }
    }
  }
}

TEST_CASE("truth tables form the full symmetric group") {
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& g : gate_library())
    if (g.arity == 2) seen.insert(g.truth_table.image());
  CHECK(seen.size() == 24);
  std::vector<std::uint32_t> p = {0, 1, 2, 3};
  do {
    CHECK(seen.count(p) == 1);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("cascade order matters") {
  auto recipe = find_gate("SWAP", 2).recipe;
  const auto original = level_permutation(recipe, 3);
  std::swap(recipe[0], recipe[2]);
  CHECK(level_permutation(recipe, 3) != original);
}

TEST_CASE("permutations") {
  CHECK_THROWS_AS(Permutation(2, {0, 0, 1, 2}), Error);
  CHECK_THROWS_AS(Permutation(2, {0, 1, 2}), Error);
  const auto p = Permutation::from_pairs(2, {{"11", "01"}, {"10", "10"}, {"01", "11"}, {"00", "00"}});
  CHECK(p == truth_table_of(find_gate("XOR1", 2)));
  const auto pairs = p.pairs();
  CHECK(pairs.front().first.str() == "11");
  CHECK(pairs.back().first.str() == "00");
}

TEST_CASE("compiled gate programs") {
  const auto s = gate3();
  for (const auto& g : gate_library()) {
    if (g.arity != 2) continue;
    CAPTURE(g.name);
    const auto p = compile_gate(g, s);
    CHECK(parse_program(serialize_program(p), p.name) == p);
    CHECK_NOTHROW(check_structure(p));
    // Recipe appears verbatim between the crusher and the read pulse.
    const auto grad = std::find_if(p.events.begin(), p.events.end(),
                                   [](const PulseEvent& e) { return std::holds_alternative<event::Gradient>(e); });
    REQUIRE(grad != p.events.end());
    const std::vector<PulseEvent> mixing(grad + 1, grad + 1 + static_cast<std::ptrdiff_t>(g.recipe.size()));
    CHECK(mixing == g.recipe);
    CHECK(std::holds_alternative<event::EvolveT1>(p.events[1]));
  }
  CHECK(compile_gate(find_gate("NOP", 2), s).events.size() == 6);
  CHECK_THROWS_AS(compile_gate(find_gate("TOFFOLI", 3), s), Error);
  CHECK_NOTHROW(compile_gate(find_gate("ORNOR", 3), gate4()));
  CHECK_THROWS_AS(compile_gate(find_gate("XOR1", 2), oracle::demo("dj2.json")), Error);
}
