#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "nmrqc/cli.hpp"
#include "nmrqc/io.hpp"
#include "oracles.hpp"

using namespace nmrqc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(NMRQC_DATA_DIR) + "/" + rel; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nmrqc-test-" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("gates list") {
  auto all = run({"gates", "list"});
  CHECK(all.code == 0);
  std::size_t lines = 0;
  for (char c : all.out) lines += c == '\n';
  CHECK(lines == 28);

  auto three = run({"gates", "list", "--arity", "3"});
  CHECK(three.code == 0);
  for (const char* name : {"TOFFOLI", "ORNOR", "NOP3", "NOT(I1)"}) CHECK(three.out.find(name) != std::string::npos);
  CHECK(three.out.find("XOR1") == std::string::npos);

  auto json = run({"gates", "list", "--json"});
  CHECK(json.code == 0);
  CHECK(Json::parse(json.out) == gate_catalog_json());
  const auto xor1 = Json::parse(run({"gates", "list", "--json", "--arity", "2"}).out).at(4);
  CHECK(xor1.at("name") == "XOR1");
  CHECK(xor1.at("truth_table") == Json::parse(R"([["11","01"],["10","10"],["01","11"],["00","00"]])"));
}

TEST_CASE("gates run writes artifacts") {
  const auto dir = scratch("xor1");
  const auto r = run({"gates", "run", "XOR1", "--system", data("systems/gate3.json"), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("11->01 10->10 01->11 00->00") != std::string::npos);
  for (const char* f : {"spectrum.csv", "peaks.json", "correlation.json", "report.json"}) CHECK(fs::exists(dir / f));
  CHECK(Json::parse(read_text_file(dir / "correlation.json")) ==
        Json::parse(R"({"pairs": [["11","01"],["10","10"],["01","11"],["00","00"]]})"));
  CHECK(Json::parse(read_text_file(dir / "report.json")).at("pass") == true);
  CHECK(read_text_file(dir / "spectrum.csv").rfind("f1_hz,f2_hz,magnitude\n", 0) == 0);
}

TEST_CASE("artifacts are byte-identical across runs") {
  const auto a = scratch("det-a"), b = scratch("det-b");
  run({"gates", "run", "SWAP", "--system", data("systems/gate3.json"), "--out", a.string()});
  run({"gates", "run", "SWAP", "--system", data("systems/gate3.json"), "--out", b.string(), "--jobs", "3"});
  for (const char* f : {"spectrum.csv", "peaks.json", "correlation.json", "report.json"})
    CHECK(read_text_file(a / f) == read_text_file(b / f));
}

TEST_CASE("gates run exit codes") {
  const auto dir = scratch("codes");
  auto mismatch = run({"gates", "run", "SWAP", "--system", data("systems/gate3.json"), "--expect", "SWAP+NOT",
                       "--out", dir.string()});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.out.find("FAIL") != std::string::npos);

  auto arity = run({"gates", "run", "TOFFOLI", "--system", data("systems/dj1.json"), "--out", dir.string()});
  CHECK(arity.code == 2);
  CHECK_FALSE(arity.err.empty());

  CHECK(run({"gates", "run", "NOPE", "--system", data("systems/gate3.json"), "--out", dir.string()}).code == 2);
  CHECK(run({"gates", "run", "NOP", "--system", "/nonexistent.json"}).code == 2);
  CHECK(run({"gates", "run", "NOP", "--system", data("systems/gate3.json"), "--n-t1", "-4"}).code == 2);
  CHECK(run({"gates", "run", "NOP", "--system", data("systems/gate3.json"), "--n-t1", "4"}).code == 2);
  CHECK(run({"gates", "frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("three-qubit gate through the CLI") {
  const auto dir = scratch("toffoli");
  const auto r = run({"gates", "run", "TOFFOLI", "--system", data("systems/gate4.json"), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(Json::parse(read_text_file(dir / "correlation.json")).at("pairs").size() == 8);
}

TEST_CASE("ambiguous assignment is a mismatch") {
  // Coarse resolution with heavy broadening merges neighbouring lines.
  const auto dir = scratch("ambiguous");
  const auto r = run({"gates", "run", "XOR1", "--system", data("systems/gate3.json"), "--out", dir.string(),
                      "--n-t1", "8", "--n-t2", "8", "--dwell1", "0.0005", "--dwell2", "0.0005", "--lb", "200"});
  CHECK(r.code == 1);
}

TEST_CASE("dj run") {
  const auto dir = scratch("dj");
  auto f2 = run({"dj", "run", "--bits", "1", "--function", "f2", "--system", data("systems/dj1.json"), "--out",
                 dir.string()});
  CHECK(f2.code == 0);
  const auto verdict = Json::parse(read_text_file(dir / "verdict.json"));
  CHECK(verdict.at("verdict") == "constant");
  CHECK(verdict.at("function") == "f2");
  CHECK(verdict.at("bits") == 1);
  CHECK(verdict.at("bands").contains("I1"));
  CHECK(fs::exists(dir / "spectrum.csv"));

  auto f8 = run({"dj", "run", "--bits", "2", "--function", "f8", "--system", data("systems/dj2.json"), "--out",
                 dir.string()});
  CHECK(f8.code == 0);
  CHECK(Json::parse(read_text_file(dir / "verdict.json")).at("verdict") == "balanced");

  auto three = run({"dj", "run", "--bits", "3", "--function", "f1", "--system", data("systems/dj2.json")});
  CHECK(three.code == 2);
  CHECK(three.err.find("unsupported bits") != std::string::npos);
  CHECK(run({"dj", "run", "--bits", "1", "--function", "f9", "--system", data("systems/dj1.json")}).code == 2);
}

TEST_CASE("program run matches gates run") {
  const auto a = scratch("prog"), b = scratch("gate");
  CHECK(run({"program", "run", data("programs/xor1.pp"), "--system", data("systems/gate3.json"), "--out", a.string()})
            .code == 0);
  CHECK(run({"gates", "run", "XOR1", "--system", data("systems/gate3.json"), "--out", b.string()}).code == 0);
  for (const char* f : {"spectrum.csv", "peaks.json", "correlation.json"})
    CHECK(read_text_file(a / f) == read_text_file(b / f));
}

TEST_CASE("program run diagnostics") {
  const auto dir = scratch("bad");
  fs::create_directories(dir);
  write_text_file(dir / "unknown.pp", "pulse all 90 y\nwiggle\nacquire I0\n");
  write_text_file(dir / "noacq.pp", "pulse all 90 y\nt1\n");
  auto unknown = run({"program", "run", (dir / "unknown.pp").string(), "--system", data("systems/gate3.json")});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("line 2: unknown mnemonic") != std::string::npos);
  CHECK(run({"program", "run", (dir / "noacq.pp").string(), "--system", data("systems/gate3.json")}).code == 2);
}

TEST_CASE("output directory from the environment") {
  const auto dir = scratch("env");
  ::setenv(cli::kOutputDirEnv, dir.string().c_str(), 1);
  const auto r = run({"gates", "run", "NOP", "--system", data("systems/gate3.json")});
  ::unsetenv(cli::kOutputDirEnv);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("contour rendering") {
  const auto dir = scratch("contour");
  const auto r = run({"gates", "run", "NOP", "--system", data("systems/gate3.json"), "--out", dir.string(), "--contour"});
  CHECK(r.code == 0);
  CHECK(r.out.find('@') != std::string::npos);
}

TEST_CASE("system JSON") {
  const auto s = oracle::demo("gate3.json");
  const auto again = system_from_json(system_to_json(s));
  CHECK(again.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(again.shift(i) == s.shift(i));
    CHECK(again.role(i) == s.role(i));
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(again.coupling(i, k) == s.coupling(i, k));
  }
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"shifts_hz": [1, 2]})")), Error);
  CHECK_THROWS_AS(system_from_json(Json::parse(
                      R"({"spins": 3, "shifts_hz": [1, 2], "j_hz": [[0,1],[1,0]], "roles": ["observer","input"]})")),
                  Error);
}
