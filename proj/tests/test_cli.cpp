#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fsl/cli.hpp"
#include "fsl/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fsl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fsl::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (fsl::io::fixture_dir() / name).string(); }

std::string temp_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "fsl_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p.string();
}

}  // namespace

TEST_CASE("signature") {
  auto r = run({"signature", fixture("e8.json")});
  CHECK(r.code == fsl::cli::ok);
  CHECK(r.out == "8\n");
  r = run({"signature", fixture("identity2.json"), "--format", "text"});
  CHECK(r.out == "2\n");
  r = run({"signature", fixture("hyperbolic_skew.json")});
  CHECK(r.code == fsl::cli::precondition);
  CHECK(r.err.rfind("fsl: ", 0) == 0);
  CHECK(r.out.empty());
}

TEST_CASE("input errors exit 2") {
  CHECK(run({"signature", fixture("does_not_exist.json")}).code == fsl::cli::input_error);
  CHECK(run({"signature", temp_file("bad.json", "{not json")}).code == fsl::cli::input_error);
  CHECK(run({"signature", temp_file("extra.json", R"({"epsilon":1,"gram":[[1]],"colour":"red"})")}).code ==
        fsl::cli::input_error);
  CHECK(run({"signature", temp_file("schema.json", R"({"schema":2,"epsilon":1,"gram":[[1]]})")}).code ==
        fsl::cli::input_error);
  CHECK(run({"signature", temp_file("asym.json", R"({"epsilon":1,"gram":[[0,1],[2,0]]})")}).code ==
        fsl::cli::input_error);
  CHECK(run({"no-such-command"}).code == fsl::cli::input_error);
  CHECK(run({}).code == fsl::cli::input_error);
  CHECK(run({"charclass", "Q", "2"}).code == fsl::cli::input_error);
}

TEST_CASE("linking-reduce") {
  auto r = run({"linking-reduce", fixture("linking_z4_quarter.json")});
  REQUIRE(r.code == fsl::cli::ok);
  const auto j = fsl::io::parse_json(r.out);
  REQUIRE(j["parts"].size() == 1);
  CHECK(j["parts"][0]["elementary_group"] == "0");
  r = run({"linking-reduce", fixture("linking_z6_sixth.json")});
  CHECK(r.code == fsl::cli::ok);
  CHECK(fsl::io::parse_json(r.out)["parts"].size() == 2);
  // (Z/4, 1/2) skew is degenerate
  CHECK(run({"linking-reduce", fixture("linking_z4_half_skew.json")}).code == fsl::cli::precondition);
  CHECK(run({"linking-reduce", fixture("linking_z2_half_skew.json"), "--format", "text"}).code == fsl::cli::ok);
}

TEST_CASE("derham") {
  CHECK(run({"derham", fixture("isometry_i_rot.json")}).out == "1\n");
  CHECK(run({"derham", fixture("isometry_i_plus.json")}).out == "1\n");
  CHECK(run({"derham", fixture("linking_z3_third.json")}).out == "0\n");
  CHECK(run({"derham", fixture("linking_z2_half_skew.json")}).out == "1\n");
}

TEST_CASE("twisted-sig") {
  auto r = run({"twisted-sig", fixture("cp2.json"), fixture("trivial1.json")});
  CHECK(r.code == fsl::cli::ok);
  CHECK(r.out == "1\n");
  r = run({"twisted-sig", fixture("torus7.json"), fixture("trivial_symplectic2.json")});
  CHECK(r.out == "0\n");
  r = run({"twisted-sig", fixture("genus2.json"), fixture("genus2_system.json")});
  CHECK(r.code == fsl::cli::ok);
  CHECK(std::stol(r.out) % 4 == 0);
  CHECK(run({"twisted-sig", fixture("torus7.json"), fixture("trivial1.json")}).code == fsl::cli::precondition);
  // a sign flip on one torus edge is not flat
  const auto torus = fsl::io::load_fixture("torus7.json");
  const auto f0 = torus["facets"][0];
  const std::string edge = std::to_string(f0[0].get<long>()) + "," + std::to_string(f0[1].get<long>());
  const std::string sys = R"({"rank":2,"edges":{")" + edge + R"(":[[-1,0],[0,-1]]},"pairing":{"epsilon":-1,"gram":[[0,1],[-1,0]]}})";
  CHECK(run({"twisted-sig", fixture("torus7.json"), temp_file("nonflat.json", sys)}).code == fsl::cli::structural);
  // not a closed manifold
  const std::string open = R"({"dimension":1,"facets":[[0,1],[1,2]],"signs":[1,1]})";
  CHECK(run({"twisted-sig", temp_file("open.json", open), fixture("trivial1.json")}).code == fsl::cli::structural);
}

TEST_CASE("charclass") {
  auto r = run({"charclass", "L", "2"});
  CHECK(r.code == fsl::cli::ok);
  CHECK(r.out == "7/45*p2 - 1/45*p1^2\n");
  CHECK(run({"charclass", "L", "--degree", "1"}).out == "1/3*p1\n");
  r = run({"charclass", "tilde_ph", "1", "--format", "json"});
  CHECK(r.code == fsl::cli::ok);
  CHECK_NOTHROW(fsl::io::parse_json(r.out));
  for (const char* name : {"ch", "newton", "wu", "derham_class"}) CHECK(run({"charclass", name, "3"}).code == fsl::cli::ok);
}

TEST_CASE("verify-all is deterministic and valid JSON") {
  const auto a = run({"verify-all", "--trials", "4", "--format", "text"});
  const auto b = run({"verify-all", "--trials", "4", "--format", "text"});
  CHECK(a.code == fsl::cli::ok);
  CHECK(a.out == b.out);
  const auto j = run({"verify-all", "--trials", "4", "--seed", "9", "--format", "json"});
  CHECK(j.code == fsl::cli::ok);
  const auto parsed = fsl::io::parse_json(j.out);
  CHECK(parsed["status"] == "pass");
  CHECK(parsed["failures"].empty());
}
