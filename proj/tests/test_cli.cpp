#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ahs/cli.hpp"
#include "ahs/filling.hpp"
#include "support.hpp"

using namespace ahs;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ahs");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> records(const std::string& jsonl) {
  std::vector<nlohmann::json> out;
  std::istringstream in(jsonl);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

const std::string pairing = testing::data_path("m1011.pairing");

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"build"}).code == 2);
  CHECK(run({"build", "--pairing", "/nonexistent/file"}).code == 2);
  CHECK(run({"build", "--pairing", pairing, "--bogus"}).code == 2);
  CHECK(run({"build", "--pairing", pairing, "--copies", "3"}).code == 2);
  CHECK(run({"enumerate", "--pairing", pairing, "--box", "1:0"}).code == 2);
  CHECK(run({"enumerate", "--pairing", pairing, "--box", "x"}).code == 2);
  CHECK(run({"enumerate", "--pairing", pairing, "--box", "0:0,0:0"}).code == 2);
  CHECK(run({"fill", "--pairing", pairing, "--tuple", "1,2,3"}).code == 2);
  CHECK(run({"fill", "--pairing", pairing, "--tuple", "0,0,0,0,0,0,0,0,0,0", "--scale", "-1"}).code == 2);
  const std::string broken = temp_file("ahs_broken.pairing", "polytope: 24cell\n0 6 ; 0->1\n");
  const Run r = run({"build", "--pairing", broken});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("contract failures exit with 1") {
  const Run r = run({"peripheral", "--pairing", pairing, "--copies", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("torsion") != std::string::npos);
  CHECK(run({"lattice", "--pairing", pairing, "--copies", "1"}).code == 1);
}

TEST_CASE("build reports the homology of both quotients") {
  const Run n = run({"build", "--pairing", pairing, "--format", "jsonl"});
  REQUIRE(n.code == 0);
  const auto jn = nlohmann::json::parse(n.out);
  CHECK(jn["H1"] == "Z_2^6");
  CHECK(jn["H2"] == "Z_2^4");
  CHECK(jn["H3"] == "0");
  CHECK(jn["euler"] == 1);
  CHECK(jn["orientable"] == false);
  CHECK(jn["cusps"] == 5);
  const Run m = run({"build", "--pairing", pairing, "--copies", "2", "--format", "jsonl"});
  REQUIRE(m.code == 0);
  const auto jm = nlohmann::json::parse(m.out);
  CHECK(jm["H1"] == "Z^5");
  CHECK(jm["H2"] == "Z^10");
  CHECK(jm["H3"] == "Z^4");
  CHECK(jm["euler"] == 2);
  CHECK(jm["orientable"] == true);
  const Run table = run({"build", "--pairing", pairing});
  CHECK(table.out.find("H1          Z_2^6") != std::string::npos);
}

TEST_CASE("cusps and lattice") {
  const Run c = run({"cusps", "--pairing", pairing, "--copies", "2", "--format", "jsonl"});
  REQUIRE(c.code == 0);
  const auto rs = records(c.out);
  REQUIRE(rs.size() == 5);
  CHECK(rs[4]["cubes"] == 32);
  const Run l = run({"lattice", "--pairing", pairing, "--cusp", "5"});
  REQUIRE(l.code == 0);
  CHECK(l.out.find("covolume 32") != std::string::npos);
  CHECK(l.out.find("short slopes (9)") != std::string::npos);
  CHECK(run({"lattice", "--pairing", pairing, "--cusp", "9"}).code == 2);
}

TEST_CASE("the zero box is a single homology sphere") {
  const Run r = run({"enumerate", "--pairing", pairing, "--format", "jsonl"});
  REQUIRE(r.code == 0);
  const auto rs = records(r.out);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0]["homology_sphere"] == true);
  CHECK(rs[0]["h1"] == "0");
  CHECK(rs[0]["two_pi"] == false);
  CHECK(rs[0]["aspherical_candidate"] == false);
}

TEST_CASE("fill flags an aspherical candidate") {
  const Run r = run({"fill", "--pairing", pairing, "--tuple", "5,5,5,5,5,5,5,5,3,3", "--balance-c", "1", "--format", "jsonl"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["homology_sphere"] == true);
  CHECK(j["two_pi"] == true);
  CHECK(j["weakly_balanced"] == true);
  CHECK(j["aspherical_candidate"] == true);
  // Scaling the horospheres down makes every slope short.
  const Run s = run({"fill", "--pairing", pairing, "--tuple", "5,5,5,5,5,5,5,5,3,3", "--scale", "1/10", "--format", "jsonl"});
  CHECK(nlohmann::json::parse(s.out)["two_pi"] == false);
}

TEST_CASE("enumeration is deterministic and agrees with the library") {
  const std::vector<std::string> base{"enumerate", "--pairing", pairing, "--box", "-1:1,0:0,0:0,-1:1,0:0,0:0,0:0,0:0,-2:2,0:0", "--format", "jsonl"};
  auto with_threads = [&](const char* t) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(t);
    return run(args);
  };
  const Run one = with_threads("1");
  REQUIRE(one.code == 0);
  CHECK(with_threads("8").out == one.out);
  CHECK(with_threads("1").out == one.out);
  const auto rs = records(one.out);
  CHECK(rs.size() == 45);

  const QuotientComplex q = quotient_complex(double_cover(testing::m1011()));
  const PeripheralSystem p = peripheral_system(q);
  const long chi = euler_characteristic(*q.complex);
  for (const auto& rec : rs) {
    std::vector<Integer> bc;
    for (const auto& x : rec["tuple"]) bc.emplace_back(x.get<long>());
    const FillingResult f = is_homology_sphere(p, adapted_slopes(p, bc), chi, true);
    CHECK(rec["homology_sphere"] == f.homology_sphere);
    CHECK(rec["h1"] == f.h1.to_string());
    CHECK(rec["aspherical_candidate"] == (rec["homology_sphere"] == true && rec["two_pi"] == true));
  }
}
