#include "support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "monopole/cli.hpp"

using namespace monopole;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "monopole");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "monopole_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("simulate dirac writes a CSV with constant L") {
  const auto path = scratch("dirac.csv");
  const Run r = run({"simulate", "dirac", "--r0", "1,0,0", "--v0", "0,1,0", "--lambda", "2", "--t-end", "10",
                     "--step", "1e-3", "--out", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  const io::Table t = io::read_table(in);
  CHECK(t.rows.size() == 10001);
  for (const char* c : {"L1", "L2", "L3"}) {
    const auto s = t.series(c);
    double worst = 0.0;
    for (double v : s) worst = std::max(worst, std::abs(v - s.front()));
    CHECK(worst < 1e-7);
  }

  const Run a = run({"analyze", path.string()});
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["kind"] == "dirac");
  CHECK(std::abs(j["psi"].get<double>() - std::atan(0.5)) < 1e-6);
  CHECK(std::abs(j["fitted_psi"].get<double>() - std::atan(0.5)) < 1e-6);
  CHECK(j["residuals"]["alpha_relation"].get<double>() < 1e-4);

  SUBCASE("identical runs give identical bytes") {
    const auto again = scratch("dirac2.csv");
    run({"simulate", "dirac", "--r0", "1,0,0", "--v0", "0,1,0", "--lambda", "2", "--out", again.string()});
    CHECK(slurp(path) == slurp(again));
  }
  SUBCASE("truncated file") {
    const std::string text = slurp(path);
    const auto cut = scratch("truncated.csv");
    std::ofstream(cut, std::ios::binary) << text.substr(0, text.size() / 2);
    CHECK(run({"analyze", cut.string()}).code == 2);
  }
}

TEST_CASE("analyze a straight line") {
  const auto path = scratch("line.jsonl");
  REQUIRE(run({"simulate", "dirac", "--r0", "1,0,0", "--v0", "0,1,0", "--lambda", "0", "--format", "jsonl", "--out",
               path.string()})
              .code == 0);
  const Run a = run({"analyze", path.string()});
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(std::abs(j["psi"].get<double>() - std::numbers::pi / 2) < 1e-12);
}

TEST_CASE("simulate yang") {
  SUBCASE("colliding ray") {
    const auto path = scratch("ray.csv");
    const Run r = run({"simulate", "yang", "--u0", "0.1,0,0,0", "--r0", "1", "--du0", "0,0,0,0", "--dr0", "0.5", "--e",
                       "1,0,0", "--t-end", "1", "--out", path.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    const io::Table t = io::read_table(in);
    for (double c : t.series("colliding")) CHECK(c == 1.0);
    const Run a = run({"analyze", path.string()});
    CHECK(a.code == 4);
    CHECK(nlohmann::json::parse(a.out)["colliding"] == true);
  }
  SUBCASE("regular orbit") {
    const auto path = scratch("yang.csv");
    REQUIRE(run({"simulate", "yang", "--u0", "0.1,0.2,0,0", "--r0", "1.5", "--du0", "0,0.4,0.1,-0.2", "--e", "1,-1,0.5",
                 "--out", path.string()})
                .code == 0);
    const Run a = run({"analyze", path.string()});
    REQUIRE(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["L"].size() == 5);
    CHECK(j["residuals"]["l_drift"].get<double>() < 1e-6);
    CHECK(j["residuals"]["geodesic"].get<double>() < 1e-6);
    CHECK(j["residuals"]["charge_drift"].get<double>() < 1e-8);
  }
}

TEST_CASE("simulate cone-geodesic") {
  const auto path = scratch("cone.csv");
  REQUIRE(run({"simulate", "cone-geodesic", "--psi", "0.6283185307179586", "--v", "0.2,-0.1,0.3", "--r", "1", "--dv",
               "0.3,0.4,-0.2", "--dr", "0.1", "--out", path.string()})
              .code == 0);
  const Run a = run({"analyze", path.string()});
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["kind"] == "cone-geodesic");
  CHECK(std::abs(j["fitted_psi"].get<double>() - std::numbers::pi / 5) < 1e-8);
  CHECK(j["residuals"]["speed_drift"].get<double>() < 1e-8);
}

TEST_CASE("bad input and guard halts") {
  const Run missing = run({"simulate", "dirac", "--r0", "1,0,0", "--lambda", "2"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--v0") != std::string::npos);
  CHECK(missing.err.find("Usage") != std::string::npos);
  CHECK(run({"simulate", "dirac", "--r0", "1,0", "--v0", "0,1,0", "--lambda", "2"}).code == 2);
  CHECK(run({"simulate", "dirac", "--r0", "1,x,0", "--v0", "0,1,0", "--lambda", "2"}).code == 2);
  CHECK(run({"simulate", "dirac", "--r0", "1,0,0", "--v0", "0,1,0", "--lambda", "2", "--step", "0"}).code == 2);
  CHECK(run({"simulate", "dirac", "--r0", "1,0,0", "--v0", "0,1,0", "--lambda", "2", "--format", "xml"}).code == 2);
  CHECK(run({"simulate", "cone-geodesic", "--psi", "2", "--v", "0", "--r", "1", "--dv", "1"}).code == 2);
  CHECK(run({"analyze", scratch("does-not-exist.csv").string()}).code == 2);
  CHECK(run({}).code == 2);

  const auto path = scratch("infall.csv");
  const Run halt = run({"simulate", "dirac", "--r0", "1,0,0", "--v0", "-1,0,0", "--lambda", "1", "--out", path.string()});
  CHECK(halt.code == 3);
  CHECK(halt.err.find("ApexReached") != std::string::npos);
  std::ifstream in(path);
  CHECK(io::read_table(in).rows.size() > 900);
}

TEST_CASE("verify") {
  CHECK(run({"verify", "--count", "0"}).code == 2);
  const Run ok = run({"verify", "--seed", "7", "--count", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("10/10 criteria passed") != std::string::npos);

  const Run bad = run({"verify", "--seed", "7", "--count", "3", "--fault", "flip-e-matrix"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("charge-conservation") != std::string::npos);
  CHECK(bad.err.find("seed 0x") != std::string::npos);
}
