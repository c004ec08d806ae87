#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hdrc/cli.hpp"
#include "hdrc/curve_io.hpp"
#include "hdrc/errors.hpp"
#include "json.hpp"

using namespace hdrc;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hdrc_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_grid") {
  CHECK(cli::parse_grid("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(cli::parse_grid("0.5,1,2") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(cli::parse_grid("0:1:0.3").back() == doctest::Approx(0.9));
  CHECK_THROWS_AS(cli::parse_grid(""), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("0:1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("0:1:0"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("1:0:0.1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("a,b"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("1,nan"), ConfigError);
}

TEST_CASE("curve emits JSON that round-trips through the schema reader") {
  const auto o = run({"curve", "--m", "1", "--k", "2", "--n", "1", "--variants", "hd-dynamic,fd", "--r",
                      "0,0.5,1"});
  REQUIRE(o.code == cli::kOk);
  const auto curves = io::curves_from_json(o.out);
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].variant == Variant::hd_dynamic);
  CHECK(curves[1].variant == Variant::fd);
  REQUIRE(curves[0].points.size() == 3);
  CHECK(curves[0].points[0].d == doctest::Approx(3.0));
  CHECK(curves[0].points[2].d == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(curves[1].points[1].d == doctest::Approx(1.5));
  const auto doc = json::parse(o.out);
  CHECK(doc[0]["config"]["k"] == 2);
}

TEST_CASE("curve default grid spans the variant domain") {
  const auto o = run({"curve", "--m", "1", "--k", "1", "--n", "1", "--variants", "static-1k1"});
  REQUIRE(o.code == cli::kOk);
  const auto curves = io::curves_from_json(o.out);
  REQUIRE(curves[0].points.size() == 21);
  CHECK(curves[0].points.front().r == 0.5);
  CHECK(curves[0].points.back().r == 1.0);
}

TEST_CASE("curve CSV header and rows") {
  const auto o = run({"curve", "--m", "2", "--k", "1", "--n", "2", "--r", "0,1", "--format", "csv"});
  REQUIRE(o.code == cli::kOk);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r,d,variant,m,k,n");
  std::getline(in, line);
  CHECK(line.rfind("0,", 0) == 0);
  CHECK(line.find(",hd-dynamic,2,1,2") != std::string::npos);
}

TEST_CASE("exit code 2 for bad configuration") {
  CHECK(run({"curve", "--m", "1", "--k", "1", "--n", "1", "--r", ""}).code == cli::kBadConfig);
  CHECK(run({"curve", "--m", "0", "--k", "1", "--n", "1"}).code == cli::kBadConfig);
  CHECK(run({"curve", "--m", "1", "--k", "1", "--n", "1", "--r", "1.5"}).code == cli::kBadConfig);
  CHECK(run({"curve", "--m", "1", "--k", "1", "--n", "1", "--r", "0.5,0.2"}).code == cli::kBadConfig);
  CHECK(run({"curve", "--m", "1", "--k", "1", "--n", "1", "--variants", "bogus"}).code == cli::kBadConfig);
  CHECK(run({"curve", "--m", "2", "--k", "1", "--n", "2", "--variants", "closed-1k1"}).code ==
        cli::kBadConfig);
  CHECK(run({"curve", "--m", "1", "--k", "1", "--n", "1", "--format", "xml"}).code == cli::kBadConfig);
  CHECK(run({"curve", "--k", "1", "--n", "1"}).code == cli::kBadConfig);
  CHECK(run({"simulate", "--m", "1", "--k", "1", "--n", "1", "--r", "0"}).code == cli::kBadConfig);
  CHECK(run({"simulate", "--m", "1", "--k", "1", "--n", "1", "--r", "1"}).code == cli::kBadConfig);
  CHECK(run({"simulate", "--m", "1", "--k", "1", "--n", "1", "--r", "0.5", "--samples", "10"}).code ==
        cli::kBadConfig);
  CHECK(run({"compare", "--m", "1", "--k", "1", "--n", "1", "--variants", "fd"}).code == cli::kBadConfig);
  CHECK(run({"verify", "--inject-fault", "nope"}).code == cli::kBadConfig);
  CHECK(run({}).code == cli::kBadConfig);
}

TEST_CASE("exit code 3 when a solver refuses") {
  const auto o = run({"curve", "--m", "5", "--k", "1", "--n", "5", "--variants", "hd-static-n1n", "--r", "1"});
  CHECK(o.code == cli::kSolverRefused);
  CHECK_FALSE(o.err.empty());
}

TEST_CASE("exit code 4 when the slope cannot be fitted") {
  const auto o = run({"simulate", "--m", "2", "--k", "2", "--n", "2", "--r", "0.5", "--snr-db", "30,40,50",
                      "--samples", "1000", "--seed", "3"});
  CHECK(o.code == cli::kInsufficientData);
  const auto doc = json::parse(o.out);
  CHECK(doc["fit"].is_null());
  CHECK(doc["fit_error"].get<std::string>().find("usable") != std::string::npos);
}

TEST_CASE("--out writes atomically and failed writes leave nothing behind") {
  const auto dir = scratch_dir("out");
  const auto target = dir / "curve.json";
  {
    std::ofstream f(target);
    f << "old";
  }
  const auto ok = run({"curve", "--m", "1", "--k", "1", "--n", "1", "--r", "0.5", "--out", target.string()});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.empty());
  std::ifstream in(target);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(io::curves_from_json(buf.str()).size() == 1);
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);

  const auto missing = dir / "no_such_dir" / "curve.json";
  const auto bad = run({"curve", "--m", "1", "--k", "1", "--n", "1", "--r", "0.5", "--out", missing.string()});
  CHECK(bad.code != cli::kOk);
  CHECK_FALSE(fs::exists(missing));
  CHECK_FALSE(fs::exists(missing.parent_path()));
  fs::remove_all(dir);
}

TEST_CASE("compare reports gaps") {
  const auto same = run({"compare", "--m", "2", "--k", "2", "--n", "2", "--variants", "fd,fd", "--r", "0:2:0.5"});
  REQUIRE(same.code == cli::kOk);
  const auto d1 = json::parse(same.out);
  CHECK(d1["max_gaps"][0]["max_gap"] == 0.0);
  CHECK(d1["rows"].size() == 5);

  const auto o = run({"compare", "--m", "2", "--k", "3", "--n", "2", "--variants", "hd-dynamic,fd", "--r",
                      "0:2:0.5"});
  REQUIRE(o.code == cli::kOk);
  const auto d2 = json::parse(o.out);
  CHECK(d2["max_gaps"][0]["max_gap"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d2["max_gaps"][0]["at_r"].get<double>() == doctest::Approx(1.5));

  const auto csv = run({"compare", "--m", "1", "--k", "1", "--n", "1", "--variants", "hd-dynamic,fd", "--r",
                        "0,0.5", "--format", "csv"});
  REQUIRE(csv.code == cli::kOk);
  CHECK(csv.out.rfind("r,hd-dynamic,fd\n", 0) == 0);
  CHECK(csv.out.find("variant_a,variant_b,max_gap,at_r") != std::string::npos);
}

TEST_CASE("simulate output does not depend on the worker count") {
  std::vector<std::string> base{"simulate", "--m", "1",        "--k",    "1",     "--n",    "1",
                                "--r",      "0.5", "--snr-db", "10,20,30", "--samples", "50000", "--seed", "9"};
  auto serial = base;
  serial.insert(serial.end(), {"--workers", "1"});
  auto par = base;
  par.insert(par.end(), {"--workers", "3"});
  const auto a = run(serial);
  const auto b = run(par);
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  const auto doc = json::parse(a.out);
  CHECK(doc["estimates"].size() == 3);
  CHECK(doc["analytic_d"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("verify exits 1 when a fault is injected") {
  const auto o = run({"verify", "--inject-fault", "phi"});
  CHECK(o.code == cli::kVerifyFailed);
  CHECK(o.out.find("FAIL") != std::string::npos);
}
