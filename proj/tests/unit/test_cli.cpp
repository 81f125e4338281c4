#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "moyal/errors.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = nclab::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::filesystem::path scratch(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "nclab_cli_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("cli vacuum-scalar rows") {
  Result r = run({"vacuum-scalar", "--theta", "1", "--mu2", "24", "--lambda", "1", "--dim", "2", "--trunc", "16"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "k,a");
  CHECK(std::stod(l[1].substr(2)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(std::stod(l[2].substr(2)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(l[3] == "2,1");
  auto diag = nlohmann::json::parse(r.err);
  CHECK(diag["p"] == 2);
}

TEST_CASE("cli exit codes") {
  Result missing = run({"vacuum-scalar", "--theta", "1", "--mu2", "24"});
  CHECK(missing.code == nclab::kExitDomain);
  CHECK(missing.err.find("--lambda") != std::string::npos);
  CHECK(missing.err.find("Usage") != std::string::npos);

  CHECK(run({}).code == nclab::kExitDomain);
  CHECK(run({"no-such-command"}).code == nclab::kExitDomain);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"ribbon", "--help"}).code == 0);
  // Omega != 1 preconditions surface as domain errors
  CHECK(run({"vacuum-scalar", "--theta", "1", "--mu2", "24", "--lambda", "-1"}).code == nclab::kExitDomain);
  CHECK(run({"vacuum-gauge", "--omega2", "0.5", "--kappa", "1"}).code == nclab::kExitDomain);
  // profile series too short for the requested tolerance
  CHECK(run({"vacuum-gauge", "--omega2", "0.5", "--kappa", "-1", "--mmax", "5", "--profile", "0.3,0.2"}).code ==
        nclab::kExitAccuracy);
  CHECK(run({"effective-action", "--omega2", "0.5", "--m2", "1", "--theta", "1"}).code == 0);
  CHECK(run({"effective-action", "--omega2", "-0.5", "--m2", "1", "--theta", "1"}).code == nclab::kExitDomain);
}

TEST_CASE("cli config file with flag override") {
  auto cfg = scratch("ea.cfg", "# defaults\nomega2 = 0.5\nm2 = 1\ntheta = 1\n");
  Result r = run({"effective-action", "--config", cfg.string(), "--omega2", "0.25"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["omega2"] == 0.25);
  CHECK(doc["passed"] == true);

  auto bad = scratch("bad.cfg", "omega2 = 0.5\ncolour = blue\n");
  CHECK(run({"effective-action", "--config", bad.string(), "--m2", "1", "--theta", "1"}).code == nclab::kExitDomain);
  CHECK(run({"effective-action", "--config", "/nonexistent/x.cfg"}).code == nclab::kExitDomain);
}

TEST_CASE("cli ribbon bubble") {
  auto g = scratch("bubble.txt", "v: a+ b- c+ d-\nv: e+ f- g+ h-\ne: a h\ne: b g\n");
  Result r = run({"ribbon", "--in", g.string(), "--dim", "4"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["F"] == 2);
  CHECK(doc["B"] == 1);
  CHECK(doc["g"] == 0);
  CHECK(doc["d_c"] == 0);
  CHECK(doc["d_nc"] == 0);
}

TEST_CASE("cli eps-check") {
  auto cross = scratch("cross.json", R"([["1","-1"],["-1","1"]])");
  Result r = run({"eps-check", "--group", "Z2xZ2", "--eps-table", cross.string(), "--fine"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["valid"] == true);
  CHECK(doc["center"].size() == 4);

  auto super = scratch("super.json", R"([["-1"]])");
  auto phi = scratch("phi.json", "[0, 0, 1]");
  r = run({"eps-check", "--group", "Z2", "--eps-table", super.string(), "--elementary", phi.string()});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["trace_form"] == nlohmann::json({"1", "1", "-1"}));
  CHECK(doc["center"].size() == 1);

  auto bad = scratch("bad.json", R"([["1","i"],["-1","1"]])");
  r = run({"eps-check", "--group", "Z2xZ2", "--eps-table", bad.string()});
  CHECK(r.code == nclab::kExitDomain);
  CHECK(nlohmann::json::parse(r.out)["valid"] == false);
  CHECK(run({"eps-check", "--group", "Z3", "--eps-table", super.string(), "--fine"}).code == nclab::kExitDomain);
}

TEST_CASE("cli sweep") {
  Result r = run({"sweep", "--target", "effective-action", "--range", "omega2=0.2:1.0:0.2"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  CHECK(l.size() == 6);
  CHECK(l[0].rfind("omega2,m2,theta,max_defect,passed,", 0) == 0);
  CHECK(l[5].rfind("1,1,1,", 0) == 0);

  // deterministic
  CHECK(run({"sweep", "--target", "effective-action", "--range", "omega2=0.2:1.0:0.2"}).out == r.out);

  Result empty = run({"sweep", "--target", "super-couplings", "--range", "alpha=1:0:1"});
  CHECK(empty.code == 0);
  CHECK(lines(empty.out) == std::vector<std::string>{"alpha,theta,omega2,kappa,mu2"});

  CHECK(run({"sweep", "--target", "super-couplings", "--range", "alpha=1:2:0"}).code == nclab::kExitDomain);
  CHECK(run({"sweep", "--target", "super-couplings", "--range", "beta=1:2:1"}).code == nclab::kExitDomain);
  CHECK(run({"sweep", "--target", "nothing"}).code == nclab::kExitDomain);
  CHECK(run({"sweep", "--target", "super-couplings", "--range", "alpha=1:2:1", "--range", "theta=1:2:1",
             "--range", "alpha=3:4:1"})
            .code == nclab::kExitDomain);

  // two ranges: first one outermost
  Result two = run({"sweep", "--target", "super-couplings", "--range", "alpha=1:2:1", "--range", "theta=1:3:1"});
  REQUIRE(two.code == 0);
  auto t = lines(two.out);
  REQUIRE(t.size() == 7);
  CHECK(t[1].rfind("1,1,", 0) == 0);
  CHECK(t[2].rfind("1,2,", 0) == 0);
  CHECK(t[4].rfind("2,1,", 0) == 0);

  Result cl = run({"sweep", "--target", "commutative-limit", "--range", "omega=0.01:0.001:-0.003"});
  REQUIRE(cl.code == 0);
  auto c = lines(cl.out);
  REQUIRE(c.size() == 5);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::stod(c[i].substr(c[i].rfind(',') + 1)) < 150.0);
}

TEST_CASE("sweep ranges") {
  auto r = nclab::SweepRange::parse("omega2=0.2:1.0:0.2");
  CHECK(r.values().size() == 5);
  CHECK(nclab::SweepRange::parse("x=0:1:0.1").values().size() == 11);
  CHECK(nclab::SweepRange::parse("x=2:1:1").values().empty());
  CHECK(nclab::SweepRange::parse("x=1:1:1").values().size() == 1);
  CHECK_THROWS_AS(nclab::SweepRange::parse("x=0:1:0"), moyal::DomainError);
  CHECK_THROWS_AS(nclab::SweepRange::parse("x=0:1"), moyal::DomainError);
  CHECK_THROWS_AS(nclab::SweepRange::parse("=0:1:1"), moyal::DomainError);
  CHECK_THROWS_AS(nclab::SweepRange::parse("x=a:1:1"), moyal::DomainError);
}
