#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nprk/errors.hpp"
#include "nprk/serialize.hpp"
#include "nprk/stability.hpp"

using namespace nprk;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream s(line);
  for (std::string f; std::getline(s, f, ',');) out.push_back(f);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Value of `key` in a "key,value" line of the tool output.
double keyed(const std::string& text, const std::string& key) {
  for (const auto& l : lines(text)) {
    const auto f = fields(l);
    if (f.size() == 2 && f[0] == key) return std::stod(f[1]);
  }
  FAIL("missing key " << key);
  return 0.0;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("nprk-cli-test-" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("methods list shows the whole catalog") {
  const auto r = run({"methods", "list"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls.size() == catalog().size() + 1);
  CHECK(catalog().size() >= 13);
  CHECK(r.out.find("IMEX-NPRK3[54]-Sa") != std::string::npos);
}

TEST_CASE("methods dump round-trips through JSON") {
  const auto r = run({"methods", "dump", "2[42]a"});
  REQUIRE(r.code == 0);
  const NprkMethod back = method_from_json(r.out);
  const NprkMethod& orig = find_method("IMEX-NPRK2[42]a").method;
  CHECK(back.stages() == orig.stages());
  REQUIRE(back.entries().size() == orig.entries().size());
  for (std::size_t k = 0; k < back.entries().size(); ++k) {
    CHECK(back.entries()[k].value == orig.entries()[k].value);
  }
  CHECK(back.weights() == orig.weights());
  CHECK(run({"methods", "dump", "no-such"}).code == 1);
}

TEST_CASE("verify passes the catalog and reports failures as numerical") {
  CHECK(run({"verify", "--tol", "1e-12"}).code == 0);
  CHECK(run({"verify"}).code == 0);
  // 3[54]-Si carries 20-digit coefficients: 1e-30 is unattainable.
  const auto r = run({"verify", "--method", "3[54]-Si", "--tol", "1e-30"});
  CHECK(r.code == 2);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(run({"verify", "--method", "RK4"}).code == 1);
}

TEST_CASE("verify writes residual CSV with a manifest") {
  const fs::path dir = scratch_dir("verify");
  const fs::path csv = dir / "res.csv";
  REQUIRE(run({"verify", "--method", "2[31]", "--csv", csv.string()}).code == 0);
  const auto ls = lines(slurp(csv));
  REQUIRE(ls.size() >= 2);
  CHECK(ls[0] == "method,condition,order,residual,tol,satisfied");
  const auto m = nlohmann::json::parse(slurp(fs::path(csv.string() + ".manifest.json")));
  CHECK(m["command"] == "verify");
  CHECK(m["parameters"]["method"] == "2[31]");
  CHECK(m["outputs"][0] == csv.string());
  CHECK_FALSE(m["timestamp"].get<std::string>().empty());
  CHECK(m["version"] == NPRK_VERSION);
  fs::remove_all(dir);
}

TEST_CASE("gamma reports the documented values for the 2[32] pair") {
  const auto a = run({"gamma", "--method", "IMEX-NPRK2[32]a"});
  REQUIRE(a.code == 0);
  CHECK(std::abs(keyed(a.out, "gamma(0)") - (57 - 40 * std::sqrt(2.0))) <= 1e-10);
  CHECK(keyed(a.out, "max_gamma") <= 1 + 1e-9);
  CHECK(a.out.find("coupled_stiff_z2_stable,true") != std::string::npos);
  const auto b = run({"gamma", "--method", "IMEX-NPRK2[32]b"});
  REQUIRE(b.code == 0);
  CHECK(std::abs(keyed(b.out, "gamma(0)") - (57 + 40 * std::sqrt(2.0))) <= 1e-10);
  CHECK(b.out.find("coupled_stiff_z2_stable,false") != std::string::npos);
}

TEST_CASE("beta prints coefficients and fails numerically on a divergent limit") {
  const auto r = run({"beta", "--method", "2[43]-SiSa"});
  REQUIRE(r.code == 0);
  CHECK(keyed(r.out, "3") == doctest::Approx(-1.0).epsilon(1e-12));
  const auto bad = run({"beta", "--method", "2[31]"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"beta", "--method", "IMIM-Midpoint"}).code == 1);
}

TEST_CASE("stability slice CSV is lossless and reproducible") {
  const fs::path dir = scratch_dir("stability");
  const fs::path csv = dir / "slice.csv";
  const std::vector<std::string> args{"stability", "--method", "2[42]a", "--slice", "z1=-3,1",
                                      "--grid", "-4,2,-3,3,9", "--out", csv.string()};
  REQUIRE(run(args).code == 0);
  const std::string first = slurp(csv);
  REQUIRE(run(args).code == 0);
  CHECK(slurp(csv) == first);

  const auto ls = lines(first);
  REQUIRE(ls.size() == 82);
  CHECK(ls[0] == "re(z2),im(z2),value");
  const auto model = build_stability_model(find_method("2[42]a").method);
  for (std::size_t k = 1; k < ls.size(); ++k) {
    const auto f = fields(ls[k]);
    REQUIRE(f.size() == 3);
    const Complex z2(std::stod(f[0]), std::stod(f[1]));
    const double expect = std::max(std::abs(stability_value(model, {-3, 1}, z2)),
                                   std::abs(stability_value(model, {-3, -1}, z2)));
    CHECK(std::stod(f[2]) == expect);
  }
  CHECK(fs::exists(fs::path(csv.string() + ".manifest.json")));
  fs::remove_all(dir);
}

TEST_CASE("stability wedge to standard output") {
  const auto r = run({"stability", "--method", "1[21]", "--wedge", "theta=3.14159", "--grid",
                      "-1,1,-1,1,3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 10);
}

TEST_CASE("stability argument errors are usage errors") {
  CHECK(run({"stability", "--method", "1[21]", "--grid", "0,1,0,1,3"}).code == 1);
  CHECK(run({"stability", "--method", "1[21]", "--slice", "0,0", "--wedge", "1"}).code == 1);
  CHECK(run({"stability", "--method", "1[21]", "--slice", "0", "--grid", "0,1,0,1,3"}).code == 1);
  CHECK(run({"stability", "--method", "1[21]", "--slice", "0,0", "--grid", "0,1,0,1"}).code == 1);
  CHECK(run({"stability", "--method", "1[21]", "--slice", "0,0", "--grid", "0,1,0,1,0"}).code == 1);
}

TEST_CASE("converge writes slopes and divergence flags") {
  const fs::path dir = scratch_dir("converge");
  const fs::path csv = dir / "c.csv";
  const auto r = run({"converge", "--problem", "dahlquist", "--methods",
                      "IMEX-NPRK1[21],IMEX-NPRK3[54]-Sa:imex", "--h", "0.125/2^5", "--out",
                      csv.string()});
  REQUIRE(r.code == 0);
  const auto ls = lines(slurp(csv));
  REQUIRE(ls.size() == 13);
  CHECK(ls[0] == "method,h,error,order,diverged");
  const auto row = fields(ls[1]);
  REQUIRE(row.size() == 5);
  CHECK(row[0] == "IMEX-NPRK1[21]");
  CHECK(std::stod(row[1]) == 0.125);
  CHECK(std::stod(row[3]) == doctest::Approx(1.0).epsilon(0.1));
  CHECK(row[4] == "false");
  CHECK(std::stod(fields(ls[12])[3]) == doctest::Approx(3.0).epsilon(0.1));
  const auto m = nlohmann::json::parse(slurp(fs::path(csv.string() + ".manifest.json")));
  CHECK(m["command"] == "converge");
  CHECK(m["parameters"]["h"] == "0.125/2^5");
  fs::remove_all(dir);
}

TEST_CASE("converge usage errors") {
  CHECK(run({"converge", "--methods", "1[21]", "--problem", "lorenz"}).code == 1);
  CHECK(run({"converge", "--methods", "1[21]", "--h", "0.1/2"}).code == 1);
  CHECK(run({"converge", "--methods", "1[21]", "--h", "0.1/0.5^3"}).code == 1);
  CHECK(run({"converge", "--methods", "nope"}).code == 1);
  CHECK(run({"converge"}).code == 1);
}

TEST_CASE("burgers writes one CSV per sub-study") {
  const fs::path dir = scratch_dir("burgers");
  const auto r = run({"burgers", "--which", "fig1-eps10000", "--n", "8", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto ls = lines(slurp(dir / "fig1-eps10000.csv"));
  CHECK(ls[0] == "method,h,error,diverged");
  CHECK(ls.size() == 1 + 5 * 11);
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["parameters"]["which"] == "fig1-eps10000");
  CHECK(m["parameters"]["n"] == "8");
  CHECK(m["outputs"].size() == 1);
  fs::remove_all(dir);
  CHECK(run({"burgers", "--which", "fig7", "--out", dir.string()}).code == 1);
}

TEST_CASE("parsers") {
  const auto hs = cli::parse_h_spec("0.1/2^3");
  REQUIRE(hs.size() == 4);
  CHECK(hs[3] == doctest::Approx(0.0125));
  CHECK_THROWS_AS(cli::parse_h_spec("0.1"), InvalidConfig);
  CHECK_THROWS_AS(cli::parse_h_spec("-1/2^3"), InvalidConfig);
  CHECK_THROWS_AS(cli::parse_h_spec("1/2^2.5"), InvalidConfig);
  const GridSpec g = cli::parse_grid("-1,2,-3,4,7");
  CHECK(g.re0 == -1);
  CHECK(g.im1 == 4);
  CHECK(g.n == 7);
  CHECK(cli::parse_slice("z1=-2.5,1") == Complex(-2.5, 1));
  CHECK(cli::parse_slice("3,0") == Complex(3, 0));
  CHECK(cli::parse_wedge("theta=1.5") == 1.5);
  CHECK_THROWS_AS(cli::parse_wedge("theta=abc"), InvalidConfig);
  CHECK_THROWS_AS(cli::parse_slice("z1=1,nan"), InvalidConfig);
}

TEST_CASE("help and missing subcommand") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"converge", "--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}
