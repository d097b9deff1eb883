#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sz1d/catalog.hpp"
#include "sz1d/config.hpp"
#include "sz1d/engine.hpp"
#include "sz1d/expr.hpp"
#include "sz1d/interpolation.hpp"

using namespace sz1d;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const UnitsConfig kUnits;

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("sz1d_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliRun run_cli(const std::string& args) {
  const fs::path out = temp_dir() / "stdout.txt";
  const fs::path err = temp_dir() / "stderr.txt";
  const std::string cmd = std::string(SZ1D_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path p = temp_dir() / name;
  std::ofstream out(p);
  out << j.dump(2);
  return p;
}

json sech2_config() {
  return json{{"schema_version", 1},
              {"potential",
               {{"kind", "sech2"}, {"params", {{"V_e", 0.1}, {"L", 1.0}}}}},
              {"sweep", {{"min", 0.5}, {"max", 2.0}, {"count", 4}}},
              {"phase", "constant_k"}};
}

}  // namespace

TEST_CASE("expression parser basics") {
  auto f = compile_expression("0.1*sech(x)^2", "x");
  CHECK(f(0.0) == doctest::Approx(0.1));
  CHECK(f(1.0) == doctest::Approx(0.1 / (std::cosh(1.0) * std::cosh(1.0))));

  auto g = compile_expression("2*pi + min(x, 1) - abs(-x)", "x");
  CHECK(g(0.5) == doctest::Approx(2.0 * 3.14159265358979323846));

  auto h = compile_expression("-x^2", "x");  // unary minus binds outside ^
  CHECK(h(2.0) == doctest::Approx(-4.0));

  CHECK_THROWS_AS(compile_expression("2 +* 3", "x"), Error);
  CHECK_THROWS_AS(compile_expression("nope(x)", "x"), Error);
  CHECK_THROWS_AS(compile_expression("y + 1", "x"), Error);
}

TEST_CASE("cubic spline interpolates smooth data accurately") {
  std::vector<double> xs, ys;
  for (double x = -6.0; x <= 6.0 + 1e-9; x += 0.1) {
    xs.push_back(x);
    ys.push_back(std::exp(-x * x));
  }
  const CubicSpline s(xs, ys);
  double worst = 0.0;
  for (double x = -5.0; x <= 5.0; x += 0.037)
    worst = std::max(worst, std::abs(s(x) - std::exp(-x * x)));
  CHECK(worst < 5e-6);
  CHECK(s.derivative(0.5) == doctest::Approx(-std::exp(-0.25)).epsilon(1e-3));
  // flat continuation outside the table
  CHECK(s(100.0) == doctest::Approx(ys.back()));
}

TEST_CASE("config: catalog potential round trip") {
  const RunConfig cfg = config_from_json(sech2_config());
  REQUIRE(cfg.potential.has_value());
  CHECK(cfg.potential->name == "sech2");
  CHECK(cfg.potential->v(0.0) == doctest::Approx(0.1));
  CHECK(cfg.sweep.grid().size() == 4);
  CHECK(cfg.phase == PhaseVariant::constant_k);
}

TEST_CASE("config: expression and tabulated kinds") {
  json j = sech2_config();
  j["potential"] = {{"kind", "expression"},
                    {"expression", "0.1*sech(x)^2"},
                    {"domain", {-14.0, 14.0}}};
  const RunConfig cfg = config_from_json(j);
  CHECK(cfg.potential->v(0.3) ==
        doctest::Approx(0.1 / std::pow(std::cosh(0.3), 2)).epsilon(1e-12));

  json points = json::array();
  for (double x = -14.0; x <= 14.0 + 1e-9; x += 0.05)
    points.push_back({x, 0.1 / std::pow(std::cosh(x), 2)});
  j["potential"] = {{"kind", "tabulated"}, {"points", points}};
  const RunConfig tab = config_from_json(j);
  CHECK(tab.potential->v(0.3) ==
        doctest::Approx(0.1 / std::pow(std::cosh(0.3), 2)).epsilon(1e-6));
  // the spline-backed potential scatters like the analytic one
  const ScatteringResult r =
      integrate(*tab.potential, kUnits, 1.0, PhaseVariant::constant_k);
  CHECK(r.T == doctest::Approx(sech2_T(0.1, 1.0, 1.0, kUnits)).epsilon(1e-5));
}

TEST_CASE("config: schema and validation errors") {
  json j = sech2_config();
  j["schema_version"] = 2;
  CHECK_THROWS_AS(config_from_json(j), Error);

  j = sech2_config();
  j["potential"]["kind"] = "unknown_kind";
  CHECK_THROWS_AS(config_from_json(j), Error);

  j = sech2_config();
  j["sweep"]["count"] = 0;
  const RunConfig cfg = config_from_json(j);
  CHECK_THROWS_AS(cfg.sweep.grid(), Error);
}

TEST_CASE("cli compute: free potential rows") {
  const fs::path cfg = write_config(
      "free.json",
      json{{"schema_version", 1},
           {"potential",
            {{"kind", "expression"}, {"expression", "0"}, {"domain", {-8.0, 8.0}}}},
           {"sweep", {{"min", 1.0}, {"max", 3.0}, {"count", 3}}}});
  const CliRun r = run_cli("compute -c " + cfg.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "E,abs_alpha,abs_beta,T,R,conservation_residual");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    ++rows;
    const auto first_comma = line.find(',');
    const auto second = line.find(',', first_comma + 1);
    const double abs_alpha =
        std::stod(line.substr(first_comma + 1, second - first_comma - 1));
    CHECK(abs_alpha == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(rows == 3);
}

TEST_CASE("cli compute matches the catalog over a sweep") {
  const fs::path cfg = write_config("sech2.json", sech2_config());
  const CliRun r = run_cli("compute -c " + cfg.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    const double E = std::stod(cell);
    for (int i = 0; i < 3; ++i) std::getline(cells, cell, ',');
    const double T = std::stod(cell);
    CHECK(T == doctest::Approx(sech2_T(0.1, 1.0, E, kUnits)).epsilon(1e-6));
  }
}

TEST_CASE("cli compute is byte-stable across runs") {
  const fs::path cfg = write_config("stable.json", sech2_config());
  const CliRun a = run_cli("compute -c " + cfg.string());
  const CliRun b = run_cli("compute -c " + cfg.string());
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: energy below the asymptote exits 2 with a named diagnostic") {
  json j = sech2_config();
  j["potential"] = {{"kind", "tanh_step"},
                    {"params", {{"V_minus", 0.0}, {"V_plus", 0.75}, {"L", 1.0}}}};
  j["phase"] = "wkb";
  j["sweep"] = {{"min", 0.5}, {"max", 0.5}, {"count", 1}};
  const fs::path cfg = write_config("below.json", j);
  const CliRun r = run_cli("compute -c " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("NoPropagatingMode") != std::string::npos);
  CHECK(r.err.find("error code=") != std::string::npos);
}

TEST_CASE("cli bounds: margins non-negative on the catalog potential") {
  json j = sech2_config();
  j["sweep"] = {{"min", 0.5}, {"max", 2.0}, {"count", 3}};
  const fs::path cfg = write_config("bounds.json", j);
  const CliRun r = run_cli("bounds -c " + cfg.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "E,family,theta,T_floor,R_cap,T_numeric,R_numeric,margin,holds,"
        "validity,saturated");
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    // "holds" is the 9th column
    std::istringstream cells(line);
    std::string cell;
    for (int i = 0; i < 9; ++i) std::getline(cells, cell, ',');
    CHECK(cell == "1");
  }
  CHECK(rows > 6);  // several families at three energies
}

TEST_CASE("cli bounds: vacuous weak rows are flagged") {
  json j;
  j["schema_version"] = 1;
  j["potential"] = {{"kind", "delta"}, {"params", {{"strength", 2.0}}}};
  j["sweep"] = {{"min", 1.0}, {"max", 1.0}, {"count", 1}};
  j["families"] = {"Case1Weak"};
  const fs::path cfg = write_config("vacuous.json", j);
  const CliRun r = run_cli("bounds -c " + cfg.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("vacuous") != std::string::npos);
}

TEST_CASE("cli catalog list and eval") {
  const CliRun list = run_cli("catalog list");
  REQUIRE(list.exit_code == 0);
  for (const char* name :
       {"delta", "double_delta", "square_barrier", "tanh_step", "sech2",
        "asymmetric_well", "poschl_teller"})
    CHECK(list.out.find(name) != std::string::npos);

  const CliRun eval = run_cli(
      "catalog eval sech2 --params V_e=0.1 L=1 --emin 1 --emax 1 --count 1");
  REQUIRE(eval.exit_code == 0);
  CHECK(eval.out.find("E,T_exact,R_exact") == 0);
  std::istringstream lines(eval.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  const auto comma = line.find(',');
  const auto second = line.find(',', comma + 1);
  const double T = std::stod(line.substr(comma + 1, second - comma - 1));
  CHECK(T == doctest::Approx(sech2_T(0.1, 1.0, 1.0, kUnits)).epsilon(1e-12));
}

TEST_CASE("cli trace: exact column set and unit current rows") {
  const fs::path cfg = write_config("trace.json", sech2_config());
  const CliRun r = run_cli("trace -c " + cfg.string() + " --energy 1.0");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "x,re_a,im_a,re_b,im_b,conservation_residual");
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows > 50);  // many accepted steps
}

TEST_CASE("cli parametric: evolution row and bounds table") {
  json j;
  j["schema_version"] = 1;
  j["potential"] = {{"kind", "frequency"},
                    {"expression", "1.5 + 0.5*tanh(t)"},
                    {"omega_minus_inf", 1.0},
                    {"omega_plus_inf", 2.0},
                    {"domain", {-14.0, 14.0}}};
  const fs::path cfg = write_config("freq.json", j);
  const CliRun r = run_cli("parametric -c " + cfg.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("omega_minus,omega_plus,abs_alpha,abs_beta,n_quanta") == 0);

  const CliRun b = run_cli("parametric -c " + cfg.string() + " --bounds");
  REQUIRE(b.exit_code == 0);
  CHECK(b.out.find("case,theta") == 0);
  CHECK(b.out.find("2a") != std::string::npos);
}

TEST_CASE("cli json output mirrors the csv columns") {
  json j = sech2_config();
  j["output"] = "json";
  j["sweep"] = {{"min", 1.0}, {"max", 1.0}, {"count", 1}};
  const fs::path cfg = write_config("json_out.json", j);
  const CliRun r = run_cli("compute -c " + cfg.string());
  REQUIRE(r.exit_code == 0);
  const json rows = json::parse(r.out);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].contains("E"));
  CHECK(rows[0].contains("T"));
  CHECK(rows[0]["T"].get<double>() ==
        doctest::Approx(sech2_T(0.1, 1.0, 1.0, kUnits)).epsilon(1e-6));
}

TEST_CASE("cli bounds: asymmetric-well saturation rows are flagged") {
  // k2 L = pi/2 with k1 = 1, k2 = 2, k3 = 1: T = T_floor exactly
  json j;
  j["schema_version"] = 1;
  j["potential"] = {
      {"kind", "asymmetric_well"},
      {"params",
       {{"V1", 0.0}, {"V2", -3.0}, {"V3", 0.0}, {"L", 0.25 * 3.14159265358979323846}}}};
  j["sweep"] = {{"min", 1.0}, {"max", 1.0}, {"count", 1}};
  j["phase"] = "wkb";
  j["families"] = {"Case2bAsym"};
  const fs::path cfg = write_config("saturated.json", j);
  const CliRun r = run_cli("bounds -c " + cfg.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  REQUIRE(std::getline(lines, line));
  // last column is the saturation flag
  CHECK(line.substr(line.size() - 2) == ",1");
}

TEST_CASE("cli bounds: explicitly requested inadmissible family errors out") {
  json j;
  j["schema_version"] = 1;
  j["potential"] = {{"kind", "delta"}, {"params", {{"strength", 1.0}}}};
  j["sweep"] = {{"min", 1.0}, {"max", 1.0}, {"count", 1}};
  j["families"] = {"Case2"};  // undefined across a delta spike
  const fs::path cfg = write_config("bad_family.json", j);
  const CliRun r = run_cli("bounds -c " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("Unsupported") != std::string::npos);
}

TEST_CASE("cli verify: tightened tolerances still pass") {
  const CliRun r = run_cli(
      "verify --tol-scale 0.1 --random-potentials 10 --catalog-energies 4 "
      "--workers 2");
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli verify: green on a reduced suite, red under the mutation") {
  const CliRun ok = run_cli(
      "verify --random-potentials 12 --catalog-energies 4 --workers 2");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("[PASS] bound dominance") != std::string::npos);

  const CliRun bad = run_cli(
      "verify --random-potentials 12 --catalog-energies 4 --workers 2 "
      "--inject-vartheta-bug");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("[FAIL] bound dominance") != std::string::npos);
  // the diagnostic names the offending triple
  CHECK(bad.out.find("family=") != std::string::npos);
}
