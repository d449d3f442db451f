#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string cli = SCAT1D_CLI_PATH;

int run(const std::string& args) {
  return std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("scatter: single delta emits closed-form tables") {
  write_file("/tmp/scat1d_single.json",
             R"({"deltas": [{"c": 2.0, "y": 0.0}], "gamma": 1.6})");
  const int rc = run("scatter --potential /tmp/scat1d_single.json --out /tmp/scat1d_sc");
  CHECK(rc == 0);
  const std::string csv = slurp("/tmp/scat1d_sc/scattering.csv");
  CHECK(csv.rfind("k,ReT,ImT,ReR1,ImR1,ReR2,ImR2", 0) == 0);
  // first row: T(0.001) = ik/(ik-1) evaluated exactly (tranco-d at q = 1)
  CHECK(csv.find("0.001,9.9999900000100006e-07,-0.00099999900000099996,"
                 "-0.99999900000100006") != std::string::npos);
  CHECK(slurp("/tmp/scat1d_sc/bound_states.csv") == "kappa,energy\n");
}

TEST_CASE("scatter: free potential gives the identity column") {
  write_file("/tmp/scat1d_free.json", R"({"deltas": [], "gamma": 1.6})");
  const int rc = run("scatter --potential /tmp/scat1d_free.json --out /tmp/scat1d_free");
  CHECK(rc == 0);
  std::istringstream csv(slurp("/tmp/scat1d_free/scattering.csv"));
  std::string line;
  std::getline(csv, line);  // header
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    CHECK(line.find(",1,0,0,0,0,0") != std::string::npos);
    if (++rows > 10) break;
  }
  CHECK(rows > 10);
}

TEST_CASE("scatter: attractive delta reports its bound state") {
  write_file("/tmp/scat1d_attr.json",
             R"({"deltas": [{"c": -2.0, "y": 0.0}], "gamma": 1.6})");
  const int rc = run("scatter --potential /tmp/scat1d_attr.json --out /tmp/scat1d_attr");
  CHECK(rc == 0);
  const std::string bs = slurp("/tmp/scat1d_attr/bound_states.csv");
  // kappa = 1 to root-finder accuracy
  CHECK(bs.find("\n1.000000000000") != std::string::npos);
  CHECK(bs.find(",-1.000000000000") != std::string::npos);
}

TEST_CASE("malformed config exits nonzero with a diagnostic") {
  write_file("/tmp/scat1d_bad.json", R"({"deltas": [{"c": 0.0, "y": 0.0}]})");
  CHECK(run("scatter --potential /tmp/scat1d_bad.json --out /tmp/scat1d_bad") != 0);
  write_file("/tmp/scat1d_bad2.json", "not json at all");
  CHECK(run("scatter --potential /tmp/scat1d_bad2.json --out /tmp/scat1d_bad") != 0);
  CHECK(run("scatter --out /tmp/scat1d_bad") != 0);  // missing required flag
}

TEST_CASE("jost: delta spec reports the vanishing K tail") {
  write_file("/tmp/scat1d_j.json",
             R"({"deltas": [{"c": 1.0, "y": 0.0}], "gamma": 1.6})");
  const int rc = run("jost --potential /tmp/scat1d_j.json --out /tmp/scat1d_j");
  CHECK(rc == 0);
  const std::string rep = slurp("/tmp/scat1d_j/jost_report.txt");
  CHECK(rep.find("K_tail_sup 0\n") != std::string::npos);  // K_1 = 0 exactly
  CHECK(rep.find("C_m1 0 vacuous 1") != std::string::npos);
}

TEST_CASE("evolve doublewell writes the beat report") {
  const int rc =
      run("evolve --mode doublewell --q 2.0 --L 0.5 --strength 0 --dt 0.05 "
          "--t-final 12 --out /tmp/scat1d_dw");
  CHECK(rc == 0);
  const std::string rep = slurp("/tmp/scat1d_dw/beat_report.txt");
  CHECK(rep.find("beat_period_linear") != std::string::npos);
  const std::string masses = slurp("/tmp/scat1d_dw/well_masses.csv");
  CHECK(masses.rfind("t,left_mass,right_mass", 0) == 0);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  write_file("/tmp/scat1d_det.json",
             R"({"deltas": [{"c": -1.5, "y": 0.0}], "gamma": 1.6})");
  REQUIRE(run("scatter --potential /tmp/scat1d_det.json --seed 42 --out /tmp/scat1d_d1") == 0);
  REQUIRE(run("scatter --potential /tmp/scat1d_det.json --seed 42 --out /tmp/scat1d_d2") == 0);
  CHECK(slurp("/tmp/scat1d_d1/scattering.csv") == slurp("/tmp/scat1d_d2/scattering.csv"));
  CHECK(slurp("/tmp/scat1d_d1/manifest.csv") == slurp("/tmp/scat1d_d2/manifest.csv"));
  CHECK_FALSE(slurp("/tmp/scat1d_d1/scattering.csv").empty());
}
