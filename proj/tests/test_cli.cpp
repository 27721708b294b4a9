#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/stat.h>
#include <sys/wait.h>

namespace {

std::string binary() {
  const char *p = std::getenv("EP_LAB_BIN");
  REQUIRE_MESSAGE(p != nullptr, "EP_LAB_BIN must point at the CLI binary");
  return p;
}

int run(const std::string &cmd) {
  const int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool exists(const std::string &path) {
  struct stat st;
  return ::stat(path.c_str(), &st) == 0;
}

std::string fresh_dir() {
  char tmpl[] = "/tmp/eplab_cli_XXXXXX";
  char *d = mkdtemp(tmpl);
  REQUIRE(d != nullptr);
  return d;
}

std::string first_line(const std::string &text) {
  return text.substr(0, text.find('\n'));
}

} // namespace

TEST_CASE("sweep writes the full artifact set") {
  const std::string dir = fresh_dir();
  const int rc = run(binary() + " sweep --preset fig1_left -o " + dir +
                     " > /dev/null 2>&1");
  CHECK(rc == 0);
  REQUIRE(exists(dir + "/sweep.csv"));
  CHECK(exists(dir + "/plot.svg"));
  CHECK(exists(dir + "/manifest.json"));
  const std::string csv = slurp(dir + "/sweep.csv");
  CHECK(first_line(csv) ==
        "a,E1,E2,G1_half,G2_half,b11sq,b12sq,b21sq,b22sq,r1_abs,r2_abs,"
        "Z_abs,defect,e1_bare,e2_bare");
  // 601 data rows behind the header
  size_t lines = 0;
  for (char c : csv)
    if (c == '\n')
      ++lines;
  CHECK(lines == 602);
}

TEST_CASE("sweep output does not depend on the thread count") {
  const std::string d1 = fresh_dir();
  const std::string d2 = fresh_dir();
  CHECK(run("EP_LAB_THREADS=1 " + binary() +
            " sweep --preset fig1_right -o " + d1 + " > /dev/null 2>&1") == 0);
  CHECK(run("EP_LAB_THREADS=7 " + binary() +
            " sweep --preset fig1_right -o " + d2 + " > /dev/null 2>&1") == 0);
  CHECK(slurp(d1 + "/sweep.csv") == slurp(d2 + "/sweep.csv"));
}

TEST_CASE("a manifest reproduces its run byte for byte") {
  const std::string d1 = fresh_dir();
  const std::string d2 = fresh_dir();
  CHECK(run(binary() + " sweep --preset fig2_left -o " + d1 +
            " > /dev/null 2>&1") == 0);
  CHECK(run(binary() + " sweep --config " + d1 + "/manifest.json -o " + d2 +
            " > /dev/null 2>&1") == 0);
  CHECK(slurp(d1 + "/sweep.csv") == slurp(d2 + "/sweep.csv"));
}

TEST_CASE("gnuplot mode replaces the svg artifact") {
  const std::string dir = fresh_dir();
  CHECK(run(binary() + " sweep --preset fig1_left --grid 11 --gnuplot -o " +
            dir + " > /dev/null 2>&1") == 0);
  CHECK(exists(dir + "/plot.gp"));
  CHECK(!exists(dir + "/plot.svg"));
  size_t lines = 0;
  for (char c : slurp(dir + "/sweep.csv"))
    if (c == '\n')
      ++lines;
  CHECK(lines == 12);
}

TEST_CASE("find-ep reports the crossing-family solution as JSON") {
  const std::string dir = fresh_dir();
  const int rc = run(binary() + " find-ep --preset fig1_left > " + dir +
                     "/out.json 2> /dev/null");
  CHECK(rc == 0);
  const std::string out = slurp(dir + "/out.json");
  CHECK(out.find("\"a\"") != std::string::npos);
  CHECK(out.find("0.6666666666666") != std::string::npos);
  CHECK(out.find("\"omega_r\": 0.055") != std::string::npos);
  CHECK(out.find("\"residual\": 0.0") != std::string::npos);
  CHECK(out.find("\"kind\": \"newton_general\"") != std::string::npos);
  CHECK(out.find("\"branch_context\": \"none\"") != std::string::npos);
}

TEST_CASE("find-ep without omega_r falls back to a certificate") {
  const std::string dir = fresh_dir();
  const int rc = run(binary() +
                     " find-ep --preset fig2_right --unknowns a,omega_i > " +
                     dir + "/out.json 2> /dev/null");
  CHECK(rc == 4);
  const std::string out = slurp(dir + "/out.json");
  CHECK(out.find("\"certificate\"") != std::string::npos);
  CHECK(out.find("\"min_abs_z\"") != std::string::npos);
  CHECK(out.find("\"omega_r\": 0.0") != std::string::npos);
}

TEST_CASE("argument errors exit with the usage code") {
  CHECK(run(binary() + " > /dev/null 2>&1") == 2);
  CHECK(run(binary() + " sweep > /dev/null 2>&1") == 2);
  CHECK(run(binary() + " sweep --preset fig9 > /dev/null 2>&1") == 2);
  CHECK(run(binary() +
            " find-ep --preset fig1_left --unknowns a,a > /dev/null 2>&1") ==
        2);
  CHECK(run(binary() +
            " smatrix --res 0.5,-0.2 --emin 1 --emax 1 > /dev/null 2>&1") ==
        2);
  // a file where the output directory should go
  const std::string dir = fresh_dir();
  std::ofstream blocker(dir + "/blocker");
  blocker << "x";
  blocker.close();
  CHECK(run(binary() + " sweep --preset fig1_left -o " + dir +
            "/blocker/sub > /dev/null 2>&1") == 2);
}

TEST_CASE("smatrix emits exact values at resonance energies") {
  const std::string dir = fresh_dir();
  CHECK(run(binary() + " smatrix --res 0.5,-0.2 -o " + dir +
            " > /dev/null 2>&1") == 0);
  const std::string csv = slurp(dir + "/sigma.csv");
  CHECK(first_line(csv) == "E,sigma,S_re,S_im");
  CHECK(csv.find("5.00000000000e-01,4.00000000000e+00") != std::string::npos);

  const std::string dir2 = fresh_dir();
  CHECK(run(binary() + " smatrix --double-pole E_d=0 G_d=-0.2 -o " + dir2 +
            " > /dev/null 2>&1") == 0);
  const std::string csv2 = slurp(dir2 + "/sigma.csv");
  CHECK(csv2.find("0.00000000000e+00,0.00000000000e+00") !=
        std::string::npos);
}

TEST_CASE("a pole on the sampled axis is a numeric failure") {
  CHECK(run(binary() + " smatrix --res 0.5,0 > /dev/null 2>&1") == 3);
}

TEST_CASE("features file accompanies the line shape when asked") {
  const std::string dir = fresh_dir();
  CHECK(run(binary() +
            " smatrix --res 0.3,-0.05 --res 0.7,-0.05 --features -o " + dir +
            " > /dev/null 2>&1") == 0);
  CHECK(exists(dir + "/features.json"));
  const std::string f = slurp(dir + "/features.json");
  CHECK(f.find("\"peaks\"") != std::string::npos);
  CHECK(f.find("\"minima\"") != std::string::npos);
}
