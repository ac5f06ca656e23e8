#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "slag/curves.hpp"
#include "slag/io.hpp"
#include "slag/surfaces.hpp"

using namespace slag;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "slag_io_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SLAG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return (status >> 8) & 0xff;  // POSIX exit code
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

curves::CurveSample sample_curve() {
  curves::CurveParams prm;
  prm.p = 1;
  prm.q = 0;
  prm.init1 = 1.1;
  prm.init2 = 0.9;
  prm.kind = curves::CurveKind::Gamma;
  return curves::integrate_gamma(prm, 2.0, 1e-10);
}

}  // namespace

TEST_CASE("projection names parse, unknown names throw") {
  CHECK(io::parse_projection("re1-im1-re2") == io::Projection::Re1Im1Re2);
  CHECK(io::parse_projection("re1-re2-im2") == io::Projection::Re1Re2Im2);
  CHECK(io::parse_projection("moduli-phase") == io::Projection::ModuliPhase);
  CHECK_THROWS_AS(io::parse_projection("nope"), std::invalid_argument);
}

TEST_CASE("CSV round trip is bit-exact") {
  const auto s = sample_curve();
  const fs::path p = temp_dir() / "roundtrip.csv";
  io::export_csv(s, p);
  const auto back = io::parse_csv(p);
  REQUIRE(back.size() == s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(back.ts[k] == s.ts[k]);
    CHECK(back.points[k][0] == s.points[k][0]);
    CHECK(back.points[k][1] == s.points[k][1]);
    CHECK(back.residual_conserved[k] == s.residual_conserved[k]);
    CHECK(back.residual_line[k] == s.residual_line[k]);
  }
}

TEST_CASE("CSV shape: header plus one line per sample") {
  curves::CurveSample empty;
  const fs::path pe = temp_dir() / "empty.csv";
  io::export_csv(empty, pe);
  CHECK(slurp(pe) == "t,re1,im1,re2,im2,residual_conserved,residual_line\n");

  curves::CurveSample three;
  three.ts = {0.0, 0.5, 1.0};
  three.points = {C2(Complex(1, 0), Complex(0, 1)), C2(Complex(0.5, 0.5), Complex(1, 1)),
                  C2(Complex(-1, 2), Complex(3, -4))};
  three.residual_conserved = {0.0, 1e-12, 2e-12};
  three.residual_line = {0.0, 0.0, 1e-15};
  const fs::path p3 = temp_dir() / "three.csv";
  io::export_csv(three, p3);
  const std::string text = slurp(p3);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  const fs::path missing = temp_dir() / "does_not_exist.csv";
  CHECK_THROWS_AS(io::parse_csv(missing), std::runtime_error);
}

TEST_CASE("OBJ export counts vertices and quads") {
  auto make_surface = [](int nt, int ns) {
    surfaces::SurfaceGrid s;
    s.p = s.q = 0;
    s.ts.resize(nt);
    s.ss.resize(ns);
    for (int i = 0; i < nt; ++i) s.ts[i] = i;
    for (int j = 0; j < ns; ++j) s.ss[j] = j;
    s.points = surfaces::Grid<C2>(nt, ns);
    s.d_t = surfaces::Grid<C2>(nt, ns);
    s.d_s = surfaces::Grid<C2>(nt, ns);
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < ns; ++j)
        s.points.at(i, j) = C2(Complex(i, j), Complex(i - j, i + j));
    return s;
  };

  const fs::path p4 = temp_dir() / "small.obj";
  io::export_obj(make_surface(2, 2), io::Projection::Re1Im1Re2, p4);
  const std::string small = slurp(p4);
  std::istringstream in(small);
  int nv = 0, nf = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("v ", 0) == 0) ++nv;
    if (line.rfind("f ", 0) == 0) ++nf;
  }
  CHECK(nv == 4);
  CHECK(nf == 1);

  const fs::path p50 = temp_dir() / "big.obj";
  io::export_obj(make_surface(50, 50), io::Projection::ModuliPhase, p50);
  const std::string big = slurp(p50);
  std::istringstream in2(big);
  nv = nf = 0;
  for (std::string line; std::getline(in2, line);) {
    if (line.rfind("v ", 0) == 0) ++nv;
    if (line.rfind("f ", 0) == 0) ++nf;
  }
  CHECK(nv == 2500);
  CHECK(nf == 49 * 49);

  CHECK_THROWS_AS(io::export_obj(make_surface(1, 2), io::Projection::Re1Im1Re2,
                                 temp_dir() / "tiny.obj"),
                  std::invalid_argument);
}

TEST_CASE("json and atomic writes land complete") {
  const fs::path pj = temp_dir() / "doc.json";
  io::write_json(nlohmann::json{{"alpha", 1}, {"beta", {1, 2, 3}}}, pj);
  const auto doc = nlohmann::json::parse(slurp(pj));
  CHECK(doc["alpha"] == 1);
  CHECK(doc["beta"].size() == 3);
  CHECK(slurp(pj).back() == '\n');

  const fs::path pt = temp_dir() / "note.txt";
  io::atomic_write(pt, "payload\n");
  io::atomic_write(pt, "replaced\n");  // overwrite goes through the same rename
  CHECK(slurp(pt) == "replaced\n");
}

TEST_CASE("cli: curve export") {
  const fs::path out = temp_dir() / "gamma.csv";
  CHECK(run_cli("curve gamma --p 1 --q 0 --special --t-max 10 --out " +
                out.string()) == 0);
  const auto back = io::parse_csv(out);
  CHECK(back.size() > 10);
  // the special orbit stays on the torus |z1| = 1, |z2| = 1/sqrt(2)
  for (const auto& z : back.points) {
    CHECK(std::abs(z[0]) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(z[1]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  }
}

TEST_CASE("cli: surface export") {
  const fs::path out = temp_dir() / "surf.obj";
  CHECK(run_cli("surface --p 1 --q 0 --a 1,1 --b 1,0.8 --grid 12x14 "
                "--t-half 0.2 --s-half 1.0 --out " +
                out.string()) == 0);
  std::istringstream in(slurp(out));
  int nv = 0, nf = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("v ", 0) == 0) ++nv;
    if (line.rfind("f ", 0) == 0) ++nf;
  }
  CHECK(nv == 12 * 14);
  CHECK(nf == 11 * 13);
}

TEST_CASE("cli: usage errors exit with code 2") {
  CHECK(run_cli("pde solve --p 1 --q 0 --a1 0 --a2 0.5") == 2);
  CHECK(run_cli("curve alpha --special") == 2);
  CHECK(run_cli("curve alpha --no-such-flag") == 2);
  CHECK(run_cli("verify no-such-suite") == 2);
  CHECK(run_cli("") == 2);  // missing subcommand
}

TEST_CASE("cli: verification report and determinism") {
  const fs::path r1 = temp_dir() / "rep1.json";
  const fs::path r2 = temp_dir() / "rep2.json";
  const std::string args = "verify corollary2 --p 1 --q 0 --a 1,1 --grid 50x50 --out ";
  CHECK(run_cli(args + r1.string()) == 0);
  CHECK(run_cli(args + r2.string()) == 0);
  CHECK(slurp(r1) == slurp(r2));  // byte-identical across runs

  const auto doc = nlohmann::json::parse(slurp(r1));
  CHECK(doc["schema_version"] == io::kReportSchemaVersion);
  CHECK(doc["all_passed"] == true);
  REQUIRE(doc["checks"].size() == 1);
  CHECK(doc["checks"][0]["observed"].get<double>() < 1e-8);
}

TEST_CASE("cli: orbit report") {
  const fs::path out = temp_dir() / "orbit.json";
  CHECK(run_cli("orbit --variant sym --n 2 --c 1 --s 0.5 --seed 11 --out " +
                out.string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["passed"] == true);
  CHECK(doc["residual_unitary"].get<double>() < 1e-10);
}

TEST_CASE("cli: pde solve writes the solution grid") {
  const fs::path out = temp_dir() / "h.csv";
  CHECK(run_cli("pde solve --p 0 --q 0 --a1 1 --a2 1 --grid 17x17 "
                "--boundary bilinear --out " +
                out.string()) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("x,y,h\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 17 * 17);
}
