#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "support.hpp"
#include "tvlp/error.hpp"
#include "tvlp/io.hpp"
#include "tvlp/phantom.hpp"

using namespace tvlp;
using tvlp_test::Gen;
namespace fs = std::filesystem;

// Sample variance of the seed-42 stream on the 200x200 square, frozen.
constexpr double kSeed42Variance = 0.0099861583806166825;

namespace {

// Fresh directory per test case, removed on exit.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("tvlp_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write_raw(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("phantom examples") {
  PhantomSpec step;
  const Image2D s = generate(step);
  REQUIRE(s.rows() == 2000);
  CHECK(s.cols() == 1);
  for (std::size_t i = 0; i < 1000; ++i) CHECK(s[i] == 0.0);
  for (std::size_t i = 1000; i < 2000; ++i) CHECK(s[i] == 100.0);

  PhantomSpec affine;
  affine.kind = PhantomKind::AffineStep1D;
  CHECK(phantom_value_1d(affine, -1.0) == doctest::Approx(-0.1));
  CHECK(phantom_value_1d(affine, 1e-12) == doctest::Approx(100.0));

  PhantomSpec sq;
  sq.kind = PhantomKind::RampSquare2D;
  const Image2D img = generate(sq);
  CHECK(img.rows() == 200);
  CHECK(img.cols() == 200);
  CHECK(tvlp_test::max_abs(img) <= 1.0);
  for (double v : img.values()) CHECK(v >= 0.0);

  PhantomSpec radial;
  radial.kind = PhantomKind::RadialSpike2D;
  radial.size = 64;
  radial.cols = 48;
  const Image2D r = generate(radial);
  CHECK(r.rows() == 64);
  CHECK(r.cols() == 48);

  CHECK(phantom_kind_from_string("piecewise-mix1d") == PhantomKind::PiecewiseMix1D);
  CHECK_THROWS_AS(phantom_kind_from_string("circle"), InvalidArgument);
  PhantomSpec bad;
  bad.n = 1;
  CHECK_THROWS_AS(generate(bad), InvalidArgument);
}

TEST_CASE("phantoms are deterministic and 1D grids start at -L") {
  PhantomSpec spec;
  spec.kind = PhantomKind::PiecewiseMix1D;
  spec.n = 300;
  CHECK(tvlp_test::max_abs_diff(generate(spec), generate(spec)) == 0.0);
  const Grid1D g = generate_signal(spec);
  CHECK(g.origin() == -1.0);
  CHECK(g.spacing() == doctest::Approx(2.0 / 300.0));
}

TEST_CASE("gaussian noise statistics") {
  PhantomSpec spec;
  spec.kind = PhantomKind::RampSquare2D;
  const Image2D clean = generate(spec);
  CHECK(tvlp_test::max_abs_diff(add_gaussian_noise(clean, NoiseSpec{0.0, 42}), clean) == 0.0);

  const Image2D noisy = add_gaussian_noise(clean, NoiseSpec{0.01, 42});
  const double count = static_cast<double>(clean.size());
  double mean = 0.0;
  for (std::size_t k = 0; k < clean.size(); ++k) mean += noisy[k] - clean[k];
  mean /= count;
  double var = 0.0;
  for (std::size_t k = 0; k < clean.size(); ++k) var += std::pow(noisy[k] - clean[k] - mean, 2);
  var /= count - 1.0;
  CHECK(std::abs(mean) <= 3.0 * 0.1 / std::sqrt(count));
  CHECK(std::abs(var - 0.01) <= 0.05 * 0.01);
  CHECK(var == doctest::Approx(kSeed42Variance).epsilon(1e-12));

  CHECK(tvlp_test::max_abs_diff(add_gaussian_noise(clean, NoiseSpec{0.01, 42}), noisy) == 0.0);
  CHECK(tvlp_test::max_abs_diff(add_gaussian_noise(clean, NoiseSpec{0.01, 43}), noisy) > 0.0);
  CHECK_THROWS_AS(add_gaussian_noise(clean, NoiseSpec{-1.0, 42}), InvalidArgument);
}

TEST_CASE("PGM round trip") {
  TempDir dir;
  Gen gen(101);
  const Image2D img = gen.image(23, 17, 0.0, 1.0);
  for (PgmFormat format : {PgmFormat::Ascii, PgmFormat::Binary}) {
    const std::string path = dir.file("a.pgm");
    write_pgm(img, path, 0.0, 1.0, format);
    const Image2D back = read_pgm(path);
    REQUIRE(back.same_shape(img));
    CHECK(tvlp_test::max_abs_diff(back, img) <= 1.0 / 255.0);
  }
  // A different declared range scales both ways.
  const Image2D wide = 4.0 * img + (-2.0);
  write_pgm(wide, dir.file("w.pgm"), -2.0, 2.0);
  CHECK(tvlp_test::max_abs_diff(read_pgm(dir.file("w.pgm"), -2.0, 2.0), wide) <= 4.0 / 255.0);
}

TEST_CASE("PGM parse errors carry positions") {
  TempDir dir;
  const std::string path = dir.file("bad.pgm");

  write_raw(path, "P7\n2 2\n255\n0 0 0 0\n");
  CHECK_THROWS_AS(read_pgm(path), ParseError);

  write_raw(path, "P2\n# comment\n2 2\n255\n0 12\n300 4\n");
  try {
    read_pgm(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.offset() > 0);
  }

  write_raw(path, "P2\n2 x\n255\n");
  try {
    read_pgm(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  write_raw(path, "P5\n4 4\n255\nab");
  CHECK_THROWS_AS(read_pgm(path), ParseError);
  CHECK_THROWS_AS(read_pgm(dir.file("missing.pgm")), IoError);
}

TEST_CASE("CSV round trip is exact") {
  TempDir dir;
  Gen gen(102);
  CsvTable t;
  t.names = {"x", "u", "w"};
  for (int c = 0; c < 3; ++c) t.columns.push_back(gen.vec(50, -1e3, 1e3));
  t.columns[1][3] = 1e-300;
  t.columns[2][7] = -123456789.123456789;
  write_csv(t, dir.file("t.csv"));
  const CsvTable back = read_csv(dir.file("t.csv"));
  REQUIRE(back.names == t.names);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < 50; ++i) CHECK(back.columns[c][i] == t.columns[c][i]);
  }
  CHECK(back.has("w"));
  CHECK_FALSE(back.has("f"));
  CHECK_THROWS_AS(back.column("f"), InvalidArgument);
}

TEST_CASE("CSV parse errors carry positions") {
  TempDir dir;
  const std::string path = dir.file("bad.csv");
  write_raw(path, "x,u\n1,2\n3,oops\n");
  try {
    read_csv(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.offset() == 3);
  }
  write_raw(path, "x,u\n1,2,3\n");
  try {
    read_csv(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  write_raw(path, "");
  CHECK_THROWS_AS(read_csv(path), ParseError);
}

TEST_CASE("profile table columns") {
  const Grid1D u({1.0, 2.0, 3.0}, 0.5, -1.0);
  const Grid1D w({0.1, 0.2, 0.0}, 0.5, -1.0);
  const CsvTable t = profile_table(u, w, std::nullopt);
  CHECK(t.names == std::vector<std::string>{"x", "u", "w"});
  CHECK(t.column("x")[0] == doctest::Approx(-0.75));
  CHECK(t.column("w")[1] == 0.2);
  CHECK_THROWS_AS(profile_table(u, Grid1D({1.0, 2.0}, 0.5)), InvalidArgument);
}

TEST_CASE("JSON report round trip") {
  SolveReport r;
  r.objective_trace = {3.0, 2.5, 2.25, 1.0 / 3.0};
  r.relative_residuals = {1.0, 0.1, 1e-3, 1e-7};
  r.terminated_by = Termination::Tolerance;
  r.wall_time = 0.125;
  r.lambda = 20.0;
  const SolveReport back = report_from_json(nlohmann::json::parse(report_to_json(r).dump()));
  CHECK(back.objective_trace == r.objective_trace);
  CHECK(back.relative_residuals == r.relative_residuals);
  CHECK(back.terminated_by == r.terminated_by);
  CHECK(back.wall_time == r.wall_time);
  CHECK(back.lambda == r.lambda);

  nlohmann::json broken = report_to_json(r);
  broken["terminated_by"] = "gave-up";
  CHECK_THROWS_AS(report_from_json(broken), ParseError);
  CHECK_THROWS_AS(report_from_json(nlohmann::json::object()), ParseError);

  SolveParams sp;
  sp.alpha = 0.1;
  sp.beta = 13.5;
  const nlohmann::json pj = params_to_json(sp);
  CHECK(pj["alpha"] == 0.1);
  CHECK(pj["mode"] == "1hom");
  CHECK(pj["lambda"].is_null());
}
