#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tvlp/operators.hpp"

using namespace tvlp;
using tvlp_test::Gen;

TEST_CASE("gradient examples") {
  const VectorField2D zero = gradient(Image2D::constant(5, 4, 3.0));
  CHECK(tvlp_test::max_abs(zero.comp1()) == 0.0);
  CHECK(tvlp_test::max_abs(zero.comp2()) == 0.0);

  const VectorField2D g = gradient(Image2D::signal({0.0, 1.0}));
  CHECK(g.comp1()[0] == 1.0);
  CHECK(g.comp1()[1] == 0.0);
  CHECK(g.comp2()[0] == 0.0);

  const double t = 0.25;
  Image2D ramp(6, 5, t);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 5; ++j) ramp(i, j) = static_cast<double>(i) * t;
  const VectorField2D gr = gradient(ramp);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(gr.comp1()(i, j) == doctest::Approx(i + 1 < 6 ? 1.0 : 0.0));
      CHECK(gr.comp2()(i, j) == 0.0);
    }
  }
}

TEST_CASE("divergence examples") {
  CHECK(tvlp_test::max_abs(divergence(VectorField2D(4, 3))) == 0.0);

  // n = 4, w = [c, c, c, 0]: div = backward difference with zero padding.
  const double c = 2.0;
  const double t = 0.5;
  const VectorField2D w(Image2D::signal({c, c, c, 0.0}, t), Image2D(4, 1, t));
  const Image2D d = divergence(w);
  CHECK(d[0] == doctest::Approx(c / t));
  CHECK(d[1] == doctest::Approx(0.0));
  CHECK(d[2] == doctest::Approx(0.0));
  CHECK(d[3] == doctest::Approx(-c / t));
}

TEST_CASE("divergence is the negative adjoint of gradient") {
  Gen gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen.integer(2, 32);
    const std::size_t m = gen.integer(1, 32);
    const double t = gen.uniform(0.05, 3.0);
    const Image2D u = gen.image(n, m, -1.0, 1.0, t);
    const VectorField2D w = gen.field(n, m, -1.0, 1.0, t);
    const double lhs = -inner(divergence(w), u);
    const double rhs = inner(w, gradient(u));
    const double scale = tvlp_test::l2(divergence(w)) * tvlp_test::l2(u) + 1e-300;
    CHECK(std::abs(lhs - rhs) <= 1e-11 * scale);
  }
}

TEST_CASE("constants are annihilated") {
  Gen gen(22);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.integer(2, 10);
    const std::size_t m = gen.integer(1, 10);
    const Image2D c = Image2D::constant(n, m, gen.uniform(-5, 5));
    CHECK(tvlp_test::max_abs(divergence(gradient(c))) == 0.0);
    CHECK(tvlp_test::max_abs(laplacian(c)) == 0.0);
  }
}

TEST_CASE("field norm examples") {
  const VectorField2D one(Image2D(2, 1, std::vector<double>{3.0, 0.0}), Image2D(2, 1, std::vector<double>{4.0, 0.0}));
  CHECK(field_lp_norm(one, 2.0, false) == doctest::Approx(5.0));
  CHECK(field_lp_norm(VectorField2D(3, 3), 2.0, false) == 0.0);
  const VectorField2D two(Image2D(2, 1, std::vector<double>{1.0, 0.0}), Image2D(2, 1, std::vector<double>{0.0, 1.0}));
  CHECK(field_lp_norm(two, 4.0, false) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
}

TEST_CASE("field norm inclusion bounds") {
  Gen gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.integer(2, 10);
    const std::size_t m = gen.integer(1, 10);
    const VectorField2D w = gen.field(n, m, -2.0, 2.0);
    const double p1 = gen.uniform(1.0, 5.0);
    const double p2 = p1 + gen.uniform(0.01, 5.0);
    const double a = field_lp_norm(w, p1, false);
    const double b = field_lp_norm(w, p2, false);
    const double count = static_cast<double>(n * m);
    CHECK(b <= a * (1.0 + 1e-12));
    CHECK(a <= std::pow(count, 1.0 / p1 - 1.0 / p2) * b * (1.0 + 1e-12));
  }
}

TEST_CASE("total variation examples") {
  CHECK(tv_value(Image2D::constant(5, 5, 1.0), true) == 0.0);

  std::vector<double> step(2000, 0.0);
  for (std::size_t i = 1000; i < 2000; ++i) step[i] = 100.0;
  CHECK(tv_value(Image2D::signal(step, 0.001), true) == doctest::Approx(100.0).epsilon(1e-12));

  const Image2D checker(2, 2, std::vector<double>{0.0, 1.0, 1.0, 0.0});
  // Isotropic: |(1,1)| at the corner plus two unit gradients.
  CHECK(tv_value(checker, false) == doctest::Approx(2.0 + std::sqrt(2.0)));
}

TEST_CASE("total variation ignores constant shifts") {
  Gen gen(24);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen.integer(2, 12);
    const std::size_t m = gen.integer(1, 12);
    const Image2D u = gen.image(n, m);
    const double c = gen.uniform(-3.0, 3.0);
    CHECK(tv_value(u + c, false) == doctest::Approx(tv_value(u, false)).epsilon(1e-12));
  }
}
