#include <cmath>
#include <memory>

#include "doctest.h"
#include "varmod/modular.hpp"

using namespace varmod;

namespace {
const Domain kHalf = halfplane_domain();
// |E| = 0.1 under plain Lebesgue measure
const Region kBoxE = region_box(point2(0.0, 1.0), point2(0.2, 1.5));
}  // namespace

TEST_CASE("function construction and evaluation") {
  const SampledFunction f = indicator(kHalf, kBoxE);
  CHECK(eval_function(f, point2(0.1, 1.2)) == std::complex<double>(1.0, 0.0));
  CHECK(eval_function(f, point2(0.1, 0.5)) == std::complex<double>(0.0, 0.0));

  CHECK_THROWS_AS(scaled_indicator(kHalf, 0.0, kBoxE), validation_error);
  CHECK_THROWS_AS(scaled_indicator(kHalf, -1.0, kBoxE), validation_error);
  const SampledFunction g = scaled_indicator(kHalf, 2.5, kBoxE);
  CHECK(eval_function(g, point2(0.1, 1.2)).real() == 2.5);

  const Domain dd = disk_domain();
  const SampledFunction h = polynomial(dd, {{1.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}});
  // h(z) = 1 + 2 z^2 at z = 0.5i: 1 + 2(-0.25) = 0.5
  CHECK(eval_function(h, point2(0.0, 0.5)).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(polynomial(halfspace_domain(3), {{1.0, 0.0}}), validation_error);
  CHECK_THROWS_AS(polynomial(dd, {}), validation_error);
}

TEST_CASE("modular of an indicator is the measure of its support") {
  const QuadratureGrid g = build_grid(kBoxE, kHalf, 64);
  const ExponentField p = constant_exponent(kHalf, 1.5);
  const SampledFunction f = indicator(kHalf, kBoxE);
  // 1^{p(z)} integrates to |E| for any exponent
  CHECK(modular(f, p, g) == doctest::Approx(0.1).epsilon(1e-13));
  // k * chi_E has modular k^p |E| for constant p
  const SampledFunction f3 = scaled_indicator(kHalf, 3.0, kBoxE);
  CHECK(modular(f3, p, g) ==
        doctest::Approx(std::pow(3.0, 1.5) * 0.1).epsilon(1e-13));
}

TEST_CASE("luxemburg norm: constant-exponent closed forms") {
  const QuadratureGrid g = build_grid(kBoxE, kHalf, 64);
  const SampledFunction f = indicator(kHalf, kBoxE);
  for (double pv : {1.5, 2.0, 3.0}) {
    const ExponentField p = constant_exponent(kHalf, pv);
    const double want = std::pow(0.1, 1.0 / pv);
    CHECK(luxemburg_norm(f, p, g, 1e-12) ==
          doctest::Approx(want).epsilon(1e-10));
  }
  // frozen value for p = 3/2: 0.1^{2/3}
  const ExponentField p = constant_exponent(kHalf, 1.5);
  CHECK(luxemburg_norm(f, p, g, 1e-12) ==
        doctest::Approx(0.21544346900318834).epsilon(1e-10));
}

TEST_CASE("unit-ball property and homogeneity") {
  const QuadratureGrid g = build_grid(kBoxE, kHalf, 64);
  const ExponentField p = constant_exponent(kHalf, 1.5);
  for (double s : {0.3, 1.0, 7.5}) {
    const SampledFunction f = scaled_indicator(kHalf, s, kBoxE);
    const double n = luxemburg_norm(f, p, g, 1e-12);
    const SampledFunction fu = scaled_indicator(kHalf, s / n, kBoxE);
    CHECK(modular(fu, p, g) == doctest::Approx(1.0).epsilon(5e-10));
  }
  // ||c f|| = c ||f||
  const double n1 = luxemburg_norm(indicator(kHalf, kBoxE), p, g, 1e-12);
  const double n5 = luxemburg_norm(scaled_indicator(kHalf, 5.0, kBoxE), p, g, 1e-12);
  CHECK(n5 == doctest::Approx(5.0 * n1).epsilon(2e-10));
}

TEST_CASE("homogeneity holds for variable exponents too") {
  const Domain dd = disk_domain();
  const Region e = region_box(point2(-0.2, -0.2), point2(0.2, 0.2));
  const QuadratureGrid g = build_grid(e, dd, 64);
  const ExponentField p = radial_exponent(dd, {1.5, 0.0, 2.0});
  for (double c : {0.2, 3.0, 40.0}) {
    const double n1 = luxemburg_norm(indicator(dd, e), p, g, 1e-12);
    const double nc = luxemburg_norm(scaled_indicator(dd, c, e), p, g, 1e-12);
    CHECK(nc == doctest::Approx(c * n1).epsilon(2e-10));
  }
}

TEST_CASE("modular vs norm dichotomy for variable exponents") {
  // For non-constant p the modular is not homogeneous: rho(k f) != k^q rho(f)
  // for any single q, while the norm still scales exactly linearly.
  const Domain dd = disk_domain();
  const Region em = region_box(point2(-0.25, -0.05), point2(-0.15, 0.05));
  const Region ep = region_box(point2(0.15, -0.05), point2(0.25, 0.05));
  const ExponentField p = two_level_exponent(dd, em, 1.5, ep, 2.5, 2.0);
  const Region both = region_union({em, ep});
  const QuadratureGrid g = build_grid(both, dd, 32);
  const SampledFunction f1 = indicator(dd, both);
  const SampledFunction f10 = scaled_indicator(dd, 10.0, both);
  const double r1 = modular(f1, p, g);
  const double r10 = modular(f10, p, g);
  const double q_effective = std::log(r10 / r1) / std::log(10.0);
  CHECK(q_effective > 1.6);  // strictly between the levels: a genuine mixture
  CHECK(q_effective < 2.4);
}

TEST_CASE("zero function and tolerance validation") {
  const QuadratureGrid g = build_grid(kBoxE, kHalf, 16);
  const ExponentField p = constant_exponent(kHalf, 2.0);
  // an indicator supported away from the grid is zero on it
  const Region far = region_box(point2(5.0, 1.0), point2(5.2, 1.5));
  const SampledFunction z = indicator(kHalf, far);
  CHECK(modular(z, p, g) == 0.0);
  CHECK(luxemburg_norm(z, p, g) == 0.0);
  const SampledFunction f = indicator(kHalf, kBoxE);
  CHECK_THROWS_AS(luxemburg_norm(f, p, g, 0.0), validation_error);
  CHECK_THROWS_AS(luxemburg_norm(f, p, g, 1.0), validation_error);
  // domain mismatch is rejected
  const SampledFunction fd = indicator(disk_domain(), region_disk(point2(0, 0), 0.2));
  CHECK_THROWS_AS(modular(fd, p, g), validation_error);
}

TEST_CASE("table functions integrate over their own grid") {
  auto grid = std::make_shared<QuadratureGrid>(build_grid(kBoxE, kHalf, 16));
  std::vector<std::complex<double>> vals(grid->size(), {2.0, 0.0});
  const SampledFunction f = table_function(kHalf, grid, vals);
  const ExponentField p = constant_exponent(kHalf, 2.0);
  CHECK(modular(f, p, *grid) == doctest::Approx(4.0 * 0.1).epsilon(1e-13));
  // a different grid is structurally incompatible
  const QuadratureGrid other = build_grid(kBoxE, kHalf, 17);
  CHECK_THROWS_AS(modular(f, p, other), validation_error);
  CHECK_THROWS_AS(table_function(kHalf, grid,
                                 std::vector<std::complex<double>>(3)),
                  validation_error);
}

TEST_CASE("norm bisection is deterministic") {
  const QuadratureGrid g = build_grid(kBoxE, kHalf, 48);
  const ExponentField p = constant_exponent(kHalf, 1.5);
  const SampledFunction f = scaled_indicator(kHalf, 1.7, kBoxE);
  const double a = luxemburg_norm(f, p, g, 1e-12);
  const double b = luxemburg_norm(f, p, g, 1e-12);
  CHECK(a == b);  // bitwise
}

TEST_CASE("complex-valued table: modular uses the magnitude") {
  auto grid = std::make_shared<QuadratureGrid>(build_grid(kBoxE, kHalf, 16));
  std::vector<std::complex<double>> vals(grid->size(), {3.0, 4.0});  // |.| = 5
  const SampledFunction f = table_function(kHalf, grid, vals);
  const ExponentField p = constant_exponent(kHalf, 2.0);
  CHECK(modular(f, p, *grid) == doctest::Approx(25.0 * 0.1).epsilon(1e-13));
}
