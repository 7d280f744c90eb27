#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "varmod/operators.hpp"

using namespace varmod;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("kernel identities and domains") {
  const KernelId bd = bergman_disk_kernel();
  CHECK(kernel_domain(bd).kind == DomainKind::Disk);
  const KernelId bh = bergman_halfplane_kernel();
  CHECK(kernel_domain(bh).kind == DomainKind::HalfPlane2);
  const KernelId h3 = harmonic_halfspace_kernel(3);
  CHECK(kernel_domain(h3).dimension == 3);
  CHECK_THROWS_AS(harmonic_halfspace_kernel(1), validation_error);
}

TEST_CASE("gamma_half matches the standard gamma function") {
  for (int n = 1; n <= 16; ++n) {
    const double want = std::tgamma(0.5 * n);
    CHECK(gamma_half(n) == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("harmonic kernel constants") {
  // c_n = 2 Gamma(n/2) / pi^{n/2}
  CHECK(harmonic_halfspace_kernel(2).constant ==
        doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(harmonic_halfspace_kernel(3).constant ==
        doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(harmonic_halfspace_kernel(4).constant ==
        doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-15));
}

TEST_CASE("frozen kernel point values") {
  const KernelId bd = bergman_disk_kernel();
  CHECK(kernel(bd, point2(0, 0), point2(0, 0)) == std::complex<double>(1.0, 0.0));
  CHECK(kernel(bd, point2(0.5, 0), point2(0.5, 0)).real() ==
        doctest::Approx(16.0 / 9.0).epsilon(1e-15));
  const auto v = kernel(bd, point2(0.3, 0.2), point2(-0.1, 0.4));
  CHECK(v.real() == doctest::Approx(1.0383779870170644).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(-0.31284238820539034).epsilon(1e-12));

  const KernelId bh = bergman_halfplane_kernel();
  const auto vi = kernel(bh, point2(0.0, 1.0), point2(0.0, 1.0));
  CHECK(vi.real() == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
  CHECK(vi.imag() == doctest::Approx(0.0).epsilon(1e-16));

  // harmonic diagonal: value c_n (n - 2 x_n) / (2^{n+1} x_n^{n+1})
  const KernelId h2 = harmonic_halfspace_kernel(2);
  CHECK(kernel(h2, point2(0.0, 1.0), point2(0.0, 1.0)).real() == 0.0);
  const KernelId h3 = harmonic_halfspace_kernel(3);
  CHECK(kernel(h3, point3(0, 0, 1.0), point3(0, 0, 1.0)).real() ==
        doctest::Approx(1.0 / (16.0 * kPi)).epsilon(1e-13));
  // below the sign-change height x_n = n/2 the diagonal is positive
  CHECK(kernel(h2, point2(0.0, 0.9), point2(0.0, 0.9)).real() > 0.0);
  CHECK(kernel(h2, point2(0.0, 1.1), point2(0.0, 1.1)).real() < 0.0);
}

TEST_CASE("kernels are Hermitian-symmetric") {
  std::mt19937_64 gen(7);
  auto u = [&](double a, double b) {
    return a + (b - a) * ((gen() >> 11) * 0x1.0p-53);
  };
  const KernelId bd = bergman_disk_kernel();
  const KernelId bh = bergman_halfplane_kernel();
  const KernelId h3 = harmonic_halfspace_kernel(3);
  for (int t = 0; t < 50; ++t) {
    const Point z = point2(u(-0.6, 0.6), u(-0.6, 0.6));
    const Point w = point2(u(-0.6, 0.6), u(-0.6, 0.6));
    const auto a = kernel(bd, z, w);
    const auto b = kernel(bd, w, z);
    CHECK(std::abs(a - std::conj(b)) < 1e-13 * std::abs(a));

    const Point zh = point2(u(-2, 2), u(0.1, 3));
    const Point wh = point2(u(-2, 2), u(0.1, 3));
    const auto ah = kernel(bh, zh, wh);
    CHECK(std::abs(ah - std::conj(kernel(bh, wh, zh))) < 1e-13 * std::abs(ah));

    const Point x = point3(u(-1, 1), u(-1, 1), u(0.2, 2));
    const Point y = point3(u(-1, 1), u(-1, 1), u(0.2, 2));
    const auto ar = kernel(h3, x, y);
    CHECK(ar.imag() == 0.0);
    CHECK(std::abs(ar.real() - kernel(h3, y, x).real()) <=
          1e-13 * std::abs(ar.real()));
  }
}

TEST_CASE("kernel arguments must lie in the open domain") {
  const KernelId bd = bergman_disk_kernel();
  CHECK_THROWS_AS(kernel(bd, point2(1.0, 0.0), point2(0, 0)), validation_error);
  const KernelId bh = bergman_halfplane_kernel();
  CHECK_THROWS_AS(kernel(bh, point2(0.0, 0.0), point2(0, 1)), validation_error);
  const KernelId h3 = harmonic_halfspace_kernel(3);
  CHECK_THROWS_AS(kernel(h3, point2(0.0, 0.5), point2(0, 1)), validation_error);
  CHECK_THROWS_AS(kernel(h3, point3(0, 0, 0.5), point3(0, 0, 0)), validation_error);
}

TEST_CASE("disk projection reproduces holomorphic monomials") {
  const KernelId bd = bergman_disk_kernel();
  const Domain dd = disk_domain();
  const int res = 128;
  const double eps = 4.0 / (static_cast<double>(res) * res);
  const QuadratureGrid g = build_grid(region_disk(point2(0, 0), 1.0 - eps), dd, res);
  double worst = 0.0;
  for (int k = 0; k <= 3; ++k) {
    std::vector<std::complex<double>> coeffs(k + 1, 0.0);
    coeffs[k] = 1.0;
    const SampledFunction f = polynomial(dd, coeffs);
    for (int t = 0; t < 5; ++t) {
      const std::complex<double> z(0.07 * t - 0.2, 0.09 * t - 0.15);
      const auto got = project(bd, f, from_complex(z), g);
      worst = std::max(worst, std::abs(got - std::pow(z, k)));
    }
  }
  CHECK(worst < 2e-3);  // frozen from the refinement study; 5e-3 at res 256
}

TEST_CASE("project_table matches pointwise project") {
  const KernelId bd = bergman_disk_kernel();
  const Domain dd = disk_domain();
  const QuadratureGrid source =
      build_grid(region_disk(point2(-0.15, 0), 0.05), dd, 12);
  const QuadratureGrid targets =
      build_grid(region_box(point2(0.1, -0.05), point2(0.2, 0.05)), dd, 4);
  const SampledFunction f = indicator(dd, region_disk(point2(-0.15, 0), 0.05));
  const auto table = project_table(bd, f, targets, source);
  REQUIRE(table.size() == targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto direct = project(bd, f, targets.node(i), source);
    CHECK(table[i] == direct);  // same compensated order, bitwise equal
  }
}

TEST_CASE("holomorphy residual separates z^2 from conj(z)") {
  const Domain dd = disk_domain();
  const QuadratureGrid g =
      build_grid(region_box(point2(-0.2, -0.2), point2(0.2, 0.2)), dd, 9);
  std::vector<std::complex<double>> holo(g.size()), anti(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto z = to_complex(g.node(i));
    holo[i] = z * z;
    anti[i] = std::conj(z);
  }
  const ComplexFieldTable th = make_field_table(g, holo);
  CHECK(th.nx == 9);
  CHECK(th.ny == 9);
  CHECK(holomorphy_residual(th) < 1e-12);
  const ComplexFieldTable ta = make_field_table(g, anti);
  CHECK(holomorphy_residual(ta) == doctest::Approx(2.0).epsilon(1e-12));
  // non-box grids carry no table structure
  const QuadratureGrid disk_g = build_grid(region_disk(point2(0, 0), 0.2), dd, 9);
  CHECK_THROWS_AS(
      make_field_table(disk_g, std::vector<std::complex<double>>(disk_g.size())),
      validation_error);
}

TEST_CASE("harmonicity residual separates harmonic from non-harmonic") {
  auto grid2 = [](int n, double h) {
    RealFieldGrid f;
    f.shape = {n, n};
    f.spacing = h;
    f.values.resize(static_cast<std::size_t>(n) * n);
    return f;
  };
  const int n = 9;
  const double h = 0.05;
  RealFieldGrid harm = grid2(n, h), quad = grid2(n, h);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = i * h, y = j * h;
      harm.values[static_cast<std::size_t>(i) * n + j] = x * x - y * y;
      quad.values[static_cast<std::size_t>(i) * n + j] = x * x;
    }
  CHECK(harmonicity_residual(harm) < 1e-10);
  CHECK(harmonicity_residual(quad) == doctest::Approx(2.0).epsilon(1e-10));

  // 3d: x^2 + y^2 - 2 z^2 is harmonic
  RealFieldGrid h3;
  h3.shape = {5, 5, 5};
  h3.spacing = 0.1;
  h3.values.resize(125);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        const double x = i * 0.1, y = j * 0.1, z = k * 0.1;
        h3.values[static_cast<std::size_t>(i) * 25 + j * 5 + k] =
            x * x + y * y - 2.0 * z * z;
      }
  CHECK(harmonicity_residual(h3) < 1e-10);
  RealFieldGrid bad;
  bad.shape = {2, 2};
  bad.spacing = 0.1;
  bad.values.resize(4);
  CHECK_THROWS_AS(harmonicity_residual(bad), validation_error);
}

TEST_CASE("projected indicator is numerically holomorphic") {
  const KernelId bd = bergman_disk_kernel();
  const Domain dd = disk_domain();
  const Region km = region_disk(point2(-0.15, 0), 0.05);
  const QuadratureGrid source = build_grid(km, dd, 24);
  const QuadratureGrid targets =
      build_grid(region_box(point2(0.05, -0.1), point2(0.25, 0.1)), dd, 17);
  const auto vals = project_table(bd, indicator(dd, km), targets, source);
  const ComplexFieldTable t = make_field_table(targets, vals);
  // the projection of anything is holomorphic; the discretization is the
  // only error source here
  CHECK(holomorphy_residual(t) < 1e-4);
}

TEST_CASE("projected indicator is numerically harmonic") {
  const KernelId h3 = harmonic_halfspace_kernel(3);
  const Domain d3 = halfspace_domain(3);
  const Region km = region_box(point3(-0.1, -0.1, 0.9), point3(0.1, 0.1, 1.1));
  const QuadratureGrid source = build_grid(km, d3, 10);
  const Region tbox = region_box(point3(0.3, 0.3, 0.9), point3(0.5, 0.5, 1.1));
  const QuadratureGrid targets = build_grid(tbox, d3, 7);
  const auto vals = project_table(h3, indicator(d3, km), targets, source);
  RealFieldGrid f;
  f.shape = {7, 7, 7};
  f.spacing = targets.spacing[0];
  f.values.resize(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) f.values[i] = vals[i].real();
  CHECK(harmonicity_residual(f) < 5e-3);
}
