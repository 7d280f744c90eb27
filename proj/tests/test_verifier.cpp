#include <cmath>

#include "doctest.h"
#include "varmod/verifier.hpp"

using namespace varmod;

TEST_CASE("disk kernel infimum over DiskSet(0, 0.3)") {
  const KernelId bd = bergman_disk_kernel();
  const double c = kernel_infimum(bd, region_disk(point2(0, 0), 0.3), 16);
  // analytic series bound 2 - (1 - 0.09)^{-2}; true infimum (1 + 0.09)^{-2}
  CHECK(c >= 2.0 - 1.0 / (0.91 * 0.91));
  CHECK(c <= 1.0 / (1.09 * 1.09) * 1.005);  // grid min sits just above the inf
  CHECK(c == doctest::Approx(0.8425).epsilon(2e-3));  // frozen
}

TEST_CASE("half-plane kernel infimum over the standard neighborhood") {
  const KernelId bh = bergman_halfplane_kernel();
  const Region nb = neighborhood_halfplane(point2(0.0, 1.0), 0.5);
  const double c = kernel_infimum(bh, nb, 16);
  CHECK(c > 0.0);
  CHECK(c == doctest::Approx(0.0334).epsilon(0.05));  // frozen bracket
}

TEST_CASE("kernel_infimum validation and failure") {
  const KernelId bd = bergman_disk_kernel();
  CHECK_THROWS_AS(kernel_infimum(bd, region_disk(point2(0, 0), 0.3), 3),
                  validation_error);
  // a large set reaches the negative part of the kernel
  CHECK_THROWS_AS(kernel_infimum(bd, region_disk(point2(0, 0), 0.95), 16),
                  nonpositive_infimum);
  // harmonic diagonal vanishes at x_n = n/2, so a box straddling it fails
  const KernelId h2 = harmonic_halfspace_kernel(2);
  CHECK_THROWS_AS(
      kernel_infimum(h2, region_box(point2(-0.1, 0.9), point2(0.1, 1.1)), 16),
      nonpositive_infimum);
}

TEST_CASE("half-plane negativity bound") {
  // on neighborhood_halfplane(tau, gamma), Re((conj z - w)^2) <= -3 (beta-gamma)^2
  for (double gamma : {0.2, 0.5, 0.8}) {
    const Region nb = neighborhood_halfplane(point2(0.3, 1.0), gamma);
    const double bound = -3.0 * (1.0 - gamma) * (1.0 - gamma);
    const double got = halfplane_negativity_check(nb, 24);
    CHECK(got <= bound + 1e-12);
  }
  CHECK_THROWS_AS(halfplane_negativity_check(
                      region_box(point2(0, 1), point2(1, 2)), 1),
                  validation_error);
}

TEST_CASE("find_positive_box for the harmonic kernels") {
  // n = 2: the diagonal vanishes at x_n = 1, so the box must move off (0,1)
  const KernelId h2 = harmonic_halfspace_kernel(2);
  const Region b2 = find_positive_box(h2, point2(0.0, 1.0), 0.2, 12);
  const auto& s2 = std::get<BoxShape>(b2.shape);
  const double cx = 0.5 * (s2.lo[0] + s2.hi[0]);
  const double cy = 0.5 * (s2.lo[1] + s2.hi[1]);
  CHECK(std::abs(cx) < 0.1);
  CHECK(cy > 0.7);
  CHECK(cy < 1.05);
  CHECK(kernel_infimum(h2, b2, 12) > 0.0);

  // n = 3: the centered box already works
  const KernelId h3 = harmonic_halfspace_kernel(3);
  const Region b3 = find_positive_box(h3, point3(0, 0, 1.0), 0.2, 8);
  CHECK(kernel_infimum(h3, b3, 8) > 0.0);
  const auto& s3 = std::get<BoxShape>(b3.shape);
  CHECK(s3.lo[2] > 0.5);
  CHECK(s3.hi[2] < 1.5);

  // a hopeless center deep in the negative zone
  CHECK_THROWS_AS(find_positive_box(h2, point2(0.0, 50.0), 0.2, 8),
                  nonpositive_infimum);
}

TEST_CASE("verify_lower_bound on the disk") {
  const KernelId bd = bergman_disk_kernel();
  const Region k = region_disk(point2(0, 0), 0.3);
  const LemmaReport rep = verify_lower_bound(bd, k, 50, 24, 12345);
  CHECK(rep.verified);
  CHECK(rep.trials.size() == 50u);
  CHECK(rep.min_margin > 1e-5);
  CHECK(rep.tol_quadrature < 1e-6);
  CHECK(rep.c_tau == doctest::Approx(0.8425).epsilon(2e-3));
  for (const auto& t : rep.trials) {
    CHECK(t.lhs >= t.bound - rep.tol_quadrature);
    CHECK(t.margin == t.lhs - t.bound);
    CHECK(k.contains(t.z));
    const auto& eb = std::get<BoxShape>(t.e.shape);
    CHECK(k.contains_box(eb.lo, eb.hi));
  }
}

TEST_CASE("verify_lower_bound on the half plane") {
  const KernelId bh = bergman_halfplane_kernel();
  const Region nb = neighborhood_halfplane(point2(0.0, 1.0), 0.5);
  const LemmaReport rep = verify_lower_bound(bh, nb, 50, 24, 99);
  CHECK(rep.verified);
  CHECK(rep.min_margin > 0.0);
}

TEST_CASE("verify_lower_bound on a harmonic box") {
  const KernelId h3 = harmonic_halfspace_kernel(3);
  const Region b = region_box(point3(-0.2, -0.2, 0.8), point3(0.2, 0.2, 1.2));
  const LemmaReport rep = verify_lower_bound(h3, b, 20, 8, 4242);
  CHECK(rep.verified);
  CHECK(rep.min_margin > 0.0);
}

TEST_CASE("verify_lower_bound is deterministic in the seed") {
  const KernelId bd = bergman_disk_kernel();
  const Region k = region_disk(point2(0, 0), 0.3);
  const LemmaReport a = verify_lower_bound(bd, k, 10, 16, 777);
  const LemmaReport b = verify_lower_bound(bd, k, 10, 16, 777);
  REQUIRE(a.trials.size() == b.trials.size());
  CHECK(a.min_margin == b.min_margin);  // bitwise
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].lhs == b.trials[i].lhs);
    CHECK(distance(a.trials[i].z, b.trials[i].z) == 0.0);
  }
  // a different seed draws different trials
  const LemmaReport c = verify_lower_bound(bd, k, 10, 16, 778);
  CHECK(distance(a.trials[0].z, c.trials[0].z) > 0.0);
}
