#pragma once

#include <cstdint>
#include <vector>

#include "varmod/geometry.hpp"
#include "varmod/operators.hpp"

namespace varmod {

// Grid minimum of the real part of the kernel over K x K, refined once at
// doubled resolution with the smaller value kept. Errors with
// nonpositive_infimum if the result is not strictly positive, since every
// lower-bound argument dies with it.
double kernel_infimum(const KernelId& id, const Region& k, int resolution);

struct LemmaTrial {
  Region e;        // random sub-box of K
  Point z;         // random evaluation point in K
  double lhs = 0.0;     // Re (P chi_E)(z)
  double bound = 0.0;   // c_tau * measure(E)
  double margin = 0.0;  // lhs - bound
};

struct LemmaReport {
  KernelId kernel_id;
  Region neighborhood;
  double c_tau = 0.0;
  std::vector<LemmaTrial> trials;
  double min_margin = 0.0;
  double tol_quadrature = 0.0;  // max |lhs(res) - lhs(2 res)| over the trials
  bool verified = false;        // min_margin >= -tol_quadrature
};

// Samples `trials` random boxes E inside K (sides at least 4 grid cells, so
// measure(E) dominates quadrature noise) and random points z in K, checking
// Re (P chi_E)(z) >= c_tau * measure(E) each time. Trial t draws from its own
// generator seeded by mix(seed, t), so runs are reproducible and independent
// of evaluation order.
LemmaReport verify_lower_bound(const KernelId& id, const Region& k, int trials,
                               int resolution, std::uint64_t seed);

// Max over sampled pairs z = a+bi, w = c+di in K x K of
// Re((conj(z) - w)^2) = (a - c)^2 - (b + d)^2. On the rectangle
// neighborhood_halfplane(tau, gamma) this never exceeds -3 (beta - gamma)^2.
double halfplane_negativity_check(const Region& k, int resolution);

// Searches boxes near `center` (shrinking, then sliding toward the boundary
// where the kernel grows) for one with kernel_infimum > 0. Used for the
// harmonic kernels, whose diagonal changes sign along x_n = n/2 so not every
// box near a given point works. Errors with nonpositive_infimum when the
// scan finds nothing.
Region find_positive_box(const KernelId& id, const Point& center,
                         double initial_halfwidth, int resolution);

}  // namespace varmod
