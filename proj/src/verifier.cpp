#include "varmod/verifier.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "varmod/modular.hpp"

namespace varmod {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// The raw engine output is standardized; distributions are not, so uniforms
// are produced by hand to keep runs identical across toolchains.
double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double grid_min_re(const KernelId& id, const QuadratureGrid& g) {
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point z = g.node(i);
    for (std::size_t j = i; j < g.size(); ++j) {
      const double v = kernel(id, z, g.node(j)).real();
      if (v < mn) mn = v;
    }
  }
  return mn;
}

}  // namespace

double kernel_infimum(const KernelId& id, const Region& k, int resolution) {
  if (resolution < 4) throw validation_error("kernel infimum needs resolution >= 4");
  const Domain d = kernel_domain(id);
  if (!region_inside_domain(k, d))
    throw validation_error("region must lie strictly inside the open domain");
  const double coarse = grid_min_re(id, build_grid(k, d, resolution));
  const double fine = grid_min_re(id, build_grid(k, d, 2 * resolution));
  const double c = std::min(coarse, fine);
  if (!(c > 0.0))
    throw nonpositive_infimum("kernel infimum is not positive on this region");
  return c;
}

LemmaReport verify_lower_bound(const KernelId& id, const Region& k, int trials,
                               int resolution, std::uint64_t seed) {
  if (trials < 1) throw validation_error("trial count must be positive");
  const Domain dom = kernel_domain(id);
  const int dim = dom.dimension;

  LemmaReport report;
  report.kernel_id = id;
  report.neighborhood = k;
  report.c_tau = kernel_infimum(id, k, resolution);

  const BoxShape inner = k.inscribed_box();
  Point bblo, bbhi;
  k.bounding_box(bblo, bbhi);
  std::vector<double> min_side(static_cast<std::size_t>(dim));
  std::vector<double> extent(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    min_side[static_cast<std::size_t>(a)] = 4.0 * (bbhi[a] - bblo[a]) / resolution;
    extent[static_cast<std::size_t>(a)] = inner.hi[a] - inner.lo[a];
    if (min_side[static_cast<std::size_t>(a)] >= extent[static_cast<std::size_t>(a)])
      throw validation_error("resolution too coarse to place trial boxes in K");
  }

  report.min_margin = std::numeric_limits<double>::infinity();
  report.tol_quadrature = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    LemmaTrial trial;

    Point elo, ehi;
    elo.dim = ehi.dim = dim;
    for (int a = 0; a < dim; ++a) {
      const double ms = min_side[static_cast<std::size_t>(a)];
      const double cap = std::max(ms, 0.5 * extent[static_cast<std::size_t>(a)]);
      const double side = ms + uniform01(rng) * (cap - ms);
      const double slack = extent[static_cast<std::size_t>(a)] - side;
      elo[a] = inner.lo[a] + uniform01(rng) * slack;
      ehi[a] = elo[a] + side;
    }
    trial.e = region_box(elo, ehi);

    for (int tries = 0;; ++tries) {
      Point z;
      z.dim = dim;
      for (int a = 0; a < dim; ++a)
        z[a] = bblo[a] + uniform01(rng) * (bbhi[a] - bblo[a]);
      if (k.contains(z)) {
        trial.z = z;
        break;
      }
      if (tries > 4096)
        throw validation_error("failed to sample a point inside K");
    }

    const SampledFunction chi = indicator(dom, trial.e);
    const QuadratureGrid ge = build_grid(trial.e, dom, resolution);
    trial.lhs = project(id, chi, trial.z, ge).real();
    const QuadratureGrid ge2 = build_grid(trial.e, dom, 2 * resolution);
    const double refined = project(id, chi, trial.z, ge2).real();
    report.tol_quadrature =
        std::max(report.tol_quadrature, std::abs(trial.lhs - refined));

    trial.bound = report.c_tau * measure(trial.e, dom);
    trial.margin = trial.lhs - trial.bound;
    report.min_margin = std::min(report.min_margin, trial.margin);
    report.trials.push_back(trial);
  }
  report.verified = report.min_margin >= -report.tol_quadrature;
  return report;
}

double halfplane_negativity_check(const Region& k, int resolution) {
  if (resolution < 4)
    throw validation_error("negativity check needs resolution >= 4");
  const Domain dom = halfplane_domain();
  if (!region_inside_domain(k, dom))
    throw validation_error("region must lie strictly inside the upper half plane");
  const QuadratureGrid g = build_grid(k, dom, resolution);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point z = g.node(i);
    for (std::size_t j = i; j < g.size(); ++j) {
      const Point w = g.node(j);
      const double dx = z[0] - w[0];
      const double sy = z[1] + w[1];
      const double v = dx * dx - sy * sy;  // Re((conj(z) - w)^2)
      if (v > worst) worst = v;
    }
  }
  return worst;
}

Region find_positive_box(const KernelId& id, const Point& center,
                         double initial_halfwidth, int resolution) {
  const Domain dom = kernel_domain(id);
  if (center.dim != dom.dimension)
    throw validation_error("center dimension mismatch");
  if (!(initial_halfwidth > 0.0))
    throw validation_error("initial halfwidth must be positive");

  const int last = dom.dimension - 1;
  for (int slide = 0; slide <= 8; ++slide) {
    Point c = center;
    c[last] = center[last] * (1.0 - 0.05 * slide);
    if (!(c[last] > 0.0)) break;
    for (int shrink = 0; shrink <= 3; ++shrink) {
      const double w = std::min(initial_halfwidth * std::pow(0.5, shrink),
                                0.45 * c[last]);
      Point lo = c, hi = c;
      for (int a = 0; a < dom.dimension; ++a) {
        lo[a] -= w;
        hi[a] += w;
      }
      const Region box = region_box(lo, hi);
      if (!region_inside_domain(box, dom)) continue;
      try {
        kernel_infimum(id, box, resolution);
        return box;
      } catch (const nonpositive_infimum&) {
        continue;
      }
    }
  }
  throw nonpositive_infimum(
      "no box with a positive kernel infimum found near the center");
}

}  // namespace varmod
