#include "varmod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "varmod/summation.hpp"

namespace varmod {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw validation_error("point dimension out of range");
}

// Squared distance from a point to an axis-aligned box (zero inside).
double box_distance_sq(const Point& p, const Point& lo, const Point& hi) {
  double d2 = 0.0;
  for (int a = 0; a < p.dim; ++a) {
    const double below = lo[a] - p[a];
    const double above = p[a] - hi[a];
    const double gap = std::max({below, above, 0.0});
    d2 += gap * gap;
  }
  return d2;
}

// Largest distance from a point to any corner of a box.
double box_max_distance(const Point& p, const Point& lo, const Point& hi) {
  double d2 = 0.0;
  for (int a = 0; a < p.dim; ++a) {
    const double far_side = std::max(std::abs(p[a] - lo[a]), std::abs(p[a] - hi[a]));
    d2 += far_side * far_side;
  }
  return std::sqrt(d2);
}

}  // namespace

Point point2(double x, double y) {
  Point p;
  p.dim = 2;
  p.coord[0] = x;
  p.coord[1] = y;
  return p;
}

Point point3(double x, double y, double z) {
  Point p;
  p.dim = 3;
  p.coord[0] = x;
  p.coord[1] = y;
  p.coord[2] = z;
  return p;
}

Point make_point(const std::vector<double>& coords) {
  check_dim(static_cast<int>(coords.size()));
  Point p;
  p.dim = static_cast<int>(coords.size());
  for (int a = 0; a < p.dim; ++a) p[a] = coords[static_cast<std::size_t>(a)];
  return p;
}

Point from_complex(std::complex<double> z) { return point2(z.real(), z.imag()); }

std::complex<double> to_complex(const Point& p) {
  if (p.dim != 2) throw validation_error("complex view requires a 2d point");
  return {p[0], p[1]};
}

double distance(const Point& a, const Point& b) {
  if (a.dim != b.dim) throw validation_error("point dimension mismatch");
  double d2 = 0.0;
  for (int i = 0; i < a.dim; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(d2);
}

Domain disk_domain() { return {DomainKind::Disk, 2, 1.0 / std::numbers::pi}; }

Domain halfplane_domain() { return {DomainKind::HalfPlane2, 2, 1.0}; }

Domain halfspace_domain(int n) {
  if (n < 2 || n > kMaxDim)
    throw validation_error("half-space dimension must be in [2, 8]");
  return {DomainKind::HalfSpace, n, 1.0};
}

bool same_domain(const Domain& a, const Domain& b) {
  return a.kind == b.kind && a.dimension == b.dimension;
}

bool point_in_domain(const Point& p, const Domain& d) {
  if (p.dim != d.dimension) return false;
  if (d.kind == DomainKind::Disk) return p[0] * p[0] + p[1] * p[1] < 1.0;
  return p[d.dimension - 1] > 0.0;  // upper half plane / half space
}

int Region::dim() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) return s.lo.dim;
        else if constexpr (std::is_same_v<T, UnionShape>) return s.members.front().dim();
        else return 2;
      },
      shape);
}

bool Region::contains(const Point& p) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          for (int a = 0; a < s.lo.dim; ++a)
            if (p[a] < s.lo[a] || p[a] > s.hi[a]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          return distance(p, s.center) <= s.radius;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          const double r = distance(p, s.center);
          return r >= s.inner_radius && r <= s.outer_radius;
        } else {
          for (const Region& m : s.members)
            if (m.contains(p)) return true;
          return false;
        }
      },
      shape);
}

bool Region::contains_box(const Point& blo, const Point& bhi) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          for (int a = 0; a < s.lo.dim; ++a)
            if (blo[a] < s.lo[a] || bhi[a] > s.hi[a]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          return box_max_distance(s.center, blo, bhi) <= s.radius;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          return box_max_distance(s.center, blo, bhi) <= s.outer_radius &&
                 std::sqrt(box_distance_sq(s.center, blo, bhi)) >= s.inner_radius;
        } else {
          // Conservative: the box has to fit inside a single member.
          for (const Region& m : s.members)
            if (m.contains_box(blo, bhi)) return true;
          return false;
        }
      },
      shape);
}

void Region::bounding_box(Point& lo, Point& hi) const {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          lo = s.lo;
          hi = s.hi;
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          lo = hi = s.center;
          for (int a = 0; a < 2; ++a) {
            lo[a] -= s.radius;
            hi[a] += s.radius;
          }
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          lo = hi = s.center;
          for (int a = 0; a < 2; ++a) {
            lo[a] -= s.outer_radius;
            hi[a] += s.outer_radius;
          }
        } else {
          s.members.front().bounding_box(lo, hi);
          for (std::size_t i = 1; i < s.members.size(); ++i) {
            Point mlo, mhi;
            s.members[i].bounding_box(mlo, mhi);
            for (int a = 0; a < lo.dim; ++a) {
              lo[a] = std::min(lo[a], mlo[a]);
              hi[a] = std::max(hi[a], mhi[a]);
            }
          }
        }
      },
      shape);
}

double Region::lebesgue_measure() const {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          double v = 1.0;
          for (int a = 0; a < s.lo.dim; ++a) v *= s.hi[a] - s.lo[a];
          return v;
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          return std::numbers::pi * s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          return std::numbers::pi *
                 (s.outer_radius * s.outer_radius - s.inner_radius * s.inner_radius);
        } else {
          double v = 0.0;
          for (const Region& m : s.members) v += m.lebesgue_measure();
          return v;
        }
      },
      shape);
}

BoxShape Region::inscribed_box() const {
  return std::visit(
      [this](const auto& s) -> BoxShape {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return s;
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          const double h = s.radius / std::numbers::sqrt2;
          BoxShape b{s.center, s.center};
          for (int a = 0; a < 2; ++a) {
            b.lo[a] -= h;
            b.hi[a] += h;
          }
          return b;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          // A box in the right lobe, centered on the mid radius; shrink until
          // the containment predicate accepts it.
          Point q = s.center;
          q[0] += 0.5 * (s.inner_radius + s.outer_radius);
          double t = 0.3 * (s.outer_radius - s.inner_radius);
          for (int tries = 0; tries < 40; ++tries) {
            BoxShape b{q, q};
            for (int a = 0; a < 2; ++a) {
              b.lo[a] -= t;
              b.hi[a] += t;
            }
            if (contains_box(b.lo, b.hi)) return b;
            t *= 0.5;
          }
          throw validation_error("annulus too thin for an inscribed box");
        } else {
          return s.members.front().inscribed_box();
        }
      },
      shape);
}

Region region_box(const Point& lo, const Point& hi) {
  if (lo.dim != hi.dim) throw validation_error("box corner dimension mismatch");
  check_dim(lo.dim);
  for (int a = 0; a < lo.dim; ++a)
    if (!(lo[a] < hi[a])) throw validation_error("box corners must satisfy lo < hi");
  return Region{BoxShape{lo, hi}};
}

Region region_disk(const Point& center, double radius) {
  if (center.dim != 2) throw validation_error("disk regions are two-dimensional");
  if (!(radius > 0.0)) throw validation_error("disk radius must be positive");
  return Region{DiskShape{center, radius}};
}

Region region_annulus(const Point& center, double inner_radius, double outer_radius) {
  if (center.dim != 2) throw validation_error("annulus regions are two-dimensional");
  if (!(inner_radius >= 0.0) || !(outer_radius > inner_radius))
    throw validation_error("annulus radii must satisfy 0 <= inner < outer");
  return Region{AnnulusShape{center, inner_radius, outer_radius}};
}

namespace {

// Sampled emptiness test for the pairwise-disjointness requirement on unions.
bool overlap_by_sampling(const Region& a, const Region& b) {
  Point lo, hi;
  a.bounding_box(lo, hi);
  const int dim = a.dim();
  const int n = 12;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (;;) {
    Point p;
    p.dim = dim;
    for (int ax = 0; ax < dim; ++ax)
      p[ax] = lo[ax] + (idx[static_cast<std::size_t>(ax)] + 0.5) * (hi[ax] - lo[ax]) / n;
    if (a.contains(p) && b.contains(p)) return true;
    int ax = dim - 1;
    while (ax >= 0 && ++idx[static_cast<std::size_t>(ax)] == n) idx[static_cast<std::size_t>(ax--)] = 0;
    if (ax < 0) break;
  }
  return false;
}

}  // namespace

Region region_union(std::vector<Region> members) {
  if (members.empty()) throw validation_error("union region needs at least one member");
  const int dim = members.front().dim();
  for (const Region& m : members)
    if (m.dim() != dim) throw validation_error("union member dimension mismatch");
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (overlap_by_sampling(members[i], members[j]) ||
          overlap_by_sampling(members[j], members[i]))
        throw validation_error("union members must be pairwise disjoint");
  return Region{UnionShape{std::move(members)}};
}

bool regions_intersect(const Region& a, const Region& b) {
  if (const auto* ua = std::get_if<UnionShape>(&a.shape)) {
    for (const Region& m : ua->members)
      if (regions_intersect(m, b)) return true;
    return false;
  }
  if (const auto* ub = std::get_if<UnionShape>(&b.shape)) {
    for (const Region& m : ub->members)
      if (regions_intersect(a, m)) return true;
    return false;
  }
  if (const auto* ba = std::get_if<BoxShape>(&a.shape)) {
    if (const auto* bb = std::get_if<BoxShape>(&b.shape)) {
      for (int ax = 0; ax < ba->lo.dim; ++ax)
        if (ba->hi[ax] < bb->lo[ax] || bb->hi[ax] < ba->lo[ax]) return false;
      return true;
    }
    if (const auto* db = std::get_if<DiskShape>(&b.shape))
      return box_distance_sq(db->center, ba->lo, ba->hi) <= db->radius * db->radius;
    const auto& an = std::get<AnnulusShape>(b.shape);
    return std::sqrt(box_distance_sq(an.center, ba->lo, ba->hi)) <= an.outer_radius &&
           box_max_distance(an.center, ba->lo, ba->hi) >= an.inner_radius;
  }
  if (std::holds_alternative<BoxShape>(b.shape)) return regions_intersect(b, a);
  // Disk/annulus pairs. A point x has (|x-ca|, |x-cb|) = (s, t) attainable
  // exactly when |s - t| <= d <= s + t, d the center distance; the shapes
  // meet iff some admissible (s, t) lies in the two radial intervals.
  auto radial_range = [](const Region& r, Point& c) -> std::array<double, 2> {
    if (const auto* ds = std::get_if<DiskShape>(&r.shape)) {
      c = ds->center;
      return {0.0, ds->radius};
    }
    const auto& an = std::get<AnnulusShape>(r.shape);
    c = an.center;
    return {an.inner_radius, an.outer_radius};
  };
  Point ca, cb;
  const auto ra = radial_range(a, ca);
  const auto rb = radial_range(b, cb);
  const double d = distance(ca, cb);
  const double gap = std::max({0.0, ra[0] - rb[1], rb[0] - ra[1]});
  return ra[1] + rb[1] >= d && gap <= d;
}

bool region_inside_domain(const Region& r, const Domain& d) {
  if (r.dim() != d.dimension) return false;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          if (d.kind == DomainKind::Disk) {
            double far = 0.0;
            for (int a = 0; a < 2; ++a)
              far += std::max(s.lo[a] * s.lo[a], s.hi[a] * s.hi[a]);
            return std::sqrt(far) < 1.0;
          }
          return s.lo[d.dimension - 1] > 0.0;
        } else if constexpr (std::is_same_v<T, DiskShape>) {
          if (d.kind == DomainKind::Disk)
            return std::hypot(s.center[0], s.center[1]) + s.radius < 1.0;
          return s.center[1] - s.radius > 0.0;
        } else if constexpr (std::is_same_v<T, AnnulusShape>) {
          if (d.kind == DomainKind::Disk)
            return std::hypot(s.center[0], s.center[1]) + s.outer_radius < 1.0;
          return s.center[1] - s.outer_radius > 0.0;
        } else {
          for (const Region& m : s.members)
            if (!region_inside_domain(m, d)) return false;
          return true;
        }
      },
      r.shape);
}

double measure(const Region& r, const Domain& d) {
  if (!region_inside_domain(r, d))
    throw validation_error("region must lie strictly inside the open domain");
  return r.lebesgue_measure() * d.measure_normalization;
}

Point QuadratureGrid::node(std::size_t i) const {
  Point p;
  p.dim = dim;
  for (int a = 0; a < dim; ++a)
    p[a] = nodes[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)];
  return p;
}

double QuadratureGrid::weight_sum() const {
  KahanSum s;
  for (double w : weights) s.add(w);
  return s.value();
}

QuadratureGrid build_grid(const Region& r, const Domain& d, int resolution) {
  if (resolution < 2) throw validation_error("grid resolution must be >= 2");
  if (!region_inside_domain(r, d))
    throw validation_error("region must lie strictly inside the open domain");

  QuadratureGrid g;
  g.region = r;
  g.domain = d;
  g.resolution = resolution;
  g.dim = d.dimension;

  if (const auto* u = std::get_if<UnionShape>(&r.shape)) {
    for (const Region& m : u->members) {
      QuadratureGrid sub = build_grid(m, d, resolution);
      g.nodes.insert(g.nodes.end(), sub.nodes.begin(), sub.nodes.end());
      g.weights.insert(g.weights.end(), sub.weights.begin(), sub.weights.end());
    }
    if (g.weights.empty())
      throw validation_error("grid has no nodes inside the region; raise the resolution");
    return g;
  }

  Point lo, hi;
  r.bounding_box(lo, hi);
  const int dim = g.dim;
  std::vector<double> h(static_cast<std::size_t>(dim));
  double cell = 1.0;
  for (int a = 0; a < dim; ++a) {
    h[static_cast<std::size_t>(a)] = (hi[a] - lo[a]) / resolution;
    cell *= h[static_cast<std::size_t>(a)];
  }
  const double weight = cell * d.measure_normalization;
  const bool full_tensor = std::holds_alternative<BoxShape>(r.shape);

  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (;;) {
    Point p;
    p.dim = dim;
    for (int a = 0; a < dim; ++a)
      p[a] = lo[a] + (idx[static_cast<std::size_t>(a)] + 0.5) * h[static_cast<std::size_t>(a)];
    if (full_tensor || r.contains(p)) {
      for (int a = 0; a < dim; ++a) g.nodes.push_back(p[a]);
      g.weights.push_back(weight);
    }
    int a = dim - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == resolution)
      idx[static_cast<std::size_t>(a--)] = 0;
    if (a < 0) break;
  }

  if (g.weights.empty())
    throw validation_error("grid has no nodes inside the region; raise the resolution");
  if (full_tensor) {
    g.shape.assign(static_cast<std::size_t>(dim), resolution);
    g.spacing = h;
  }
  return g;
}

Region neighborhood_halfplane(const Point& tau, double gamma) {
  if (tau.dim != 2) throw validation_error("tau must be a point in the half plane");
  const double alpha = tau[0];
  const double beta = tau[1];
  if (!(beta > 0.0)) throw validation_error("tau must lie in the open upper half plane");
  if (!(gamma > 0.0) || !(gamma < beta))
    throw validation_error("gamma must satisfy 0 < gamma < beta");
  const double half_width = 0.5 * (beta - gamma);
  return region_box(point2(alpha - half_width, beta - gamma),
                    point2(alpha + half_width, beta + gamma));
}

}  // namespace varmod
