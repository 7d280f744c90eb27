#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "varmod/errors.hpp"

namespace varmod {

inline constexpr int kMaxDim = 8;

struct Point {
  std::array<double, kMaxDim> coord{};
  int dim = 2;

  double operator[](int i) const { return coord[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coord[static_cast<std::size_t>(i)]; }
};

Point point2(double x, double y);
Point point3(double x, double y, double z);
Point make_point(const std::vector<double>& coords);
Point from_complex(std::complex<double> z);
std::complex<double> to_complex(const Point& p);
double distance(const Point& a, const Point& b);

enum class DomainKind { Disk, HalfPlane2, HalfSpace };

// The carrier space X together with its measure dA: Lebesgue/pi on the unit
// disk (so the disk itself has measure 1), plain Lebesgue on the half plane
// and on the half spaces.
struct Domain {
  DomainKind kind = DomainKind::Disk;
  int dimension = 2;
  double measure_normalization = 1.0;
};

Domain disk_domain();
Domain halfplane_domain();
Domain halfspace_domain(int n);
bool same_domain(const Domain& a, const Domain& b);
bool point_in_domain(const Point& p, const Domain& d);  // open interior

struct Region;

struct BoxShape {
  Point lo, hi;
};
struct DiskShape {
  Point center;
  double radius = 0.0;
};
struct AnnulusShape {
  Point center;
  double inner_radius = 0.0, outer_radius = 0.0;
};
struct UnionShape {
  std::vector<Region> members;
};

// A measurable subset of a domain: box, disk, annulus, or a finite disjoint
// union of those. Disks and annuli are two-dimensional.
struct Region {
  std::variant<BoxShape, DiskShape, AnnulusShape, UnionShape> shape;

  int dim() const;
  bool contains(const Point& p) const;  // closed containment
  bool contains_box(const Point& lo, const Point& hi) const;
  void bounding_box(Point& lo, Point& hi) const;
  double lebesgue_measure() const;  // closed form, no normalization
  BoxShape inscribed_box() const;
};

Region region_box(const Point& lo, const Point& hi);
Region region_disk(const Point& center, double radius);
Region region_annulus(const Point& center, double inner_radius,
                      double outer_radius);
Region region_union(std::vector<Region> members);
bool regions_intersect(const Region& a, const Region& b);

// Strict interior test: the whole region must sit inside the open domain
// with positive distance to the boundary.
bool region_inside_domain(const Region& r, const Domain& d);

// Closed-form region measure under the domain normalization. Errors when the
// region is not contained in the domain.
double measure(const Region& r, const Domain& d);

// Midpoint tensor quadrature over the region's bounding box; nodes outside
// the region are discarded. `resolution` is the node count per axis. Node
// ordering is lexicographic in the multi-index (first axis slowest), and a
// union region concatenates its member grids in member order.
struct QuadratureGrid {
  Region region;
  Domain domain;
  int resolution = 0;
  int dim = 2;
  std::vector<double> nodes;    // packed coordinates, node i at [i*dim, (i+1)*dim)
  std::vector<double> weights;  // cell volume times measure normalization
  std::vector<int> shape;       // per-axis counts; only set for a single box region
  std::vector<double> spacing;  // per-axis spacing, same caveat

  std::size_t size() const { return weights.size(); }
  Point node(std::size_t i) const;
  double weight_sum() const;
};

QuadratureGrid build_grid(const Region& r, const Domain& d, int resolution);

// The explicit compact rectangle around tau = alpha + beta*i in the upper
// half plane: |x - alpha| <= (beta - gamma)/2 and beta - gamma <= y <= beta + gamma,
// for 0 < gamma < beta. Every pair z = a+bi, w = c+di drawn from it satisfies
// |a - c| <= beta - gamma and b + d >= 2(beta - gamma).
Region neighborhood_halfplane(const Point& tau, double gamma);

}  // namespace varmod
