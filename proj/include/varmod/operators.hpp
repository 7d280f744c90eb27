#pragma once

#include <complex>
#include <vector>

#include "varmod/geometry.hpp"
#include "varmod/modular.hpp"

namespace varmod {

// The three reproducing kernels, each paired with its natural domain:
//   BergmanDisk       K(z, w) = 1 / (1 - conj(w) z)^2          on the unit disk
//   BergmanHalfPlane  K(z, w) = (-1/pi) / (z - conj(w))^2      on the half plane
//   HarmonicHalfSpace R(x, y) = c_n (n(x_n + y_n) - |x - yb|^2) / |x - yb|^{n+2}
// with yb = (y', -y_n) the reflection and c_n = 2 Gamma(n/2) / pi^{n/2}.
struct KernelId {
  enum class Tag { BergmanDisk, BergmanHalfPlane, HarmonicHalfSpace };
  Tag tag = Tag::BergmanDisk;
  int dimension = 2;
  double constant = 1.0;  // c_n for the harmonic kernel, 1 otherwise
};

KernelId bergman_disk_kernel();
KernelId bergman_halfplane_kernel();
KernelId harmonic_halfspace_kernel(int n);
Domain kernel_domain(const KernelId& id);

// Gamma(n/2) for integer n >= 1 by the recursion from Gamma(1) = 1 and
// Gamma(1/2) = sqrt(pi).
double gamma_half(int n);

// Kernel value; the harmonic kernel is real and returned with zero imaginary
// part. Both points must lie in the open domain.
std::complex<double> kernel(const KernelId& id, const Point& z, const Point& w);

// (P f)(z) = sum_i weight_i K(z, node_i) f(node_i), compensated, in node order.
std::complex<double> project(const KernelId& id, const SampledFunction& f,
                             const Point& z, const QuadratureGrid& grid);

// project() for every node of `targets`, with f evaluated on `source` once.
std::vector<std::complex<double>> project_table(const KernelId& id,
                                                const SampledFunction& f,
                                                const QuadratureGrid& targets,
                                                const QuadratureGrid& source);

// Complex samples on a uniform square grid, lexicographic node order
// (x slowest), value index ix*ny + iy.
struct ComplexFieldTable {
  int nx = 0, ny = 0;
  double spacing = 0.0;
  std::vector<std::complex<double>> values;
};

ComplexFieldTable make_field_table(const QuadratureGrid& box_grid,
                                   std::vector<std::complex<double>> values);

// Max over interior nodes of |du/dx - dv/dy| + |du/dy + dv/dx| by central
// differences; ~0 for holomorphic samples, O(1) across a conjugation.
double holomorphy_residual(const ComplexFieldTable& table);

// Real samples on a uniform cubic grid in any dimension.
struct RealFieldGrid {
  std::vector<int> shape;
  double spacing = 0.0;
  std::vector<double> values;
};

// Max over interior nodes of the discrete Laplacian.
double harmonicity_residual(const RealFieldGrid& field);

}  // namespace varmod
