#include "varmod/operators.hpp"

#include <cmath>
#include <numbers>

#include "varmod/summation.hpp"

namespace varmod {

double gamma_half(int n) {
  if (n < 1) throw validation_error("gamma_half needs n >= 1");
  double g = (n % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
  for (double x = (n % 2 == 0) ? 1.0 : 0.5; x + 1.0 <= 0.5 * n; x += 1.0)
    g *= x;
  return g;
}

KernelId bergman_disk_kernel() { return {KernelId::Tag::BergmanDisk, 2, 1.0}; }

KernelId bergman_halfplane_kernel() {
  return {KernelId::Tag::BergmanHalfPlane, 2, 1.0};
}

KernelId harmonic_halfspace_kernel(int n) {
  if (n < 2 || n > kMaxDim)
    throw validation_error("harmonic kernel dimension must be in [2, 8]");
  const double c_n = 2.0 * gamma_half(n) / std::pow(std::numbers::pi, 0.5 * n);
  return {KernelId::Tag::HarmonicHalfSpace, n, c_n};
}

Domain kernel_domain(const KernelId& id) {
  switch (id.tag) {
    case KernelId::Tag::BergmanDisk: return disk_domain();
    case KernelId::Tag::BergmanHalfPlane: return halfplane_domain();
    default: return halfspace_domain(id.dimension);
  }
}

namespace {

// Unchecked kernel cores; callers guarantee interior points, where all three
// kernels are smooth (the singular sets sit on the boundary).
inline std::complex<double> bergman_disk_at(std::complex<double> z,
                                            std::complex<double> w) {
  const std::complex<double> d = 1.0 - std::conj(w) * z;
  return 1.0 / (d * d);
}

inline std::complex<double> bergman_halfplane_at(std::complex<double> z,
                                                 std::complex<double> w) {
  const std::complex<double> d = z - std::conj(w);
  return (-1.0 / std::numbers::pi) / (d * d);
}

inline double harmonic_at(const KernelId& id, const Point& x, const Point& y) {
  const int n = id.dimension;
  double d2 = 0.0;
  for (int a = 0; a < n - 1; ++a) d2 += (x[a] - y[a]) * (x[a] - y[a]);
  const double s = x[n - 1] + y[n - 1];
  d2 += s * s;
  const double numerator = n * s - d2;
  return id.constant * numerator / std::pow(d2, 0.5 * (n + 2));
}

inline std::complex<double> kernel_unchecked(const KernelId& id, const Point& z,
                                             const Point& w) {
  switch (id.tag) {
    case KernelId::Tag::BergmanDisk:
      return bergman_disk_at(to_complex(z), to_complex(w));
    case KernelId::Tag::BergmanHalfPlane:
      return bergman_halfplane_at(to_complex(z), to_complex(w));
    default:
      return harmonic_at(id, z, w);
  }
}

}  // namespace

std::complex<double> kernel(const KernelId& id, const Point& z, const Point& w) {
  const Domain d = kernel_domain(id);
  if (!point_in_domain(z, d) || !point_in_domain(w, d))
    throw validation_error("kernel arguments must lie in the open domain");
  return kernel_unchecked(id, z, w);
}

std::complex<double> project(const KernelId& id, const SampledFunction& f,
                             const Point& z, const QuadratureGrid& grid) {
  const Domain d = kernel_domain(id);
  if (!same_domain(d, grid.domain) || !same_domain(d, f.domain))
    throw validation_error("projection domain mismatch");
  if (!point_in_domain(z, d))
    throw validation_error("projection target must lie in the open domain");
  KahanComplexSum s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point w = grid.node(i);
    s.add(grid.weights[i] * kernel_unchecked(id, z, w) * eval_function(f, w));
  }
  return s.value();
}

std::vector<std::complex<double>> project_table(const KernelId& id,
                                                const SampledFunction& f,
                                                const QuadratureGrid& targets,
                                                const QuadratureGrid& source) {
  const Domain d = kernel_domain(id);
  if (!same_domain(d, targets.domain) || !same_domain(d, source.domain) ||
      !same_domain(d, f.domain))
    throw validation_error("projection domain mismatch");

  const std::size_t m = source.size();
  std::vector<std::complex<double>> fw(m);
  for (std::size_t i = 0; i < m; ++i) fw[i] = eval_function(f, source.node(i));

  std::vector<std::complex<double>> out(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const Point z = targets.node(j);
    KahanComplexSum s;
    for (std::size_t i = 0; i < m; ++i)
      s.add(source.weights[i] * kernel_unchecked(id, z, source.node(i)) * fw[i]);
    out[j] = s.value();
  }
  return out;
}

ComplexFieldTable make_field_table(const QuadratureGrid& box_grid,
                                   std::vector<std::complex<double>> values) {
  if (box_grid.shape.size() != 2)
    throw validation_error("field tables need a single-box 2d grid");
  if (std::abs(box_grid.spacing[0] - box_grid.spacing[1]) >
      1e-12 * box_grid.spacing[0])
    throw validation_error("field tables need square cells");
  if (values.size() != box_grid.size())
    throw validation_error("table values must align with the grid nodes");
  return {box_grid.shape[0], box_grid.shape[1], box_grid.spacing[0],
          std::move(values)};
}

double holomorphy_residual(const ComplexFieldTable& table) {
  if (table.nx < 3 || table.ny < 3)
    throw validation_error("holomorphy residual needs at least a 3x3 table");
  if (!(table.spacing > 0.0)) throw validation_error("spacing must be positive");
  if (table.values.size() != static_cast<std::size_t>(table.nx) * table.ny)
    throw validation_error("table values do not match its shape");

  const double inv2h = 1.0 / (2.0 * table.spacing);
  auto at = [&](int ix, int iy) {
    return table.values[static_cast<std::size_t>(ix) * table.ny + iy];
  };
  double worst = 0.0;
  for (int ix = 1; ix + 1 < table.nx; ++ix) {
    for (int iy = 1; iy + 1 < table.ny; ++iy) {
      const std::complex<double> dx = (at(ix + 1, iy) - at(ix - 1, iy)) * inv2h;
      const std::complex<double> dy = (at(ix, iy + 1) - at(ix, iy - 1)) * inv2h;
      const double r = std::abs(dx.real() - dy.imag()) +
                       std::abs(dx.imag() + dy.real());
      if (r > worst) worst = r;
    }
  }
  return worst;
}

double harmonicity_residual(const RealFieldGrid& field) {
  const int dim = static_cast<int>(field.shape.size());
  if (dim < 1) throw validation_error("harmonicity residual needs a shaped field");
  if (!(field.spacing > 0.0)) throw validation_error("spacing must be positive");
  std::size_t total = 1;
  for (int c : field.shape) {
    if (c < 3) throw validation_error("harmonicity residual needs >= 3 nodes per axis");
    total *= static_cast<std::size_t>(c);
  }
  if (field.values.size() != total)
    throw validation_error("field values do not match its shape");

  std::vector<std::size_t> stride(static_cast<std::size_t>(dim), 1);
  for (int a = dim - 2; a >= 0; --a)
    stride[static_cast<std::size_t>(a)] =
        stride[static_cast<std::size_t>(a + 1)] *
        static_cast<std::size_t>(field.shape[static_cast<std::size_t>(a + 1)]);

  const double inv_h2 = 1.0 / (field.spacing * field.spacing);
  std::vector<int> idx(static_cast<std::size_t>(dim), 1);
  double worst = 0.0;
  for (;;) {
    std::size_t flat = 0;
    for (int a = 0; a < dim; ++a)
      flat += static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]) *
              stride[static_cast<std::size_t>(a)];
    double lap = 0.0;
    const double center = field.values[flat];
    for (int a = 0; a < dim; ++a)
      lap += field.values[flat + stride[static_cast<std::size_t>(a)]] +
             field.values[flat - stride[static_cast<std::size_t>(a)]] -
             2.0 * center;
    lap *= inv_h2;
    if (std::abs(lap) > worst) worst = std::abs(lap);

    int a = dim - 1;
    while (a >= 0 &&
           ++idx[static_cast<std::size_t>(a)] == field.shape[static_cast<std::size_t>(a)] - 1)
      idx[static_cast<std::size_t>(a--)] = 1;
    if (a < 0) break;
  }
  return worst;
}

}  // namespace varmod
