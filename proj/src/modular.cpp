#include "varmod/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varmod/summation.hpp"

namespace varmod {

SampledFunction indicator(const Domain& domain, Region support) {
  if (!region_inside_domain(support, domain))
    throw validation_error("indicator support must lie strictly inside the domain");
  return {domain, IndicatorRule{std::move(support)}};
}

SampledFunction scaled_indicator(const Domain& domain, double scale, Region support) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw validation_error("indicator scale must be positive and finite");
  if (!region_inside_domain(support, domain))
    throw validation_error("indicator support must lie strictly inside the domain");
  return {domain, ScaledIndicatorRule{scale, std::move(support)}};
}

SampledFunction polynomial(const Domain& domain,
                           std::vector<std::complex<double>> coeffs) {
  if (domain.dimension != 2)
    throw validation_error("polynomial functions need a two-dimensional domain");
  if (coeffs.empty()) throw validation_error("polynomial needs coefficients");
  return {domain, PolynomialZRule{std::move(coeffs)}};
}

SampledFunction table_function(const Domain& domain,
                               std::shared_ptr<const QuadratureGrid> grid,
                               std::vector<std::complex<double>> values) {
  if (!grid) throw validation_error("table function needs a grid");
  if (!same_domain(grid->domain, domain))
    throw validation_error("table function domain mismatch");
  if (values.size() != grid->size())
    throw validation_error("table values must align with the grid nodes");
  return {domain, TableRule{std::move(grid), std::move(values)}};
}

std::complex<double> eval_function(const SampledFunction& f, const Point& z) {
  return std::visit(
      [&](const auto& r) -> std::complex<double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IndicatorRule>) {
          return r.support.contains(z) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, ScaledIndicatorRule>) {
          return r.support.contains(z) ? r.scale : 0.0;
        } else if constexpr (std::is_same_v<T, PolynomialZRule>) {
          const std::complex<double> zc = to_complex(z);
          std::complex<double> v = 0.0;
          for (std::size_t j = r.coeffs.size(); j-- > 0;) v = v * zc + r.coeffs[j];
          return v;
        } else {
          // Table values are tied to their own grid's nodes.
          std::size_t best = 0;
          double best_d = std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < r.grid->size(); ++i) {
            const double d = distance(z, r.grid->node(i));
            if (d < best_d) {
              best_d = d;
              best = i;
            }
          }
          return r.values[best];
        }
      },
      f.rule);
}

namespace {

void check_compatible(const SampledFunction& f, const ExponentField& p,
                      const QuadratureGrid& grid) {
  if (!same_domain(f.domain, grid.domain) || !same_domain(p.domain, grid.domain))
    throw validation_error("function, exponent and grid must share one domain");
  if (const auto* t = std::get_if<TableRule>(&f.rule)) {
    const QuadratureGrid& own = *t->grid;
    if (own.size() != grid.size() ||
        (own.size() > 0 && (distance(own.node(0), grid.node(0)) != 0.0 ||
                            distance(own.node(own.size() - 1),
                                     grid.node(grid.size() - 1)) != 0.0)))
      throw validation_error("table functions integrate over their own grid");
  }
}

// |f| and p evaluated once per node; every modular query is then a single
// compensated pass, which keeps the bisection loop cheap and bit-stable.
struct NodeData {
  std::vector<double> magnitude;
  std::vector<double> exponent;
  std::vector<double> weight;
};

NodeData collect(const SampledFunction& f, const ExponentField& p,
                 const QuadratureGrid& grid) {
  NodeData d;
  const std::size_t n = grid.size();
  d.magnitude.resize(n);
  d.exponent.resize(n);
  d.weight = grid.weights;
  if (const auto* t = std::get_if<TableRule>(&f.rule)) {
    for (std::size_t i = 0; i < n; ++i) d.magnitude[i] = std::abs(t->values[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      d.magnitude[i] = std::abs(eval_function(f, grid.node(i)));
  }
  for (std::size_t i = 0; i < n; ++i)
    d.exponent[i] = eval_exponent(p, grid.node(i));
  return d;
}

double modular_of(const NodeData& d, double inv_lambda) {
  KahanSum s;
  for (std::size_t i = 0; i < d.magnitude.size(); ++i) {
    const double m = d.magnitude[i];
    if (m == 0.0) continue;
    s.add(d.weight[i] * std::pow(m * inv_lambda, d.exponent[i]));
  }
  return s.value();
}

}  // namespace

double modular(const SampledFunction& f, const ExponentField& p,
               const QuadratureGrid& grid) {
  check_compatible(f, p, grid);
  return modular_of(collect(f, p, grid), 1.0);
}

double luxemburg_norm(const SampledFunction& f, const ExponentField& p,
                      const QuadratureGrid& grid, double tol) {
  check_compatible(f, p, grid);
  if (!(tol > 0.0) || tol >= 1.0)
    throw validation_error("norm tolerance must lie in (0, 1)");

  const NodeData d = collect(f, p, grid);
  const double rho = modular_of(d, 1.0);
  if (rho == 0.0) return 0.0;

  double p_lo = std::numeric_limits<double>::infinity();
  double p_hi = -p_lo;
  for (std::size_t i = 0; i < d.magnitude.size(); ++i) {
    if (d.magnitude[i] == 0.0) continue;
    p_lo = std::min(p_lo, d.exponent[i]);
    p_hi = std::max(p_hi, d.exponent[i]);
  }

  // rho(f/lambda) is strictly decreasing in lambda and the power bounds give
  // rho^{1/p} brackets on either side of 1.
  double lo = std::min(std::pow(rho, 1.0 / p_lo), std::pow(rho, 1.0 / p_hi));
  double hi = std::max(std::pow(rho, 1.0 / p_lo), std::pow(rho, 1.0 / p_hi));
  int expand = 0;
  while (modular_of(d, 1.0 / hi) > 1.0 && expand++ < 64) hi *= 2.0;
  while (modular_of(d, 1.0 / lo) < 1.0 && expand++ < 64) lo *= 0.5;
  if (expand >= 64)
    throw convergence_error("luxemburg bracket expansion failed");

  int iterations = 0;
  while (hi - lo > tol * lo) {
    if (++iterations > 200)
      throw convergence_error("luxemburg bisection exceeded 200 iterations");
    const double mid = 0.5 * (lo + hi);
    if (modular_of(d, 1.0 / mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace varmod
