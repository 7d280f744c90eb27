#pragma once

#include <complex>
#include <memory>
#include <variant>
#include <vector>

#include "varmod/exponents.hpp"
#include "varmod/geometry.hpp"

namespace varmod {

struct IndicatorRule {
  Region support;
};
struct ScaledIndicatorRule {
  double scale = 1.0;
  Region support;
};
// f(z) = sum_j coeffs[j] * z^j on a two-dimensional domain.
struct PolynomialZRule {
  std::vector<std::complex<double>> coeffs;
};
// Values aligned one-to-one with the nodes of a quadrature grid.
struct TableRule {
  std::shared_ptr<const QuadratureGrid> grid;
  std::vector<std::complex<double>> values;
};

struct SampledFunction {
  Domain domain;
  std::variant<IndicatorRule, ScaledIndicatorRule, PolynomialZRule, TableRule> rule;
};

SampledFunction indicator(const Domain& domain, Region support);
SampledFunction scaled_indicator(const Domain& domain, double scale, Region support);
SampledFunction polynomial(const Domain& domain,
                           std::vector<std::complex<double>> coeffs);
SampledFunction table_function(const Domain& domain,
                               std::shared_ptr<const QuadratureGrid> grid,
                               std::vector<std::complex<double>> values);

std::complex<double> eval_function(const SampledFunction& f, const Point& z);

// rho_p(f) = integral of |f(z)|^{p(z)} dA(z), by compensated fixed-order
// summation over the grid.
double modular(const SampledFunction& f, const ExponentField& p,
               const QuadratureGrid& grid);

// The Luxemburg norm inf{ lambda > 0 : rho_p(f/lambda) <= 1 }, located by
// bisection from the bracket [rho^{1/p+}, rho^{1/p-}] (sorted, with p+/p-
// taken over the support nodes). Returns 0 for the zero function. The
// bisection relative tolerance defaults to 1e-10 and iteration is capped at
// 200 before convergence_error.
double luxemburg_norm(const SampledFunction& f, const ExponentField& p,
                      const QuadratureGrid& grid, double tol = 1e-10);

}  // namespace varmod
