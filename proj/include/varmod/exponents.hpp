#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "varmod/geometry.hpp"

namespace varmod {

struct ConstantRule {
  double value = 2.0;
};

// value_minus on region_minus, value_plus on region_plus, background elsewhere.
// The two regions must be disjoint subsets of the domain.
struct TwoLevelRule {
  Region region_minus;
  double value_minus = 1.5;
  Region region_plus;
  double value_plus = 2.5;
  double background = 2.0;
};

// p(z) = sum_j coeffs[j] * |z|^j.
struct RadialRule {
  std::vector<double> coeffs;
};

// Nearest-node lookup into values sampled on a quadrature grid.
struct GridRule {
  std::shared_ptr<const QuadratureGrid> grid;
  std::vector<double> values;
};

// A measurable exponent function p: X -> (1, inf). Construction checks the
// classical admissibility requirements 1 < p_minus and p_plus < inf (with
// p_minus, p_plus the essential bounds over the whole domain), so every field
// that exists is usable by the norm and projection machinery.
struct ExponentField {
  Domain domain;
  std::variant<ConstantRule, TwoLevelRule, RadialRule, GridRule> rule;
  double p_minus = 0.0;
  double p_plus = 0.0;
};

ExponentField constant_exponent(const Domain& domain, double value);
ExponentField two_level_exponent(const Domain& domain, Region region_minus,
                                 double value_minus, Region region_plus,
                                 double value_plus, double background);
ExponentField radial_exponent(const Domain& domain, std::vector<double> coeffs);
ExponentField grid_exponent(const Domain& domain,
                            std::shared_ptr<const QuadratureGrid> grid,
                            std::vector<double> values);

// One-line description used in reports ("constant(2)", "two_level(...)", ...).
std::string describe_exponent(const ExponentField& p);

double eval_exponent(const ExponentField& p, const Point& z);

// (ess inf, ess sup) of p over the region. Exact for constant and two-level
// rules (which attain finitely many values); grid-sampled min/max otherwise.
std::pair<double, double> essential_bounds(const ExponentField& p,
                                           const Region& region, int resolution);

// sup over sampled pairs of |p(z1) - p(z2)| * log(e + 1/|z1 - z2|): finite for
// log-Holder continuous exponents, divergent under refinement across a jump.
double log_holder_modulus(const ExponentField& p, const Region& region,
                          int resolution);

struct GapSets {
  Region k_minus;   // witness region where p stays low
  Region k_plus;    // witness region where p stays high
  double s_minus = 0.0;  // sup of p over k_minus
  double s_plus = 0.0;   // inf of p over k_plus
};

// Splits the sampled p-values over the neighborhood at the 10%/90% quantiles
// and shrinks boxes around witness nodes of the two extreme sets until
// sup(p on K-) < inf(p on K+). Errors with no_exponent_gap when p is constant
// on the neighborhood at this resolution.
GapSets find_gap_sets(const ExponentField& p, const Point& tau,
                      const Region& neighborhood, int resolution);

}  // namespace varmod
