#include "varmod/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace varmod {

namespace {

void check_admissible(double p_minus, double p_plus) {
  if (!(p_minus > 1.0))
    throw validation_error("exponent field must stay strictly above 1");
  if (!std::isfinite(p_plus))
    throw validation_error("exponent field must be essentially bounded");
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ExponentField constant_exponent(const Domain& domain, double value) {
  check_admissible(value, value);
  return {domain, ConstantRule{value}, value, value};
}

ExponentField two_level_exponent(const Domain& domain, Region region_minus,
                                 double value_minus, Region region_plus,
                                 double value_plus, double background) {
  if (!region_inside_domain(region_minus, domain) ||
      !region_inside_domain(region_plus, domain))
    throw validation_error("two-level regions must lie strictly inside the domain");
  if (regions_intersect(region_minus, region_plus))
    throw validation_error("two-level regions must be disjoint");
  const double lo = std::min({value_minus, value_plus, background});
  const double hi = std::max({value_minus, value_plus, background});
  check_admissible(lo, hi);
  return {domain,
          TwoLevelRule{std::move(region_minus), value_minus,
                       std::move(region_plus), value_plus, background},
          lo, hi};
}

ExponentField radial_exponent(const Domain& domain, std::vector<double> coeffs) {
  if (coeffs.empty()) throw validation_error("radial exponent needs coefficients");
  if (domain.kind != DomainKind::Disk) {
    for (std::size_t j = 1; j < coeffs.size(); ++j)
      if (coeffs[j] != 0.0)
        throw validation_error(
            "radial exponent is unbounded on an unbounded domain");
    const double c0 = coeffs[0];
    check_admissible(c0, c0);
    return {domain, RadialRule{std::move(coeffs)}, c0, c0};
  }
  // |z| ranges over [0, 1); bound the polynomial densely on the closure.
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  const int samples = 4096;
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    double v = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) v = v * t + coeffs[j];
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  check_admissible(mn, mx);
  return {domain, RadialRule{std::move(coeffs)}, mn, mx};
}

ExponentField grid_exponent(const Domain& domain,
                            std::shared_ptr<const QuadratureGrid> grid,
                            std::vector<double> values) {
  if (!grid) throw validation_error("grid exponent needs a grid");
  if (!same_domain(grid->domain, domain))
    throw validation_error("grid exponent domain mismatch");
  if (values.size() != grid->size())
    throw validation_error("grid exponent values must align with the grid nodes");
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  for (double v : values) {
    if (!std::isfinite(v)) throw validation_error("grid exponent values must be finite");
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  check_admissible(mn, mx);
  return {domain, GridRule{std::move(grid), std::move(values)}, mn, mx};
}

std::string describe_exponent(const ExponentField& p) {
  return std::visit(
      [&](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRule>) {
          return "constant(" + fmt(r.value) + ")";
        } else if constexpr (std::is_same_v<T, TwoLevelRule>) {
          return "two_level(minus=" + fmt(r.value_minus) +
                 ",plus=" + fmt(r.value_plus) +
                 ",background=" + fmt(r.background) + ")";
        } else if constexpr (std::is_same_v<T, RadialRule>) {
          std::string s = "radial(";
          for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
            if (j) s += ",";
            s += fmt(r.coeffs[j]);
          }
          return s + ")";
        } else {
          return "grid_sampled(" + std::to_string(r.values.size()) + " nodes)";
        }
      },
      p.rule);
}

double eval_exponent(const ExponentField& p, const Point& z) {
  if (!point_in_domain(z, p.domain))
    throw validation_error("evaluation point lies outside the open domain");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantRule>) {
          return r.value;
        } else if constexpr (std::is_same_v<T, TwoLevelRule>) {
          if (r.region_minus.contains(z)) return r.value_minus;
          if (r.region_plus.contains(z)) return r.value_plus;
          return r.background;
        } else if constexpr (std::is_same_v<T, RadialRule>) {
          double t = 0.0;
          for (int a = 0; a < z.dim; ++a) t += z[a] * z[a];
          t = std::sqrt(t);
          double v = 0.0;
          for (std::size_t j = r.coeffs.size(); j-- > 0;) v = v * t + r.coeffs[j];
          return v;
        } else {
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
      p.rule);
}

std::pair<double, double> essential_bounds(const ExponentField& p,
                                           const Region& region, int resolution) {
  if (!region_inside_domain(region, p.domain))
    throw validation_error("region must lie strictly inside the open domain");
  if (const auto* c = std::get_if<ConstantRule>(&p.rule))
    return {c->value, c->value};

  if (const auto* t = std::get_if<TwoLevelRule>(&p.rule)) {
    // Exact: the rule attains finitely many values; see which ones the
    // region meets. Background attainment is decided from sample nodes.
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    auto admit = [&](double v) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    };
    if (regions_intersect(region, t->region_minus)) admit(t->value_minus);
    if (regions_intersect(region, t->region_plus)) admit(t->value_plus);
    const QuadratureGrid g = build_grid(region, p.domain, resolution);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point z = g.node(i);
      if (!t->region_minus.contains(z) && !t->region_plus.contains(z)) {
        admit(t->background);
        break;
      }
    }
    return {mn, mx};
  }

  const QuadratureGrid g = build_grid(region, p.domain, resolution);
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = eval_exponent(p, g.node(i));
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {mn, mx};
}

double log_holder_modulus(const ExponentField& p, const Region& region,
                          int resolution) {
  const QuadratureGrid g = build_grid(region, p.domain, resolution);
  const std::size_t n = g.size();
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = eval_exponent(p, g.node(i));

  const int dim = g.dim;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* zi = g.nodes.data() + i * static_cast<std::size_t>(dim);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dv = std::abs(vals[i] - vals[j]);
      if (dv == 0.0) continue;
      const double* zj = g.nodes.data() + j * static_cast<std::size_t>(dim);
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) d2 += (zi[a] - zj[a]) * (zi[a] - zj[a]);
      const double m =
          dv * std::log(std::numbers::e + 1.0 / std::sqrt(d2));
      if (m > best) best = m;
    }
  }
  return best;
}

namespace {

// Witness node for one extreme band: the node closest to the band's centroid,
// which keeps the witness in the interior of its level set instead of on the
// set's edge. Ties break on node order.
std::size_t band_witness(const QuadratureGrid& g, const std::vector<double>& vals,
                         double band_lo, double band_hi) {
  Point centroid;
  centroid.dim = g.dim;
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (vals[i] < band_lo || vals[i] > band_hi) continue;
    const Point z = g.node(i);
    for (int a = 0; a < g.dim; ++a) centroid[a] += z[a];
    ++count;
  }
  for (int a = 0; a < g.dim; ++a) centroid[a] /= static_cast<double>(count);
  std::size_t best = g.size();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (vals[i] < band_lo || vals[i] > band_hi) continue;
    const double d = distance(g.node(i), centroid);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Region witness_box(const Point& center, double halfwidth) {
  Point lo = center, hi = center;
  for (int a = 0; a < center.dim; ++a) {
    lo[a] -= halfwidth;
    hi[a] += halfwidth;
  }
  return region_box(lo, hi);
}

bool boxes_disjoint(const Region& a, const Region& b) {
  return !regions_intersect(a, b);
}

}  // namespace

GapSets find_gap_sets(const ExponentField& p, const Point& tau,
                      const Region& neighborhood, int resolution) {
  if (resolution < 4) throw validation_error("gap search needs resolution >= 4");
  if (!region_inside_domain(neighborhood, p.domain))
    throw validation_error("neighborhood must lie strictly inside the open domain");
  if (!neighborhood.contains(tau))
    throw validation_error("tau must lie in the neighborhood");

  const QuadratureGrid g = build_grid(neighborhood, p.domain, resolution);
  const std::size_t n = g.size();
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = eval_exponent(p, g.node(i));

  std::vector<double> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  const double vmin = sorted.front();
  const double vmax = sorted.back();
  const double span = vmax - vmin;
  if (span <= 1e-12 * std::max(1.0, std::abs(vmax)))
    throw no_exponent_gap("exponent is constant on the neighborhood at this resolution");

  // Quantile split; when more than 80% of samples share one value the two
  // quantiles coincide and the split falls back to quartiles of the range.
  double t_lo = sorted[static_cast<std::size_t>(0.10 * (n - 1))];
  double t_hi = sorted[static_cast<std::size_t>(std::ceil(0.90 * (n - 1)))];
  if (!(t_lo < t_hi)) {
    t_lo = vmin + 0.25 * span;
    t_hi = vmax - 0.25 * span;
  }

  const double band = 1e-9 * span;
  const std::size_t wit_minus = band_witness(g, vals, vmin, std::min(vmin + band, t_lo));
  const std::size_t wit_plus = band_witness(g, vals, std::max(vmax - band, t_hi), vmax);
  const Point zm = g.node(wit_minus);
  const Point zp = g.node(wit_plus);

  // Distance from each witness to the nearest sample with a different value
  // bounds how far its level set extends; start the boxes inside that radius.
  auto change_distance = [&](std::size_t w) {
    double d = std::numeric_limits<double>::infinity();
    const Point zw = g.node(w);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(vals[i] - vals[w]) <= band) continue;
      d = std::min(d, distance(g.node(i), zw));
    }
    return d;
  };

  Point blo, bhi;
  neighborhood.bounding_box(blo, bhi);
  double max_cell = 0.0;
  for (int a = 0; a < g.dim; ++a)
    max_cell = std::max(max_cell, (bhi[a] - blo[a]) / resolution);

  double w = std::min({2.0 * max_cell, 0.5 * change_distance(wit_minus),
                       0.5 * change_distance(wit_plus)});
  if (!std::isfinite(w) || w <= 0.0) w = 2.0 * max_cell;
  const double w_floor = max_cell * std::pow(0.5, 12);

  while (w >= w_floor) {
    const Region km = witness_box(zm, w);
    const Region kp = witness_box(zp, w);
    if (neighborhood.contains_box(std::get<BoxShape>(km.shape).lo,
                                  std::get<BoxShape>(km.shape).hi) &&
        neighborhood.contains_box(std::get<BoxShape>(kp.shape).lo,
                                  std::get<BoxShape>(kp.shape).hi) &&
        boxes_disjoint(km, kp)) {
      const QuadratureGrid gm = build_grid(km, p.domain, resolution);
      const QuadratureGrid gp = build_grid(kp, p.domain, resolution);
      double s_minus = -std::numeric_limits<double>::infinity();
      double s_plus = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < gm.size(); ++i)
        s_minus = std::max(s_minus, eval_exponent(p, gm.node(i)));
      for (std::size_t i = 0; i < gp.size(); ++i)
        s_plus = std::min(s_plus, eval_exponent(p, gp.node(i)));
      if (s_minus < s_plus) return {km, kp, s_minus, s_plus};
    }
    w *= 0.5;
  }
  throw no_exponent_gap("no exponent gap found at this resolution");
}

}  // namespace varmod
