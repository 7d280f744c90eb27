#include "varmod/falsifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varmod/modular.hpp"
#include "varmod/summation.hpp"

namespace varmod {

const char* verdict_name(Verdict v) {
  return v == Verdict::Violated ? "Violated" : "Bounded";
}

std::vector<double> geometric_schedule(double k_min, double k_max, int count) {
  if (!(k_min > 0.0) || !(k_max > k_min))
    throw validation_error("schedule needs 0 < k_min < k_max");
  if (count < 2) throw validation_error("schedule needs at least two entries");
  std::vector<double> ks(static_cast<std::size_t>(count));
  const double step = std::log(k_max / k_min) / (count - 1);
  for (int i = 0; i < count; ++i)
    ks[static_cast<std::size_t>(i)] = k_min * std::exp(step * i);
  ks.back() = k_max;
  return ks;
}

namespace {

void check_schedule(const std::vector<double>& ks) {
  if (ks.size() < 2)
    throw validation_error("scale schedule too short: need at least two entries");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!(ks[i] > 0.0) || !(ks[i] <= kMaxScale))
      throw validation_error("scale entries must lie in (0, 1e8]");
    if (i > 0 && !(ks[i] > ks[i - 1]))
      throw validation_error("scale schedule must be strictly increasing");
  }
  if (!(ks.back() / ks.front() >= 1e4 * (1.0 - 1e-12)))
    throw validation_error(
        "scale schedule too short: it must span at least four decades");
}

// Default source/observation split when the exponent shows no gap: two
// disjoint boxes in the left and right thirds of the inscribed box of K.
std::pair<Region, Region> default_split(const Region& k) {
  const BoxShape b = k.inscribed_box();
  Point mlo = b.lo, mhi = b.hi, plo = b.lo, phi = b.hi;
  const double w = b.hi[0] - b.lo[0];
  mhi[0] = b.lo[0] + 0.30 * w;
  plo[0] = b.lo[0] + 0.70 * w;
  return {region_box(mlo, mhi), region_box(plo, phi)};
}

double fitted_loglog_slope(const std::vector<double>& ks,
                           const std::vector<double>& ratios,
                           std::size_t from) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(ks.size() - from);
  for (std::size_t i = from; i < ks.size(); ++i) {
    const double x = std::log(ks[i]);
    const double y = std::log(ratios[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

FalsificationReport falsify(const KernelId& id, const ExponentField& p,
                            const Point& tau, const Region& k,
                            const std::vector<double>& k_schedule,
                            int resolution) {
  check_schedule(k_schedule);
  const Domain dom = kernel_domain(id);
  if (!same_domain(dom, p.domain))
    throw validation_error("exponent field domain does not match the kernel");
  if (!region_inside_domain(k, dom))
    throw validation_error("K must lie strictly inside the open domain");
  if (!k.contains(tau)) throw validation_error("tau must lie in K");

  FalsificationReport report;
  report.kernel_id = id;
  report.exponent = describe_exponent(p);
  report.neighborhood = k;
  report.k_schedule = k_schedule;

  // The lower-bound lemma must apply on K before scaling means anything.
  const int inf_res =
      std::max(4, std::min(resolution, dom.dimension >= 3 ? 8 : 24));
  report.c_tau = kernel_infimum(id, k, inf_res);

  bool gap_found = true;
  try {
    const GapSets gap = find_gap_sets(p, tau, k, resolution);
    report.k_minus = gap.k_minus;
    report.k_plus = gap.k_plus;
    report.s_minus = gap.s_minus;
    report.s_plus = gap.s_plus;
  } catch (const no_exponent_gap&) {
    gap_found = false;
    auto [km, kp] = default_split(k);
    report.k_minus = km;
    report.k_plus = kp;
    const auto bm = essential_bounds(p, km, std::min(resolution, 32));
    const auto bp = essential_bounds(p, kp, std::min(resolution, 32));
    report.s_minus = bm.second;
    report.s_plus = bp.first;
  }
  report.predicted_slope = gap_found ? report.s_plus - report.s_minus : 0.0;

  const QuadratureGrid gm = build_grid(report.k_minus, dom, resolution);
  const QuadratureGrid gp = build_grid(report.k_plus, dom, resolution);
  const SampledFunction chi = indicator(dom, report.k_minus);
  const std::vector<std::complex<double>> image = project_table(id, chi, gp, gm);

  std::vector<double> mag(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) mag[i] = std::abs(image[i]);
  std::vector<double> p_plus_vals(gp.size()), p_minus_vals(gm.size());
  for (std::size_t i = 0; i < gp.size(); ++i)
    p_plus_vals[i] = eval_exponent(p, gp.node(i));
  for (std::size_t i = 0; i < gm.size(); ++i)
    p_minus_vals[i] = eval_exponent(p, gm.node(i));

  for (double kval : k_schedule) {
    KahanSum lhs, rhs;
    for (std::size_t i = 0; i < gp.size(); ++i)
      lhs.add(gp.weights[i] * std::pow(kval * mag[i], p_plus_vals[i]));
    for (std::size_t i = 0; i < gm.size(); ++i)
      rhs.add(gm.weights[i] * std::pow(kval, p_minus_vals[i]));
    report.lhs.push_back(lhs.value());
    report.rhs.push_back(rhs.value());
    report.ratios.push_back(lhs.value() / rhs.value());
  }

  const std::size_t m = k_schedule.size();
  const std::size_t top = std::min(m - 2, m - (m + 1) / 2);  // top half start
  report.fitted_slope = fitted_loglog_slope(k_schedule, report.ratios, top);

  bool increasing = true;
  for (std::size_t i = top + 1; i < m; ++i)
    if (!(report.ratios[i] > report.ratios[i - 1])) increasing = false;
  report.verdict = (report.fitted_slope >= kSlopeThreshold && increasing)
                       ? Verdict::Violated
                       : Verdict::Bounded;
  return report;
}

ChainWitness proof_chain_check(const KernelId& id, const ExponentField& p,
                               const FalsificationReport& report,
                               double c_hypothetical) {
  if (!(c_hypothetical > 0.0))
    throw validation_error("hypothetical constant must be positive");
  if (report.verdict != Verdict::Violated)
    throw validation_error("proof chain check needs a Violated report");
  const Domain dom = kernel_domain(id);
  if (!same_domain(dom, p.domain))
    throw validation_error("exponent field domain does not match the kernel");

  // Recompute the essential bounds the chain actually uses; exact for the
  // piecewise-constant rules.
  const double s_minus = essential_bounds(p, report.k_minus, 32).second;
  const double s_plus = essential_bounds(p, report.k_plus, 32).first;
  if (!(s_plus > s_minus))
    throw validation_error("proof chain needs s_plus > s_minus on the gap sets");

  const double c_tau = report.c_tau;
  if (!(c_tau > 0.0)) throw validation_error("report carries no positive c_tau");
  const double m_minus = measure(report.k_minus, dom);
  const double m_plus = measure(report.k_plus, dom);

  // |K+| (k c m)^{s+} > C m k^{s-}  <=>  k^{s+ - s-} > C m / (|K+| (c m)^{s+}).
  const double k_contradiction =
      std::pow(c_hypothetical * m_minus /
                   (m_plus * std::pow(c_tau * m_minus, s_plus)),
               1.0 / (s_plus - s_minus));
  ChainWitness w;
  w.k_star = std::max({k_contradiction, 1.0 / (c_tau * m_minus), 1.0});
  w.lhs_bound = m_plus * std::pow(w.k_star * c_tau * m_minus, s_plus);
  w.rhs_bound = c_hypothetical * m_minus * std::pow(w.k_star, s_minus);
  return w;
}

}  // namespace varmod
