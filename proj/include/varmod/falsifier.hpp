#pragma once

#include <string>
#include <vector>

#include "varmod/exponents.hpp"
#include "varmod/operators.hpp"
#include "varmod/verifier.hpp"

namespace varmod {

enum class Verdict { Violated, Bounded };

const char* verdict_name(Verdict v);

// One scaling experiment: f_k = k * chi_{K-} pushed through the projection,
// with the modular of the image measured on K+ against the modular of f_k
// itself. A positive fitted log-log slope of the ratio demonstrates that no
// constant C can satisfy the modular inequality for this exponent.
struct FalsificationReport {
  KernelId kernel_id;
  std::string exponent;  // describe_exponent of the field under test
  Region neighborhood;   // K, the compact set the experiment runs in
  Region k_minus;        // source region (chi support)
  Region k_plus;         // observation region
  double s_minus = 0.0;  // sup of p over k_minus
  double s_plus = 0.0;   // inf of p over k_plus
  double c_tau = 0.0;    // kernel infimum over K
  std::vector<double> k_schedule;
  std::vector<double> lhs;     // modular of k * P chi_{K-} restricted to K+
  std::vector<double> rhs;     // modular of k * chi_{K-}
  std::vector<double> ratios;  // lhs / rhs
  double fitted_slope = 0.0;    // least squares on the top half, log-log
  double predicted_slope = 0.0; // s_plus - s_minus
  Verdict verdict = Verdict::Bounded;
};

inline constexpr double kSlopeThreshold = 0.1;
inline constexpr double kMaxScale = 1e8;

// Geometric schedule with `count` entries from k_min to k_max.
std::vector<double> geometric_schedule(double k_min, double k_max, int count);

// Runs the experiment. The schedule must be strictly increasing and span at
// least four decades, with every entry in (0, 1e8]. When the gap search finds
// no exponent variation the verdict is Bounded with predicted slope 0 and the
// ratio is still measured on a default split of K, so constant exponents show
// their flat ratio curve. Verdict Violated requires the fitted slope to reach
// 0.1 with ratios increasing over the top half of the schedule.
FalsificationReport falsify(const KernelId& id, const ExponentField& p,
                            const Point& tau, const Region& k,
                            const std::vector<double>& k_schedule,
                            int resolution);

struct ChainWitness {
  double k_star = 0.0;     // smallest scale at which the contradiction closes
  double lhs_bound = 0.0;  // |K+| (k_star c_tau |K-|)^{s_plus}
  double rhs_bound = 0.0;  // C |K-| k_star^{s_minus}
};

// For a Violated report and a hypothetical constant C, returns the smallest
// k_star > 1 with k_star c_tau |K-| > 1 whose lower bound for the projection
// modular exceeds C times the modular of the witness, i.e. the scale at which
// the hypothetical inequality collapses. The threshold is exact (closed
// form); it lies inside the schedule range or extrapolates beyond it.
ChainWitness proof_chain_check(const KernelId& id, const ExponentField& p,
                               const FalsificationReport& report,
                               double c_hypothetical);

}  // namespace varmod
