#pragma once

#include <vector>

#include "lobmr/depletion.hpp"
#include "lobmr/inversion.hpp"

namespace lobmr {

/// Tabulated survival curves P[sigma > t | q0 = n] for one side, on a shared
/// geometric t grid, with the regular-variation asymptote available beyond
/// the grid (continuity-corrected at the last grid point).
struct SurvivalTable {
    std::vector<int> ns;
    std::vector<double> t;                  // ascending, geometric
    std::vector<std::vector<double>> surv;  // surv[i][j] = S(t[j] | ns[i])
    DepletionLaw law;
    bool low_confidence = false;

    double tail_exponent() const { return law.tail == TailClass::Balanced ? 0.5 : 1.0; }
    int slot(int n) const;
    /// Interpolated survival; t below the grid blends to S(0) = 1, beyond the
    /// grid uses S(t_max) (t_max/t)^e.
    double survival(int n, double at) const;
};

struct SurvivalTableOptions {
    double t_lo = 1e-3;  ///< relative to the kernel's mean event duration
    double t_hi = 1e4;   ///< absolute upper end of the grid
    int points_per_decade = 48;
    InversionOptions inversion{};
};

SurvivalTable build_survival_table(const MarkovRenewalKernelSide& k, std::vector<int> ns,
                                   const SurvivalTableOptions& opt = {});

/// Characteristic-function provider phi(x, n) for all requested n via one
/// recurrence solve per x.
CfVecFn side_cf_provider(const MarkovRenewalKernelSide& k, std::vector<int> ns,
                         TransformPath path = TransformPath::Fast);

struct TauSurvivalResult {
    double value = 0.0;
    bool low_confidence = false;
    double tail_exponent = 0.0;  ///< 1, 3/2 or 2
    double tail_coefficient = 0.0;
    double asymptote = 0.0;      ///< coefficient / t^exponent at this t
};

/// P[tau > t | q_b = n_b, q_a = n_a] as the product of the two independent
/// depletion survivals, with the asymptotic regime attached.
TauSurvivalResult tau_survival(const MarkovRenewalKernelSide& bid,
                               const MarkovRenewalKernelSide& ask, double t, int n_b, int n_a,
                               const InversionOptions& opt = {});

/// E[tau | (n_b, n_a)] = int S_b S_a dt over the tables plus the closed-form
/// regular-variation tail beyond the grid. Finite only when the combined tail
/// exponent exceeds 1 (at least one strict side).
double expected_tau(const SurvivalTable& bid_tab, const SurvivalTable& ask_tab, int n_b,
                    int n_a);

} // namespace lobmr
