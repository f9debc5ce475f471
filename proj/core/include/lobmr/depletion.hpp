#pragma once

#include <optional>
#include <string>

#include "lobmr/transforms.hpp"

namespace lobmr {

/// E[exp(-s sigma) | q_0 = n], mixed over v0 unless a conditioning event type
/// is given. s > 0, n >= 1. Monotone decreasing in s and n.
double sigma_laplace(const MarkovRenewalKernelSide& k, double s, int n,
                     std::optional<EventType> v0 = std::nullopt);

/// Characteristic function phi(t, n) = E[exp(i t sigma) | q_0 = n].
/// Throws std::runtime_error if no recurrence root lies in the unit disk
/// (internal-consistency failure).
cplx sigma_cf(const MarkovRenewalKernelSide& k, double t, int n,
              TransformPath path = TransformPath::Fast);

enum class TailClass {
    Balanced, ///< P(1,1) = P(-1,-1): survival ~ alpha(n)/sqrt(t), infinite mean
    Strict,   ///< P(1,1) < P(-1,-1): survival ~ beta(n)/t, mean beta(n)
};

const char* to_string(TailClass c);

/// Tail classification of one queue's depletion time with the asymptotic
/// coefficient in affine form coeff(n) = A + B n, B > 0.
struct DepletionLaw {
    TailClass tail = TailClass::Strict;
    double intercept = 0.0; // A
    double slope = 0.0;     // B

    // balanced-class intermediates
    double p_balanced = 0.0;
    // strict-class intermediates (u2 == u3 identically; kept separate for
    // transparency against the u1/u2/u3 decomposition)
    double u1 = 0.0, u2 = 0.0, u3 = 0.0;

    // Set when |P(1,1) - P(-1,-1)| is within the reporting band of the
    // classification boundary; carries the alternative class coefficients.
    bool near_boundary = false;
    double alt_intercept = 0.0;
    double alt_slope = 0.0;

    double coeff(int n) const { return intercept + slope * n; }
    /// alpha(n) or beta(n) depending on the class.
    double operator()(int n) const { return coeff(n); }
    /// Mean depletion time, finite only in the strict class (= beta(n)).
    std::optional<double> mean_sigma(int n) const;
    /// Survival asymptote coeff(n)/sqrt(t) or coeff(n)/t.
    double survival_asymptote(int n, double t) const;
};

/// Classification tolerance: balanced iff |P(1,1)-P(-1,-1)| <= 1e-9; kernels
/// within 1e-6 of the boundary get both coefficient sets (near_boundary).
DepletionLaw classify_tail(const MarkovRenewalKernelSide& k);

} // namespace lobmr
