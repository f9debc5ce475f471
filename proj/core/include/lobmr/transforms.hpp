#pragma once

#include <optional>

#include "lobmr/kernel.hpp"
#include "lobmr/types.hpp"

namespace lobmr {

/// Solution of the coupled depletion-time recurrences at one transform
/// argument z. The depletion transform conditional on q_0 = n is
///   a_n = c * lambda^{n-1} (first event type +1),
///   b_n = d * lambda^{n-1} (first event type -1),
/// where lambda is the root of m11 X^2 - (1+Delta) X + mmm inside the unit
/// disk and Delta = m11*mmm - mm1*m1m is the coupling coefficient (zero when
/// the kernel rows are identical). When m11 vanishes (possible for lattice
/// durations at special frequencies) the recursion degenerates and
///   b_n = lambda_tilde^n, a_{n+1} = m1m * lambda_tilde^n,
/// with lambda_tilde = mmm / (1 - m1m*mm1).
struct TransformSolution {
    cplx m11, m1m, mm1, mmm;
    cplx delta;
    cplx lambda;
    cplx lambda_plus;
    cplx c, d;
    bool degenerate = false;
    cplx lambda_tilde;
    bool valid = true; // false: no root inside the closed unit disk

    /// phi-style mixture over v0: (c v0(1) + d v0(-1)) lambda^{n-1}.
    cplx value(int n, double v0_up) const;
    /// Conditional on the initial event type.
    cplx value_conditional(int n, EventType v0) const;

    /// |R(lambda)| with R(X) = m11 X^2 - (1+Delta) X + mmm (0 for the
    /// non-degenerate branch up to roundoff).
    double residual() const;
};

/// How the four m(z,i,j) entries are evaluated.
enum class TransformPath {
    Exact, ///< DurationDistribution::laplace (quadrature for Weibull)
    Fast,  ///< DurationDistribution::cf table path; only for Re z == 0
};

/// Solves the recurrence at complex z (Re z >= 0). For real z > 0 this is
/// the Laplace transform; for z = -i t the characteristic function.
TransformSolution solve_transform(const MarkovRenewalKernelSide& k, cplx z,
                                  TransformPath path = TransformPath::Exact);

/// Real-arithmetic Laplace path, s > 0; independent of the complex code.
struct RealTransformSolution {
    double m11, m1m, mm1, mmm;
    double delta;
    double lambda, lambda_plus;
    double c, d;
    double value(int n, double v0_up) const;
};
RealTransformSolution solve_transform_real(const MarkovRenewalKernelSide& k, double s);

} // namespace lobmr
