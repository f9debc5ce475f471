#include "lobmr/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace lobmr {

namespace {

cplx pow_int(cplx x, int n) {
    cplx r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

} // namespace

cplx TransformSolution::value(int n, double v0_up) const {
    if (n < 1) throw std::invalid_argument("transform: queue size must be >= 1");
    if (degenerate)
        return (m1m * v0_up + lambda_tilde * (1.0 - v0_up)) * pow_int(lambda_tilde, n - 1);
    return (c * v0_up + d * (1.0 - v0_up)) * pow_int(lambda, n - 1);
}

cplx TransformSolution::value_conditional(int n, EventType v0) const {
    return value(n, v0 == EventType::Arrival ? 1.0 : 0.0);
}

double TransformSolution::residual() const {
    if (degenerate) return 0.0;
    const cplx r = m11 * lambda * lambda - (1.0 + delta) * lambda + mmm;
    return std::abs(r);
}

TransformSolution solve_transform(const MarkovRenewalKernelSide& k, cplx z,
                                  TransformPath path) {
    TransformSolution s;
    const EventType P = EventType::Arrival;
    const EventType M = EventType::Departure;
    if (path == TransformPath::Fast) {
        if (z.real() != 0.0)
            throw std::invalid_argument("transform: fast path needs purely imaginary z");
        const double t = -z.imag();
        s.m11 = k.m_cf(t, P, P);
        s.m1m = k.m_cf(t, P, M);
        s.mm1 = k.m_cf(t, M, P);
        s.mmm = k.m_cf(t, M, M);
    } else {
        s.m11 = k.m(z, P, P);
        s.m1m = k.m(z, P, M);
        s.mm1 = k.m(z, M, P);
        s.mmm = k.m(z, M, M);
    }
    s.delta = s.m11 * s.mmm - s.mm1 * s.m1m;

    if (std::abs(s.m11) < 1e-12) {
        s.degenerate = true;
        s.lambda_tilde = s.mmm / (1.0 - s.m1m * s.mm1);
        s.lambda = s.lambda_tilde;
        s.lambda_plus = 0.0;
        s.c = s.m1m;
        s.d = s.lambda_tilde;
        return s;
    }

    const cplx one_plus_delta = 1.0 + s.delta;
    const cplx disc = one_plus_delta * one_plus_delta - 4.0 * s.m11 * s.mmm;
    const cplx sq = std::sqrt(disc);
    // Stable root pair: the larger-|numerator| root directly, the other via
    // the product lambda * lambda_plus = mmm / m11.
    const cplx num_minus = one_plus_delta - sq;
    const cplx num_plus = one_plus_delta + sq;
    cplx r_big, r_small;
    if (std::abs(num_plus) >= std::abs(num_minus)) {
        r_big = num_plus / (2.0 * s.m11);
        r_small = (s.mmm / s.m11) / r_big;
    } else {
        r_big = num_minus / (2.0 * s.m11);
        r_small = (s.mmm / s.m11) / r_big;
    }
    const double a1 = std::abs(r_small);
    const double a2 = std::abs(r_big);
    // The transform root is the one in the closed unit disk; the paper
    // guarantees the other has modulus > 1 away from z = 0.
    const double tol = 1e-9;
    if (a1 <= 1.0 + tol) {
        s.lambda = r_small;
        s.lambda_plus = r_big;
    } else if (a2 <= 1.0 + tol) {
        s.lambda = r_big;
        s.lambda_plus = r_small;
    } else {
        s.valid = false;
        s.lambda = r_small;
        s.lambda_plus = r_big;
    }
    s.c = s.m1m / (1.0 - s.lambda * s.m11);
    s.d = (s.mm1 * s.c + s.delta) / s.m11;
    return s;
}

double RealTransformSolution::value(int n, double v0_up) const {
    const double head = c * v0_up + d * (1.0 - v0_up);
    return head * std::pow(lambda, n - 1);
}

RealTransformSolution solve_transform_real(const MarkovRenewalKernelSide& k, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("transform: real path needs s > 0");
    const EventType P = EventType::Arrival;
    const EventType M = EventType::Departure;
    RealTransformSolution r;
    r.m11 = k.m(s, P, P).real();
    r.m1m = k.m(s, P, M).real();
    r.mm1 = k.m(s, M, P).real();
    r.mmm = k.m(s, M, M).real();
    r.delta = r.m11 * r.mmm - r.mm1 * r.m1m;
    const double opd = 1.0 + r.delta;
    const double disc = opd * opd - 4.0 * r.m11 * r.mmm;
    // R(1) < 0 for s > 0 under A2, so the discriminant is positive and the
    // roots straddle 1.
    const double sq = std::sqrt(std::max(0.0, disc));
    r.lambda_plus = (opd + sq) / (2.0 * r.m11);
    r.lambda = (r.mmm / r.m11) / r.lambda_plus;
    r.c = r.m1m / (1.0 - r.lambda * r.m11);
    r.d = (r.mm1 * r.c + r.delta) / r.m11;
    return r;
}

} // namespace lobmr
