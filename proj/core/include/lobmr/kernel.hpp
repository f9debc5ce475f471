#pragma once

#include <string>
#include <vector>

#include "lobmr/duration.hpp"
#include "lobmr/types.hpp"

namespace lobmr {

struct ValidationIssue {
    std::string code;
    std::string message;
    bool hard = false; // hard errors make downstream analytics meaningless
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    bool has_hard_error() const;
    std::string to_string() const;
};

/// One side (bid or ask) of the book model: the transition matrix P(i,j) of
/// the +1/-1 event chain, the conditional inter-arrival laws H(i,j,.) and the
/// initial event-type law v0. Immutable in practice; treat as value.
struct MarkovRenewalKernelSide {
    EventMatrix<double> P{};              // row-stochastic, rows/cols: [+1, -1]
    EventMatrix<DurationDistribution> H{};
    double v0_up = 0.5;                   // v0(+1); v0(-1) = 1 - v0_up

    double p(EventType i, EventType j) const { return P[idx(i)][idx(j)]; }
    const DurationDistribution& h_dist(EventType i, EventType j) const {
        return H[idx(i)][idx(j)];
    }
    double v0(EventType i) const { return i == EventType::Arrival ? v0_up : 1.0 - v0_up; }

    /// m(z,i,j) = P(i,j) * int exp(-z t) H(i,j,dt).
    cplx m(cplx z, EventType i, EventType j) const {
        return p(i, j) * h_dist(i, j).laplace(z);
    }
    /// Same via the fast CF path, z = -i t.
    cplx m_cf(double t, EventType i, EventType j) const {
        return p(i, j) * h_dist(i, j).cf(t);
    }
    /// M(z,i) = m(z,i,-1) + m(z,i,+1).
    cplx M(cplx z, EventType i) const {
        return m(z, i, EventType::Arrival) + m(z, i, EventType::Departure);
    }

    /// Conditional duration means h(i,j) and the sums h1 = h(1,1)+h(-1,-1),
    /// h2 = h(-1,1)+h(1,-1).
    double h_mean(EventType i, EventType j) const { return h_dist(i, j).mean(); }
    double h1() const;
    double h2() const;

    /// Mean time scale of one event, max over entries (frequency hint for
    /// the transform inversion).
    double max_mean_duration() const;
};

/// Checks A1 (0 < P < 1), row stochasticity, the depletion condition
/// P(1,1) <= P(-1,-1) (violation is a hard error: P[sigma < inf] < 1),
/// v0 in [0,1] and A2/A3 on every duration entry.
ValidationReport validate_side(const MarkovRenewalKernelSide& k);

/// duration mean and second moment as a pair (spec op duration_moments).
std::pair<double, double> duration_moments(const DurationDistribution& d);

} // namespace lobmr
