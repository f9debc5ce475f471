#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "lobmr/rng.hpp"
#include "lobmr/types.hpp"

namespace lobmr {

enum class DurationFamily {
    Exponential,
    Weibull,
    Gamma,
    Deterministic,
    EmpiricalStep,
};

const char* to_string(DurationFamily f);
DurationFamily duration_family_from_string(const std::string& s);

/// Inter-arrival time distribution on [0, inf), scale in milliseconds.
/// Immutable value type; all operations are const and thread-safe.
///
/// Parametrization follows the usual shape/scale densities
///   gamma:   x^{k-1} e^{-x/theta} / (Gamma(k) theta^k)
///   weibull: (k/theta) (x/theta)^{k-1} e^{-(x/theta)^k}
/// so theta always multiplies (never a rate).
class DurationDistribution {
public:
    DurationDistribution() = default;

    static DurationDistribution exponential(double scale_ms);
    static DurationDistribution weibull(double shape, double scale_ms);
    static DurationDistribution gamma(double shape, double scale_ms);
    static DurationDistribution deterministic(double at_ms);
    /// Discrete distribution: P[T = t_i] = mass_i, t_i sorted ascending.
    static DurationDistribution empirical_steps(std::vector<double> t_ms,
                                                std::vector<double> mass);

    DurationFamily family() const;
    double shape() const;  // k (Weibull/Gamma); 0 otherwise
    double scale() const;  // theta in ms; Deterministic: the atom location
    const std::vector<double>& support() const;  // empirical only
    const std::vector<double>& masses() const;   // empirical only

    /// Throws std::invalid_argument on parameter violations, including the
    /// "positive probability to be nonzero" requirement cdf(0) < 1.
    void check() const;

    double cdf(double t) const;
    double mean() const;
    double second_moment() const;

    /// E[exp(-z T)] for Re z >= 0. Closed form for exponential, gamma,
    /// deterministic and empirical; rotated-contour quadrature for Weibull.
    cplx laplace(cplx z) const;

    /// E[exp(i t T)] = laplace(-i t). Weibull uses a cached table plus a
    /// convergent descending series, accurate to ~1e-9 relative; other
    /// families are closed-form exact.
    cplx cf(double t) const;

    double sample(CounterRng& rng) const;

    bool operator==(const DurationDistribution& o) const;

private:
    struct Impl;
    explicit DurationDistribution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

} // namespace lobmr
