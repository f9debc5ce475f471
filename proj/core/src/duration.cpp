#include "lobmr/duration.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "lobmr/quadrature.hpp"

namespace lobmr {

namespace {

constexpr double kPi = std::numbers::pi;

// Weibull CF table: values of E[exp(i t T)] on a log grid in xi = t * theta.
struct WeibullCfTable {
    double log_lo = 0.0, log_hi = 0.0, dlog = 0.0;
    double xi_lo = 0.0, xi_hi = 0.0;
    std::vector<cplx> val;
};

cplx weibull_laplace_quad(double k, double theta, cplx z);

} // namespace

struct DurationDistribution::Impl {
    DurationFamily family = DurationFamily::Exponential;
    double shape = 0.0;
    double scale = 0.0;
    std::vector<double> support;
    std::vector<double> mass;
    std::vector<double> cum_mass;

    // Lazily built Weibull CF table; guarded by once_flag, so the public
    // surface stays const and thread-safe.
    mutable std::once_flag cf_once;
    mutable WeibullCfTable cf_table;

    const WeibullCfTable& weibull_table() const;
};

namespace {

using Impl = DurationDistribution::Impl;

std::shared_ptr<const Impl> make_impl(DurationFamily f, double shape, double scale,
                                      std::vector<double> sup = {},
                                      std::vector<double> mass = {}) {
    auto impl = std::make_shared<Impl>();
    impl->family = f;
    impl->shape = shape;
    impl->scale = scale;
    impl->support = std::move(sup);
    impl->mass = std::move(mass);
    impl->cum_mass.resize(impl->mass.size());
    double c = 0.0;
    for (std::size_t i = 0; i < impl->mass.size(); ++i) {
        c += impl->mass[i];
        impl->cum_mass[i] = c;
    }
    return impl;
}

// ---- Weibull transform machinery ------------------------------------------
//
// With u = (t/theta)^k the transform is  L(z) = int_0^inf exp(-z theta u^{1/k}) e^{-u} du.
// For real z this is a plain decaying integral. For Im z != 0 the contour is
// rotated to u = v e^{i psi}, psi = min(k pi/2, pi/4) (sign matched to Im z),
// which makes both exponential factors non-increasing in modulus, so an
// adaptive panel rule converges quickly for every t.

cplx weibull_laplace_quad(double k, double theta, cplx z) {
    if (z == cplx(0.0, 0.0)) return 1.0;
    if (z.imag() > 0.0) return std::conj(weibull_laplace_quad(k, theta, std::conj(z)));

    const double t_cut = 40.0; // exp(-40) ~ 4e-18
    if (z.imag() == 0.0) {
        const double s = z.real();
        auto f = [&](double u) { return std::exp(-s * theta * std::pow(u, 1.0 / k) - u); };
        double err = 0.0;
        double v = integrate_adaptive(f, 0.0, t_cut, 1e-13, 48, &err);
        return cplx(v, 0.0);
    }

    const double psi = std::min(k * kPi / 2.0, kPi / 4.0);
    const cplx ray = std::polar(1.0, psi);
    const cplx ray_k = std::polar(1.0, psi / k);
    const double vmax = t_cut / std::cos(psi);
    auto f = [&](double v) -> cplx {
        const cplx arg = -z * theta * std::pow(v, 1.0 / k) * ray_k - v * ray;
        return std::exp(arg);
    };
    double err = 0.0;
    cplx v = integrate_adaptive(f, 0.0, vmax, 1e-13, 48, &err);
    return ray * v;
}

// Exact descending series of the Weibull CF, k <= 1 (absolutely convergent
// after contour rotation):
//   phi(xi) = (k/xi^k) sum_m (-1)^m Gamma((m+1)k) e^{i(m+1)k pi/2} / (m! xi^{mk}).
cplx weibull_cf_series(double k, double xi, bool* ok) {
    cplx sum = 0.0;
    double log_m_fact = 0.0;
    const double log_xi_k = k * std::log(xi);
    cplx prev_mag{};
    *ok = false;
    for (int m = 0; m < 120; ++m) {
        if (m > 0) log_m_fact += std::log(static_cast<double>(m));
        const double lg = std::lgamma((m + 1) * k);
        const double log_mag = lg - log_m_fact - m * log_xi_k;
        if (log_mag > 600.0) return sum; // diverging head: caller must not use
        const double mag = std::exp(log_mag);
        const double ph = (m + 1) * k * kPi / 2.0;
        cplx term = std::polar(mag, ph);
        if (m % 2 == 1) term = -term;
        sum += term;
        if (mag < 1e-16 * std::max(1e-300, std::abs(sum))) {
            *ok = true;
            break;
        }
    }
    return k * std::exp(-log_xi_k) * sum;
}

} // namespace

const WeibullCfTable& Impl::weibull_table() const {
    std::call_once(cf_once, [this]() {
        WeibullCfTable t;
        const double k = shape;
        // Below xi_lo a three-term Taylor expansion in the moments is
        // accurate to ~1e-12; above xi_hi the descending series converges
        // in a handful of terms. Moment bounds via lgamma to survive tiny k.
        const double log_mu3 = std::lgamma(1.0 + 3.0 / k); // in units of theta^3
        t.xi_lo = std::min(1e-4, 0.5 * std::exp((std::log(6e-12) - log_mu3) / 3.0));
        t.xi_lo = std::max(t.xi_lo, 1e-14);
        double hi = (k <= 1.0) ? std::pow(4.0, 1.0 / k) : 1e7;
        t.xi_hi = std::min(std::max(hi, 10.0), 1e7);
        t.log_lo = std::log(t.xi_lo);
        t.log_hi = std::log(t.xi_hi);
        const int per_decade = 96;
        const int n = std::max(16, static_cast<int>(std::ceil(
                                       (t.log_hi - t.log_lo) / std::log(10.0) * per_decade)));
        t.dlog = (t.log_hi - t.log_lo) / n;
        t.val.resize(n + 3); // one pad node on each side for cubic stencils
        for (int i = 0; i < n + 3; ++i) {
            const double xi = std::exp(t.log_lo + (i - 1) * t.dlog);
            t.val[i] = weibull_laplace_quad(k, 1.0, cplx(0.0, -xi));
        }
        cf_table = std::move(t);
    });
    return cf_table;
}

// ---- constructors -----------------------------------------------------------

DurationDistribution DurationDistribution::exponential(double scale_ms) {
    DurationDistribution d(make_impl(DurationFamily::Exponential, 0.0, scale_ms));
    d.check();
    return d;
}

DurationDistribution DurationDistribution::weibull(double shape, double scale_ms) {
    DurationDistribution d(make_impl(DurationFamily::Weibull, shape, scale_ms));
    d.check();
    return d;
}

DurationDistribution DurationDistribution::gamma(double shape, double scale_ms) {
    DurationDistribution d(make_impl(DurationFamily::Gamma, shape, scale_ms));
    d.check();
    return d;
}

DurationDistribution DurationDistribution::deterministic(double at_ms) {
    DurationDistribution d(make_impl(DurationFamily::Deterministic, 0.0, at_ms));
    d.check();
    return d;
}

DurationDistribution DurationDistribution::empirical_steps(std::vector<double> t_ms,
                                                           std::vector<double> mass) {
    DurationDistribution d(
        make_impl(DurationFamily::EmpiricalStep, 0.0, 0.0, std::move(t_ms), std::move(mass)));
    d.check();
    return d;
}

DurationFamily DurationDistribution::family() const { return impl_->family; }
double DurationDistribution::shape() const { return impl_->shape; }
double DurationDistribution::scale() const { return impl_->scale; }
const std::vector<double>& DurationDistribution::support() const { return impl_->support; }
const std::vector<double>& DurationDistribution::masses() const { return impl_->mass; }

void DurationDistribution::check() const {
    if (!impl_) throw std::invalid_argument("duration: empty");
    const Impl& im = *impl_;
    switch (im.family) {
        case DurationFamily::Exponential:
            if (!(im.scale > 0.0)) throw std::invalid_argument("duration: scale must be > 0");
            break;
        case DurationFamily::Weibull:
        case DurationFamily::Gamma:
            if (!(im.scale > 0.0)) throw std::invalid_argument("duration: scale must be > 0");
            if (!(im.shape > 0.0)) throw std::invalid_argument("duration: shape must be > 0");
            break;
        case DurationFamily::Deterministic:
            if (!(im.scale > 0.0))
                throw std::invalid_argument(
                    "duration: deterministic point mass at 0 violates cdf(0) < 1");
            break;
        case DurationFamily::EmpiricalStep: {
            if (im.support.empty() || im.support.size() != im.mass.size())
                throw std::invalid_argument("duration: empirical support/mass size mismatch");
            double total = 0.0;
            for (std::size_t i = 0; i < im.support.size(); ++i) {
                if (im.support[i] < 0.0)
                    throw std::invalid_argument("duration: empirical support must be >= 0");
                if (i > 0 && im.support[i] <= im.support[i - 1])
                    throw std::invalid_argument("duration: empirical support must be sorted");
                if (!(im.mass[i] >= 0.0))
                    throw std::invalid_argument("duration: empirical mass must be >= 0");
                total += im.mass[i];
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw std::invalid_argument("duration: empirical masses must sum to 1");
            if (cdf(0.0) >= 1.0 - 1e-15)
                throw std::invalid_argument("duration: cdf(0) < 1 required");
            break;
        }
    }
}

double DurationDistribution::cdf(double t) const {
    if (t < 0.0) return 0.0;
    const Impl& im = *impl_;
    switch (im.family) {
        case DurationFamily::Exponential:
            return -std::expm1(-t / im.scale);
        case DurationFamily::Weibull:
            return -std::expm1(-std::pow(t / im.scale, im.shape));
        case DurationFamily::Gamma:
            return boost::math::gamma_p(im.shape, t / im.scale);
        case DurationFamily::Deterministic:
            return t >= im.scale ? 1.0 : 0.0;
        case DurationFamily::EmpiricalStep: {
            auto it = std::upper_bound(im.support.begin(), im.support.end(), t);
            if (it == im.support.begin()) return 0.0;
            return im.cum_mass[static_cast<std::size_t>(it - im.support.begin()) - 1];
        }
    }
    return 0.0;
}

double DurationDistribution::mean() const {
    const Impl& im = *impl_;
    switch (im.family) {
        case DurationFamily::Exponential:
            return im.scale;
        case DurationFamily::Weibull:
            return im.scale * std::tgamma(1.0 + 1.0 / im.shape);
        case DurationFamily::Gamma:
            return im.shape * im.scale;
        case DurationFamily::Deterministic:
            return im.scale;
        case DurationFamily::EmpiricalStep: {
            double s = 0.0;
            for (std::size_t i = 0; i < im.support.size(); ++i) s += im.support[i] * im.mass[i];
            return s;
        }
    }
    return 0.0;
}

double DurationDistribution::second_moment() const {
    const Impl& im = *impl_;
    switch (im.family) {
        case DurationFamily::Exponential:
            return 2.0 * im.scale * im.scale;
        case DurationFamily::Weibull:
            return im.scale * im.scale * std::tgamma(1.0 + 2.0 / im.shape);
        case DurationFamily::Gamma:
            return im.shape * (im.shape + 1.0) * im.scale * im.scale;
        case DurationFamily::Deterministic:
            return im.scale * im.scale;
        case DurationFamily::EmpiricalStep: {
            double s = 0.0;
            for (std::size_t i = 0; i < im.support.size(); ++i)
                s += im.support[i] * im.support[i] * im.mass[i];
            return s;
        }
    }
    return 0.0;
}

cplx DurationDistribution::laplace(cplx z) const {
    const Impl& im = *impl_;
    if (z.real() < -1e-12)
        throw std::invalid_argument("duration: laplace requires Re z >= 0");
    switch (im.family) {
        case DurationFamily::Exponential:
            return 1.0 / (1.0 + im.scale * z);
        case DurationFamily::Gamma:
            // principal branch; Re(1 + theta z) >= 1 on the admissible domain
            return std::exp(-im.shape * std::log(1.0 + im.scale * z));
        case DurationFamily::Deterministic:
            return std::exp(-z * im.scale);
        case DurationFamily::EmpiricalStep: {
            cplx s = 0.0;
            for (std::size_t i = 0; i < im.support.size(); ++i)
                s += im.mass[i] * std::exp(-z * im.support[i]);
            return s;
        }
        case DurationFamily::Weibull:
            return weibull_laplace_quad(im.shape, im.scale, z);
    }
    return 0.0;
}

cplx DurationDistribution::cf(double t) const {
    const Impl& im = *impl_;
    if (t == 0.0) return 1.0;
    if (t < 0.0) return std::conj(cf(-t));
    if (im.family != DurationFamily::Weibull) return laplace(cplx(0.0, -t));

    const double k = im.shape;
    const double xi = t * im.scale;
    const WeibullCfTable& tab = im.weibull_table();
    if (xi < tab.xi_lo) {
        // 1 + i mu1 t - mu2 t^2/2 in dimensionless xi, via logs (tiny k can
        // overflow the raw moments even when the products are small).
        const double lx = std::log(xi);
        const double a1 = std::exp(std::lgamma(1.0 + 1.0 / k) + lx);
        const double a2 = std::exp(std::lgamma(1.0 + 2.0 / k) + 2.0 * lx);
        return cplx(1.0 - 0.5 * a2, a1);
    }
    if (xi >= tab.xi_hi && k <= 1.0) {
        bool ok = false;
        cplx v = weibull_cf_series(k, xi, &ok);
        if (ok) return v;
    }
    if (xi >= tab.xi_hi)
        return weibull_laplace_quad(k, im.scale, cplx(0.0, -t)); // rare slow path (k > 1)

    // Catmull-Rom cubic in log xi.
    const double u = (std::log(xi) - tab.log_lo) / tab.dlog;
    const int i = std::min(static_cast<int>(tab.val.size()) - 4,
                           std::max(0, static_cast<int>(u)));
    const double x = u - i;
    const cplx p0 = tab.val[i], p1 = tab.val[i + 1], p2 = tab.val[i + 2], p3 = tab.val[i + 3];
    const cplx a = 2.0 * p1;
    const cplx b = p2 - p0;
    const cplx c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    const cplx d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
    return 0.5 * (a + b * x + c * x * x + d * x * x * x);
}

double DurationDistribution::sample(CounterRng& rng) const {
    const Impl& im = *impl_;
    switch (im.family) {
        case DurationFamily::Exponential:
            return -im.scale * std::log(rng.uniform_pos());
        case DurationFamily::Weibull:
            return im.scale * std::pow(-std::log(rng.uniform_pos()), 1.0 / im.shape);
        case DurationFamily::Gamma: {
            std::gamma_distribution<double> g(im.shape, im.scale);
            return g(rng);
        }
        case DurationFamily::Deterministic:
            return im.scale;
        case DurationFamily::EmpiricalStep: {
            const double u = rng.uniform();
            auto it = std::upper_bound(im.cum_mass.begin(), im.cum_mass.end(), u);
            std::size_t i = std::min(static_cast<std::size_t>(it - im.cum_mass.begin()),
                                     im.support.size() - 1);
            return im.support[i];
        }
    }
    return 0.0;
}

bool DurationDistribution::operator==(const DurationDistribution& o) const {
    const Impl& a = *impl_;
    const Impl& b = *o.impl_;
    return a.family == b.family && a.shape == b.shape && a.scale == b.scale &&
           a.support == b.support && a.mass == b.mass;
}

const char* to_string(DurationFamily f) {
    switch (f) {
        case DurationFamily::Exponential: return "exponential";
        case DurationFamily::Weibull: return "weibull";
        case DurationFamily::Gamma: return "gamma";
        case DurationFamily::Deterministic: return "deterministic";
        case DurationFamily::EmpiricalStep: return "empirical";
    }
    return "?";
}

DurationFamily duration_family_from_string(const std::string& s) {
    if (s == "exponential") return DurationFamily::Exponential;
    if (s == "weibull") return DurationFamily::Weibull;
    if (s == "gamma") return DurationFamily::Gamma;
    if (s == "deterministic") return DurationFamily::Deterministic;
    if (s == "empirical") return DurationFamily::EmpiricalStep;
    throw std::invalid_argument("unknown duration family: " + s);
}

} // namespace lobmr
