#include "lobmr/survival.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lobmr {

CfVecFn side_cf_provider(const MarkovRenewalKernelSide& k, std::vector<int> ns,
                         TransformPath path) {
    const MarkovRenewalKernelSide* kp = &k;
    return [kp, ns = std::move(ns), path](double x, cplx* out) {
        TransformSolution s = solve_transform(*kp, cplx(0.0, -x), path);
        for (std::size_t i = 0; i < ns.size(); ++i)
            out[i] = s.valid ? s.value(ns[i], kp->v0_up) : cplx(0.0, 0.0);
    };
}

int SurvivalTable::slot(int n) const {
    for (std::size_t i = 0; i < ns.size(); ++i)
        if (ns[i] == n) return static_cast<int>(i);
    throw std::out_of_range("survival table: queue size not tabulated (extend n_max)");
}

double SurvivalTable::survival(int n, double at) const {
    const int i = slot(n);
    const auto& s = surv[i];
    if (at <= 0.0) return 1.0;
    if (at <= t.front()) {
        const double f = at / t.front();
        return 1.0 + f * (s.front() - 1.0);
    }
    if (at >= t.back()) {
        const double e = tail_exponent();
        return s.back() * std::pow(t.back() / at, e);
    }
    auto it = std::upper_bound(t.begin(), t.end(), at);
    const std::size_t j = static_cast<std::size_t>(it - t.begin());
    const double lt = std::log(at / t[j - 1]) / std::log(t[j] / t[j - 1]);
    return s[j - 1] + lt * (s[j] - s[j - 1]);
}

SurvivalTable build_survival_table(const MarkovRenewalKernelSide& k, std::vector<int> ns,
                                   const SurvivalTableOptions& opt) {
    if (ns.empty()) throw std::invalid_argument("survival table: no queue sizes");
    if (ns.size() > 64) throw std::invalid_argument("survival table: too many slots");
    SurvivalTable tab;
    tab.ns = ns;
    tab.law = classify_tail(k);

    const double scale = std::max(k.max_mean_duration(), 1e-12);
    const double lo = opt.t_lo * scale;
    const double hi = std::max(opt.t_hi, 100.0 * lo);
    const int decades = static_cast<int>(std::ceil(std::log10(hi / lo)));
    const int npts = std::max(2, decades * opt.points_per_decade);
    tab.t.resize(npts);
    const double step = std::log(hi / lo) / (npts - 1);
    for (int j = 0; j < npts; ++j) tab.t[j] = lo * std::exp(step * j);

    const int n_slots = static_cast<int>(ns.size());
    int max_n = 1;
    for (int n : ns) max_n = std::max(max_n, n);
    CfVecFn provider = side_cf_provider(k, ns);

    tab.surv.assign(ns.size(), std::vector<double>(npts, 0.0));
    InversionOptions inv = opt.inversion;
    inv.time_scale = scale * (max_n + 2.0);
    for (int j = 0; j < npts; ++j) {
        auto res = invert_cdf_many(provider, n_slots, tab.t[j], inv);
        for (int i = 0; i < n_slots; ++i) {
            tab.surv[i][j] = 1.0 - res[i].value;
            tab.low_confidence = tab.low_confidence || res[i].low_confidence;
        }
    }
    // Survival curves are nonincreasing; trim the inversion noise so the
    // Stieltjes consumers see monotone data.
    for (auto& s : tab.surv)
        for (int j = 1; j < npts; ++j) s[j] = std::min(s[j], s[j - 1]);
    return tab;
}

TauSurvivalResult tau_survival(const MarkovRenewalKernelSide& bid,
                               const MarkovRenewalKernelSide& ask, double t, int n_b, int n_a,
                               const InversionOptions& opt) {
    if (!(t > 0.0)) throw std::invalid_argument("tau_survival: t > 0 required");
    if (n_b < 1 || n_a < 1) throw std::invalid_argument("tau_survival: queue sizes >= 1");
    const DepletionLaw lb = classify_tail(bid);
    const DepletionLaw la = classify_tail(ask);

    InversionOptions ob = opt;
    ob.time_scale = bid.max_mean_duration() * (n_b + 2.0);
    InversionOptions oa = opt;
    oa.time_scale = ask.max_mean_duration() * (n_a + 2.0);
    CfVecFn pb = side_cf_provider(bid, {n_b});
    CfVecFn pa = side_cf_provider(ask, {n_a});
    auto rb = invert_cdf_many(pb, 1, t, ob)[0];
    auto ra = invert_cdf_many(pa, 1, t, oa)[0];

    TauSurvivalResult r;
    r.value = (1.0 - rb.value) * (1.0 - ra.value);
    r.low_confidence = rb.low_confidence || ra.low_confidence;
    const double eb = lb.tail == TailClass::Balanced ? 0.5 : 1.0;
    const double ea = la.tail == TailClass::Balanced ? 0.5 : 1.0;
    r.tail_exponent = eb + ea;
    r.tail_coefficient = lb.coeff(n_b) * la.coeff(n_a);
    r.asymptote = r.tail_coefficient / std::pow(t, r.tail_exponent);
    return r;
}

double expected_tau(const SurvivalTable& bid_tab, const SurvivalTable& ask_tab, int n_b,
                    int n_a) {
    if (bid_tab.t != ask_tab.t)
        throw std::invalid_argument("expected_tau: tables must share the t grid");
    const double e = bid_tab.tail_exponent() + ask_tab.tail_exponent();
    if (e <= 1.0 + 1e-12)
        throw std::domain_error("expected_tau: infinite mean (balanced/balanced regime)");
    const auto& sb = bid_tab.surv[bid_tab.slot(n_b)];
    const auto& sa = ask_tab.surv[ask_tab.slot(n_a)];
    const auto& t = bid_tab.t;
    // Head: product ~ 1 on [0, t0].
    double acc = t.front() * 0.5 * (1.0 + sb.front() * sa.front());
    for (std::size_t j = 1; j < t.size(); ++j) {
        const double f0 = sb[j - 1] * sa[j - 1];
        const double f1 = sb[j] * sa[j];
        acc += 0.5 * (f0 + f1) * (t[j] - t[j - 1]);
    }
    // Tail: S_b S_a ~ S_b(T)S_a(T) (T/t)^e beyond the grid.
    acc += sb.back() * sa.back() * t.back() / (e - 1.0);
    return acc;
}

} // namespace lobmr
