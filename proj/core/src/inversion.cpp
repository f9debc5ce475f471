#include "lobmr/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lobmr/quadrature.hpp"

namespace lobmr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSlots = 64;

// Per-slot real integrand values at one x.
struct Integrand {
    const CfVecFn* cf;
    int n_slots;
    double t_eval;
    bool cdf_mode; // Im(.)/x for the CDF, Re(.) for the density

    void operator()(double x, double* out) const {
        cplx phi[kMaxSlots];
        (*cf)(x, phi);
        const cplx rot = std::polar(1.0, -t_eval * x);
        if (cdf_mode) {
            const double inv_x = 1.0 / x;
            for (int i = 0; i < n_slots; ++i) out[i] = std::imag(rot * phi[i]) * inv_x;
        } else {
            for (int i = 0; i < n_slots; ++i) out[i] = std::real(rot * phi[i]);
        }
    }
};

struct CellSums {
    double val[kMaxSlots];
    double err; // max over slots
};

// G7K15 panel evaluating all slots at once.
CellSums gk15_multi(const Integrand& g, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k[kMaxSlots] = {};
    double g7[kMaxSlots] = {};
    double fv[kMaxSlots];
    double fv2[kMaxSlots];
    for (int j = 0; j < 8; ++j) {
        const double x = detail::gk_nodes[j] * h;
        if (j == 7) {
            g(c, fv);
        } else {
            g(c - x, fv);
            g(c + x, fv2);
            for (int i = 0; i < g.n_slots; ++i) fv[i] += fv2[i];
        }
        for (int i = 0; i < g.n_slots; ++i) {
            k[i] += detail::gk_wk[j] * fv[i];
            if (j % 2 == 1) g7[i] += detail::gk_wg[j / 2] * fv[i];
        }
    }
    CellSums s{};
    s.err = 0.0;
    for (int i = 0; i < g.n_slots; ++i) {
        s.val[i] = k[i] * h;
        s.err = std::max(s.err, std::abs((k[i] - g7[i]) * h));
    }
    return s;
}

// One oscillation cell with up to `depth` bisections.
CellSums cell_integral(const Integrand& g, double a, double b, double tol, int depth,
                       long* cells) {
    ++*cells;
    CellSums s = gk15_multi(g, a, b);
    if (s.err <= tol || depth <= 0) return s;
    const double m = 0.5 * (a + b);
    CellSums l = cell_integral(g, a, m, 0.5 * tol, depth - 1, cells);
    CellSums r = cell_integral(g, m, b, 0.5 * tol, depth - 1, cells);
    for (int i = 0; i < g.n_slots; ++i) l.val[i] += r.val[i];
    l.err += r.err;
    return l;
}

// Averaged partial sums (Euler-style table) for the alternating cell series.
struct EulerTable {
    std::vector<std::array<double, kMaxSlots>> row;
    int n_slots;
    int depth_cap;
    std::array<double, kMaxSlots> partial{};
    std::array<double, kMaxSlots> estimate{};
    std::array<double, kMaxSlots> prev_estimate{};
    int count = 0;

    EulerTable(int slots, int cap) : n_slots(slots), depth_cap(cap) {}

    void push(const double* cell_val) {
        for (int i = 0; i < n_slots; ++i) partial[i] += cell_val[i];
        std::array<double, kMaxSlots> cur = partial;
        const int d = std::min<int>(static_cast<int>(row.size()), depth_cap);
        for (int j = 0; j < d; ++j) {
            std::array<double, kMaxSlots> next;
            for (int i = 0; i < n_slots; ++i) next[i] = 0.5 * (cur[i] + row[j][i]);
            row[j] = cur;
            cur = next;
        }
        if (static_cast<int>(row.size()) < depth_cap) row.push_back(cur);
        prev_estimate = estimate;
        estimate = cur;
        ++count;
    }

    double delta() const {
        double d = 0.0;
        for (int i = 0; i < n_slots; ++i)
            d = std::max(d, std::abs(estimate[i] - prev_estimate[i]));
        return d;
    }
};

std::vector<InversionResult> run_inversion(const CfVecFn& f, int n_slots, double t_eval,
                                           bool cdf_mode, const InversionOptions& opt) {
    Integrand g{&f, n_slots, t_eval, cdf_mode};

    double acc[kMaxSlots] = {};
    double comp[kMaxSlots] = {}; // Kahan carries
    auto add = [&](const double* v) {
        for (int i = 0; i < n_slots; ++i) {
            const double y = v[i] - comp[i];
            const double t = acc[i] + y;
            comp[i] = (t - acc[i]) - y;
            acc[i] = t;
        }
    };

    long cells = 0;
    double err_sum = 0.0;
    bool low_conf = false;

    const double omega = std::abs(t_eval) + 1.0 / std::max(opt.time_scale, 1e-300);
    const double w = kPi / omega;
    const double cell_tol = opt.abs_tol * 1e-2;

    // Keep the phase across the origin cell negligible.
    const double x0 = std::min(opt.series_cell, 0.01 / omega);
    double x = cdf_mode ? x0 : 0.0;
    if (cdf_mode) {
        // Analytic cell at the origin: midpoint value times width. The
        // integrand has a finite or integrable-sqrt limit there.
        double v[kMaxSlots];
        g(0.5 * x0, v);
        for (int i = 0; i < n_slots; ++i) v[i] *= x0;
        add(v);
        // Geometric ramp up to the first oscillation cell; resolves the
        // 1/sqrt(x) region of heavy-tailed transforms on a log scale.
        while (x * 10.0 < w) {
            CellSums s = cell_integral(g, x, 10.0 * x, cell_tol, 24, &cells);
            add(s.val);
            err_sum += s.err;
            x *= 10.0;
        }
    }
    double decade_edge = 10.0 * w;
    double decade_acc = 0.0;
    bool done = false;

    // Plain phase: cell-by-cell with the decade stopping rule.
    int plain = 0;
    for (; plain < opt.plain_cells && !done; ++plain) {
        CellSums s = cell_integral(g, x, x + w, cell_tol, 18, &cells);
        add(s.val);
        err_sum += s.err;
        double mag = 0.0;
        for (int i = 0; i < n_slots; ++i) mag = std::max(mag, std::abs(s.val[i]));
        decade_acc += mag;
        x += w;
        if (x >= decade_edge) {
            if (decade_acc < opt.tail_decade_tol && plain >= opt.min_cells) done = true;
            decade_acc = 0.0;
            decade_edge *= 10.0;
        }
    }

    if (!done) {
        // Averaged partial sums of the remaining alternating cell series.
        EulerTable table(n_slots, 24);
        int stable = 0;
        int k = 0;
        for (; k < opt.max_euler_cells; ++k) {
            CellSums s = cell_integral(g, x, x + w, cell_tol, 12, &cells);
            x += w;
            table.push(s.val);
            if (k > 8) {
                if (table.delta() < 0.5 * opt.abs_tol) {
                    if (++stable >= 3) break;
                } else {
                    stable = 0;
                }
            }
        }
        add(table.estimate.data());
        err_sum += table.delta() * 3.0;
        if (k >= opt.max_euler_cells) low_conf = true;
    }

    std::vector<InversionResult> out(n_slots);
    for (int i = 0; i < n_slots; ++i) {
        InversionResult& r = out[i];
        r.raw_value = cdf_mode ? 0.5 - acc[i] / kPi : acc[i] / kPi;
        r.value = cdf_mode ? std::clamp(r.raw_value, 0.0, 1.0) : std::max(r.raw_value, 0.0);
        r.clamp = std::abs(r.value - r.raw_value);
        r.err_estimate = err_sum / kPi;
        r.x_max = x;
        r.cells = cells;
        r.low_confidence = low_conf || r.err_estimate > 10.0 * opt.abs_tol;
    }
    return out;
}

} // namespace

std::vector<InversionResult> invert_cdf_many(const CfVecFn& f, int n_slots, double t_eval,
                                             const InversionOptions& opt) {
    return run_inversion(f, n_slots, t_eval, true, opt);
}

std::vector<InversionResult> invert_pdf_many(const CfVecFn& f, int n_slots, double t_eval,
                                             const InversionOptions& opt) {
    return run_inversion(f, n_slots, t_eval, false, opt);
}

InversionResult invert_cdf(const CfFn& f, double t_eval, const InversionOptions& opt) {
    CfVecFn vec = [&f](double x, cplx* out) { out[0] = f(x); };
    return run_inversion(vec, 1, t_eval, true, opt)[0];
}

InversionResult invert_pdf(const CfFn& f, double t_eval, const InversionOptions& opt) {
    CfVecFn vec = [&f](double x, cplx* out) { out[0] = f(x); };
    return run_inversion(vec, 1, t_eval, false, opt)[0];
}

InversionResult prob_less_cf(const CfFn& phi_a, const CfFn& phi_b,
                             const InversionOptions& opt) {
    CfVecFn vec = [&](double x, cplx* out) { out[0] = phi_a(x) * std::conj(phi_b(x)); };
    return run_inversion(vec, 1, 0.0, true, opt)[0];
}

} // namespace lobmr
