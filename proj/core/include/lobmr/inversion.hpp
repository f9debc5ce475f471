#pragma once

#include <functional>
#include <vector>

#include "lobmr/types.hpp"

namespace lobmr {

struct InversionOptions {
    double abs_tol = 1e-6;         ///< target absolute error of the result
    double series_cell = 1e-6;     ///< x0: analytic cell at the 1/x singularity
    double tail_decade_tol = 1e-8; ///< stop when a whole decade contributes less
    double time_scale = 1.0;       ///< characteristic scale of the distribution
    int plain_cells = 512;         ///< cells integrated before switching to
                                   ///< averaged partial sums
    int max_euler_cells = 4096;
    int min_cells = 24;
};

struct InversionResult {
    double value = 0.0;
    double raw_value = 0.0; ///< before clamping
    double err_estimate = 0.0;
    double x_max = 0.0;
    long cells = 0;
    bool low_confidence = false;
    double clamp = 0.0; ///< |raw - clamped|
};

/// Vector characteristic function: writes n_slots values of phi(x) (e.g. one
/// per initial queue size; a shared recurrence solve serves all slots).
using CfVecFn = std::function<void(double x, cplx* out)>;
using CfFn = std::function<cplx(double x)>;

/// CDF by the Gil-Pelaez formula
///   F(t) = 1/2 - (1/pi) int_0^inf Im(e^{-itx} phi(x)) / x dx.
/// The axis is split at the half-periods of the combined oscillation and each
/// cell is integrated by a Gauss-Kronrod pair (bisected if its own estimate
/// is poor); integration stops when a full decade contributes below
/// tail_decade_tol, with averaged partial sums taking over for slowly
/// decaying phi. Values are clamped to [0,1].
std::vector<InversionResult> invert_cdf_many(const CfVecFn& f, int n_slots, double t_eval,
                                             const InversionOptions& opt = {});

/// Density by Fourier inversion, f(t) = (1/pi) int_0^inf Re(e^{-itx} phi(x)) dx,
/// clamped to >= 0.
std::vector<InversionResult> invert_pdf_many(const CfVecFn& f, int n_slots, double t_eval,
                                             const InversionOptions& opt = {});

InversionResult invert_cdf(const CfFn& f, double t_eval, const InversionOptions& opt = {});
InversionResult invert_pdf(const CfFn& f, double t_eval, const InversionOptions& opt = {});

/// P[A < B] for independent nonnegative A, B with characteristic functions
/// phi_a, phi_b: Gil-Pelaez for A - B at 0, i.e.
///   1/2 - (1/pi) int_0^inf Im(phi_a(x) conj(phi_b(x))) / x dx.
InversionResult prob_less_cf(const CfFn& phi_a, const CfFn& phi_b,
                             const InversionOptions& opt = {});

} // namespace lobmr
