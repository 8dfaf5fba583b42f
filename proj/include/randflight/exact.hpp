#pragma once

#include <functional>
#include <span>
#include <vector>

#include "randflight/errors.hpp"

namespace randflight::exact {

/// Li2(x) for x <= 1, to absolute accuracy 1e-13.
double dilog(double x);

/// Real part of the analytic continuation of Li2; agrees with dilog on x <= 1.
double re_dilog(double x);

/// (rect(w1) (*) rect(w2))(x), the trapezoid; requires 0 < w1 <= w2.
double conv2rect(double w1, double w2, double x);

/** Convolution of three rectangles of widths a = 2vt-b-c, b, c with
    0 < a < b < c < 2vt (the Appendix-B f1/f2 case split on c vs vt). */
double conv3rect(double vt, double c_len, double b_len, double x);

/// Projection of the one-collision density onto a diameter.
double rho_proj1(double x, double t, double v);

/** rho_{I,1}(r,t) = 1/(4 pi (vt)^2 r) ln((vt+r)/(vt-r)). Logarithmically
    divergent at r = vt, signalled as +infinity; analytic limit at r = 0. */
double rho1_I(double r, double t, double v);

/// Projection of the two-collision density: the twelve closed-form pieces.
double rho_proj2(double x, double t, double v);

/// rho_{I,2} by the generalized inverse Abel transform of rho_proj2.
double rho2_I(double r, double t, double v);

/** Generalized inverse Abel transform -(1/2 pi r) d(projected)/dx at x = r,
    by Richardson-extrapolated central differences (base step 1e-4 * scale)
    that never straddle a listed breakpoint. Throws BreakpointStraddleError
    when r coincides with one. */
double inverse_abel(const std::function<double(double)>& projected, double r,
                    std::span<const double> breakpoints = {}, double scale = 1.0);

/// Continuity diagnostics of a piecewise function at its breakpoints.
struct PiecewiseReport {
    std::vector<double> breakpoints;  // sorted strictly increasing
    std::vector<double> values_left;
    std::vector<double> values_right;
    double max_jump = 0.0;
};

PiecewiseReport piecewise_report(const std::function<double(double)>& f,
                                 std::span<const double> breakpoints, double delta = 1e-12);

/// Breakpoints of rho_proj2 within [-vt, vt].
std::vector<double> rho_proj2_breakpoints(double vt);

}  // namespace randflight::exact
