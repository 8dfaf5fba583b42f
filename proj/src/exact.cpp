#include "randflight/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace randflight::exact {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2_6 = kPi * kPi / 6.0;

double dilog_series(double x) {
    // |x| <= 1/2: plain power series, ~45 terms at worst
    double term = x, sum = x;
    for (int k = 2; k < 80; ++k) {
        term *= x;
        const double add = term / (k * double(k));
        sum += add;
        if (std::abs(add) < 1e-18) break;
    }
    return sum;
}

}  // namespace

double dilog(double x) {
    if (x > 1.0) throw std::domain_error("dilog: x > 1 (use re_dilog)");
    if (x == 1.0) return kPi2_6;
    if (x == 0.0) return 0.0;
    if (x >= 0.5) {
        // reflection: Li2(x) + Li2(1-x) = pi^2/6 - ln x ln(1-x)
        return kPi2_6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
    }
    if (x >= -0.5) return dilog_series(x);
    if (x >= -1.0) {
        // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, argument in (1/3, 1/2]
        const double l = std::log1p(-x);
        return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
    }
    // inversion: Li2(x) = -pi^2/6 - ln^2(-x)/2 - Li2(1/x), 1/x in (-1, 0)
    const double l = std::log(-x);
    return -kPi2_6 - 0.5 * l * l - dilog(1.0 / x);
}

double re_dilog(double x) {
    if (x <= 1.0) return dilog(x);
    // Re Li2(x) = pi^2/3 - ln^2(x)/2 - Li2(1/x) for x > 1
    const double l = std::log(x);
    return 2.0 * kPi2_6 - 0.5 * l * l - dilog(1.0 / x);
}

double conv2rect(double w1, double w2, double x) {
    if (!(w1 > 0.0)) throw std::invalid_argument("conv2rect: widths must be positive");
    if (w1 > w2) throw WidthOrderError("conv2rect: requires w1 <= w2");
    const double half_sum = 0.5 * (w1 + w2);
    if (x < -half_sum || x > half_sum) return 0.0;
    if (x <= 0.5 * (w1 - w2)) return 0.5 * (1.0 / w1 + 1.0 / w2) + x / (w1 * w2);
    if (x < 0.5 * (w2 - w1)) return 1.0 / w2;
    return 0.5 * (1.0 / w1 + 1.0 / w2) - x / (w1 * w2);
}

double conv3rect(double vt, double c_len, double b_len, double x) {
    const double a_len = 2.0 * vt - b_len - c_len;
    if (!(a_len > 0.0 && a_len < b_len && b_len < c_len && c_len < 2.0 * vt))
        throw OrderingViolationError("conv3rect: requires 0 < a < b < c < 2vt");
    const double b = b_len, c = c_len;
    if (x < -vt || x > vt) return 0.0;
    double r;
    if (c_len <= vt) {
        if (x <= -b - c + vt)      r = (vt + x) * (vt + x) / (2.0 * b * c);
        else if (x <= b - vt)      r = (b + c + 2.0 * x) * a_len / (2.0 * b * c);
        else if (x <= c - vt)      r = -(2.0 * b * b + 2.0 * b * (c - 2.0 * vt) +
                                         (c - vt + x) * (c - vt + x)) / (2.0 * b * c);
        else if (x <= -c + vt)     r = -(b * b + b * (c - 2.0 * vt) + (c - vt) * (c - vt) +
                                         x * x) / (b * c);
        else if (x <= -b + vt)     r = -(2.0 * b * b + 2.0 * b * (c - 2.0 * vt) +
                                         (c - vt - x) * (c - vt - x)) / (2.0 * b * c);
        else if (x <= b + c - vt)  r = (b + c - 2.0 * x) * a_len / (2.0 * b * c);
        else                       r = (vt - x) * (vt - x) / (2.0 * b * c);
    } else {
        if (x <= -b - c + vt)      r = (vt + x) * (vt + x) / (2.0 * b * c);
        else if (x <= b - vt)      r = (b + c + 2.0 * x) * a_len / (2.0 * b * c);
        else if (x <= -c + vt)     r = -(2.0 * b * b + 2.0 * b * (c - 2.0 * vt) +
                                         (c - vt + x) * (c - vt + x)) / (2.0 * b * c);
        else if (x <= c - vt)      r = a_len / c;
        else if (x <= -b + vt)     r = -(2.0 * b * b + 2.0 * b * (c - 2.0 * vt) +
                                         (c - vt - x) * (c - vt - x)) / (2.0 * b * c);
        else if (x <= b + c - vt)  r = (b + c - 2.0 * x) * a_len / (2.0 * b * c);
        else                       r = (vt - x) * (vt - x) / (2.0 * b * c);
    }
    return r / a_len;
}

double rho_proj1(double x, double t, double v) {
    const double vt = v * t;
    if (!(vt > 0.0)) throw std::invalid_argument("rho_proj1: vt must be > 0");
    const double ax = std::abs(x);
    if (ax > vt) throw OutOfSupportError("rho_proj1: |x| > vt");
    if (ax == vt) return 0.0;  // one-sided limits vanish at both endpoints
    return ((vt + x) / (2.0 * vt) * std::log((vt - x) / (vt + x)) +
            std::log(2.0 * vt / (vt - x))) / vt;
}

double rho1_I(double r, double t, double v) {
    const double vt = v * t;
    if (!(vt > 0.0)) throw std::invalid_argument("rho1_I: vt must be > 0");
    if (r < 0.0) throw std::invalid_argument("rho1_I: r must be >= 0");
    if (r > vt) throw OutOfSupportError("rho1_I: r > vt");
    if (r == vt) return std::numeric_limits<double>::infinity();  // log divergence
    if (r == 0.0) return 1.0 / (2.0 * kPi * vt * vt * vt);
    return std::log1p(2.0 * r / (vt - r)) / (4.0 * kPi * vt * vt * r);
}

namespace {

// ---- the twelve Appendix-B pieces, evaluated at vt = 1, x in (-1, 0) ----
// Each region's four integrals; argtanh written as (1/2) ln((1+u)/(1-u)).

double q1_big_bracket(double x, double vt) {
    // shared first piece of the regions |x| in [1/3, 1]; the constant block
    // carries ln(243/64) = 5 ln 3 - 6 ln 2
    const double L2 = std::log(2.0), L3 = std::log(3.0);
    const double athA = 0.5 * std::log((3.0 * vt + x) / (vt + x));   // argtanh(vt/(2vt+x))
    const double athB = 0.5 * std::log((vt + x) / (vt - x));         // argtanh(x/vt)
    return kPi * kPi - 3.0 * L2 * L2 - L3 * (5.0 * L3 - 6.0 * L2) + std::log(vt) * std::log(vt)
        - dilog(1.0 / 9.0) - 6.0 * dilog(2.0 / 3.0)
        + std::log(vt - x) * std::log(vt - x)
        + 2.0 * ((athA - athB) * std::log(4.0)
                 + std::log((vt + x) / (vt - x)) * std::log(3.0 * vt + x)
                 - std::log(vt + x) * std::log(vt)
                 - dilog((vt - x) / (4.0 * vt))
                 + dilog((vt - x) / (2.0 * vt))
                 + dilog(-(vt + x) / (2.0 * vt))
                 + dilog((vt + x) / (vt - x))
                 - re_dilog(0.5 + vt / (vt + x)));
}

double piece_quadratic_tail(double x, double vt) {
    // shared third piece of the regions |x| in [1/3, 1]
    return (vt * (vt + x) - kPi * kPi / 48.0 * (vt + x) * (vt + x)
            + vt * x * std::log((vt - x) / (-2.0 * x))
            - 0.25 * (vt - x) * (vt - x) * dilog((vt + x) / (vt - x))) / vt;
}

double piece_longest_rect(double x, double vt) {
    // shared fourth piece: the 1/c integrand over the longest-rectangle corner
    return -(vt + x) / 2.0 + vt * std::log(2.0 * vt / (vt - x));
}

double region_far(double x, double vt) {
    // x in [-vt, -vt/2]
    const double L = std::log(vt), Lm = std::log(vt - x), Lp = std::log(vt + x);
    const double L2 = std::log(2.0), L4 = std::log(4.0);
    const double i1 = (vt + x) * (vt + x) / (8.0 * vt) * q1_big_bracket(x, vt);
    const double i2 = 0.5 * (-vt - x - x * L2 * L2 - x * L - x * L4 * L - x * L * L
        + vt * Lm - x * Lm + x * L4 * Lm + x * Lm * Lm
        + x * std::log(-(vt / x)) + x * std::log(-8.0 * x) + x * std::log(-2.0 * x)
        + x * L4 * std::log(-2.0 * x) + 2.0 * x * L * std::log(-2.0 * x)
        - 2.0 * x * Lm * std::log(-2.0 * x) + x * std::log(-x)
        - vt * Lp - x * std::log(4.0 * (vt + x))
        + 2.0 * x * std::log(-2.0 * x) * std::log((vt + x) / (2.0 * vt))
        - 2.0 * x * Lm * std::log((vt + x) / vt)
        - 2.0 * x * dilog((vt - x) / (2.0 * vt))
        + 2.0 * x * dilog(-2.0 * x / (vt - x)));
    return i1 + i2 + piece_quadratic_tail(x, vt) + piece_longest_rect(x, vt);
}

double region_mid(double x, double vt) {
    // x in [-vt/2, -vt/3]
    const double L = std::log(vt), Lm = std::log(vt - x), Lp = std::log(vt + x);
    const double L2 = std::log(2.0);
    const double i1 = (vt + x) * (vt + x) / (8.0 * vt) * q1_big_bracket(x, vt);
    const double i2 = 0.5 * (-vt - x - x * L2 * L2 + (vt - x) * std::log(vt * vt - x * x)
                             + x * Lm * Lm - x * L * L)
        + x * std::log(-2.0 * x) * (1.0 + std::log((vt + x) / (vt - x)))
        - x * L2 * L - vt * Lp
        - x * Lm * std::log((vt + x) / (2.0 * vt))
        + x * dilog(-2.0 * x / (vt - x)) - x * dilog((vt - x) / (2.0 * vt));
    return i1 + i2 + piece_quadratic_tail(x, vt) + piece_longest_rect(x, vt);
}

double region_near(double x, double vt) {
    // x in [-vt/3, 0)
    const double L = std::log(vt), Lm = std::log(vt - x), Lp = std::log(vt + x);
    const double L2 = std::log(2.0), L3 = std::log(3.0);
    const double Lnx = std::log(-2.0 * x);
    const double k1 = -x * L * L
        + 0.5 * x * std::log(vt / (vt + x)) * (-1.0 + std::log(vt / (vt + x)))
        + (x / 2.0 + x * std::log((vt * vt - x * x) / 2.0)) * L
        + (1.0 / 12.0) * ((12.0 + kPi * kPi - 6.0 * L2 * L2) * x - 6.0 * vt * Lp
                          + 6.0 * (vt + (-1.0 + std::log(4.0)) * x - 2.0 * x * Lp) * Lm)
        - x * dilog((vt - x) / (2.0 * vt));
    const double k2 = (1.0 / (12.0 * vt)) * (
        -2.0 * vt * (kPi * kPi * vt + 12.0 * x)
        + 3.0 * ((5.0 * vt * vt + 2.0 * vt * x + x * x) * Lm * Lm
                 - 8.0 * vt * x * Lp
                 + (vt - x) * (vt - x) * Lp * Lp
                 - 2.0 * Lm * (-2.0 * vt * x + (3.0 * vt * vt + x * x) * Lp)
                 + 4.0 * vt * Lnx * (x + (vt + x) * std::log((vt + x) / (vt - x))))
        + 12.0 * vt * (vt + x) * dilog(-2.0 * x / (vt - x))
        + 3.0 * (5.0 * vt * vt + 2.0 * vt * x + x * x) * dilog((vt + x) / (vt - x))
        - 3.0 * (vt + x) * (vt + x) * re_dilog(-1.0 + 2.0 * vt / (vt + x)));
    const double k3 = -(1.0 / (12.0 * vt)) * (
        -6.0 * vt * vt + (vt * vt + x * x) * (kPi * kPi - 3.0 * L3 * L3) - 18.0 * vt * x
        + 6.0 * (vt * vt + x * x) * std::log(4.0 / 3.0) * L3
        - 6.0 * (vt * vt + x * x) * L2 * std::log(2.0 * vt)
        + 3.0 * (vt * vt + x * x) * std::log(2.0 * vt) * std::log(2.0 * vt)
        + 6.0 * Lnx * (2.0 * vt * x + (vt * vt + x * x) * std::log((vt - x) / (vt * (vt + x))))
        + 3.0 * ((vt * vt + x * x) * Lp * Lp
                 + 2.0 * Lp * (-2.0 * vt * x + (vt * vt + x * x) * std::log(-2.0 * x / (vt - x)))
                 - 2.0 * (vt * vt + x * x) * (dilog(-1.0 / 3.0) + 2.0 * dilog(2.0 / 3.0)))
        + 6.0 * (vt * vt + x * x) * (dilog(x / vt) - dilog((vt + x) / (2.0 * vt))
                                     + dilog((vt + x) / vt)));
    const double k4 = -(vt + x) / 2.0 - vt * std::log((vt - x) / (2.0 * vt));
    return k1 + k2 + k3 + k4;
}

/** rho_proj2 at vt = 1 as a function of u = |x|/vt in [0, 1], including the
    3/(v t)^2 prefactor (validated by the unit-normalization criterion). */
double proj2_unit(double u) {
    if (u >= 1.0) return 0.0;
    double x = -u;
    if (x > -1e-13) x = -1e-13;  // the ln(-2x) groups vanish in the x -> 0 limit
    if (x < -1.0 + 1e-14) return 0.0;
    double raw;
    if (x <= -0.5) raw = region_far(x, 1.0);
    else if (x <= -1.0 / 3.0) raw = region_mid(x, 1.0);
    else raw = region_near(x, 1.0);
    return 3.0 * raw;
}

// ---- numerical differentiation that honors breakpoints ----

double central_richardson(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
    const double d1 = d(h), d2 = d(0.5 * h), d3 = d(0.25 * h);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d3 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

/** One-sided derivative at x into direction s, robust to an endpoint expansion
    f(x+u) - f(x) = p u + q u^2 + r u^2 ln|u| (the Appendix-B pieces behave so
    at the support edge). Solves for p from samples at u = s h, 2 s h, 4 s h. */
double one_sided_log_aware(const std::function<double(double)>& f, double x, double s,
                           double h) {
    const double f0 = f(x);
    std::array<double, 3> u{s * h, 2.0 * s * h, 4.0 * s * h};
    std::array<std::array<double, 4>, 3> m{};
    for (int i = 0; i < 3; ++i) {
        m[i][0] = u[i];
        m[i][1] = u[i] * u[i];
        m[i][2] = u[i] * u[i] * std::log(std::abs(u[i]));
        m[i][3] = f(x + u[i]) - f0;
    }
    for (int col = 0; col < 3; ++col) {  // Gaussian elimination, partial pivot
        int piv = col;
        for (int rr = col + 1; rr < 3; ++rr)
            if (std::abs(m[rr][col]) > std::abs(m[piv][col])) piv = rr;
        std::swap(m[col], m[piv]);
        for (int rr = col + 1; rr < 3; ++rr) {
            const double fct = m[rr][col] / m[col][col];
            for (int cc = col; cc < 4; ++cc) m[rr][cc] -= fct * m[col][cc];
        }
    }
    const double r = m[2][3] / m[2][2];
    const double q = (m[1][3] - m[1][2] * r) / m[1][1];
    return (m[0][3] - m[0][2] * r - m[0][1] * q) / m[0][0];
}

double derivative_with_breakpoints(const std::function<double(double)>& f, double x,
                                   std::span<const double> breakpoints, double h0,
                                   bool smooth_at_breakpoints) {
    double dist = std::numeric_limits<double>::infinity();
    for (double b : breakpoints) dist = std::min(dist, std::abs(x - b));
    const double at_tol = 1e-9 * std::max(1.0, std::abs(x));
    if (dist <= at_tol) {
        if (!smooth_at_breakpoints)
            throw BreakpointStraddleError("derivative: stencil cannot avoid a breakpoint");
        // C1 across the breakpoint: average the one-sided limits
        double room_l = std::numeric_limits<double>::infinity();
        double room_r = std::numeric_limits<double>::infinity();
        for (double b : breakpoints) {
            if (b < x - at_tol) room_l = std::min(room_l, x - b);
            if (b > x + at_tol) room_r = std::min(room_r, b - x);
        }
        const double hl = std::min(h0, 0.2 * room_l);
        const double hr = std::min(h0, 0.2 * room_r);
        if (!(hl > 0.0) && !(hr > 0.0))
            throw BreakpointStraddleError("derivative: no room on either side of breakpoint");
        if (!(hr > 0.0)) return one_sided_log_aware(f, x, -1.0, hl);
        if (!(hl > 0.0)) return one_sided_log_aware(f, x, +1.0, hr);
        return 0.5 * (one_sided_log_aware(f, x, -1.0, hl) +
                      one_sided_log_aware(f, x, +1.0, hr));
    }
    const double h = std::min(h0, 0.45 * dist);
    return central_richardson(f, x, h);
}

double rho2_unit(double u) {
    static const std::array<double, 4> bps{0.0, 1.0 / 3.0, 0.5, 1.0};
    const double h0 = 1e-4;
    if (u == 0.0) {
        // symmetric second difference: rho_{I,2}(0) = -P''(0)/(2 pi)
        const double f0 = proj2_unit(0.0);
        auto second = [&](double h) { return 2.0 * (proj2_unit(h) - f0) / (h * h); };
        const double d2 = (4.0 * second(h0 / 2.0) - second(h0)) / 3.0;
        return -d2 / (2.0 * kPi);
    }
    const double der = derivative_with_breakpoints(proj2_unit, u, bps, h0, true);
    return -der / (2.0 * kPi * u);
}

}  // namespace

double rho_proj2(double x, double t, double v) {
    const double vt = v * t;
    if (!(vt > 0.0)) throw std::invalid_argument("rho_proj2: vt must be > 0");
    const double u = std::abs(x) / vt;
    if (u > 1.0) throw OutOfSupportError("rho_proj2: |x| > vt");
    return proj2_unit(u) / vt;  // 1D scaling from the vt = 1 form
}

double rho2_I(double r, double t, double v) {
    const double vt = v * t;
    if (!(vt > 0.0)) throw std::invalid_argument("rho2_I: vt must be > 0");
    if (r < 0.0) throw std::invalid_argument("rho2_I: r must be >= 0");
    if (r > vt) throw OutOfSupportError("rho2_I: r > vt");
    return rho2_unit(r / vt) / (vt * vt * vt);
}

double inverse_abel(const std::function<double(double)>& projected, double r,
                    std::span<const double> breakpoints, double scale) {
    if (!(r > 0.0)) throw std::invalid_argument("inverse_abel: requires r > 0");
    const double der =
        derivative_with_breakpoints(projected, r, breakpoints, 1e-4 * scale, false);
    return -der / (2.0 * kPi * r);
}

PiecewiseReport piecewise_report(const std::function<double(double)>& f,
                                 std::span<const double> breakpoints, double delta) {
    PiecewiseReport rep;
    double prev = -std::numeric_limits<double>::infinity();
    for (double b : breakpoints) {
        if (!(b > prev))
            throw std::invalid_argument("piecewise_report: breakpoints must increase strictly");
        prev = b;
        const double step = delta * std::max(1.0, std::abs(b));
        const double left = f(b - step);
        const double right = f(b + step);
        rep.breakpoints.push_back(b);
        rep.values_left.push_back(left);
        rep.values_right.push_back(right);
        rep.max_jump = std::max(rep.max_jump, std::abs(right - left));
    }
    return rep;
}

std::vector<double> rho_proj2_breakpoints(double vt) {
    return {-vt, -vt / 2.0, -vt / 3.0, 0.0, vt / 3.0, vt / 2.0, vt};
}

}  // namespace randflight::exact
