#pragma once

#include <cmath>
#include <functional>
#include <span>

namespace randflight::quadrature {

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integral of f over [a,b] to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-9, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson(fa, fm, fb, b - a);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Same, but splitting at the given sorted knots first (piecewise integrands).
inline double integrate_pieces(const std::function<double(double)>& f,
                               std::span<const double> knots, double tol = 1e-9,
                               int max_depth = 48) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        total += integrate(f, knots[i], knots[i + 1], tol / double(knots.size()), max_depth);
    return total;
}

}  // namespace randflight::quadrature
