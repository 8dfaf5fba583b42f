#include "randflight/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "randflight/coeffs.hpp"

namespace randflight::moments {

void PhysParams::validate() const {
    if (!(v > 0.0)) throw std::invalid_argument("PhysParams: v must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("PhysParams: lambda must be > 0");
}

namespace {

ExactRational factorial_ratio(unsigned long num_fac, unsigned long den_fac) {
    mpz_class n, d;
    mpz_fac_ui(n.get_mpz_t(), num_fac);
    mpz_fac_ui(d.get_mpz_t(), den_fac);
    return ExactRational(n, d);
}

}  // namespace

double even_moment_rc(int c, int m, double vt) {
    if (c < 0 || m < 0) throw std::invalid_argument("even_moment_rc: negative argument");
    if (!(vt > 0.0)) throw std::invalid_argument("even_moment_rc: vt must be > 0");
    // c!(2m+1)!/(2m+c)! split to keep operands modest: (2m+1)!/(2m+c)! * c!
    mpz_class cfac;
    mpz_fac_ui(cfac.get_mpz_t(), static_cast<unsigned long>(c));
    ExactRational factor = factorial_ratio(2UL * m + 1, 2UL * m + c) * ExactRational(cfac);
    ExactRational exact = factor * coeffs::c_coeff(c, m);
    return std::pow(vt, 2.0 * m) * exact.to_double();
}

double even_moment_Is(int c, int m, double vt) {
    if (c < 1) throw std::invalid_argument("even_moment_Is: requires c >= 1");
    if (m < 1)
        throw std::invalid_argument(
            "even_moment_Is: m = 0 is the <r^-2> moment, owned by fourier plateau extraction");
    if (!(vt > 0.0)) throw std::invalid_argument("even_moment_Is: vt must be > 0");
    mpz_class cfac;
    mpz_fac_ui(cfac.get_mpz_t(), static_cast<unsigned long>(c));
    ExactRational factor = factorial_ratio(2UL * m - 1, 2UL * m - 2 + c) * ExactRational(cfac);
    ExactRational exact =
        factor * coeffs::c_coeff(c, m - 1) / (ExactRational(4) * pi_rational());
    return std::pow(vt, 2.0 * m - 2.0) * exact.to_double();
}

double even_moment_S(int m, double t, const PhysParams& p) {
    if (m < 0) throw std::invalid_argument("even_moment_S: negative moment index");
    if (!(t > 0.0)) throw std::invalid_argument("even_moment_S: t must be > 0");
    p.validate();
    const double lt = p.lambda * t;
    const double vt = p.v * t;

    // sum_c (lambda t)^c/(2m+c)! C(c,m); terms decay factorially in c.
    auto row_value = [&](int c) { return coeffs::c_coeff(c, m).to_double(); };
    double sum = 0.0;
    double pow_lt = 1.0;           // (lambda t)^c
    double inv_fac = 1.0;          // 1/(2m+c)! relative to 1/(2m)!
    mpz_class base_fac;
    mpz_fac_ui(base_fac.get_mpz_t(), 2UL * m);
    const double inv_base = 1.0 / base_fac.get_d();
    double prev_term = 0.0;
    int settled = 0;
    for (int c = 0;; ++c) {
        if (c > 0) {
            pow_lt *= lt;
            inv_fac /= (2.0 * m + c);
        }
        const double term = pow_lt * inv_fac * inv_base * row_value(c);
        sum += term;
        if (c > 0 && sum > 0.0) {
            const double ratio = prev_term > 0.0 ? term / prev_term : 1.0;
            if (ratio < 0.5 && term / sum < 1e-13) {
                // geometric tail: remainder < term * ratio/(1-ratio) < term
                if (++settled >= 3) break;
            } else {
                settled = 0;
            }
        }
        prev_term = term;
        if (c > 100000) throw std::runtime_error("even_moment_S: series failed to settle");
    }

    mpz_class lead;
    mpz_fac_ui(lead.get_mpz_t(), 2UL * m + 1);
    return lead.get_d() * std::exp(-lt) * std::pow(vt, 2.0 * m) * sum;
}

}  // namespace randflight::moments
