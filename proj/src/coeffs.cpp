#include "randflight/coeffs.hpp"

#include <mpfr.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace randflight {

ExactRational::ExactRational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::invalid_argument("ExactRational: zero denominator");
    q_.canonicalize();
}

ExactRational::ExactRational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (d == 0) throw std::invalid_argument("ExactRational: zero denominator");
    q_.canonicalize();
}

ExactRational ExactRational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("ExactRational: malformed rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("ExactRational: zero denominator in '" + s + "'");
    q.canonicalize();
    return ExactRational(std::move(q));
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
    if (o.q_ == 0) throw std::invalid_argument("ExactRational: division by zero");
    q_ /= o.q_;
    return *this;
}

double ExactRational::to_double() const {
    return to_double_nearest(q_.get_num(), q_.get_den());
}

double to_double_nearest(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw std::invalid_argument("to_double_nearest: zero denominator");
    if (sgn(num) == 0) return 0.0;
    // Represent both integers exactly, then one correctly rounded division.
    mpfr_t a, b, r;
    mpfr_init2(a, std::max<mpfr_prec_t>(mpz_sizeinbase(num.get_mpz_t(), 2), 64));
    mpfr_init2(b, std::max<mpfr_prec_t>(mpz_sizeinbase(den.get_mpz_t(), 2), 64));
    mpfr_init2(r, 53);
    mpfr_set_z(a, num.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(b, den.get_mpz_t(), MPFR_RNDN);
    mpfr_div(r, a, b, MPFR_RNDN);
    double d = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(a);
    mpfr_clear(b);
    mpfr_clear(r);
    return d;
}

const ExactRational& pi_rational() {
    static const ExactRational pi(mpz_class("314159265358979323846"),
                                  mpz_class("100000000000000000000"));
    return pi;
}

namespace coeffs {

namespace {

std::vector<ExactRational> poly_mul_trunc(const std::vector<ExactRational>& a,
                                          const std::vector<ExactRational>& b, int m_max) {
    std::vector<ExactRational> out(m_max + 1, ExactRational(0));
    for (int i = 0; i < static_cast<int>(a.size()) && i <= m_max; ++i) {
        if (a[i].is_zero()) continue;
        const int j_hi = std::min<int>(static_cast<int>(b.size()) - 1, m_max - i);
        for (int j = 0; j <= j_hi; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

CoefficientRow c_coeff_row(int c, int m_max) {
    if (c < 0 || m_max < 0) throw std::invalid_argument("c_coeff_row: negative argument");
    std::vector<ExactRational> base(m_max + 1, ExactRational(0));
    for (int i = 0; i <= m_max; ++i) base[i] = ExactRational(1, 2L * i + 1);

    std::vector<ExactRational> result(m_max + 1, ExactRational(0));
    result[0] = ExactRational(1);
    unsigned long e = static_cast<unsigned long>(c) + 1;
    while (e != 0) {
        if (e & 1UL) result = poly_mul_trunc(result, base, m_max);
        e >>= 1UL;
        if (e != 0) base = poly_mul_trunc(base, base, m_max);
    }

    CoefficientRow row{c, std::move(result)};
    if (row.values[0] != ExactRational(1))
        throw std::logic_error("c_coeff_row: C(c,0) != 1");
    return row;
}

ExactRational c_coeff(int c, int m) {
    if (c < 0 || m < 0) throw std::invalid_argument("c_coeff: negative argument");
    return shared_row(c, m)->values[m];
}

std::pair<ExactRational, ExactRational> c_bounds(int c, int m) {
    if (c < 0 || m < 0) throw std::invalid_argument("c_bounds: negative argument");
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m) + c,
                 static_cast<unsigned long>(m));
    // 1/(2m/(c+1)+1) = (c+1)/(2m+c+1)
    ExactRational per_term(static_cast<long>(c) + 1, 2L * m + c + 1);
    ExactRational lower(binom);
    for (int k = 0; k <= c; ++k) lower *= per_term;
    ExactRational upper = ExactRational(binom) / ExactRational(2L * m + 1);
    return {lower, upper};
}

std::shared_ptr<const CoefficientRow> shared_row(int c, int m_max) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CoefficientRow>> rows;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = rows.find(c);
        if (it != rows.end() && it->second->m_max() >= m_max) return it->second;
    }
    auto fresh = std::make_shared<const CoefficientRow>(c_coeff_row(c, m_max));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = rows[c];
    if (!slot || slot->m_max() < fresh->m_max()) slot = fresh;
    return slot;
}

}  // namespace coeffs
}  // namespace randflight
