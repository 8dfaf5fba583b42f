#include "randflight/fourier.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "randflight/coeffs.hpp"

namespace randflight::fourier {

namespace {

constexpr double kDivergedMagnitude = 1e6;
constexpr int kPlateauWindow = 20;
constexpr double kPlateauSpread = 1e-3;
constexpr int kPlateauHardCap = 512;
constexpr int kOnsetMargin = 5;

/** Exact m-series of one coefficient family at fixed (c, m_max), held as
    integer numerators over one common denominator so the per-harmonic sum
    sum_m N[m] (h^2)^m runs in integer Horner steps with no intermediate
    rounding. The value is reduced to a double once, rounded to nearest. */
class PreparedSeries {
public:
    enum class Kind { rs, is0 };

    PreparedSeries(Kind kind, int c, int m_max) {
        if (c < 0 || m_max < 1)
            throw std::invalid_argument("PreparedSeries: need c >= 0 and m_max >= 1");
        const mpz_class pi_num = pi_rational().numerator();
        const mpz_class pi_den = pi_rational().denominator();
        const mpz_class pi_num2 = pi_num * pi_num;
        const mpz_class pi_den2 = pi_den * pi_den;
        mpz_class c_fac;
        mpz_fac_ui(c_fac.get_mpz_t(), static_cast<unsigned long>(c));

        const int row_top = (kind == Kind::rs) ? m_max : m_max - 1;
        auto row = coeffs::shared_row(c, row_top);

        mpz_class lcm_c(1);
        for (int m = 0; m <= row_top; ++m) {
            mpz_class d = row->values[m].denominator();
            mpz_lcm(lcm_c.get_mpz_t(), lcm_c.get_mpz_t(), d.get_mpz_t());
        }

        num_.assign(m_max + 1, mpz_class(0));

        if (kind == Kind::rs) {
            // term_m = (-pi^2)^m (2m+1) c!/(2m+c)! C(c,m)
            mpz_class top_fac;
            mpz_fac_ui(top_fac.get_mpz_t(), 2UL * m_max + c);
            den_ = top_fac * lcm_c;
            for (int k = 0; k < m_max; ++k) den_ *= pi_den2;

            // G(m) = pi_num^{2m} pi_den^{2(m_max-m)} (2m_max+c)!/(2m+c)!, walked down
            mpz_class g = 1;
            for (int k = 0; k < m_max; ++k) g *= pi_num2;
            for (int m = m_max; m >= 0; --m) {
                mpz_class n = g * (2L * m + 1);
                n *= c_fac;
                n *= row->values[m].numerator();
                mpz_class q;
                mpz_class d = row->values[m].denominator();
                mpz_divexact(q.get_mpz_t(), lcm_c.get_mpz_t(), d.get_mpz_t());
                n *= q;
                if (m & 1) n = -n;
                num_[m] = n;
                if (m > 0) {
                    mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), pi_num2.get_mpz_t());
                    g *= pi_den2;
                    g *= mpz_class(2L * m + c) * (2L * m + c - 1);
                }
            }
        } else {
            // term_m = (1/4pi) (-pi^2)^m c! C(c,m-1)/(2m (2m-2+c)!), m >= 1
            mpz_class top_fac;
            mpz_fac_ui(top_fac.get_mpz_t(), 2UL * m_max - 2 + c);
            mpz_class lcm_2m(1);
            for (int m = 1; m <= m_max; ++m) {
                mpz_class e(2L * m);
                mpz_lcm(lcm_2m.get_mpz_t(), lcm_2m.get_mpz_t(), e.get_mpz_t());
            }
            den_ = top_fac * lcm_c * lcm_2m * 4 * pi_num;
            for (int k = 0; k < m_max; ++k) den_ *= pi_den2;

            mpz_class g = pi_den;  // the 1/(4 pi_rat) contributes one pi_den upstairs
            for (int k = 0; k < m_max; ++k) g *= pi_num2;
            for (int m = m_max; m >= 1; --m) {
                mpz_class n = g * c_fac;
                n *= row->values[m - 1].numerator();
                mpz_class q;
                mpz_class d = row->values[m - 1].denominator();
                mpz_divexact(q.get_mpz_t(), lcm_c.get_mpz_t(), d.get_mpz_t());
                n *= q;
                mpz_class e(2L * m);
                mpz_divexact(q.get_mpz_t(), lcm_2m.get_mpz_t(), e.get_mpz_t());
                n *= q;
                if (m & 1) n = -n;
                num_[m] = n;
                if (m > 1) {
                    mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), pi_num2.get_mpz_t());
                    g *= pi_den2;
                    g *= mpz_class(2L * m - 2 + c) * (2L * m - 3 + c);
                }
            }
        }
    }

    [[nodiscard]] SeriesValue eval(int h) const {
        if (h < 0) throw std::invalid_argument("PreparedSeries: negative harmonic");
        mpz_class acc = num_.back();
        const unsigned long y = static_cast<unsigned long>(h) * static_cast<unsigned long>(h);
        for (int m = static_cast<int>(num_.size()) - 2; m >= 0; --m) {
            acc *= y;
            acc += num_[m];
        }
        const double value = to_double_nearest(acc, den_);
        return {value, std::abs(value) > kDivergedMagnitude};
    }

private:
    std::vector<mpz_class> num_;
    mpz_class den_;
};

/// Harmonic at which FS0 values blow up, or 0 while none seen. The reference
/// scale is the early-h magnitude; divergence past it is violent.
struct Fs0OnsetScan {
    double ref = 0.0;
    int onset = 0;
    void feed(int h, double value) {
        if (onset != 0) return;
        const double a = std::abs(value);
        if (!std::isfinite(a)) { onset = h; return; }
        if (h <= 5) { ref = std::max(ref, a); return; }
        if (a > 10.0 * ref) onset = h;
    }
};

/// C3-style detector for FS coefficients: they decay below |FS(1)|, then
/// "wildly and rather suddenly" exceed it tenfold.
struct FsOnsetScan {
    double ref = 0.0;
    bool decayed = false;
    int onset = 0;
    void feed(int h, double value) {
        if (onset != 0) return;
        const double a = std::abs(value);
        if (!std::isfinite(a) || a > kDivergedMagnitude) { onset = h; return; }
        if (h == 1) { ref = a; return; }
        if (a < ref) decayed = true;
        if (decayed && a > 10.0 * ref) onset = h;
    }
};

struct Window {
    int begin = 0;
    double mean = 0.0;
};

/// Last window of kPlateauWindow consecutive values (within v[1..reliable])
/// whose relative spread is below kPlateauSpread.
bool find_plateau(const std::vector<double>& v, int reliable, Window* out) {
    for (int w = reliable - kPlateauWindow + 1; w >= 1; --w) {
        double lo = v[w], hi = v[w], sum = 0.0;
        for (int h = w; h < w + kPlateauWindow; ++h) {
            lo = std::min(lo, v[h]);
            hi = std::max(hi, v[h]);
            sum += v[h];
        }
        const double mean = sum / kPlateauWindow;
        if (mean != 0.0 && (hi - lo) < kPlateauSpread * std::abs(mean)) {
            out->begin = w;
            out->mean = mean;
            return true;
        }
    }
    return false;
}

}  // namespace

void TruncationPolicy::validate() const {
    if (!(epsilon_r > 0.0 && epsilon_r < 1.0))
        throw std::invalid_argument("TruncationPolicy: epsilon_r must lie in (0,1)");
    if (!(epsilon_decay > 0.0 && epsilon_decay < 1.0))
        throw std::invalid_argument("TruncationPolicy: epsilon_decay must lie in (0,1)");
    if (h_max < 0 || m_max < 0)
        throw std::invalid_argument("TruncationPolicy: negative cutoff");
    if (m_max_factor < 1)
        throw std::invalid_argument("TruncationPolicy: m_max_factor must be >= 1");
}

SeriesValue fs_rs_coeff(int c, int h, int m_max) {
    if (c < 1 || h < 0 || m_max < 1)
        throw std::invalid_argument("fs_rs_coeff: need c >= 1, h >= 0, m_max >= 1");
    return PreparedSeries(PreparedSeries::Kind::rs, c, m_max).eval(h);
}

SeriesValue fs0_Is_coeff(int c, int h, int m_max) {
    if (c < 1 || h < 0 || m_max < 1)
        throw std::invalid_argument("fs0_Is_coeff: need c >= 1, h >= 0, m_max >= 1");
    if (h == 0) return {0.0, false};  // every term carries h^{2m}, m >= 1
    return PreparedSeries(PreparedSeries::Kind::is0, c, m_max).eval(h);
}

PlateauResult extract_r_minus2(int c, const TruncationPolicy& policy) {
    policy.validate();
    if (c < 1) throw std::invalid_argument("extract_r_minus2: need c >= 1");

    int h_sweep = policy.h_max > 0 ? policy.h_max : 64;
    int m_cur = policy.m_max > 0 ? policy.m_max
                                 : std::max(policy.m_max_factor * h_sweep, 32);
    for (;;) {
        PreparedSeries s(PreparedSeries::Kind::is0, c, m_cur);
        std::vector<double> v(h_sweep + 1, 0.0);
        Fs0OnsetScan scan;
        int reliable = h_sweep;
        for (int h = 1; h <= h_sweep; ++h) {
            v[h] = s.eval(h).value;
            scan.feed(h, v[h]);
            if (scan.onset != 0) { reliable = scan.onset - 1; break; }
        }

        Window win;
        if (find_plateau(v, reliable, &win)) {
            PlateauResult out;
            out.plateau = win.mean;
            out.r_minus2 = -4.0 * std::numbers::pi * win.mean;
            out.window_begin = win.begin;
            out.window_end = win.begin + kPlateauWindow - 1;
            out.m_max_used = m_cur;
            return out;
        }

        const bool h_fixed = policy.h_max > 0;
        const bool m_fixed = policy.m_max > 0;
        if (h_fixed && m_fixed)
            throw NoPlateauError("extract_r_minus2: no settled window under the fixed policy");
        if (h_fixed) {
            if (reliable >= h_sweep)
                throw NoPlateauError("extract_r_minus2: series settled nowhere below h_max");
            m_cur = m_cur * 3 / 2;
            continue;
        }
        if (m_fixed && reliable < h_sweep)
            throw NoPlateauError("extract_r_minus2: divergence onset before any settled window");
        h_sweep = h_sweep * 3 / 2;
        if (h_sweep > kPlateauHardCap)
            throw NoPlateauError("extract_r_minus2: no plateau below the harmonic cap");
        if (!m_fixed) m_cur = std::max(m_cur, policy.m_max_factor * h_sweep);
    }
}

FourierTable build_table(int c, const TruncationPolicy& policy) {
    policy.validate();
    if (c < 1) throw std::invalid_argument("build_table: need c >= 1");

    TruncationPolicy sweep_policy = policy;
    sweep_policy.h_max = 0;  // the plateau lives past the table cutoff
    sweep_policy.m_max = 0;
    const PlateauResult pr = extract_r_minus2(c, sweep_policy);
    const double rm2_over_4pi = -pr.plateau;

    int h_max = policy.h_max;
    if (h_max == 0) {
        // stop at the coefficient-decay criterion, using the extraction sweep's m
        PreparedSeries probe(PreparedSeries::Kind::is0, c, pr.m_max_used);
        double first = 0.0;
        Fs0OnsetScan scan;
        for (int h = 1; h <= pr.window_end; ++h) {
            const double fs = probe.eval(h).value + rm2_over_4pi;
            scan.feed(h, probe.eval(h).value);
            if (scan.onset != 0) break;
            if (h == 1) { first = std::abs(fs); continue; }
            if (std::abs(fs) <= policy.epsilon_decay * first) { h_max = h; break; }
        }
        if (h_max == 0)
            throw PolicyTooSmallError("build_table: decay criterion unreachable for c=" +
                                      std::to_string(c));
    }

    int m_max = policy.m_max > 0 ? policy.m_max
                                 : std::max(policy.m_max_factor * h_max, 32);
    const int h_probe = h_max + kOnsetMargin;
    std::vector<double> rs_vals, is0_vals;
    for (;;) {
        PreparedSeries rs(PreparedSeries::Kind::rs, c, m_max);
        PreparedSeries is0(PreparedSeries::Kind::is0, c, m_max);
        rs_vals.assign(h_probe + 1, 0.0);
        is0_vals.assign(h_probe + 1, 0.0);
        FsOnsetScan rs_scan;
        Fs0OnsetScan is_scan;
        bool ok = true;
        for (int h = 1; h <= h_probe && ok; ++h) {
            const SeriesValue a = rs.eval(h);
            const SeriesValue b = is0.eval(h);
            rs_vals[h] = a.value;
            is0_vals[h] = b.value;
            rs_scan.feed(h, a.value);
            is_scan.feed(h, b.value);
            ok = rs_scan.onset == 0 && is_scan.onset == 0 && !a.diverged && !b.diverged;
        }
        if (ok) break;
        if (policy.m_max > 0)
            throw PolicyTooSmallError("build_table: divergence onset within the margin at fixed m_max");
        m_max = m_max * 3 / 2;
        if (m_max > 1000000)
            throw PolicyTooSmallError("build_table: m_max search exhausted");
    }

    FourierTable table;
    table.c = c;
    table.h_max = h_max;
    table.m_max = m_max;
    table.plateau = pr.plateau;
    table.r_minus2 = pr.r_minus2;
    table.fs_rs.assign(h_max + 1, 0.0);
    table.fs_Is.assign(h_max + 1, 0.0);
    table.fs_Is[0] = pr.r_minus2 / (8.0 * std::numbers::pi);
    for (int h = 1; h <= h_max; ++h) {
        table.fs_rs[h] = rs_vals[h];
        table.fs_Is[h] = is0_vals[h] + rm2_over_4pi;
    }
    table.decay_ratio = std::abs(table.fs_Is[h_max]) / std::abs(table.fs_Is[1]);
    return table;
}

double eval_rho_rs_c(const FourierTable& table, double x, double t, double v) {
    const double vt = v * t;
    if (!(vt > 0.0)) throw std::invalid_argument("eval_rho_rs_c: vt must be > 0");
    if (std::abs(x) > vt)
        throw OutOfSupportError("eval_rho_rs_c: |x| > vt");
    const double u = x / vt;
    double sum = 0.0;
    for (int h = table.h_max; h >= 1; --h)
        sum += table.fs_rs[h] * std::cos(std::numbers::pi * h * u);
    return (1.0 + 2.0 * sum) / (2.0 * vt);
}

double eval_rho_Is_c(const FourierTable& table, double x, double t, double v) {
    const double vt = v * t;
    if (!(vt > 0.0)) throw std::invalid_argument("eval_rho_Is_c: vt must be > 0");
    if (std::abs(x) > vt)
        throw OutOfSupportError("eval_rho_Is_c: |x| > vt");
    const double u = x / vt;
    double sum = 0.0;
    for (int h = table.h_max; h >= 0; --h)
        sum += table.fs_Is[h] * std::cos(std::numbers::pi * h * u);
    return sum / (vt * vt * vt);
}

}  // namespace randflight::fourier
