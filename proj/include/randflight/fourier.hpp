#pragma once

#include <vector>

#include "randflight/errors.hpp"

namespace randflight::fourier {

/** Truncation controls for one per-collision table.

    h_max > 0 builds exactly harmonics 1..h_max; h_max = 0 stops at the
    coefficient-decay criterion |fs_Is[h]|/|fs_Is[1]| <= epsilon_decay.
    m_max > 0 fixes the moment cutoff; m_max = 0 searches, starting from
    m_max_factor * h and growing by 1.5x until divergence onset sits at
    least 5 harmonics past the target h_max. */
struct TruncationPolicy {
    double epsilon_r = 1e-3;      // relative norm tolerance of the collision expansion
    double epsilon_decay = 1e-3;  // coefficient-decay stopping ratio
    int h_max = 0;
    int m_max = 0;
    int m_max_factor = 9;

    void validate() const;
};

/** Per-collision Fourier data at vt = 1. fs_rs[h] (h = 1..h_max; slot 0 unused)
    are the cosine coefficients of rho_{rs,c}; fs_Is[h] (h = 0..h_max) those of
    rho_{Is,c}, whose constant part carries the extracted <r^-2>:
    fs_Is[0] = r_minus2/(8 pi), r_minus2 = -4 pi * plateau. */
struct FourierTable {
    int c = 0;
    std::vector<double> fs_rs;  // index h; fs_rs[0] = 0
    std::vector<double> fs_Is;  // index h
    double r_minus2 = 0.0;      // <r^-2>_{rho_c}(1/v)
    double plateau = 0.0;       // large-h limit of FS0(rho_{Is,c})
    int h_max = 0;
    int m_max = 0;
    double decay_ratio = 0.0;   // |fs_Is[h_max]| / |fs_Is[1]|
};

/// Exact truncated series value; `diverged` marks |value| past the reliable range.
struct SeriesValue {
    double value = 0.0;
    bool diverged = false;
};

/** FS(rho_{rs,c})(h) = sum_{m=0..m_max} (-pi^2)^m (2m+1) c!/(2m+c)! C(c,m) h^{2m},
    summed exactly with the rational pi, one rounding at the end. */
SeriesValue fs_rs_coeff(int c, int h, int m_max);

/** FS0(rho_{Is,c})(h) = (1/4pi) sum_{m=1..m_max} (-pi^2)^m c! C(c,m-1)
    / (2m (2m-2+c)!) h^{2m}, summed the same way. Zero at h = 0. */
SeriesValue fs0_Is_coeff(int c, int h, int m_max);

struct PlateauResult {
    double r_minus2 = 0.0;
    double plateau = 0.0;
    int window_begin = 0;  // first h of the averaged window
    int window_end = 0;    // last h (inclusive)
    int m_max_used = 0;
};

/** Reads <r^-2>_{rho_c}(1/v) off the large-h plateau of FS0: the last window
    of >= 20 consecutive h with relative spread < 1e-3 before the series turns
    unreliable, averaged. <r^-2>(t) then follows the exact scaling /(vt)^2.
    Throws NoPlateauError when no such window exists under the policy. */
PlateauResult extract_r_minus2(int c, const TruncationPolicy& policy = {});

/** Builds the per-collision table at vt = 1. Throws PolicyTooSmallError when
    the requested harmonics are not reliable under a fixed m_max, or when the
    decay criterion is unreachable in auto mode; propagates NoPlateauError. */
FourierTable build_table(int c, const TruncationPolicy& policy = {});

/// rho_{rs,c}(x,t) from the vt = 1 table plus the 1/(vt) scaling relation.
double eval_rho_rs_c(const FourierTable& table, double x, double t, double v);

/// rho_{Is,c}(x,t) from the vt = 1 table plus the 1/(vt)^3 scaling; rho_{I,c} = 2 rho_{Is,c}.
double eval_rho_Is_c(const FourierTable& table, double x, double t, double v);

}  // namespace randflight::fourier
