#pragma once

namespace randflight::moments {

/// Particle speed and scattering rate; both strictly positive.
struct PhysParams {
    double v = 1.0;       // length/time
    double lambda = 1.0;  // 1/time

    void validate() const;
};

/** <r^{2m}> of the pdf conditional to c collisions:
    (vt)^{2m} c! (2m+1)!/(2m+c)! C(c,m). */
double even_moment_rc(int c, int m, double vt);

/** <x^{2m}> of rho_{Is,c} for m >= 1:
    (vt)^{2m-2}/(4 pi) c! (2m-1)!/(2m-2+c)! C(c,m-1).
    m = 0 (the <r^-2> case) is rejected; that extraction lives in fourier. */
double even_moment_Is(int c, int m, double vt);

/** <r^{2m}> of the full pdf rho_S, shell included:
    (2m+1)! e^{-lambda t} (vt)^{2m} sum_c (lambda t)^c/(2m+c)! C(c,m),
    truncated once the term-ratio bound puts the relative tail below 1e-12. */
double even_moment_S(int m, double t, const PhysParams& p);

}  // namespace randflight::moments
