#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "randflight/errors.hpp"
#include "randflight/moments.hpp"

namespace randflight::mc {

/// Identifies a reproducible random stream: same (seed, stream) -> same samples.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/** xoshiro256++ generator seeded through splitmix64 from (seed, stream).
    Deterministic across platforms; no library distributions are used. */
class Rng {
public:
    explicit Rng(RngStream id);
    std::uint64_t next_u64();
    double next_double();  // uniform on [0, 1)

private:
    std::array<std::uint64_t, 4> s_;
};

/// A simulated endpoint: final radius, collision count, elapsed time.
struct FlightSample {
    double radius = 0.0;
    int collisions = 0;
    double t = 0.0;
};

/// Uniform direction on the unit sphere (cos(theta) uniform, azimuth uniform).
std::array<double, 3> sample_direction(Rng& rng);

/** Flight conditional on exactly c collisions: c i.i.d. uniform times on [0,t]
    sorted (the order statistics of the Poisson arrivals), fresh direction per
    segment. c = 0 returns radius = v*t exactly. */
FlightSample sample_flight_conditional(int c, double t, double v, Rng& rng);

/// Draws c ~ Poisson(lambda t), then delegates to the conditional sampler.
FlightSample sample_flight_poisson(double t, const moments::PhysParams& p, Rng& rng);

/** Kolmogorov-Smirnov sup distance between the empirical CDF of the radii and
    cdf on [0, vt]. cdf(0) and cdf(vt) may be off 0/1 by up to 2e-3; the curve
    is renormalized internally. Throws EmptySamplesError on an empty multiset. */
double ks_statistic(std::span<const double> radii,
                    const std::function<double(double)>& cdf, double vt);

/** CDF of a radial density on [0, vt] by per-cell adaptive quadrature over a
    cached grid with monotone (piecewise-linear) interpolation. */
class RadialCdf {
public:
    RadialCdf(std::function<double(double)> rho_r, double vt, int grid_cells = 2048,
              double tol = 1e-8);
    double operator()(double r) const;
    [[nodiscard]] double vt() const { return vt_; }
    [[nodiscard]] double total_mass() const { return cum_.back(); }

private:
    double vt_;
    std::vector<double> cum_;  // cumulative mass at grid nodes
};

}  // namespace randflight::mc
