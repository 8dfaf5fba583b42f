#include "randflight/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randflight/quadrature.hpp"

namespace randflight::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(RngStream id) {
    std::uint64_t state = id.seed ^ (0xa0761d6478bd642fULL * (id.stream + 1));
    for (auto& w : s_) w = splitmix64(state);
    // a zero state would be absorbing
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

std::array<double, 3> sample_direction(Rng& rng) {
    const double cos_theta = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.next_double();
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

FlightSample sample_flight_conditional(int c, double t, double v, Rng& rng) {
    if (c < 0) throw std::invalid_argument("sample_flight_conditional: c must be >= 0");
    if (!(t > 0.0) || !(v > 0.0))
        throw std::invalid_argument("sample_flight_conditional: t and v must be > 0");
    if (c == 0) return {v * t, 0, t};

    std::vector<double> times(c);
    for (auto& u : times) u = t * rng.next_double();
    std::sort(times.begin(), times.end());

    double x = 0.0, y = 0.0, z = 0.0;
    double prev = 0.0;
    for (int k = 0; k <= c; ++k) {
        const double next = (k < c) ? times[k] : t;
        const double len = v * (next - prev);
        const auto d = sample_direction(rng);
        x += len * d[0];
        y += len * d[1];
        z += len * d[2];
        prev = next;
    }
    return {std::sqrt(x * x + y * y + z * z), c, t};
}

namespace {

/// Poisson draw by Knuth's product method, in log space for large means.
int sample_poisson(double mean, Rng& rng) {
    if (mean <= 0.0) return 0;
    int total = 0;
    // split large means so the accumulated product stays in range
    while (mean > 30.0) {
        const double half = mean * 0.5;
        total += sample_poisson(half, rng);
        mean -= half;
    }
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = 1.0;
    for (;;) {
        prod *= rng.next_double();
        if (prod <= limit) return total + k;
        ++k;
    }
}

}  // namespace

FlightSample sample_flight_poisson(double t, const moments::PhysParams& p, Rng& rng) {
    if (!(t > 0.0)) throw std::invalid_argument("sample_flight_poisson: t must be > 0");
    p.validate();
    const int c = sample_poisson(p.lambda * t, rng);
    return sample_flight_conditional(c, t, p.v, rng);
}

double ks_statistic(std::span<const double> radii,
                    const std::function<double(double)>& cdf, double vt) {
    if (radii.empty()) throw EmptySamplesError("ks_statistic: no samples");
    const double f0 = cdf(0.0);
    const double f1 = cdf(vt);
    if (std::abs(f0) > 2e-3 || std::abs(f1 - 1.0) > 2e-3)
        throw std::invalid_argument("ks_statistic: cdf endpoints off 0/1 by more than 2e-3");
    const double span10 = f1 - f0;

    std::vector<double> sorted(radii.begin(), radii.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = double(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = (cdf(sorted[i]) - f0) / span10;
        d = std::max(d, std::abs(f - double(i + 1) / n));
        d = std::max(d, std::abs(f - double(i) / n));
    }
    return d;
}

RadialCdf::RadialCdf(std::function<double(double)> rho_r, double vt, int grid_cells,
                     double tol)
    : vt_(vt) {
    if (!(vt > 0.0) || grid_cells < 2)
        throw std::invalid_argument("RadialCdf: bad domain or grid");
    cum_.assign(grid_cells + 1, 0.0);
    const double dx = vt / grid_cells;
    for (int i = 0; i < grid_cells; ++i) {
        const double mass =
            quadrature::integrate(rho_r, i * dx, (i + 1) * dx, tol / grid_cells);
        // truncated-series integrands can dip a hair below zero; keep the CDF monotone
        cum_[i + 1] = cum_[i] + std::max(mass, 0.0);
    }
}

double RadialCdf::operator()(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= vt_) return cum_.back();
    const int cells = static_cast<int>(cum_.size()) - 1;
    const double pos = r / vt_ * cells;
    const int i = std::min(static_cast<int>(pos), cells - 1);
    const double frac = pos - i;
    return cum_[i] + frac * (cum_[i + 1] - cum_[i]);
}

}  // namespace randflight::mc
