#include "polaritonkit/observables.hpp"

#include "polaritonkit/errors.hpp"
#include "polaritonkit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polaritonkit {

namespace {

PolaritonSpectrum stable_modes(const ModelParams& params) {
    auto s = polariton_modes(params);
    require_stable(s);
    return s;
}

}  // namespace

EffectiveMassResult effective_mass(const ModelParams& params) {
    const auto s = stable_modes(params);
    const double Omega = params.omega_trap;
    const double inv = s.cos2 * s.omega_plus / Omega + s.sin2 * (*s.omega_minus) / Omega;
    const double ratio = 1.0 / inv;
    return {ratio, std::sqrt(inv)};
}

CmDensityProfile cm_density(const ModelParams& params, const GridSpec& grid) {
    if (grid.n_points < 2) throw InvalidParameter("density grid needs at least 2 points");
    const double m = effective_mass(params).mass_ratio;
    const double Omega = params.omega_trap;
    double L = grid.half_width;
    if (L == 0.0) L = 6.0 / std::sqrt(2.0 * Omega);
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidParameter("half_width must be positive");

    CmDensityProfile out;
    out.grid.resize(grid.n_points);
    out.values.resize(grid.n_points);
    const double dx = 2.0 * L / (grid.n_points - 1);
    std::size_t centre = 0;
    for (int i = 0; i < grid.n_points; ++i) {
        out.grid[i] = -L + i * dx;
        if (std::abs(out.grid[i]) < std::abs(out.grid[centre])) centre = i;
    }
    for (int i = 0; i < grid.n_points; ++i) out.values[i] = std::exp(-m * Omega * out.grid[i] * out.grid[i]);
    const double peak = out.values[centre];
    for (double& v : out.values) v /= peak;
    return out;
}

ResonanceArgmax resonance_argmax(double lambda, std::span<const double> gamma2_grid, const ModelParams& base) {
    if (gamma2_grid.empty()) throw InvalidParameter("gamma2 grid is empty");
    ModelParams p = base;
    p.lambda = lambda;
    ResonanceArgmax best{std::numeric_limits<double>::quiet_NaN(), -std::numeric_limits<double>::infinity(), false};
    double lo = std::numeric_limits<double>::infinity();
    for (double g : gamma2_grid) {
        p.gamma2 = g;
        if (!polariton_modes(p).stable) continue;
        const double m = effective_mass(p).mass_ratio;
        lo = std::min(lo, m);
        if (m > best.mass_ratio) best = {g, m, false};
    }
    if (std::isnan(best.gamma2)) throw InstabilityError("no stable point on the gamma2 grid");
    best.degenerate = best.mass_ratio - lo <= 1e-12;
    return best;
}

double cm_position_variance(const ModelParams& params) {
    return 1.0 / (2.0 * effective_mass(params).mass_ratio * params.omega_trap);
}

double cm_momentum_variance(const ModelParams& params) {
    const auto s = stable_modes(params);
    const double O2 = params.omega_trap * params.omega_trap;
    return O2 * (s.cos2 / (2.0 * s.omega_plus) + s.sin2 / (2.0 * (*s.omega_minus)));
}

}  // namespace polaritonkit
