#include "polaritonkit/spectrum.hpp"

#include "polaritonkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace polaritonkit {

namespace {

constexpr double kDecoupledLambda = 1e-15;

PolaritonSpectrum decoupled(double Omega, double w) {
    PolaritonSpectrum s{};
    const double hi = std::max(Omega, w);
    const double lo = std::min(Omega, w);
    s.omega_plus = hi;
    s.omega_plus_sq = hi * hi;
    s.omega_minus_sq = lo * lo;
    s.omega_minus = lo;
    s.stable = lo > 0.0;
    if (Omega > w) {
        // upper branch is the bare trap mode
        s.alpha = std::numeric_limits<double>::infinity();
        s.mixing_lambda = 0.0;
        s.cos2 = 1.0;
        s.sin2 = 0.0;
    } else if (Omega < w) {
        s.alpha = -std::numeric_limits<double>::infinity();
        s.mixing_lambda = -std::numeric_limits<double>::infinity();
        s.cos2 = 0.0;
        s.sin2 = 1.0;
    } else {
        // degenerate: take the λ → 0⁺ limit at resonance
        s.alpha = 0.0;
        s.mixing_lambda = -1.0;
        s.cos2 = 0.5;
        s.sin2 = 0.5;
    }
    return s;
}

}  // namespace

PolaritonSpectrum polariton_modes(const ModelParams& params) {
    const auto f = derive(params);
    const double Omega = params.omega_trap;
    if (params.lambda < kDecoupledLambda) return decoupled(Omega, f.omega_cavity);

    const double O2 = Omega * Omega;
    const double wt2 = f.omega_tilde * f.omega_tilde;
    const double off = f.omega_d * Omega;
    const double diff = wt2 - O2;
    const double root = std::sqrt(4.0 * off * off + diff * diff);

    PolaritonSpectrum s{};
    s.omega_plus_sq = 0.5 * (wt2 + O2 + root);
    s.omega_plus = std::sqrt(s.omega_plus_sq);

    const double w = f.omega_cavity;
    const double det = params.include_a2 ? O2 * w * w : O2 * (w - f.omega_d) * (w + f.omega_d);
    s.omega_minus_sq = det / s.omega_plus_sq;
    s.stable = s.omega_minus_sq > 0.0;
    if (s.omega_minus_sq >= 0.0) s.omega_minus = std::sqrt(s.omega_minus_sq);

    s.alpha = (O2 - wt2) / (2.0 * off);
    const double h = std::hypot(1.0, s.alpha);
    s.mixing_lambda = s.alpha >= 0.0 ? -1.0 / (s.alpha + h) : s.alpha - h;
    const double L2 = s.mixing_lambda * s.mixing_lambda;
    s.cos2 = 1.0 / (1.0 + L2);
    s.sin2 = L2 / (1.0 + L2);
    return s;
}

std::array<std::array<double, 2>, 2> mixing_matrix(const PolaritonSpectrum& spectrum) {
    const double c = std::sqrt(spectrum.cos2);
    const double s = std::sqrt(spectrum.sin2);
    return {{{c, -s}, {s, c}}};
}

void require_stable(const PolaritonSpectrum& spectrum) {
    if (!spectrum.stable)
        throw InstabilityError("lower polariton is not positive (Omega_minus^2 = " +
                               std::to_string(spectrum.omega_minus_sq) + ")");
}

NoTrapLimit no_trap_limit(const ModelParams& params) {
    const auto f = derive(params);
    return {f.omega_tilde, 0.0};
}

double instability_onset(double gamma2) {
    if (!std::isfinite(gamma2) || gamma2 <= 0.0) throw InvalidParameter("gamma2 must be finite and > 0");
    return std::sqrt(gamma2);
}

FreeSpaceEigenvalue free_space_energy(const std::array<double, 2>& k_vector, int n_x, int n_y,
                                      const ModelParams& params) {
    if (n_x < 0 || n_y < 0) throw InvalidParameter("occupations must be >= 0");
    const auto f = derive(params);
    const double wt = f.omega_tilde;
    const double g2 = f.g_collective * f.g_collective;
    const int n[2] = {n_x, n_y};
    double e = 0.5 * (k_vector[0] * k_vector[0] + k_vector[1] * k_vector[1]);
    for (int nu = 0; nu < 2; ++nu) e += wt * (n[nu] + 0.5) - g2 * k_vector[nu] * k_vector[nu] / wt;
    return {k_vector, {n_x, n_y}, e};
}

}  // namespace polaritonkit
