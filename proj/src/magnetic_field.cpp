#include "polaritonkit/magnetic_field.hpp"

#include "polaritonkit/errors.hpp"
#include "polaritonkit/spectrum.hpp"

#include <cmath>
#include <numbers>

namespace polaritonkit {

BFieldSpectrum bfield_spectrum(const ModelParams& params, double omega_b_ratio) {
    if (!std::isfinite(omega_b_ratio) || omega_b_ratio < 0.0) throw InvalidParameter("omega_b must be finite and >= 0");
    const auto s = polariton_modes(params);
    require_stable(s);
    const double r2 = omega_b_ratio * omega_b_ratio;
    BFieldSpectrum b{};
    b.omega_b_ratio = omega_b_ratio;
    b.delta_plus = 0.5 * s.omega_plus * r2 * s.cos2;
    b.delta_minus = 0.5 * (*s.omega_minus) * r2 * s.sin2;
    b.omega_plus_b = s.omega_plus + b.delta_plus;
    b.omega_minus_b = *s.omega_minus + b.delta_minus;
    b.gap_b = (s.omega_plus - *s.omega_minus) + (b.delta_plus - b.delta_minus);
    b.beyond_weak_field = omega_b_ratio > 0.5;
    return b;
}

double landau_zener(const ModelParams& params, double omega_b_ratio, double velocity_factor) {
    if (!std::isfinite(velocity_factor) || velocity_factor <= 0.0)
        throw InvalidParameter("velocity_factor must be finite and > 0");
    const double gap = bfield_spectrum(params, omega_b_ratio).gap_b / params.omega_trap;
    return std::exp(-std::numbers::pi * velocity_factor * gap * gap);
}

std::optional<double> critical_field(const ModelParams& params, double gamma2_offres, double velocity_factor) {
    if (!(gamma2_offres > 1.0)) throw InvalidParameter("critical_field needs gamma2_offres > 1");
    ModelParams off = params, res = params;
    off.gamma2 = gamma2_offres;
    res.gamma2 = 1.0;
    auto diff = [&](double r) { return landau_zener(off, r, velocity_factor) - landau_zener(res, r, velocity_factor); };

    constexpr int kScan = 2000;
    constexpr double kTop = 2.0;
    double lo = 0.0, f_lo = diff(lo);
    for (int k = 1; k <= kScan; ++k) {
        double hi = kTop * k / kScan;
        const double f_hi = diff(hi);
        if (f_hi == 0.0) return hi;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            while (hi - lo > 1e-14) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = diff(mid);
                if ((f_mid < 0.0) == (f_lo < 0.0)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        lo = hi;
        f_lo = f_hi;
    }
    return std::nullopt;
}

}  // namespace polaritonkit
