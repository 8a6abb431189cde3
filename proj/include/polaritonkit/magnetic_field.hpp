#pragma once

#include "polaritonkit/model.hpp"

#include <optional>

namespace polaritonkit {

/// First-order shift of the polariton branches by a weak homogeneous magnetic field.
/// Only the A_ext² term contributes at this order.
struct BFieldSpectrum {
    double omega_b_ratio;  ///< ω_B / Ω
    double delta_plus;
    double delta_minus;
    double omega_plus_b;
    double omega_minus_b;
    double gap_b;
    bool beyond_weak_field;  ///< ω_B/Ω > 0.5, where first order is questionable
};

BFieldSpectrum bfield_spectrum(const ModelParams& params, double omega_b_ratio);

/// P = exp(−π · velocity_factor · (Δ_B/Ω)²), velocity_factor = ħΩ²/(2|v|).
double landau_zener(const ModelParams& params, double omega_b_ratio, double velocity_factor);

/// First ω_B/Ω in [0, 2] where P_LZ at gamma2_offres overtakes P_LZ at resonance.
/// `params.gamma2` is ignored. Empty when the curves do not cross in range.
std::optional<double> critical_field(const ModelParams& params, double gamma2_offres, double velocity_factor);

}  // namespace polaritonkit
