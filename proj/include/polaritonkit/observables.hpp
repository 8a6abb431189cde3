#pragma once

#include "polaritonkit/model.hpp"

#include <span>
#include <vector>

namespace polaritonkit {

struct EffectiveMassResult {
    double mass_ratio;  ///< m_eff / m
    double fwhm_ratio;  ///< FWHM / FWHM₀ = (m_eff/m)^(-1/2)
};

/// Throws InstabilityError for an unstable spectrum.
EffectiveMassResult effective_mass(const ModelParams& params);

struct GridSpec {
    double half_width{0.0};  ///< 0 selects 6σ₀ with σ₀ = 1/√(2mΩ)
    int n_points{1201};
};

struct CmDensityProfile {
    std::vector<double> grid;
    std::vector<double> values;  ///< exp(−m_eff Ω R²), peak-normalized
};

CmDensityProfile cm_density(const ModelParams& params, const GridSpec& grid = {});

struct ResonanceArgmax {
    double gamma2;
    double mass_ratio;
    bool degenerate;  ///< curve flat to 1e-12 over the grid
};

/// Grid point maximizing m_eff/m at fixed λ. Points past the instability are skipped.
ResonanceArgmax resonance_argmax(double lambda, std::span<const double> gamma2_grid,
                                 const ModelParams& base = {});

/// ⟨R²⟩ of the CM ground state, 1/(2 m_eff Ω).
double cm_position_variance(const ModelParams& params);
/// ⟨K²⟩ of the CM ground state.
double cm_momentum_variance(const ModelParams& params);

}  // namespace polaritonkit
