#pragma once

#include "polaritonkit/model.hpp"

#include <array>
#include <optional>

namespace polaritonkit {

/// Normal modes of the centre-of-mass / photon oscillator pair.
struct PolaritonSpectrum {
    double omega_plus;              ///< upper polariton Ω₊
    double omega_plus_sq;           ///< Ω₊²
    double omega_minus_sq;          ///< Ω₋², negative past the no-A² instability
    std::optional<double> omega_minus;  ///< √Ω₋² when Ω₋² ≥ 0
    double mixing_lambda;           ///< Λ ≤ 0; -inf when the upper branch is pure photon
    double alpha;                   ///< α = (Ω² − ω̃²)/(2ω_dΩ); ±inf at λ = 0
    bool stable;                    ///< Ω₋² > 0
    double cos2;                    ///< matter weight of the upper branch, 1/(1+Λ²)
    double sin2;                    ///< Λ²/(1+Λ²)
};

PolaritonSpectrum polariton_modes(const ModelParams& params);

/// Orthogonal matrix O = [[c, −s], [s, c]] that rotates (matter, photon) into (+, −).
std::array<std::array<double, 2>, 2> mixing_matrix(const PolaritonSpectrum& spectrum);

/// Throws InstabilityError unless spectrum.stable.
void require_stable(const PolaritonSpectrum& spectrum);

struct NoTrapLimit {
    double upper;
    double lower;
};

/// Ω → 0 limit of the branches: (ω̃, 0).
NoTrapLimit no_trap_limit(const ModelParams& params);

/// Coupling where Ω₋² crosses zero once the A² term is dropped: λ* = √γ₂.
double instability_onset(double gamma2);

struct FreeSpaceEigenvalue {
    std::array<double, 2> k_vector;
    std::array<int, 2> occupations;
    double energy;
};

/// Exact eigenvalue of the untrapped problem at CM momentum K with n_x, n_y photon-like quanta.
FreeSpaceEigenvalue free_space_energy(const std::array<double, 2>& k_vector, int n_x, int n_y,
                                      const ModelParams& params);

}  // namespace polaritonkit
