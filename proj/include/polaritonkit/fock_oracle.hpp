#pragma once

#include "polaritonkit/model.hpp"

#include <array>
#include <vector>

namespace polaritonkit {

// Truncated product-Fock exact diagonalization of one polarization copy:
//
//   H = Ω(a†a + ½) + ω̃(b†b + ½) + κ(a + a†)(b + b†),   κ = ω_d √Ω / (2√ω̃)
//
// a is the matter oscillator, b the dressed photon oscillator. In position
// coordinates this is ½p² + ½xᵀWx with W = [[Ω², ω_dΩ], [ω_dΩ, ω̃²]].

struct OracleConfig {
    int n_start{40};
    int n_step{8};
    int n_max{96};
    double energy_tol{1e-10};
};

struct FockGroundState {
    int n_cut{0};
    double energy{0.0};
    /// Amplitude of |n_matter, n_photon⟩ at index n_matter·(n_cut+1) + n_photon.
    std::vector<double> amplitudes;
    bool converged{false};
    double energy_change{0.0};  ///< E(n_cut − step) − E(n_cut)

    // oscillator data needed by measure()
    double omega_matter{1.0};
    double omega_dressed{1.0};
    double omega_cavity{1.0};
};

/// Lowest eigenpair at this truncation. `converged` compares against n_cut − step.
FockGroundState build_and_diagonalize(const ModelParams& params, int n_cut, const OracleConfig& cfg = {});

/// Raises n_cut from cfg.n_start in cfg.n_step increments until the energy settles or cfg.n_max.
FockGroundState solve_converged(const ModelParams& params, const OracleConfig& cfg = {});

enum class Observable { occupation, two_point, four_point, x_variance, p_variance };

/// ⟨gs|O|gs⟩. Throws UnconvergedState when !state.converged.
double measure(const FockGroundState& state, Observable observable);

/// Lowest `count` eigenvalues over both parity sectors, ascending.
std::vector<double> low_spectrum(const ModelParams& params, int n_cut, int count);

/// Untrapped eigenvalue at CM momentum K by diagonalizing each displaced photon mode in Fock space.
double free_space_oracle_energy(const std::array<double, 2>& k_vector, int n_x, int n_y,
                                const ModelParams& params, int n_cut = 60);

}  // namespace polaritonkit
