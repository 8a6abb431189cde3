#pragma once

#include "polaritonkit/model.hpp"

#include <span>
#include <vector>

namespace polaritonkit {

/// Cavity-induced one-body trap and pair coupling of the effective matter Hamiltonian.
struct EffectivePotentialSpec {
    double delta_m{0.0};      ///< m_eff − m at the collective coupling
    int n_particles{1};
    double omega_trap{1.0};
    double trap_term{0.5};    ///< (m + δm/N)Ω²/2
    double pair_coupling{0.0};  ///< δm Ω²/N
};

/// δm from the effective mass at the collective λ in `params`.
EffectivePotentialSpec effective_potential(const ModelParams& params);
EffectivePotentialSpec effective_potential(double delta_m, int n_particles, double omega_trap = 1.0);

struct MeanFieldGrid {
    double x_max{0.0};  ///< 0 selects 8σ₀, σ₀ = 1/√(2mΩ)
    int n_points{2049};  ///< must be odd so x = 0 is a node
};

struct SolverConfig {
    double dtau{1e-3};          ///< imaginary-time step in units of 1/Ω
    double energy_tol{1e-12};   ///< relative energy change per step
    double residual_tol{1e-10};  ///< max|Δψ|/Δτ per step
    long max_steps{200000};     ///< budget over all refinement stages
    int refinements{1};         ///< extra stages, each with Δτ divided by refine_factor
    double refine_factor{4.0};
    int record_every{100};
};

struct DensityGrid {
    std::vector<double> grid;
    std::vector<double> density;  ///< Σ ρ Δx = 1

    double dx() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
    double norm() const;
    double mean() const;
    double variance() const;
    std::size_t centre_index() const { return grid.size() / 2; }
};

struct MeanFieldResult {
    DensityGrid state;
    double energy;
    long steps;
    double residual;
    std::vector<double> energy_trace;  ///< energy functional every record_every steps
};

/// Imaginary-time split-step Crank–Nicolson propagation from the bare-trap Gaussian.
/// Throws SolverNonConvergence when the step budget runs out.
MeanFieldResult mean_field_ground_state(const EffectivePotentialSpec& pot, const MeanFieldGrid& grid = {},
                                        const SolverConfig& cfg = {});

struct DensityDifference {
    std::vector<double> grid;
    std::vector<double> per_particle;  ///< ρ_coupled − ρ_bare, each normalized to 1
    std::vector<double> total;         ///< N · per_particle
    int n_particles;
    double centre_total() const { return total[total.size() / 2]; }
};

/// `params.lambda` is the collective coupling for `params.n_particles` particles.
DensityDifference density_difference(const ModelParams& params, const MeanFieldGrid& grid = {},
                                     const SolverConfig& cfg = {});
/// Reuses a bare-trap solution computed on the same grid.
DensityDifference density_difference(const ModelParams& params, const DensityGrid& bare,
                                     const MeanFieldGrid& grid, const SolverConfig& cfg);

/// Fixed λ/√N as N varies.
struct CouplingFamily {
    double lambda_per_sqrt_n{0.05};
    double gamma2{1.0};
    double omega_trap{1.0};
    bool include_a2{true};

    ModelParams at(int n) const;
};

/// Largest λ/√N used for the strong-coupling scaling family.
inline constexpr double kStrongCouplingPerSqrtN = 5.0;

struct ScalingFit {
    double exponent_z;
    double prefactor;
    double r_squared;
    std::vector<int> n_values;
    std::vector<double> center_values;  ///< total density enhancement N·Δρ(0)
};

struct PowerLaw {
    double exponent;
    double prefactor;
    double r_squared;
};

/// Unweighted least squares of log y against log x. Throws DegenerateFit with fewer than two positive y.
PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y);

/// Needs at least 5 values of N spanning a decade. Runs the per-N solves on up to `threads` workers
/// (0 = worker_count()).
ScalingFit scaling_exponent(const CouplingFamily& family, std::span<const int> n_values,
                            const MeanFieldGrid& grid = {}, const SolverConfig& cfg = {}, unsigned threads = 0);

}  // namespace polaritonkit
