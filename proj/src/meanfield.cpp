#include "polaritonkit/meanfield.hpp"

#include "polaritonkit/errors.hpp"
#include "polaritonkit/observables.hpp"
#include "polaritonkit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polaritonkit {

EffectivePotentialSpec effective_potential(double delta_m, int n_particles, double omega_trap) {
    if (!std::isfinite(delta_m)) throw InvalidParameter("delta_m must be finite");
    if (n_particles < 1) throw InvalidParameter("n_particles must be >= 1");
    if (!(omega_trap > 0.0)) throw InvalidParameter("omega_trap must be > 0");
    EffectivePotentialSpec p;
    p.delta_m = delta_m;
    p.n_particles = n_particles;
    p.omega_trap = omega_trap;
    const double O2 = omega_trap * omega_trap;
    p.trap_term = (1.0 + delta_m / n_particles) * O2 / 2.0;
    p.pair_coupling = delta_m * O2 / n_particles;
    return p;
}

EffectivePotentialSpec effective_potential(const ModelParams& params) {
    const double dm = effective_mass(params).mass_ratio - 1.0;
    return effective_potential(dm, params.n_particles, params.omega_trap);
}

double DensityGrid::norm() const {
    double s = 0.0;
    for (double r : density) s += r;
    return s * dx();
}

double DensityGrid::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += grid[i] * density[i];
    return s * dx();
}

double DensityGrid::variance() const {
    const double mu = mean();
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += (grid[i] - mu) * (grid[i] - mu) * density[i];
    return s * dx();
}

namespace {

// Constant-coefficient tridiagonal system with diagonal d and off-diagonals e,
// factored once for repeated Thomas solves.
class Tridiagonal {
public:
    Tridiagonal(std::size_t n, double d, double e) : e_(e), inv_(n), upper_(n) {
        double piv = d;
        inv_[0] = 1.0 / piv;
        upper_[0] = e * inv_[0];
        for (std::size_t i = 1; i < n; ++i) {
            piv = d - e * upper_[i - 1];
            inv_[i] = 1.0 / piv;
            upper_[i] = e * inv_[i];
        }
    }

    // in place
    void solve(std::vector<double>& r) const {
        const std::size_t n = r.size();
        r[0] *= inv_[0];
        for (std::size_t i = 1; i < n; ++i) r[i] = (r[i] - e_ * r[i - 1]) * inv_[i];
        for (std::size_t i = n - 1; i-- > 0;) r[i] -= upper_[i] * r[i + 1];
    }

private:
    double e_;
    std::vector<double> inv_;
    std::vector<double> upper_;
};

// Interior values only; ψ vanishes on both boundary nodes.
void apply_tridiag(const std::vector<double>& psi, double d, double e, std::vector<double>& out) {
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i) {
        double v = d * psi[i];
        if (i > 0) v += e * psi[i - 1];
        if (i + 1 < n) v += e * psi[i + 1];
        out[i] = v;
    }
}

struct Problem {
    const EffectivePotentialSpec& pot;
    std::vector<double> x;  // interior nodes
    double dx;

    // Fourth-order compact Laplacian: B ψ'' ≈ A ψ, B = I + D/12, A = D/dx².
    double energy(const std::vector<double>& psi, double mean_x, const Tridiagonal& b_solver,
                  std::vector<double>& scratch) const {
        const double idx2 = 1.0 / (dx * dx);
        apply_tridiag(psi, -2.0 * idx2, idx2, scratch);
        b_solver.solve(scratch);
        double kin = 0.0, pot_e = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            kin += -0.5 * psi[i] * scratch[i];
            pot_e += pot.trap_term * x[i] * x[i] * psi[i] * psi[i];
        }
        const int n = pot.n_particles;
        return (kin + pot_e) * dx + 0.5 * (n - 1) * pot.pair_coupling * mean_x * mean_x;
    }

    double mean(const std::vector<double>& psi) const {
        double s = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) s += x[i] * psi[i] * psi[i];
        return s * dx;
    }

    void normalize(std::vector<double>& psi) const {
        double s = 0.0;
        for (double v : psi) s += v * v;
        const double k = 1.0 / std::sqrt(s * dx);
        for (double& v : psi) v *= k;
    }
};

}  // namespace

MeanFieldResult mean_field_ground_state(const EffectivePotentialSpec& pot, const MeanFieldGrid& grid,
                                        const SolverConfig& cfg) {
    if (grid.n_points < 5 || grid.n_points % 2 == 0) throw InvalidParameter("n_points must be odd and >= 5");
    if (!(cfg.dtau > 0.0) || !(cfg.energy_tol > 0.0) || !(cfg.residual_tol > 0.0) || cfg.max_steps < 1 ||
        cfg.refinements < 0 || !(cfg.refine_factor > 1.0) || cfg.record_every < 1)
        throw InvalidParameter("invalid solver configuration");
    if (!(pot.trap_term > 0.0)) throw InvalidParameter("trap_term must be > 0");

    const double Omega = pot.omega_trap;
    const double x_max = grid.x_max > 0.0 ? grid.x_max : 8.0 / std::sqrt(2.0 * Omega);
    const std::size_t n = static_cast<std::size_t>(grid.n_points);
    const double dx = 2.0 * x_max / static_cast<double>(n - 1);

    Problem prob{pot, std::vector<double>(n - 2), dx};
    for (std::size_t i = 0; i < n - 2; ++i) prob.x[i] = -x_max + static_cast<double>(i + 1) * dx;

    std::vector<double> psi(n - 2), prev(n - 2), scratch(n - 2);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = std::exp(-0.5 * Omega * prob.x[i] * prob.x[i]);
    prob.normalize(psi);

    const Tridiagonal b_solver(n - 2, 5.0 / 6.0, 1.0 / 12.0);
    const double idx2 = 1.0 / (dx * dx);
    const int n_part = pot.n_particles;

    MeanFieldResult result{};
    double mean_x = prob.mean(psi);
    double energy = prob.energy(psi, mean_x, b_solver, scratch);
    result.energy_trace.push_back(energy);
    long steps = 0;
    double residual = 0.0;
    double dtau = cfg.dtau;
    std::vector<double> half(n - 2);

    for (int stage = 0; stage <= cfg.refinements; ++stage, dtau /= cfg.refine_factor) {
        const double c = dtau / 4.0;
        const Tridiagonal lhs(n - 2, 5.0 / 6.0 + 2.0 * c * idx2, 1.0 / 12.0 - c * idx2);
        const double rhs_d = 5.0 / 6.0 - 2.0 * c * idx2, rhs_e = 1.0 / 12.0 + c * idx2;
        for (;;) {
            if (steps >= cfg.max_steps)
                throw SolverNonConvergence("mean-field solver exhausted " + std::to_string(cfg.max_steps) +
                                               " steps (residual " + std::to_string(residual) + ")",
                                           residual, steps);
            prev = psi;
            const double pair_lin = (n_part - 1) * pot.pair_coupling * mean_x;
            for (std::size_t i = 0; i < psi.size(); ++i) {
                const double v = pot.trap_term * prob.x[i] * prob.x[i] + pair_lin * prob.x[i];
                half[i] = std::exp(-0.5 * dtau * v);
                psi[i] *= half[i];
            }
            apply_tridiag(psi, rhs_d, rhs_e, scratch);
            lhs.solve(scratch);
            psi.swap(scratch);
            for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half[i];
            prob.normalize(psi);
            ++steps;

            residual = 0.0;
            for (std::size_t i = 0; i < psi.size(); ++i) residual = std::max(residual, std::abs(psi[i] - prev[i]));
            residual /= dtau;
            mean_x = prob.mean(psi);
            const double e_new = prob.energy(psi, mean_x, b_solver, scratch);
            const double change = std::abs(e_new - energy) / std::abs(e_new);
            energy = e_new;
            if (steps % cfg.record_every == 0) result.energy_trace.push_back(energy);
            if (change < cfg.energy_tol && residual < cfg.residual_tol) break;
        }
    }

    result.state.grid.resize(n);
    result.state.density.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) result.state.grid[i] = -x_max + static_cast<double>(i) * dx;
    result.state.grid[n / 2] = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) result.state.density[i + 1] = psi[i] * psi[i];
    result.energy = energy;
    result.steps = steps;
    result.residual = residual;
    return result;
}

namespace {

DensityGrid bare_state(const MeanFieldGrid& grid, const SolverConfig& cfg, double omega_trap) {
    return mean_field_ground_state(effective_potential(0.0, 1, omega_trap), grid, cfg).state;
}

}  // namespace

DensityDifference density_difference(const ModelParams& params, const DensityGrid& bare, const MeanFieldGrid& grid,
                                     const SolverConfig& cfg) {
    const auto coupled = mean_field_ground_state(effective_potential(params), grid, cfg).state;
    if (coupled.grid.size() != bare.grid.size()) throw InvalidParameter("bare state lives on a different grid");
    DensityDifference d;
    d.grid = coupled.grid;
    d.n_particles = params.n_particles;
    d.per_particle.resize(d.grid.size());
    d.total.resize(d.grid.size());
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
        d.per_particle[i] = coupled.density[i] - bare.density[i];
        d.total[i] = params.n_particles * d.per_particle[i];
    }
    return d;
}

DensityDifference density_difference(const ModelParams& params, const MeanFieldGrid& grid, const SolverConfig& cfg) {
    params.validate();
    return density_difference(params, bare_state(grid, cfg, params.omega_trap), grid, cfg);
}

ModelParams CouplingFamily::at(int n) const {
    ModelParams p;
    p.lambda = lambda_per_sqrt_n * std::sqrt(static_cast<double>(n));
    p.gamma2 = gamma2;
    p.omega_trap = omega_trap;
    p.n_particles = n;
    p.include_a2 = include_a2;
    p.validate();
    return p;
}

PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidParameter("fit_power_law: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    const std::size_t m = lx.size();
    if (m < 2) throw DegenerateFit("power-law fit needs at least two strictly positive samples");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw DegenerateFit("power-law fit needs distinct x values");
    const double slope = sxy / sxx;
    const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return {slope, std::exp(my - slope * mx), r2};
}

ScalingFit scaling_exponent(const CouplingFamily& family, std::span<const int> n_values, const MeanFieldGrid& grid,
                            const SolverConfig& cfg, unsigned threads) {
    if (n_values.size() < 5) throw InvalidParameter("scaling fit needs at least 5 values of N");
    const auto [lo, hi] = std::minmax_element(n_values.begin(), n_values.end());
    if (*lo < 1 || *hi < 10 * *lo) throw InvalidParameter("values of N must span at least one decade");

    const auto bare = bare_state(grid, cfg, family.omega_trap);
    auto centres = parallel_map(
        n_values.size(),
        [&](std::size_t k) { return density_difference(family.at(n_values[k]), bare, grid, cfg).centre_total(); },
        threads);

    std::vector<double> ns(n_values.begin(), n_values.end());
    const auto fit = fit_power_law(ns, centres);
    return {fit.exponent, fit.prefactor, fit.r_squared, {n_values.begin(), n_values.end()}, centres};
}

}  // namespace polaritonkit
