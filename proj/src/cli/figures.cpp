#include "internal.hpp"

#include "polaritonkit/magnetic_field.hpp"
#include "polaritonkit/meanfield.hpp"
#include "polaritonkit/observables.hpp"
#include "polaritonkit/parallel.hpp"
#include "polaritonkit/photon_stats.hpp"
#include "polaritonkit/spectrum.hpp"

#include <cmath>
#include <optional>

namespace polaritonkit::cli {

namespace {

std::vector<double> linspace(double a, double b, int n) {
    SweepSpec s{"lambda", a, b, n, false};
    return s.values();
}

// [a, b] at a fixed step
std::vector<double> stepped(double a, double b, double step) {
    const int n = static_cast<int>(std::lround((b - a) / step)) + 1;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + i * step;
    return v;
}

std::string tag(double v) { return format_number(v); }

ModelParams at(double lambda, double gamma2, bool a2 = true) {
    ModelParams p;
    p.lambda = lambda;
    p.gamma2 = gamma2;
    p.include_a2 = a2;
    return p;
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

void figure2(Output& out) {
    for (double g : {0.5, 1.0}) {
        CsvTable t{{"lambda", "omega_plus_over_Omega", "omega_minus_over_Omega", "bare_trap", "bare_cavity"}, {}};
        for (double l : linspace(0.0, 3.0, 301)) {
            const auto s = polariton_modes(at(l, g));
            t.add_row(numbers({l, s.omega_plus, *s.omega_minus, 1.0, g}));
        }
        out.table("fig2_gamma2_" + tag(g) + ".csv", t);
    }
    out.manifest()["parameters"] = {{"gamma2", {0.5, 1.0}}, {"lambda_range", {0.0, 3.0}}, {"points", 301}};
}

void figure3(Output& out) {
    const auto grid = linspace(0.05, 3.0, 296);
    for (double l : {0.05, 0.5, 1.0}) {
        CsvTable t{{"gamma2", "omega_plus_over_Omega", "omega_minus_over_Omega", "bare_trap", "bare_cavity"}, {}};
        for (double g : grid) {
            const auto s = polariton_modes(at(l, g));
            t.add_row(numbers({g, s.omega_plus, *s.omega_minus, 1.0, g}));
        }
        out.table("fig3_lambda_" + tag(l) + ".csv", t);
    }
    out.manifest()["parameters"] = {{"lambda", {0.05, 0.5, 1.0}}, {"gamma2_range", {0.05, 3.0}}, {"points", 296}};
}

void figure4(Output& out) {
    const double gammas[] = {0.5, 1.0, 2.0, 5.0};
    CsvTable vs_lambda{{"lambda"}, {}};
    for (double g : gammas) vs_lambda.header.push_back("mass_ratio_gamma2_" + tag(g));
    for (double l : linspace(0.0, 10.0, 201)) {
        std::vector<std::string> row{format_number(l)};
        for (double g : gammas) row.push_back(format_number(effective_mass(at(l, g)).mass_ratio));
        vs_lambda.add_row(std::move(row));
    }
    out.table("fig4_meff_vs_lambda.csv", vs_lambda);

    // companion: effective mass against γ₂ at fixed λ, and its resonance maximum
    const auto grid = stepped(0.1, 3.0, 0.01);
    const double lambdas[] = {0.5, 1.0, 2.0};
    CsvTable vs_gamma{{"gamma2"}, {}};
    for (double l : lambdas) vs_gamma.header.push_back("mass_ratio_lambda_" + tag(l));
    for (double g : grid) {
        std::vector<std::string> row{format_number(g)};
        for (double l : lambdas) row.push_back(format_number(effective_mass(at(l, g)).mass_ratio));
        vs_gamma.add_row(std::move(row));
    }
    out.table("fig4_meff_vs_gamma2.csv", vs_gamma);
    Json arg = Json::array();
    for (double l : lambdas) {
        const auto r = resonance_argmax(l, grid);
        arg.push_back({{"lambda", l}, {"gamma2", r.gamma2}, {"mass_ratio", r.mass_ratio}});
    }
    out.manifest()["resonance_argmax"] = arg;

    CsvTable dens{{"R_natural_units"}, {}};
    const double dl[] = {0.0, 0.5, 1.0, 2.0};
    std::vector<CmDensityProfile> profiles;
    for (double l : dl) {
        dens.header.push_back("n_cm_lambda_" + tag(l));
        profiles.push_back(cm_density(at(l, 1.0)));
    }
    for (std::size_t i = 0; i < profiles[0].grid.size(); ++i) {
        std::vector<std::string> row{format_number(profiles[0].grid[i])};
        for (const auto& p : profiles) row.push_back(format_number(p.values[i]));
        dens.add_row(std::move(row));
    }
    out.table("fig4_density_gamma2_1.csv", dens);
    out.manifest()["parameters"] = {{"gamma2", {0.5, 1.0, 2.0, 5.0}}, {"lambda_range", {0.0, 10.0}}};
}

void figure5(Output& out) {
    const std::vector<int> ns{8, 16, 32, 64, 128};
    const double couplings[] = {0.05, 0.5, kStrongCouplingPerSqrtN};
    const MeanFieldGrid grid;
    const SolverConfig cfg;
    const auto bare = mean_field_ground_state(effective_potential(0.0, 1), grid, cfg).state;

    struct Job {
        double coupling;
        int n;
    };
    std::vector<Job> jobs;
    for (double c : couplings)
        for (int n : ns) jobs.push_back({c, n});
    auto diffs = parallel_map(jobs.size(), [&](std::size_t k) {
        CouplingFamily fam;
        fam.lambda_per_sqrt_n = jobs[k].coupling;
        return density_difference(fam.at(jobs[k].n), bare, grid, cfg);
    });

    // (a) profiles at the weakest coupling
    CsvTable prof{{"x_natural_units"}, {}};
    for (int n : ns) prof.header.push_back("delta_n_N_" + std::to_string(n));
    for (std::size_t i = 0; i < bare.grid.size(); ++i) {
        std::vector<std::string> row{format_number(bare.grid[i])};
        for (std::size_t k = 0; k < ns.size(); ++k) row.push_back(format_number(diffs[k].total[i]));
        prof.add_row(std::move(row));
    }
    out.table("fig5a_density_difference.csv", prof);

    // (b) centre values and fits
    CsvTable centre{{"n_particles"}, {}};
    for (double c : couplings) centre.header.push_back("delta_n_center_lambda_per_sqrt_n_" + tag(c));
    for (std::size_t j = 0; j < ns.size(); ++j) {
        std::vector<std::string> row{format_number(ns[j])};
        for (std::size_t c = 0; c < std::size(couplings); ++c)
            row.push_back(format_number(diffs[c * ns.size() + j].centre_total()));
        centre.add_row(std::move(row));
    }
    out.table("fig5b_center_scaling.csv", centre);

    Json fits = Json::array();
    std::vector<double> xs(ns.begin(), ns.end());
    for (std::size_t c = 0; c < std::size(couplings); ++c) {
        std::vector<double> ys;
        for (std::size_t j = 0; j < ns.size(); ++j) ys.push_back(diffs[c * ns.size() + j].centre_total());
        const auto f = fit_power_law(xs, ys);
        fits.push_back({{"lambda_per_sqrt_n", couplings[c]},
                        {"exponent_z", f.exponent},
                        {"prefactor", f.prefactor},
                        {"r_squared", f.r_squared}});
    }
    out.manifest()["fits"] = fits;
    out.manifest()["parameters"] = {{"gamma2", 1.0},
                                    {"n_values", ns},
                                    {"lambda_per_sqrt_n", {0.05, 0.5, kStrongCouplingPerSqrtN}},
                                    {"grid_points", grid.n_points},
                                    {"x_max_over_sigma0", 8},
                                    {"dtau", cfg.dtau},
                                    {"refinements", cfg.refinements}};
    out.note("delta_n is N times the per-particle density difference; N grid 8..128");
}

void figure6(Output& out) {
    const double gammas[] = {0.1, 0.5, 1.0, 2.0};
    CsvTable occ{{"lambda"}, {}}, tp{{"lambda"}, {}};
    for (double g : gammas) {
        occ.header.push_back("occupation_gamma2_" + tag(g));
        tp.header.push_back("two_point_gamma2_" + tag(g));
    }
    for (double l : linspace(0.0, 4.0, 201)) {
        std::vector<std::string> a{format_number(l)}, b{format_number(l)};
        for (double g : gammas) {
            a.push_back(format_number(photon_occupation(at(l, g))));
            b.push_back(format_number(two_point(at(l, g))));
        }
        occ.add_row(std::move(a));
        tp.add_row(std::move(b));
    }
    out.table("fig6a_occupation.csv", occ);
    out.table("fig6b_two_point.csv", tp);
    out.manifest()["parameters"] = {{"gamma2", {0.1, 0.5, 1.0, 2.0}}, {"lambda_range", {0.0, 4.0}}};
}

void figure7(Output& out) {
    const double gammas[] = {0.5, 1.0, 2.0};
    CsvTable t{{"lambda"}, {}};
    for (double g : gammas) t.header.push_back("mandel_q_gamma2_" + tag(g));
    for (int i = 1; i <= 200; ++i) {
        const double l = 0.05 * i;
        std::vector<std::string> row{format_number(l)};
        for (double g : gammas) row.push_back(format_number(mandel_q(at(l, g))));
        t.add_row(std::move(row));
    }
    out.table("fig7_mandel_q.csv", t);
    out.manifest()["parameters"] = {{"gamma2", {0.5, 1.0, 2.0}}, {"lambda_step", 0.05}, {"lambda_range", {0.05, 10.0}}};
}

void figure8(Output& out) {
    CsvTable t{{"gamma1", "omega_plus_over_Omega", "omega_minus_sq_over_Omega2", "omega_minus_over_Omega", "stable",
                "occupation_per_mode"},
               {}};
    for (double g1 : linspace(0.0, 1.5, 301)) {
        const auto p = at(g1, 1.0, false);
        const auto s = polariton_modes(p);
        std::optional<double> occ;
        if (s.stable) occ = photon_occupation(p);
        t.add_row({format_number(g1), format_number(s.omega_plus), format_number(s.omega_minus_sq),
                   opt_number(s.omega_minus), s.stable ? "1" : "0", opt_number(occ)});
    }
    out.table("fig8_no_a2.csv", t);
    out.manifest()["parameters"] = {{"gamma2", 1.0}, {"include_a2", false}, {"gamma1_range", {0.0, 1.5}}};
    out.note("gamma1 = omega_d/Omega = lambda at gamma2 = 1");
}

void figure9(Output& out) {
    const double lambda = 0.1, vf = 2.0;
    const double gammas[] = {1.0, 1.1, 1.25, 1.5};
    CsvTable t{{"omega_b_over_Omega"}, {}};
    for (double g : gammas) t.header.push_back("p_lz_gamma2_" + tag(g));
    for (double g : gammas) t.header.push_back("p_lz_normalized_gamma2_" + tag(g));
    for (double r : linspace(0.0, 1.0, 201)) {
        std::vector<std::string> row{format_number(r)};
        std::vector<double> p;
        for (double g : gammas) p.push_back(landau_zener(at(lambda, g), r, vf));
        for (double v : p) row.push_back(format_number(v));
        for (double v : p) row.push_back(format_number(v / p[0]));
        t.add_row(std::move(row));
    }
    out.table("fig9_landau_zener.csv", t);
    Json crit = Json::array();
    for (double g : {1.1, 1.25, 1.5}) {
        const auto c = critical_field(at(lambda, 1.0), g, vf);
        crit.push_back({{"gamma2", g}, {"critical_omega_b_over_Omega", c ? Json(*c) : Json(nullptr)}});
    }
    out.manifest()["critical_fields"] = crit;
    out.manifest()["parameters"] = {{"lambda", lambda}, {"velocity_factor", vf}, {"gamma2", {1.0, 1.1, 1.25, 1.5}}};
    out.note("normalized columns divide by the resonant (gamma2 = 1) probability");
}

void figure10(Output& out) {
    const double omega_b = 0.5;
    const auto grid = linspace(0.1, 3.0, 291);
    CsvTable a{{"gamma2", "omega_plus_b_over_Omega", "omega_minus_b_over_Omega", "omega_plus_over_Omega",
                "omega_minus_over_Omega"},
               {}};
    for (double g : grid) {
        const auto p = at(0.1, g);
        const auto b = bfield_spectrum(p, omega_b);
        const auto s = polariton_modes(p);
        a.add_row(numbers({g, b.omega_plus_b, b.omega_minus_b, s.omega_plus, *s.omega_minus}));
    }
    out.table("fig10a_branches_lambda_0.1.csv", a);

    const double lambdas[] = {0.1, 0.5, 1.0};
    CsvTable d{{"gamma2"}, {}};
    for (double l : lambdas) {
        d.header.push_back("delta_plus_lambda_" + tag(l));
        d.header.push_back("delta_minus_lambda_" + tag(l));
    }
    for (double g : grid) {
        std::vector<std::string> row{format_number(g)};
        for (double l : lambdas) {
            const auto b = bfield_spectrum(at(l, g), omega_b);
            row.push_back(format_number(b.delta_plus));
            row.push_back(format_number(b.delta_minus));
        }
        d.add_row(std::move(row));
    }
    out.table("fig10b_shifts.csv", d);
    out.manifest()["parameters"] = {{"omega_b_over_Omega", omega_b}, {"lambda", {0.1, 0.5, 1.0}},
                                    {"gamma2_range", {0.1, 3.0}}};
}

void figure11(Output& out) {
    const double lambda = 0.1;
    const double fields[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    CsvTable a{{"gamma2"}, {}};
    for (double r : fields) a.header.push_back("gap_b_omega_b_" + tag(r));
    for (double g : linspace(0.5, 3.0, 251)) {
        std::vector<std::string> row{format_number(g)};
        for (double r : fields) row.push_back(format_number(bfield_spectrum(at(lambda, g), r).gap_b));
        a.add_row(std::move(row));
    }
    out.table("fig11a_gap_vs_gamma2.csv", a);

    const double gammas[] = {1.0, 1.25, 1.5, 2.0};
    CsvTable b{{"omega_b_over_Omega"}, {}};
    for (double g : gammas) b.header.push_back("gap_b_gamma2_" + tag(g));
    for (double r : linspace(0.0, 1.0, 201)) {
        std::vector<std::string> row{format_number(r)};
        for (double g : gammas) row.push_back(format_number(bfield_spectrum(at(lambda, g), r).gap_b));
        b.add_row(std::move(row));
    }
    out.table("fig11b_gap_vs_omega_b.csv", b);
    out.manifest()["parameters"] = {{"lambda", lambda}, {"omega_b_over_Omega", {0.0, 0.25, 0.5, 0.75, 1.0}},
                                    {"gamma2", {1.0, 1.25, 1.5, 2.0}}};
}

}  // namespace

void run_figure(int number, Output& out) {
    switch (number) {
        case 2: return figure2(out);
        case 3: return figure3(out);
        case 4: return figure4(out);
        case 5: return figure5(out);
        case 6: return figure6(out);
        case 7: return figure7(out);
        case 8: return figure8(out);
        case 9: return figure9(out);
        case 10: return figure10(out);
        case 11: return figure11(out);
        default: throw UsageError("figure number must be in 2..11");
    }
}

}  // namespace polaritonkit::cli
