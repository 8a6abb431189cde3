#include "internal.hpp"

#include "polaritonkit/errors.hpp"
#include "polaritonkit/fock_oracle.hpp"
#include "polaritonkit/magnetic_field.hpp"
#include "polaritonkit/meanfield.hpp"
#include "polaritonkit/model.hpp"
#include "polaritonkit/observables.hpp"
#include "polaritonkit/parallel.hpp"
#include "polaritonkit/photon_stats.hpp"
#include "polaritonkit/spectrum.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace polaritonkit::cli {

Output::Output(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    manifest_["tool"] = "polaritonkit";
    manifest_["version"] = "0.1.0";
    manifest_["command"] = nullptr;
    manifest_["parameters"] = Json::object();
    manifest_["outputs"] = Json::array();
    manifest_["notes"] = Json::array();
}

void Output::table(const std::string& filename, const CsvTable& table) {
    write_text_file(dir_ / filename, table.render());
    manifest_["outputs"].push_back(filename);
}

void Output::finish(const std::string& command) {
    manifest_["command"] = command;
    std::string name = command;
    for (char& c : name)
        if (c == ' ') c = '_';
    write_text_file(dir_ / (name + "_manifest.json"), manifest_.dump(2) + "\n");
}

namespace {

class OracleMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    double lambda{0.0};
    double gamma2{1.0};
    double omega_trap{1.0};
    int n{1};
    bool no_a2{false};
    double omega_b{0.0};
    double velocity_factor{2.0};
    std::string out{"out"};
    std::string config;
    std::string sweep;
    std::vector<int> n_values{8, 16, 32, 64, 128};
    int figure{0};
};

struct Resolved {
    ModelParams params;
    double omega_b{0.0};
    double velocity_factor{2.0};
    std::optional<SweepSpec> sweep;
    bool lambda_set{false};
};

struct Point {
    ModelParams p;
    double omega_b;
    double velocity_factor;
};

std::string empty_or(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

class App {
public:
    App()
        : app_("Trapped particles coupled to a single cavity mode: polaritons, photon statistics, mean field.",
               "polaritonkit") {
        app_.require_subcommand(1);
        app_.fallthrough();

        add("branches", "Upper and lower polariton frequencies", [this] { branches(); });
        add("meff", "Effective mass ratio and FWHM ratio", [this] { meff(); });
        add("density", "Peak-normalized centre-of-mass density profile", [this] { density(); });
        add("photons", "Ground-state photon statistics per mode", [this] { photons(); });
        add("mandel", "Mandel Q parameter per mode", [this] { mandel(); });
        add("noa2", "Spectrum and photon occupation without the A^2 term", [this] { noa2(); });
        add("bfield", "Polariton shifts and gap in a weak magnetic field", [this] { bfield(); });
        add("lz", "Landau-Zener probability across the avoided crossing", [this] { lz(); });
        add("mf-ground", "Mean-field ground-state density and density difference", [this] { mf_ground(); });
        auto* scaling = add("mf-scaling", "N-scaling of the central density enhancement (--lambda is lambda/sqrt(N))",
                            [this] { mf_scaling(); });
        scaling->add_option("--n-values", opt_.n_values, "Particle numbers")->delimiter(',');
        add("oracle-check", "Closed forms against truncated-Fock exact diagonalization", [this] { oracle_check(); });
        auto* fig = add("figure", "Reproduce one figure's data (2..11)", [this] { figure(); });
        fig->add_option("number", opt_.figure, "Figure number")->required()->check(CLI::Range(2, 11));
    }

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        out_ = &out;
        err_ = &err;
        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app_.parse(reversed);
            action_();
            return kOk;
        } catch (const CLI::CallForHelp&) {
            out << app_.help();
            return kOk;
        } catch (const CLI::CallForAllHelp&) {
            out << app_.help("", CLI::AppFormatMode::All);
            return kOk;
        } catch (const CLI::ParseError& e) {
            return fail("usage", kUsage, e.what());
        } catch (const UsageError& e) {
            return fail("usage", kUsage, e.what());
        } catch (const InvalidParameter& e) {
            return fail("invalid_parameter", kInvalidInput, e.what());
        } catch (const SolverNonConvergence& e) {
            return fail("solver_nonconvergence", kNonConvergence, e.what());
        } catch (const UnconvergedState& e) {
            return fail("oracle_unconverged", kNonConvergence, e.what());
        } catch (const DegenerateFit& e) {
            return fail("degenerate_fit", kNonConvergence, e.what());
        } catch (const InstabilityError& e) {
            return fail("instability", kUndefined, e.what());
        } catch (const UndefinedAtDecoupling& e) {
            return fail("undefined_at_decoupling", kUndefined, e.what());
        } catch (const IoError& e) {
            return fail("io", kIo, e.what());
        } catch (const OracleMismatch& e) {
            return fail("oracle_mismatch", kOracleMismatch, e.what());
        } catch (const std::exception& e) {
            return fail("internal", kInternal, e.what());
        }
    }

private:
    CLI::App* add(const std::string& name, const std::string& help, std::function<void()> fn) {
        auto* sub = app_.add_subcommand(name, help);
        sub->add_option("--lambda", opt_.lambda, "Collective light-matter coupling lambda");
        sub->add_option("--gamma2", opt_.gamma2, "Cavity/trap frequency ratio omega/Omega");
        sub->add_option("--omega-trap", opt_.omega_trap, "Trap frequency Omega");
        sub->add_option("--n", opt_.n, "Particle number N");
        sub->add_flag("--no-a2", opt_.no_a2, "Drop the diamagnetic A^2 term");
        sub->add_option("--omega-b", opt_.omega_b, "Magnetic frequency ratio omega_B/Omega");
        sub->add_option("--velocity-factor", opt_.velocity_factor, "Landau-Zener factor hbar Omega^2/(2|v|)");
        sub->add_option("--out", opt_.out, "Output directory")->capture_default_str();
        sub->add_option("--config", opt_.config, "key = value parameter file");
        sub->add_option("--sweep", opt_.sweep, "axis:start:stop:count[:log]");
        sub->callback([this, name, fn] {
            command_ = name;
            action_ = fn;
        });
        subs_.push_back(sub);
        return sub;
    }

    bool given(const std::string& flag) const {
        for (auto* s : subs_)
            if (s->parsed()) return s->get_option(flag)->count() > 0;
        return false;
    }

    Resolved resolve() const {
        Resolved r;
        r.velocity_factor = 2.0;
        if (!opt_.config.empty()) {
            auto kv = read_config_file(opt_.config);
            r.lambda_set = kv.count("lambda") > 0;
            apply_model_keys(kv, r.params);
            if (auto it = kv.find("omega_b"); it != kv.end()) {
                r.omega_b = parse_double("omega_b", it->second);
                kv.erase(it);
            }
            if (auto it = kv.find("velocity_factor"); it != kv.end()) {
                r.velocity_factor = parse_double("velocity_factor", it->second);
                kv.erase(it);
            }
            if (!kv.empty()) throw InvalidParameter("unknown config key '" + kv.begin()->first + "'");
        }
        if (given("--lambda")) {
            r.params.lambda = opt_.lambda;
            r.lambda_set = true;
        }
        if (given("--gamma2")) r.params.gamma2 = opt_.gamma2;
        if (given("--omega-trap")) r.params.omega_trap = opt_.omega_trap;
        if (given("--n")) r.params.n_particles = opt_.n;
        if (given("--no-a2")) r.params.include_a2 = !opt_.no_a2;
        if (given("--omega-b")) r.omega_b = opt_.omega_b;
        if (given("--velocity-factor")) r.velocity_factor = opt_.velocity_factor;
        if (!opt_.sweep.empty()) r.sweep = SweepSpec::parse(opt_.sweep);
        r.params.validate();
        if (!std::isfinite(r.omega_b) || r.omega_b < 0.0) throw InvalidParameter("omega_b must be finite and >= 0");
        if (!std::isfinite(r.velocity_factor) || r.velocity_factor <= 0.0)
            throw InvalidParameter("velocity_factor must be finite and > 0");
        return r;
    }

    Output open(const Resolved& r) const {
        Output out(opt_.out);
        auto& p = out.manifest()["parameters"];
        p["lambda"] = r.params.lambda;
        p["gamma2"] = r.params.gamma2;
        p["omega_trap"] = r.params.omega_trap;
        p["n_particles"] = r.params.n_particles;
        p["include_a2"] = r.params.include_a2;
        p["omega_b"] = r.omega_b;
        p["velocity_factor"] = r.velocity_factor;
        if (r.sweep) {
            out.manifest()["sweep"] = {{"axis", r.sweep->axis},
                                       {"start", r.sweep->start},
                                       {"stop", r.sweep->stop},
                                       {"count", r.sweep->count},
                                       {"log", r.sweep->log}};
        } else {
            out.manifest()["sweep"] = nullptr;
        }
        return out;
    }

    // Sweep points (or the single resolved point). `axes` lists the sweepable axes.
    std::vector<Point> points(const Resolved& r, std::initializer_list<const char*> axes) const {
        if (!r.sweep) return {{r.params, r.omega_b, r.velocity_factor}};
        bool ok = false;
        for (const char* a : axes) ok = ok || r.sweep->axis == a;
        if (!ok) throw UsageError("command '" + command_ + "' cannot sweep '" + r.sweep->axis + "'");
        std::vector<Point> pts;
        for (double v : r.sweep->values()) {
            Point pt{r.params, r.omega_b, r.velocity_factor};
            if (r.sweep->axis == "lambda") pt.p.lambda = v;
            if (r.sweep->axis == "gamma2") pt.p.gamma2 = v;
            if (r.sweep->axis == "omega_b") pt.omega_b = v;
            pt.p.validate();
            pts.push_back(pt);
        }
        return pts;
    }

    void no_sweep(const Resolved& r) const {
        if (r.sweep) throw UsageError("command '" + command_ + "' does not take --sweep");
    }

    template <class RowFn>
    void tabulate(const Resolved& r, std::initializer_list<const char*> axes, std::vector<std::string> header,
                  RowFn row) {
        const auto pts = points(r, axes);
        auto out = open(r);
        CsvTable t{std::move(header), {}};
        auto rows = parallel_map(pts.size(), [&](std::size_t i) { return row(pts[i]); });
        for (auto& cells : rows) t.add_row(std::move(cells));
        out.table(command_ + ".csv", t);
        out.finish(command_);
    }

    void branches() {
        const auto r = resolve();
        tabulate(r, {"lambda", "gamma2"},
                 {"lambda", "gamma2", "omega_plus_over_Omega", "omega_minus_over_Omega", "omega_minus_sq_over_Omega2",
                  "mixing_lambda", "alpha", "stable"},
                 [](const Point& pt) {
                     const auto s = polariton_modes(pt.p);
                     const double O = pt.p.omega_trap;
                     std::optional<double> lower;
                     if (s.omega_minus) lower = *s.omega_minus / O;
                     return std::vector<std::string>{format_number(pt.p.lambda), format_number(pt.p.gamma2),
                                                     format_number(s.omega_plus / O), empty_or(lower),
                                                     format_number(s.omega_minus_sq / (O * O)),
                                                     format_number(s.mixing_lambda), format_number(s.alpha),
                                                     s.stable ? "1" : "0"};
                 });
    }

    void meff() {
        const auto r = resolve();
        tabulate(r, {"lambda", "gamma2"}, {"lambda", "gamma2", "mass_ratio", "fwhm_ratio"}, [](const Point& pt) {
            const auto m = effective_mass(pt.p);
            return numbers({pt.p.lambda, pt.p.gamma2, m.mass_ratio, m.fwhm_ratio});
        });
    }

    void density() {
        const auto r = resolve();
        no_sweep(r);
        const auto prof = cm_density(r.params);
        auto out = open(r);
        CsvTable t{{"R_natural_units", "n_cm_peak_normalized"}, {}};
        for (std::size_t i = 0; i < prof.grid.size(); ++i) t.add_row(numbers({prof.grid[i], prof.values[i]}));
        out.manifest()["mass_ratio"] = effective_mass(r.params).mass_ratio;
        out.note("grid spans +-6 bare widths sigma0 = 1/sqrt(2 m Omega) with 1201 points");
        out.table("density.csv", t);
        out.finish(command_);
    }

    void photons() {
        const auto r = resolve();
        tabulate(r, {"lambda", "gamma2"},
                 {"lambda", "gamma2", "occupation_per_mode", "two_point_per_mode", "four_point_per_mode",
                  "mandel_q_per_mode"},
                 [](const Point& pt) {
                     const auto s = photon_stats(pt.p);
                     return std::vector<std::string>{format_number(pt.p.lambda), format_number(pt.p.gamma2),
                                                     format_number(s.occupation), format_number(s.two_point),
                                                     format_number(s.four_point), empty_or(s.mandel_q)};
                 });
    }

    void mandel() {
        const auto r = resolve();
        tabulate(r, {"lambda", "gamma2"}, {"lambda", "gamma2", "mandel_q_per_mode"}, [](const Point& pt) {
            return numbers({pt.p.lambda, pt.p.gamma2, mandel_q(pt.p)});
        });
    }

    void noa2() {
        auto r = resolve();
        r.params.include_a2 = false;
        tabulate(r, {"lambda", "gamma2"},
                 {"lambda", "gamma2", "gamma1", "omega_plus_over_Omega", "omega_minus_sq_over_Omega2",
                  "omega_minus_over_Omega", "stable", "occupation_per_mode"},
                 [](const Point& pt) {
                     const auto s = polariton_modes(pt.p);
                     const double O = pt.p.omega_trap;
                     std::optional<double> lower, occ;
                     if (s.omega_minus) lower = *s.omega_minus / O;
                     if (s.stable) occ = photon_occupation(pt.p);
                     return std::vector<std::string>{
                         format_number(pt.p.lambda), format_number(pt.p.gamma2),
                         format_number(pt.p.lambda * std::sqrt(pt.p.gamma2)), format_number(s.omega_plus / O),
                         format_number(s.omega_minus_sq / (O * O)), empty_or(lower), s.stable ? "1" : "0",
                         empty_or(occ)};
                 });
    }

    void warn_weak_field(const Resolved& r) const {
        double top = r.omega_b;
        if (r.sweep && r.sweep->axis == "omega_b") top = r.sweep->stop;
        if (top > 0.5) *err_ << "warning: omega_b/Omega > 0.5 is outside the weak-field regime\n";
    }

    void bfield() {
        const auto r = resolve();
        warn_weak_field(r);
        tabulate(r, {"lambda", "gamma2", "omega_b"},
                 {"lambda", "gamma2", "omega_b_over_Omega", "delta_plus_over_Omega", "delta_minus_over_Omega",
                  "omega_plus_b_over_Omega", "omega_minus_b_over_Omega", "gap_b_over_Omega"},
                 [](const Point& pt) {
                     const auto b = bfield_spectrum(pt.p, pt.omega_b);
                     const double O = pt.p.omega_trap;
                     return numbers({pt.p.lambda, pt.p.gamma2, pt.omega_b, b.delta_plus / O, b.delta_minus / O,
                                     b.omega_plus_b / O, b.omega_minus_b / O, b.gap_b / O});
                 });
    }

    void lz() {
        const auto r = resolve();
        warn_weak_field(r);
        tabulate(r, {"lambda", "gamma2", "omega_b"},
                 {"lambda", "gamma2", "omega_b_over_Omega", "velocity_factor", "gap_b_over_Omega", "p_lz"},
                 [](const Point& pt) {
                     const double gap = bfield_spectrum(pt.p, pt.omega_b).gap_b / pt.p.omega_trap;
                     return numbers({pt.p.lambda, pt.p.gamma2, pt.omega_b, pt.velocity_factor, gap,
                                     landau_zener(pt.p, pt.omega_b, pt.velocity_factor)});
                 });
    }

    void mf_ground() {
        const auto r = resolve();
        no_sweep(r);
        const MeanFieldGrid grid;
        const SolverConfig cfg;
        const auto pot = effective_potential(r.params);
        const auto coupled = mean_field_ground_state(pot, grid, cfg);
        const auto bare = mean_field_ground_state(effective_potential(0.0, 1, r.params.omega_trap), grid, cfg);
        auto out = open(r);
        CsvTable t{{"x_natural_units", "rho_coupled", "rho_bare", "delta_rho_per_particle", "delta_n_total"}, {}};
        const int n = r.params.n_particles;
        for (std::size_t i = 0; i < coupled.state.grid.size(); ++i) {
            const double d = coupled.state.density[i] - bare.state.density[i];
            t.add_row(numbers({coupled.state.grid[i], coupled.state.density[i], bare.state.density[i], d, n * d}));
        }
        auto& m = out.manifest();
        m["delta_m"] = pot.delta_m;
        m["trap_term"] = pot.trap_term;
        m["pair_coupling"] = pot.pair_coupling;
        m["energy_per_particle"] = coupled.energy;
        m["steps"] = coupled.steps;
        m["variance"] = coupled.state.variance();
        out.note("lambda is the collective coupling for n_particles; densities are per particle");
        out.table("mf-ground.csv", t);
        out.finish(command_);
    }

    void mf_scaling() {
        const auto r = resolve();
        no_sweep(r);
        CouplingFamily fam;
        fam.lambda_per_sqrt_n = r.lambda_set ? r.params.lambda : 0.05;
        fam.gamma2 = r.params.gamma2;
        fam.omega_trap = r.params.omega_trap;
        fam.include_a2 = r.params.include_a2;
        const auto fit = scaling_exponent(fam, opt_.n_values);
        auto out = open(r);
        CsvTable t{{"n_particles", "lambda", "delta_n_center"}, {}};
        for (std::size_t i = 0; i < fit.n_values.size(); ++i)
            t.add_row(numbers({static_cast<double>(fit.n_values[i]), fam.at(fit.n_values[i]).lambda,
                               fit.center_values[i]}));
        auto& m = out.manifest();
        m["lambda_per_sqrt_n"] = fam.lambda_per_sqrt_n;
        m["n_values"] = fit.n_values;
        m["fit"] = {{"exponent_z", fit.exponent_z}, {"prefactor", fit.prefactor}, {"r_squared", fit.r_squared}};
        out.note("delta_n_center = N * (rho_coupled(0) - rho_bare(0)); fit is least squares in log-log");
        out.table("mf-scaling.csv", t);
        out.finish(command_);
        *out_ << "z = " << format_number(fit.exponent_z) << "\n";
    }

    void oracle_check() {
        const auto r = resolve();
        no_sweep(r);
        const auto& p = r.params;
        const auto s = polariton_modes(p);
        require_stable(s);
        const auto state = solve_converged(p);
        if (!state.converged) throw UnconvergedState("oracle energy did not settle by n_cut = " + std::to_string(state.n_cut));
        const auto stats = photon_stats(p);
        struct Row {
            const char* name;
            double analytic;
            double oracle;
        };
        const Row rows[] = {
            {"zero_point_energy", 0.5 * (s.omega_plus + *s.omega_minus), state.energy},
            {"occupation", stats.occupation, measure(state, Observable::occupation)},
            {"two_point", stats.two_point, measure(state, Observable::two_point)},
            {"four_point", stats.four_point, measure(state, Observable::four_point)},
            {"x_variance", cm_position_variance(p), measure(state, Observable::x_variance)},
            {"p_variance", cm_momentum_variance(p), measure(state, Observable::p_variance)},
        };
        constexpr double kTol = 1e-6;
        auto out = open(r);
        CsvTable t{{"quantity", "analytic", "oracle", "abs_delta", "rel_delta", "pass"}, {}};
        bool all = true;
        for (const auto& row : rows) {
            const double abs_d = std::abs(row.analytic - row.oracle);
            const double rel = row.analytic != 0.0 ? abs_d / std::abs(row.analytic) : abs_d;
            const bool pass = rel <= kTol;
            all = all && pass;
            t.add_row({row.name, format_number(row.analytic), format_number(row.oracle), format_number(abs_d),
                       format_number(rel), pass ? "1" : "0"});
            *out_ << row.name << " analytic=" << format_number(row.analytic) << " oracle=" << format_number(row.oracle)
                  << " rel=" << format_number(rel) << (pass ? " ok" : " MISMATCH") << "\n";
        }
        auto& m = out.manifest();
        m["n_cut"] = state.n_cut;
        m["energy_change_last_step"] = state.energy_change;
        m["tolerance_relative"] = kTol;
        out.table("oracle-check.csv", t);
        out.finish(command_);
        if (!all) throw OracleMismatch("analytic and oracle values differ by more than 1e-6 (relative)");
    }

    void figure() {
        const auto r = resolve();
        no_sweep(r);
        Output out(opt_.out);
        run_figure(opt_.figure, out);
        out.finish("figure_" + std::to_string(opt_.figure));
    }

    int fail(const char* code, int exit, const std::string& message) const {
        std::string esc;
        for (char c : message) {
            if (c == '"' || c == '\\') esc += '\\';
            esc += c == '\n' ? ' ' : c;
        }
        *err_ << "error code=" << code << " exit=" << exit << " message=\"" << esc << "\"\n";
        return exit;
    }

    CLI::App app_;
    Options opt_;
    std::vector<CLI::App*> subs_;
    std::string command_;
    std::function<void()> action_;
    std::ostream* out_{nullptr};
    std::ostream* err_{nullptr};
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    App app;
    try {
        return app.run(args, out, err);
    } catch (...) {
        err << "error code=internal exit=1 message=\"unexpected failure\"\n";
        return kInternal;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace polaritonkit::cli
