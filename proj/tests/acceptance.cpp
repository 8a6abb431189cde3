// Acceptance checks. `acceptance` runs all criteria; `acceptance N` runs one.
// Prints one PASS/FAIL line per criterion and exits nonzero if any failed.

#include "polaritonkit/cli.hpp"
#include "polaritonkit/fock_oracle.hpp"
#include "polaritonkit/magnetic_field.hpp"
#include "polaritonkit/meanfield.hpp"
#include "polaritonkit/observables.hpp"
#include "polaritonkit/parallel.hpp"
#include "polaritonkit/photon_stats.hpp"
#include "polaritonkit/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace polaritonkit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    v.back() = b;
    return v;
}

double rel(double value, double reference) {
    const double d = std::abs(value - reference);
    return reference != 0.0 ? d / std::abs(reference) : d;
}

Verdict spectral_identities() {
    Timer t;
    double worst_sum = 0.0, worst_prod = 0.0;
    for (double lambda : linspace(0.0, 10.0, 100)) {
        for (double g2 : linspace(0.05, 20.0, 100)) {
            const ModelParams p{lambda, g2};
            const auto s = polariton_modes(p);
            const auto f = derive(p);
            const double O2 = p.omega_trap * p.omega_trap;
            worst_sum = std::max(worst_sum,
                                 std::abs(s.omega_plus_sq + s.omega_minus_sq - (f.omega_tilde * f.omega_tilde + O2)) / O2);
            worst_prod = std::max(worst_prod,
                                  std::abs(s.omega_plus * s.omega_minus.value_or(NAN) - f.omega_cavity * p.omega_trap) / O2);
        }
    }
    const double secs = t.seconds();
    const bool ok = worst_sum <= 1e-12 && worst_prod <= 1e-12 && secs < 1.0;
    return {ok, fmt("max sum dev %.3g, max product dev %.3g, %.3f s", worst_sum, worst_prod, secs)};
}

Verdict oracle_equivalence() {
    Timer t;
    // low-discrepancy sample of λ ∈ (0, 2], γ₂ ∈ [0.2, 5] (log-uniform)
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    std::vector<ModelParams> points;
    for (int i = 1; i <= 20; ++i) {
        const double u = std::fmod(i * phi, 1.0);
        const double v = std::fmod(i * std::sqrt(2.0), 1.0);
        points.push_back({2.0 * u, 0.2 * std::pow(25.0, v)});
    }
    const auto worst = parallel_map(points.size(), [&](std::size_t k) {
        const auto& p = points[k];
        const auto s = polariton_modes(p);
        const auto gs = solve_converged(p);
        const auto stats = photon_stats(p);
        double w = rel(gs.energy, 0.5 * (s.omega_plus + *s.omega_minus));
        w = std::max(w, rel(measure(gs, Observable::occupation), stats.occupation));
        w = std::max(w, rel(measure(gs, Observable::two_point), stats.two_point));
        w = std::max(w, rel(measure(gs, Observable::four_point), stats.four_point));
        w = std::max(w, rel(measure(gs, Observable::x_variance), cm_position_variance(p)));
        return w;
    });
    const double max_rel = *std::max_element(worst.begin(), worst.end());
    const double secs = t.seconds();
    return {max_rel <= 1e-6 && secs < 30.0,
            fmt("20 points, worst relative deviation %.3g, %.2f s", max_rel, secs)};
}

Verdict decoupling_limits() {
    double branch = 0.0, mass = 0.0, stats = 0.0;
    for (double g2 : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        const ModelParams p{1e-6, g2};
        const auto s = polariton_modes(p);
        const double w = g2 * p.omega_trap, O = p.omega_trap;
        branch = std::max({branch, std::abs(s.omega_plus - std::max(w, O)), std::abs(*s.omega_minus - std::min(w, O))});
        mass = std::max(mass, effective_mass(p).mass_ratio - 1.0);
        const auto ps = photon_stats(p);
        stats = std::max({stats, ps.occupation, std::abs(ps.two_point), ps.four_point});
    }
    return {branch <= 1e-5 && mass <= 1e-5 && stats <= 1e-10,
            fmt("branch dev %.3g, m_eff-m %.3g, photon stats %.3g", branch, mass, stats)};
}

Verdict resonance_maximum() {
    std::vector<double> grid;
    for (int i = 10; i <= 300; ++i) grid.push_back(i / 100.0);
    bool ok = true;
    std::string detail;
    for (double lambda : {0.5, 1.0, 2.0}) {
        const auto r = resonance_argmax(lambda, grid);
        ok = ok && !r.degenerate && std::abs(r.gamma2 - 1.0) <= 0.01 + 1e-12;
        detail += fmt("lambda=%g argmax=%.2f ", lambda, r.gamma2);
    }
    return {ok, detail};
}

Verdict no_a2_instability() {
    bool ok = true;
    double worst_onset = 0.0;
    std::string growth;
    for (double g2 : {0.5, 1.0, 4.0}) {
        auto omega_minus_sq = [g2](double lambda) {
            return polariton_modes({lambda, g2, 1.0, 1, false}).omega_minus_sq;
        };
        double lo = 0.0, hi = 2.0 * std::sqrt(g2) + 1.0;
        while (hi - lo > 1e-14 * hi) {
            const double mid = 0.5 * (lo + hi);
            (omega_minus_sq(mid) > 0.0 ? lo : hi) = mid;
        }
        const double onset = 0.5 * (lo + hi);
        worst_onset = std::max(worst_onset, std::abs(onset - std::sqrt(g2)));

        double prev = 0.0, reached = NAN;
        bool monotone = true;
        for (int e = 2; e <= 12; ++e) {
            const double gap = std::pow(10.0, -e);
            const double n = photon_occupation({onset - gap, g2, 1.0, 1, false});
            monotone = monotone && n > prev;
            prev = n;
            if (std::isnan(reached) && gap < 1e-6 && n > 1e3) reached = gap;
        }
        ok = ok && monotone && !std::isnan(reached);
        growth += fmt("g2=%g exceeds 1e3 at gap %.0e; ", g2, reached);
    }
    ok = ok && worst_onset <= 1e-10;
    return {ok, fmt("onset dev %.3g; ", worst_onset) + growth};
}

Verdict photon_statistics() {
    double min_q = INFINITY;
    for (double lambda : linspace(0.1, 10.0, 100))
        for (double g2 : linspace(0.05, 20.0, 100)) min_q = std::min(min_q, mandel_q({lambda, g2}));
    for (double g2 : {0.05, 1.0, 20.0}) min_q = std::min(min_q, mandel_q({1e-4, g2}));

    int crossings = 0;
    double first = NAN;
    double prev = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double lambda = 0.05 * k;
        const double d = mandel_q({lambda, 1.0}) - mandel_q({lambda, 2.0});
        if (k > 1 && (d > 0.0) != (prev > 0.0)) {
            if (crossings++ == 0) first = lambda;
        }
        prev = d;
    }
    return {min_q > 0.0 && crossings > 0,
            fmt("min Q %.3g; Q(g2=1)-Q(g2=2) sign changes on the step-0.05 grid: %d (first at %g)", min_q, crossings,
                first)};
}

Verdict bfield_invariance() {
    double gap_dev = 0.0, shift_dev = 0.0;
    for (double lambda : {0.05, 0.1, 0.5, 1.0, 2.0}) {
        const ModelParams p{lambda, 1.0};
        const double g0 = bfield_spectrum(p, 0.0).gap_b;
        for (double r : linspace(0.0, 1.0, 101)) {
            const auto b = bfield_spectrum(p, r);
            gap_dev = std::max(gap_dev, std::abs(b.gap_b - g0) / p.omega_trap);
            shift_dev = std::max(shift_dev, std::abs(b.delta_plus - b.delta_minus));
        }
    }
    const auto crit = critical_field({0.1, 1.0}, 1.5, 2.0);
    const bool in_window = crit && *crit > 0.0 && *crit < 0.7;
    return {gap_dev <= 1e-12 && shift_dev <= 1e-12 && in_window,
            fmt("gap dev %.3g, shift dev %.3g, critical field at gamma2=1.5: %s (window (0, 0.7))", gap_dev,
                shift_dev, crit ? fmt("%.10f", *crit).c_str() : "none")};
}

Verdict meanfield_scaling() {
    Timer t;
    const std::vector<int> ns{8, 16, 32, 64, 128};
    const MeanFieldGrid grid;
    const SolverConfig cfg;
    const CouplingFamily weak{0.05};
    const CouplingFamily strong{kStrongCouplingPerSqrtN};

    const auto bare = mean_field_ground_state(effective_potential(0.0, 1, 1.0), grid, cfg).state;
    const auto diffs = parallel_map(ns.size(), [&](std::size_t k) {
        return density_difference(weak.at(ns[k]), bare, grid, cfg);
    });
    bool shape_ok = true;
    double worst_integral = 0.0;
    for (const auto& d : diffs) {
        const double dx = d.grid[1] - d.grid[0];
        double integral = 0.0;
        for (double v : d.per_particle) integral += v * dx;
        worst_integral = std::max(worst_integral, std::abs(integral));
        // wings at three bare widths on either side
        const std::size_t c = d.grid.size() / 2;
        const auto off = static_cast<std::size_t>(std::lround(3.0 / std::sqrt(2.0) / dx));
        shape_ok = shape_ok && d.centre_total() > 0.0 && d.total[c - off] < 0.0 && d.total[c + off] < 0.0;
    }

    const auto zw = scaling_exponent(weak, ns, grid, cfg);
    const auto zs = scaling_exponent(strong, ns, grid, cfg);

    double var_dev = 0.0;
    for (int n : ns) {
        const auto pot = effective_potential(weak.at(n));
        const double w = std::sqrt(2.0 * pot.trap_term);
        const auto r = mean_field_ground_state(pot, grid, cfg);
        var_dev = std::max(var_dev, rel(r.state.variance(), 0.5 / w));
    }
    const double secs = t.seconds();
    const bool ok = shape_ok && worst_integral <= 1e-9 && std::abs(zw.exponent_z - 1.0) <= 0.15 &&
                    std::abs(zs.exponent_z - 0.5) <= 0.15 && var_dev <= 1e-8 && secs < 60.0;
    return {ok, fmt("shape %s, max |integral| %.3g, z(weak)=%.4f, z(lambda/sqrtN=%g)=%.4f, variance dev %.3g, %.1f s",
                    shape_ok ? "ok" : "wrong", worst_integral, zw.exponent_z, kStrongCouplingPerSqrtN,
                    zs.exponent_z, var_dev, secs)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict determinism() {
    const auto root = fs::temp_directory_path() / "polaritonkit_acceptance";
    fs::remove_all(root);
    std::vector<int> differing;
    int files = 0;
    for (int n = 2; n <= 11; ++n) {
        const auto a = root / ("a" + std::to_string(n)), b = root / ("b" + std::to_string(n));
        std::ostringstream out, err;
        const int ca = cli::run({"figure", std::to_string(n), "--out", a.string()}, out, err);
        const int cb = cli::run({"figure", std::to_string(n), "--out", b.string()}, out, err);
        bool same = ca == 0 && cb == 0;
        for (const auto& e : fs::directory_iterator(a)) {
            ++files;
            same = same && fs::exists(b / e.path().filename()) && slurp(e.path()) == slurp(b / e.path().filename());
        }
        if (!same) differing.push_back(n);
    }
    fs::remove_all(root);
    std::string detail = fmt("%d files compared", files);
    for (int n : differing) detail += fmt(", figure %d differs", n);
    return {differing.empty(), detail};
}

const std::vector<std::pair<const char*, std::function<Verdict()>>> kCriteria{
    {"spectral identities", spectral_identities},
    {"oracle equivalence", oracle_equivalence},
    {"decoupling limits", decoupling_limits},
    {"resonance maximum", resonance_maximum},
    {"no-A2 instability", no_a2_instability},
    {"photon statistics", photon_statistics},
    {"B-field resonance invariance", bfield_invariance},
    {"mean-field localization and scaling", meanfield_scaling},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(kCriteria.size())) {
            std::fprintf(stderr, "usage: acceptance [criterion 1..%zu ...]\n", kCriteria.size());
            return 2;
        }
        which.push_back(n);
    }
    if (which.empty())
        for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) which.push_back(n);

    int failed = 0;
    for (int n : which) {
        const auto& [name, check] = kCriteria[n - 1];
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d %s: %s (%s)\n", n, v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
