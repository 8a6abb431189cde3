#include "polaritonkit/fock_oracle.hpp"

#include "polaritonkit/errors.hpp"
#include "polaritonkit/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace polaritonkit {

namespace {

struct Oscillators {
    double wa;     // matter
    double wb;     // dressed photon
    double w;      // bare cavity
    double kappa;
};

Oscillators oscillators(const ModelParams& params) {
    const auto f = derive(params);
    require_stable(polariton_modes(params));
    const double Omega = params.omega_trap;
    return {Omega, f.omega_tilde, f.omega_cavity, f.omega_d * std::sqrt(Omega) / (2.0 * std::sqrt(f.omega_tilde))};
}

// Basis states |i, j⟩ of one parity sector, i + j ≡ parity (mod 2).
struct Sector {
    int n_cut;
    std::vector<int> index;  // (n_cut+1)² → sector position or -1
    std::vector<std::pair<int, int>> states;

    Sector(int n, int parity) : n_cut(n), index((n + 1) * (n + 1), -1) {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if ((i + j) % 2 == parity) {
                    index[i * (n + 1) + j] = static_cast<int>(states.size());
                    states.emplace_back(i, j);
                }
    }
    int at(int i, int j) const {
        if (i < 0 || j < 0 || i > n_cut || j > n_cut) return -1;
        return index[i * (n_cut + 1) + j];
    }
};

// Dense Hamiltonian of one sector.
Eigen::MatrixXd sector_matrix(const Sector& sec, const Oscillators& o) {
    const auto dim = static_cast<Eigen::Index>(sec.states.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        auto [i, j] = sec.states[c];
        h(c, c) = o.wa * (i + 0.5) + o.wb * (j + 0.5);
        for (int di : {-1, 1})
            for (int dj : {-1, 1}) {
                const int r = sec.at(i + di, j + dj);
                if (r < 0) continue;
                h(r, c) = o.kappa * std::sqrt(std::max(i, i + di)) * std::sqrt(std::max(j, j + dj));
            }
    }
    return h;
}

// Symmetric tridiagonal matrix: diagonal d, off-diagonal e (size n − 1).
struct Tridiag {
    Eigen::VectorXd d;
    Eigen::VectorXd e;

    // number of eigenvalues strictly below x (Sturm sequence)
    Eigen::Index count_below(double x) const {
        Eigen::Index count = 0;
        double q = d(0) - x;
        const double tiny = std::numeric_limits<double>::min();
        for (Eigen::Index i = 0;; ++i) {
            if (q == 0.0) q = -tiny;
            if (q < 0.0) ++count;
            if (i + 1 == d.size()) break;
            q = d(i + 1) - x - e(i) * e(i) / q;
        }
        return count;
    }

    // k-th smallest eigenvalue (k from 0) by bisection
    double eigenvalue(Eigen::Index k) const {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            const double r = (i > 0 ? std::abs(e(i - 1)) : 0.0) + (i + 1 < d.size() ? std::abs(e(i)) : 0.0);
            lo = std::min(lo, d(i) - r);
            hi = std::max(hi, d(i) + r);
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (count_below(mid) > k) hi = mid;
            else lo = mid;
        }
        return 0.5 * (lo + hi);
    }

    // eigenvector for eigenvalue lambda by inverse iteration with partial pivoting
    Eigen::VectorXd eigenvector(double lambda) const {
        const Eigen::Index n = d.size();
        if (n == 1) return Eigen::VectorXd::Ones(1);
        const double scale = std::max(d.cwiseAbs().maxCoeff(), e.size() ? e.cwiseAbs().maxCoeff() : 0.0);
        const double shift = lambda - 4.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
        // LU of T − σI with partial pivoting; du2 holds the fill-in from row swaps
        Eigen::VectorXd diag = d.array() - shift, du = e, dl = e, du2 = Eigen::VectorXd::Zero(n);
        std::vector<char> swapped(n, 0);
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            if (std::abs(diag(i)) >= std::abs(dl(i))) {
                const double fact = diag(i) == 0.0 ? 0.0 : dl(i) / diag(i);
                dl(i) = fact;
                diag(i + 1) -= fact * du(i);
            } else {
                const double fact = diag(i) / dl(i);
                diag(i) = dl(i);
                dl(i) = fact;
                const double temp = du(i);
                du(i) = diag(i + 1);
                diag(i + 1) = temp - fact * diag(i + 1);
                if (i + 2 < n) {
                    du2(i) = du(i + 1);
                    du(i + 1) = -fact * du(i + 1);
                }
                swapped[i] = 1;
            }
        }
        const double floor = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(diag(i)) < floor) diag(i) = diag(i) < 0.0 ? -floor : floor;

        Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
        for (int it = 0; it < 3; ++it) {
            for (Eigen::Index i = 0; i + 1 < n; ++i) {
                if (swapped[i]) {
                    const double temp = x(i);
                    x(i) = x(i + 1);
                    x(i + 1) = temp - dl(i) * x(i);
                } else {
                    x(i + 1) -= dl(i) * x(i);
                }
            }
            for (Eigen::Index i = n; i-- > 0;) {
                double v = x(i);
                if (i + 1 < n) v -= du(i) * x(i + 1);
                if (i + 2 < n) v -= du2(i) * x(i + 2);
                x(i) = v / diag(i);
            }
            x.normalize();
        }
        return x;
    }
};

struct LowestPair {
    double energy;
    Eigen::VectorXd vector;
};

LowestPair lowest(const Sector& sec, const Oscillators& o, bool want_vector) {
    Eigen::Tridiagonalization<Eigen::MatrixXd> tri(sector_matrix(sec, o));
    const Tridiag t{tri.diagonal(), tri.subDiagonal()};
    LowestPair out{t.eigenvalue(0), {}};
    if (want_vector) out.vector = tri.matrixQ() * t.eigenvector(out.energy);
    return out;
}

double ground_energy(const Oscillators& o, int n_cut) { return lowest(Sector(n_cut, 0), o, false).energy; }

// Working copy of the state on a padded grid so raising operators stay exact.
struct Padded {
    int size;  // per-oscillator dimension
    std::vector<double> v;
    double& at(int i, int j) { return v[i * size + j]; }
    double at(int i, int j) const { return v[i * size + j]; }
};

Padded pad(const FockGroundState& s) {
    Padded p{s.n_cut + 3, {}};
    p.v.assign(static_cast<std::size_t>(p.size) * p.size, 0.0);
    for (int i = 0; i <= s.n_cut; ++i)
        for (int j = 0; j <= s.n_cut; ++j) p.at(i, j) = s.amplitudes[i * (s.n_cut + 1) + j];
    return p;
}

// a_ph = u·b + v·b†, the bare cavity annihilator expressed through the dressed mode
Padded apply_photon(const Padded& in, double u, double v) {
    Padded out{in.size, std::vector<double>(in.v.size(), 0.0)};
    for (int i = 0; i < in.size; ++i)
        for (int j = 0; j < in.size; ++j) {
            double acc = 0.0;
            if (j + 1 < in.size) acc += u * std::sqrt(j + 1.0) * in.at(i, j + 1);
            if (j > 0) acc += v * std::sqrt(static_cast<double>(j)) * in.at(i, j - 1);
            out.at(i, j) = acc;
        }
    return out;
}

// (a + σa†) on the matter index
Padded apply_matter(const Padded& in, double sigma) {
    Padded out{in.size, std::vector<double>(in.v.size(), 0.0)};
    for (int i = 0; i < in.size; ++i)
        for (int j = 0; j < in.size; ++j) {
            double acc = 0.0;
            if (i + 1 < in.size) acc += std::sqrt(i + 1.0) * in.at(i + 1, j);
            if (i > 0) acc += sigma * std::sqrt(static_cast<double>(i)) * in.at(i - 1, j);
            out.at(i, j) = acc;
        }
    return out;
}

double dot(const Padded& a, const Padded& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.v.size(); ++k) s += a.v[k] * b.v[k];
    return s;
}

}  // namespace

FockGroundState build_and_diagonalize(const ModelParams& params, int n_cut, const OracleConfig& cfg) {
    if (n_cut < 2) throw InvalidParameter("n_cut must be >= 2");
    const auto o = oscillators(params);
    const Sector even(n_cut, 0);
    auto pair = lowest(even, o, true);

    FockGroundState s;
    s.n_cut = n_cut;
    s.energy = pair.energy;
    s.omega_matter = o.wa;
    s.omega_dressed = o.wb;
    s.omega_cavity = o.w;
    s.amplitudes.assign(static_cast<std::size_t>(n_cut + 1) * (n_cut + 1), 0.0);
    double norm = 0.0, first = 0.0;
    for (std::size_t k = 0; k < even.states.size(); ++k) {
        auto [i, j] = even.states[k];
        s.amplitudes[i * (n_cut + 1) + j] = pair.vector[k];
        norm += pair.vector[k] * pair.vector[k];
        if (i == 0 && j == 0) first = pair.vector[k];
    }
    const double scale = (first < 0.0 ? -1.0 : 1.0) / std::sqrt(norm);
    for (double& a : s.amplitudes) a *= scale;

    const int coarse = n_cut - cfg.n_step;
    if (cfg.n_step > 0 && coarse >= 2) {
        s.energy_change = ground_energy(o, coarse) - s.energy;
        s.converged = std::abs(s.energy_change) < cfg.energy_tol;
    }
    return s;
}

FockGroundState solve_converged(const ModelParams& params, const OracleConfig& cfg) {
    if (cfg.n_start < 2 || cfg.n_step < 1 || cfg.n_max < cfg.n_start)
        throw InvalidParameter("invalid oracle truncation schedule");
    const auto o = oscillators(params);
    const int coarse = cfg.n_start - cfg.n_step;
    double previous = coarse >= 2 ? ground_energy(o, coarse) : std::numeric_limits<double>::quiet_NaN();
    OracleConfig single = cfg;
    single.n_step = 0;
    for (int n = cfg.n_start;; n += cfg.n_step) {
        n = std::min(n, cfg.n_max);
        auto s = build_and_diagonalize(params, n, single);
        s.energy_change = previous - s.energy;
        s.converged = std::abs(s.energy_change) < cfg.energy_tol;  // false against NaN
        if (s.converged || n >= cfg.n_max) return s;
        previous = s.energy;
    }
}

double measure(const FockGroundState& state, Observable observable) {
    if (!state.converged) throw UnconvergedState("oracle state did not converge in n_cut");
    const Padded psi = pad(state);
    const double w = state.omega_cavity, wt = state.omega_dressed;
    const double norm = 2.0 * std::sqrt(w * wt);
    const double u = -(w + wt) / norm, v = -(w - wt) / norm;
    switch (observable) {
        case Observable::occupation: {
            const auto a = apply_photon(psi, u, v);
            return dot(a, a);
        }
        case Observable::two_point: {
            const auto aa = apply_photon(apply_photon(psi, u, v), u, v);
            return dot(psi, aa);
        }
        case Observable::four_point: {
            const auto aa = apply_photon(apply_photon(psi, u, v), u, v);
            return dot(aa, aa);
        }
        case Observable::x_variance: {
            const auto q = apply_matter(psi, -1.0);
            return dot(q, q) / (2.0 * state.omega_matter);
        }
        case Observable::p_variance: {
            const auto q = apply_matter(psi, 1.0);
            return state.omega_matter * dot(q, q) / 2.0;
        }
    }
    throw InvalidParameter("unknown observable");
}

std::vector<double> low_spectrum(const ModelParams& params, int n_cut, int count) {
    if (n_cut < 2 || count < 1) throw InvalidParameter("low_spectrum needs n_cut >= 2 and count >= 1");
    const auto o = oscillators(params);
    std::vector<double> all;
    for (int parity : {0, 1}) {
        const Sector sec(n_cut, parity);
        Eigen::Tridiagonalization<Eigen::MatrixXd> tri(sector_matrix(sec, o));
        const Tridiag t{tri.diagonal(), tri.subDiagonal()};
        const Eigen::Index k = std::min<Eigen::Index>(count, t.d.size());
        for (Eigen::Index i = 0; i < k; ++i) all.push_back(t.eigenvalue(i));
    }
    std::sort(all.begin(), all.end());
    all.resize(std::min<std::size_t>(all.size(), count));
    return all;
}

double free_space_oracle_energy(const std::array<double, 2>& k_vector, int n_x, int n_y, const ModelParams& params,
                                int n_cut) {
    const int occ[2] = {n_x, n_y};
    if (n_x < 0 || n_y < 0 || n_cut <= std::max(n_x, n_y) + 1) throw InvalidParameter("invalid free-space truncation");
    const auto f = derive(params);
    double total = 0.5 * (k_vector[0] * k_vector[0] + k_vector[1] * k_vector[1]);
    for (int nu = 0; nu < 2; ++nu) {
        // ω̃(b†b + ½) + gK_ν(b + b†): tridiagonal in the Fock basis
        Tridiag t{Eigen::VectorXd(n_cut + 1), Eigen::VectorXd(n_cut)};
        for (int j = 0; j <= n_cut; ++j) t.d(j) = f.omega_tilde * (j + 0.5);
        for (int j = 0; j < n_cut; ++j) t.e(j) = f.g_collective * k_vector[nu] * std::sqrt(j + 1.0);
        total += t.eigenvalue(occ[nu]);
    }
    return total;
}

}  // namespace polaritonkit
