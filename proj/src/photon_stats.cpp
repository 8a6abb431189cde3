#include "polaritonkit/photon_stats.hpp"

#include "polaritonkit/errors.hpp"
#include "polaritonkit/spectrum.hpp"

#include <cmath>

namespace polaritonkit {

namespace {

struct Branches {
    double w;    // bare cavity frequency
    double wp;   // Ω₊
    double wm;   // Ω₋
    double c2;
    double s2;
};

Branches branches(const ModelParams& params) {
    const auto s = polariton_modes(params);
    require_stable(s);
    return {params.gamma2 * params.omega_trap, s.omega_plus, *s.omega_minus, s.cos2, s.sin2};
}

// Bogoliubov weights of the photon operator on branch l:
// B_l² = (ω − Ω_l)²/(2Ω_lω), A_lB_l = (ω² − Ω_l²)/(2Ω_lω)
double b_sq(double w, double wl) { return (w - wl) * (w - wl) / (2.0 * wl * w); }
double ab(double w, double wl) { return (w * w - wl * wl) / (2.0 * wl * w); }

double occupation_of(const Branches& b) {
    return 0.5 * (b.c2 * b_sq(b.w, b.wm) + b.s2 * b_sq(b.w, b.wp));
}

double two_point_of(const Branches& b) {
    return 0.5 * (b.c2 * ab(b.w, b.wm) + b.s2 * ab(b.w, b.wp));
}

}  // namespace

double photon_occupation(const ModelParams& params) { return occupation_of(branches(params)); }

double two_point(const ModelParams& params) { return two_point_of(branches(params)); }

double four_point(const ModelParams& params) {
    const auto b = branches(params);
    const double w2 = b.w * b.w;
    const double dm = b.wm - b.w, dp = b.wp - b.w;
    const double qm = b.wm * b.wm - w2, qp = b.wp * b.wp - w2;
    const double minus = 2.0 * dm * dm * dm * dm / (w2 * b.wm * b.wm) + qm * qm / (w2 * b.wm * b.wm);
    const double plus = 2.0 * dp * dp * dp * dp / (w2 * b.wp * b.wp) + qp * qp / (w2 * b.wp * b.wp);
    const double cross = 2.0 * qm * qp / (w2 * b.wp * b.wm) + 4.0 * dp * dp * dm * dm / (w2 * b.wp * b.wm);
    return (b.c2 * b.c2 * minus + b.s2 * b.s2 * plus + b.c2 * b.s2 * cross) / 16.0;
}

double mandel_q(const ModelParams& params) {
    const auto b = branches(params);
    const double occ = occupation_of(b);
    if (!(occ >= 1e-300))
        throw UndefinedAtDecoupling("Mandel Q is 0/0 at vanishing photon occupation");
    const double tp = two_point_of(b);
    return (occ * occ + tp * tp) / occ;
}

PhotonStats photon_stats(const ModelParams& params) {
    const auto b = branches(params);
    PhotonStats out{};
    out.occupation = occupation_of(b);
    out.two_point = two_point_of(b);
    out.four_point = four_point(params);
    if (out.occupation >= 1e-300)
        out.mandel_q = (out.occupation * out.occupation + out.two_point * out.two_point) / out.occupation;
    return out;
}

}  // namespace polaritonkit
