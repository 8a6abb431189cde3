#pragma once

#include "polaritonkit/model.hpp"

#include <optional>

namespace polaritonkit {

/// Ground-state photon statistics of one polarization.
struct PhotonStats {
    double occupation;  ///< ⟨a†a⟩
    double two_point;   ///< ⟨aa⟩, signed
    double four_point;  ///< ⟨a†a†aa⟩
    std::optional<double> mandel_q;  ///< absent when the occupation vanishes
};

double photon_occupation(const ModelParams& params);
double two_point(const ModelParams& params);
/// Closed form built from the mode expansion directly, not from occupation and two_point.
double four_point(const ModelParams& params);
/// Throws UndefinedAtDecoupling when ⟨a†a⟩ < 1e-300.
double mandel_q(const ModelParams& params);

PhotonStats photon_stats(const ModelParams& params);

}  // namespace polaritonkit
