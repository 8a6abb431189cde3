#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace polaritonkit {

/// Parameters of N trapped particles coupled to one homogeneous cavity mode.
///
/// Natural units ħ = m = 1 throughout. `omega_trap` sets the frequency scale so that
/// outputs can be reported as ratios to Ω. The coupling `lambda` already contains the
/// collective √N enhancement; `n_particles` only matters for the mean-field solver.
struct ModelParams {
    double lambda{0.0};      ///< dimensionless collective coupling λ ≥ 0
    double gamma2{1.0};      ///< cavity/trap frequency ratio γ₂ = ω/Ω > 0
    double omega_trap{1.0};  ///< trap frequency Ω > 0
    int n_particles{1};      ///< particle count N ≥ 1
    bool include_a2{true};   ///< keep the diamagnetic A² term

    /// Throws InvalidParameter when any field is out of range or not finite.
    void validate() const;
};

struct DerivedFrequencies {
    double omega_cavity;  ///< bare cavity frequency ω = γ₂Ω
    double omega_d;       ///< diamagnetic frequency ω_d = λ√γ₂ Ω
    double omega_tilde;   ///< dressed cavity frequency; equals ω when the A² term is dropped
    double g_collective;  ///< collective coupling g = ω_d / √(2ω̃)
};

DerivedFrequencies derive(const ModelParams& params);

// ---------------------------------------------------------------------------
// Flat key = value configuration.

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
/// Malformed lines and duplicate keys raise InvalidParameter.
KeyValues parse_key_values(std::istream& in);
KeyValues read_config_file(const std::filesystem::path& path);

/// Moves the model keys (`lambda`, `gamma2`, `omega_trap`, `n_particles`, `include_a2`)
/// from `kv` into `params`. Keys that are not model keys are left in `kv`.
void apply_model_keys(KeyValues& kv, ModelParams& params);

double parse_double(const std::string& key, const std::string& text);
int parse_int(const std::string& key, const std::string& text);
bool parse_bool(const std::string& key, const std::string& text);

}  // namespace polaritonkit
