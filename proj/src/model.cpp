#include "polaritonkit/model.hpp"

#include "polaritonkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

namespace polaritonkit {

void ModelParams::validate() const {
    if (!std::isfinite(lambda) || lambda < 0.0)
        throw InvalidParameter("lambda must be finite and >= 0");
    if (!std::isfinite(gamma2) || gamma2 <= 0.0)
        throw InvalidParameter("gamma2 must be finite and > 0");
    if (!std::isfinite(omega_trap) || omega_trap <= 0.0)
        throw InvalidParameter("omega_trap must be finite and > 0");
    if (n_particles < 1)
        throw InvalidParameter("n_particles must be >= 1");
}

DerivedFrequencies derive(const ModelParams& params) {
    params.validate();
    DerivedFrequencies f{};
    f.omega_cavity = params.gamma2 * params.omega_trap;
    f.omega_d = params.lambda * std::sqrt(params.gamma2) * params.omega_trap;
    f.omega_tilde = params.include_a2 ? std::hypot(f.omega_cavity, f.omega_d) : f.omega_cavity;
    f.g_collective = f.omega_d / std::sqrt(2.0 * f.omega_tilde);
    return f;
}

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameter("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw InvalidParameter("config line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw InvalidParameter("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file " + path.string());
    return parse_key_values(in);
}

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw InvalidParameter("'" + key + "': not a finite number: " + text);
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidParameter("'" + key + "': not an integer: " + text);
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    std::string t = text;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw InvalidParameter("'" + key + "': not a boolean: " + text);
}

void apply_model_keys(KeyValues& kv, ModelParams& params) {
    auto take = [&kv](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = take("lambda")) params.lambda = parse_double("lambda", *v);
    if (auto* v = take("gamma2")) params.gamma2 = parse_double("gamma2", *v);
    if (auto* v = take("omega_trap")) params.omega_trap = parse_double("omega_trap", *v);
    if (auto* v = take("n_particles")) params.n_particles = parse_int("n_particles", *v);
    if (auto* v = take("include_a2")) params.include_a2 = parse_bool("include_a2", *v);
    for (const char* key : {"lambda", "gamma2", "omega_trap", "n_particles", "include_a2"}) kv.erase(key);
}

}  // namespace polaritonkit
