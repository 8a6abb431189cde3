#pragma once

#include "polaritonkit/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace polaritonkit::cli {

using Json = nlohmann::ordered_json;

// Collects output files and the manifest of one command run.
class Output {
public:
    explicit Output(std::filesystem::path dir);

    void table(const std::string& filename, const CsvTable& table);
    Json& manifest() { return manifest_; }
    void note(const std::string& text) { manifest_["notes"].push_back(text); }
    void finish(const std::string& command);

private:
    std::filesystem::path dir_;
    Json manifest_;
};

void run_figure(int number, Output& out);

inline std::vector<std::string> numbers(std::initializer_list<double> xs) {
    std::vector<std::string> v;
    for (double x : xs) v.push_back(format_number(x));
    return v;
}

}  // namespace polaritonkit::cli
