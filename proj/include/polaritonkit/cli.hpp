#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace polaritonkit::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kInvalidInput = 3,
    kNonConvergence = 4,
    kUndefined = 5,
    kIo = 6,
    kOracleMismatch = 7,
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `axis:start:stop:count[:log]` with axis one of lambda, gamma2, omega_b.
struct SweepSpec {
    std::string axis;
    double start{0.0};
    double stop{1.0};
    int count{2};
    bool log{false};

    static SweepSpec parse(const std::string& text);  // throws InvalidParameter
    std::vector<double> values() const;
};

/// 17 significant digits, `.` separator, independent of the C locale.
std::string format_number(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string render() const;  // LF line endings
};

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Runs one command line (args excludes the program name). Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace polaritonkit::cli
