#include "polaritonkit/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace polaritonkit::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw std::logic_error("csv row width does not match header");
    rows.push_back(std::move(row));
}

std::string CsvTable::render() const {
    std::string s;
    auto line = [&s](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += cells[i];
        }
        s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace polaritonkit::cli
