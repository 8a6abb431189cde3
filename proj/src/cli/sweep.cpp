#include "polaritonkit/cli.hpp"
#include "polaritonkit/errors.hpp"
#include "polaritonkit/model.hpp"

#include <cmath>
#include <sstream>

namespace polaritonkit::cli {

SweepSpec SweepSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4 && parts.size() != 5)
        throw InvalidParameter("sweep must look like axis:start:stop:count[:log], got '" + text + "'");

    SweepSpec s;
    s.axis = parts[0];
    if (s.axis != "lambda" && s.axis != "gamma2" && s.axis != "omega_b")
        throw InvalidParameter("sweep axis must be lambda, gamma2 or omega_b, got '" + s.axis + "'");
    s.start = parse_double("sweep start", parts[1]);
    s.stop = parse_double("sweep stop", parts[2]);
    s.count = parse_int("sweep count", parts[3]);
    if (parts.size() == 5) {
        if (parts[4] != "log" && parts[4] != "lin") throw InvalidParameter("sweep spacing must be log or lin");
        s.log = parts[4] == "log";
    }
    if (s.count < 2) throw InvalidParameter("sweep count must be >= 2");
    if (!(s.start < s.stop)) throw InvalidParameter("sweep start must be < stop");
    if (s.log && !(s.start > 0.0)) throw InvalidParameter("log sweep needs start > 0");
    return s;
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> v(count);
    const double a = log ? std::log(start) : start;
    const double b = log ? std::log(stop) : stop;
    for (int i = 0; i < count; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / (count - 1);
        v[i] = log ? std::exp(t) : t;
    }
    v.front() = start;
    v.back() = stop;
    return v;
}

}  // namespace polaritonkit::cli
