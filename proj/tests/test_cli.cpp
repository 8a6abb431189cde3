#include "polaritonkit/cli.hpp"
#include "polaritonkit/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace polaritonkit;
using namespace polaritonkit::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("polaritonkit_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1e-20) == "9.9999999999999995e-21");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv rendering") {
    CsvTable t{{"a", "b"}, {}};
    t.add_row({"1", "2"});
    CHECK(t.render() == "a,b\n1,2\n");
    CHECK_THROWS(t.add_row({"1"}));
}

TEST_CASE("sweep parsing") {
    auto s = SweepSpec::parse("lambda:0:2:5");
    CHECK(s.axis == "lambda");
    CHECK_FALSE(s.log);
    CHECK(s.values() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});

    auto l = SweepSpec::parse("gamma2:0.1:10:3:log");
    const auto v = l.values();
    CHECK(v.front() == 0.1);
    CHECK(v[1] == doctest::Approx(1.0));
    CHECK(v.back() == 10.0);

    CHECK_THROWS_AS(SweepSpec::parse("lambda:0:2"), InvalidParameter);
    CHECK_THROWS_AS(SweepSpec::parse("mass:0:2:3"), InvalidParameter);
    CHECK_THROWS_AS(SweepSpec::parse("lambda:2:0:3"), InvalidParameter);
    CHECK_THROWS_AS(SweepSpec::parse("lambda:0:2:1"), InvalidParameter);
    CHECK_THROWS_AS(SweepSpec::parse("lambda:0:2:3:log"), InvalidParameter);
    CHECK_THROWS_AS(SweepSpec::parse("lambda:0:2:3:cubic"), InvalidParameter);
}

TEST_CASE("exit codes") {
    const auto dir = scratch("codes").string();
    CHECK(invoke({}).code == kUsage);
    CHECK(invoke({"bogus"}).code == kUsage);
    CHECK(invoke({"branches", "--lambda", "abc", "--out", dir}).code == kUsage);
    CHECK(invoke({"figure", "12", "--out", dir}).code == kUsage);
    CHECK(invoke({"branches", "--lambda", "-1", "--out", dir}).code == kInvalidInput);
    CHECK(invoke({"branches", "--sweep", "lambda:0:1:x", "--out", dir}).code == kInvalidInput);
    CHECK(invoke({"density", "--sweep", "lambda:0:1:3", "--out", dir}).code == kUsage);
    CHECK(invoke({"meff", "--lambda", "3", "--no-a2", "--out", dir}).code == kUndefined);

    const auto r = invoke({"mandel", "--lambda", "0", "--out", dir});
    CHECK(r.code == kUndefined);
    CHECK(r.err.rfind("error code=undefined_at_decoupling exit=5 message=\"", 0) == 0);

    CHECK(invoke({"branches", "--config", dir + "/missing.cfg", "--out", dir}).code == kInvalidInput);
    CHECK(invoke({"mf-scaling", "--n-values", "8,16", "--out", dir}).code == kInvalidInput);
}

TEST_CASE("unwritable output directory") {
    const auto base = scratch("io");
    fs::create_directories(base);
    std::ofstream(base / "file") << "x";
    CHECK(invoke({"branches", "--out", (base / "file").string()}).code == kIo);
}

TEST_CASE("config file with flag override") {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    std::ofstream(dir / "run.cfg") << "lambda = 2\ngamma2 = 0.5\n";
    REQUIRE(invoke({"meff", "--config", (dir / "run.cfg").string(), "--gamma2", "1", "--out", dir.string()}).code ==
            kOk);
    const auto manifest = nlohmann::json::parse(slurp(dir / "meff_manifest.json"));
    CHECK(manifest["parameters"]["lambda"] == 2.0);
    CHECK(manifest["parameters"]["gamma2"] == 1.0);

    std::ofstream(dir / "bad.cfg") << "lambda = 2\nmass = 3\n";
    CHECK(invoke({"meff", "--config", (dir / "bad.cfg").string(), "--out", dir.string()}).code == kInvalidInput);
}

TEST_CASE("sweep output and manifest") {
    const auto dir = scratch("sweep");
    REQUIRE(invoke({"photons", "--sweep", "lambda:0:2:5", "--out", dir.string()}).code == kOk);
    const auto csv = slurp(dir / "photons.csv");
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    // λ = 0 leaves the Mandel cell empty
    CHECK(csv.find("\n0,1,0,0,0,\n") != std::string::npos);

    const auto m = nlohmann::json::parse(slurp(dir / "photons_manifest.json"));
    CHECK(m["command"] == "photons");
    CHECK(m["outputs"][0] == "photons.csv");
    CHECK(m["sweep"]["axis"] == "lambda");
}

TEST_CASE("oracle check passes and reports") {
    const auto dir = scratch("oracle");
    const auto r = invoke({"oracle-check", "--lambda", "1", "--gamma2", "1", "--out", dir.string()});
    CHECK(r.code == kOk);
    CHECK(r.out.find("occupation") != std::string::npos);
    CHECK(fs::exists(dir / "oracle-check.csv"));
}

TEST_CASE("figure recipes are deterministic") {
    for (const char* n : {"2", "3", "7", "9", "11"}) {
        const auto a = scratch(std::string("fig_a") + n), b = scratch(std::string("fig_b") + n);
        REQUIRE(invoke({"figure", n, "--out", a.string()}).code == kOk);
        REQUIRE(invoke({"figure", n, "--out", b.string()}).code == kOk);
        int files = 0;
        for (const auto& e : fs::directory_iterator(a)) {
            ++files;
            CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        }
        CHECK(files >= 2);
    }
}
