#include "polaritonkit/errors.hpp"
#include "polaritonkit/model.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace polaritonkit;

TEST_CASE("derived frequencies") {
    ModelParams p{0.5, 4.0, 2.0, 1, true};
    const auto f = derive(p);
    CHECK(f.omega_cavity == doctest::Approx(8.0));
    CHECK(f.omega_d == doctest::Approx(0.5 * 2.0 * 2.0));
    CHECK(f.omega_tilde == doctest::Approx(std::sqrt(64.0 + 4.0)));
    CHECK(f.g_collective == doctest::Approx(2.0 / std::sqrt(2.0 * f.omega_tilde)));

    p.include_a2 = false;
    CHECK(derive(p).omega_tilde == doctest::Approx(8.0));
}

TEST_CASE("parameter validation") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_NOTHROW(ModelParams{}.validate());
    CHECK_THROWS_AS((ModelParams{-0.1, 1.0, 1.0, 1, true}.validate()), InvalidParameter);
    CHECK_THROWS_AS((ModelParams{0.1, 0.0, 1.0, 1, true}.validate()), InvalidParameter);
    CHECK_THROWS_AS((ModelParams{0.1, 1.0, -1.0, 1, true}.validate()), InvalidParameter);
    CHECK_THROWS_AS((ModelParams{0.1, 1.0, 1.0, 0, true}.validate()), InvalidParameter);
    CHECK_THROWS_AS((ModelParams{nan, 1.0, 1.0, 1, true}.validate()), InvalidParameter);
}

TEST_CASE("key value parsing") {
    std::istringstream in("# comment\nlambda = 0.25\n\n gamma2=2 # trailing\ninclude_a2 = false\nn_particles = 16\nextra = x\n");
    auto kv = parse_key_values(in);
    ModelParams p;
    apply_model_keys(kv, p);
    CHECK(p.lambda == 0.25);
    CHECK(p.gamma2 == 2.0);
    CHECK_FALSE(p.include_a2);
    CHECK(p.n_particles == 16);
    REQUIRE(kv.size() == 1);
    CHECK(kv.at("extra") == "x");

    std::istringstream dup("lambda = 1\nlambda = 2\n");
    CHECK_THROWS_AS(parse_key_values(dup), InvalidParameter);
    std::istringstream bad("lambda 1\n");
    CHECK_THROWS_AS(parse_key_values(bad), InvalidParameter);
}

TEST_CASE("scalar parsing") {
    CHECK(parse_double("x", "1e-3") == 1e-3);
    CHECK_THROWS_AS(parse_double("x", "1.0abc"), InvalidParameter);
    CHECK_THROWS_AS(parse_double("x", "inf"), InvalidParameter);
    CHECK(parse_int("n", "42") == 42);
    CHECK_THROWS_AS(parse_int("n", "4.2"), InvalidParameter);
    CHECK(parse_bool("b", "true"));
    CHECK_FALSE(parse_bool("b", "0"));
    CHECK_THROWS_AS(parse_bool("b", "maybe"), InvalidParameter);
}
