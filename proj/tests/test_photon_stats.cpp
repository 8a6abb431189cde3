#include "polaritonkit/errors.hpp"
#include "polaritonkit/fock_oracle.hpp"
#include "polaritonkit/photon_stats.hpp"
#include "polaritonkit/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace polaritonkit;

TEST_CASE("resonant closed forms") {
    const ModelParams p{1.0, 1.0};
    CHECK(photon_occupation(p) == doctest::Approx(0.059016994374947424).epsilon(1e-13));
    CHECK(two_point(p) == doctest::Approx(-0.11180339887498954).epsilon(1e-13));
}

TEST_CASE("Gaussian-state factorization of the four-point function") {
    for (double lambda : {0.05, 0.4, 1.0, 3.0, 9.0}) {
        for (double g2 : {0.05, 0.3, 1.0, 2.0, 15.0}) {
            const ModelParams p{lambda, g2};
            const double n = photon_occupation(p);
            const double t = two_point(p);
            CHECK(four_point(p) == doctest::Approx(2.0 * n * n + t * t).epsilon(1e-10));
            const double q = mandel_q(p);
            CHECK(q > 0.0);
            CHECK(q == doctest::Approx((n * n + t * t) / n).epsilon(1e-12));
            const auto s = photon_stats(p);
            REQUIRE(s.mandel_q.has_value());
            CHECK(*s.mandel_q == doctest::Approx(q));
            CHECK(s.occupation == n);
        }
    }
}

TEST_CASE("occupation grows with coupling") {
    for (double g2 : {0.1, 1.0, 2.0}) {
        double prev = 0.0;
        for (double lambda = 0.25; lambda <= 4.0; lambda += 0.25) {
            const double n = photon_occupation({lambda, g2});
            CHECK(n > prev);
            prev = n;
        }
    }
}

TEST_CASE("decoupling") {
    for (double g2 : {0.5, 1.0, 2.0}) {
        const ModelParams p{0.0, g2};
        CHECK(photon_occupation(p) == 0.0);
        CHECK(two_point(p) == 0.0);
        CHECK(four_point(p) == 0.0);
        CHECK_FALSE(photon_stats(p).mandel_q.has_value());
        CHECK_THROWS_AS(mandel_q(p), UndefinedAtDecoupling);

        const ModelParams weak{1e-6, g2};
        CHECK(photon_occupation(weak) <= 1e-10);
        CHECK(std::abs(two_point(weak)) <= 1e-10);
        CHECK(four_point(weak) <= 1e-10);
    }
}

TEST_CASE("occupation diverges at the no-A2 onset") {
    const double g2 = 1.0;
    const double onset = instability_onset(g2);
    double prev = 0.0;
    for (double gap : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double n = photon_occupation({onset - gap, g2, 1.0, 1, false});
        CHECK(n > prev);
        prev = n;
    }
    CHECK(prev > 1e3);
    CHECK_THROWS_AS(photon_occupation({onset + 0.1, g2, 1.0, 1, false}), InstabilityError);
}

TEST_CASE("closed forms against the Fock oracle") {
    for (auto [lambda, g2] : {std::pair{1.0, 1.0}, {0.6, 0.3}, {1.8, 2.5}, {0.2, 4.0}}) {
        const ModelParams p{lambda, g2};
        const auto gs = solve_converged(p);
        REQUIRE(gs.converged);
        CHECK(measure(gs, Observable::occupation) == doctest::Approx(photon_occupation(p)).epsilon(1e-8));
        CHECK(measure(gs, Observable::two_point) == doctest::Approx(two_point(p)).epsilon(1e-8));
        CHECK(measure(gs, Observable::four_point) == doctest::Approx(four_point(p)).epsilon(1e-8));
    }
}
