#include <doctest.h>

#include <boost/math/special_functions/ellint_1.hpp>
#include <cmath>
#include <vector>

#include "zmc/profiles.hpp"

using namespace zmc;

TEST_CASE("lemniscate quarter matches the complete elliptic integral") {
    const double oracle = boost::math::ellint_1(1.0 / std::sqrt(2.0)) / std::sqrt(2.0);
    CHECK(lemniscate_quarter() == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(M(lemniscate_quarter()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("log sinh profile inverts asinh(e^u)") {
    // X = 1 + e^{-2u}: f = log sinh x through (asinh 1, 0)
    Profile p({Axis::X, {1, 0, 1}, CaseK::positive(2), 1, {std::asinh(1.0), 0.0}});
    for (double u : {-3.0, -0.5, 0.0, 0.7, 2.5}) {
        CHECK(p.coordinate_from_u(u) == doctest::Approx(std::asinh(std::exp(u))).epsilon(1e-12));
    }
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        CHECK(p.value(x) == doctest::Approx(std::log(std::sinh(x))).epsilon(1e-11));
        const auto j = p.evaluate(x);
        CHECK(j.d1 == doctest::Approx(1.0 / std::tanh(x)).epsilon(1e-10));
        CHECK(j.d2 == doctest::Approx(-1.0 / (std::sinh(x) * std::sinh(x))).epsilon(1e-10));
    }
}

TEST_CASE("log sin profile with a turning point and declared period") {
    // X = -1 + e^{-2u}: f = log sin x, turning at x = pi/2
    Profile p({Axis::X, {-1, 0, 1}, CaseK::positive(2), 1, {M_PI / 2, 0.0}, {}, 2 * M_PI});
    CHECK(p.coordinate_range().hi == doctest::Approx(M_PI / 2).epsilon(1e-13));
    CHECK(p.turning_at_upper());
    for (double x : {0.1, 1.0, 1.5, 1.6, 2.5, 3.0, 0.3 + 2 * M_PI, 2.8 - 4 * M_PI}) {
        const auto j = p.evaluate(x);
        CHECK(j.u == doctest::Approx(std::log(std::sin(x))).epsilon(1e-11));
        CHECK(j.d1 == doctest::Approx(std::cos(x) / std::sin(x)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(p.evaluate(4.0), DomainError);
    const auto xs = p.coordinates_for_value(std::log(std::sin(1.0)), Interval{0.0, 2 * M_PI});
    REQUIRE(xs.size() == 2);
    CHECK(xs[1] == doctest::Approx(M_PI - 1.0).epsilon(1e-12));
}

TEST_CASE("sine profile with two turning points is periodic") {
    // X = 1 - u^2 (K = 0): f = sin x
    Profile p({Axis::X, {1, 0, -1}, CaseK::zero(), 1, {0.0, 0.0}});
    REQUIRE(p.period().has_value());
    CHECK(*p.period() == doctest::Approx(2 * M_PI).epsilon(1e-12));
    for (double x : {-7.0, -2.0, 0.3, 1.5707, 2.0, 4.0, 10.0}) {
        const auto j = p.evaluate(x);
        CHECK(j.u == doctest::Approx(std::sin(x)).epsilon(1e-11));
        CHECK(j.d1 == doctest::Approx(std::cos(x)).epsilon(1e-8));
        CHECK(j.d2 == doctest::Approx(-std::sin(x)).epsilon(1e-11));
    }
}
