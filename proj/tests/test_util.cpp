// Numeric utilities: monotone cubic interpolation, adaptive quadrature,
// deterministic number rendering, and the counter-based RNG.
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "lvc/format.hpp"
#include "lvc/interp.hpp"
#include "lvc/quadrature.hpp"
#include "lvc/rng.hpp"

using namespace lvc;

TEST_CASE("monotone cubic with prescribed slopes reproduces knots and stays "
          "monotone") {
    // y = x^2 on [0,2] with exact slopes.
    std::vector<double> xs, ys, ds;
    for (int i = 0; i <= 8; ++i) {
        const double x = 0.25 * i;
        xs.push_back(x);
        ys.push_back(x * x);
        ds.push_back(2.0 * x);
    }
    const MonotoneCubic c = MonotoneCubic::with_slopes(xs, ys, ds);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(c.eval(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-15));
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
        const double v = c.eval(2.0 * i / 400.0);
        CHECK(v >= prev);
        prev = v;
        CHECK(v == doctest::Approx((2.0 * i / 400.0) * (2.0 * i / 400.0))
                       .epsilon(1e-4));
    }
}

TEST_CASE("estimated-slope variant interpolates smooth monotone data") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 20; ++i) {
        const double x = 0.1 * i;
        xs.push_back(x);
        ys.push_back(std::atan(x));
    }
    const MonotoneCubic c = MonotoneCubic::estimated(xs, ys);
    for (int i = 0; i <= 100; ++i) {
        const double x = 2.0 * i / 100.0;
        CHECK(c.eval(x) == doctest::Approx(std::atan(x)).epsilon(2e-4));
    }
}

TEST_CASE("interpolation guards: grids, monotonicity, domain") {
    CHECK_THROWS_AS(MonotoneCubic::with_slopes({0.0}, {0.0}, {1.0}),
                    InvalidInput);
    CHECK_THROWS_AS(
        MonotoneCubic::with_slopes({0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}),
        InvalidInput);
    CHECK_THROWS_AS(
        MonotoneCubic::with_slopes({0.0, 1.0}, {0.0, 1.0}, {1.0}),
        InvalidInput);
    // Non-monotone values are rejected outright.
    CHECK_THROWS_AS(MonotoneCubic::with_slopes({0.0, 1.0, 2.0},
                                               {0.0, 1.0, 0.5},
                                               {1.0, 1.0, 1.0}),
                    InvalidInput);
    const MonotoneCubic c =
        MonotoneCubic::with_slopes({0.0, 1.0}, {0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(c.eval(-0.1), OutOfDomain);
    CHECK_THROWS_AS(c.eval(1.1), OutOfDomain);
    CHECK_THROWS_AS(c.inverse(-0.1), OutOfDomain);
}

TEST_CASE("slope clamping keeps steep prescribed slopes from overshooting") {
    // A huge interior slope would overshoot between knots if taken verbatim.
    const MonotoneCubic c = MonotoneCubic::with_slopes(
        {0.0, 1.0, 2.0}, {0.0, 0.5, 1.0}, {50.0, 50.0, 50.0});
    for (int i = 0; i <= 200; ++i) {
        const double v = c.eval(2.0 * i / 200.0);
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("inverse is the exact round trip on strictly monotone curves") {
    std::vector<double> xs, ys, ds;
    for (int i = 0; i <= 16; ++i) {
        const double x = i / 8.0;
        xs.push_back(x);
        ys.push_back(std::sinh(x));
        ds.push_back(std::cosh(x));
    }
    const MonotoneCubic c = MonotoneCubic::with_slopes(xs, ys, ds);
    for (int i = 0; i <= 50; ++i) {
        const double x = 2.0 * i / 50.0;
        CHECK(c.inverse(c.eval(x)) == doctest::Approx(x).epsilon(1e-10));
    }
}

TEST_CASE("adaptive Simpson integrates smooth and peaked integrands") {
    const double i1 =
        adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0, 1e-12,
                         1e-14);
    CHECK(i1 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const double i2 = adaptive_simpson([](double x) { return std::sin(x); },
                                       0.0, 3.141592653589793, 1e-12, 1e-14);
    CHECK(i2 == doctest::Approx(2.0).epsilon(1e-11));

    // Orientation flips the sign.
    const double i3 =
        adaptive_simpson([](double x) { return x; }, 1.0, 0.0, 1e-12, 1e-14);
    CHECK(i3 == doctest::Approx(-0.5).epsilon(1e-12));

    // Narrow Lorentzian: needs deep subdivision but converges.
    const double w = 1e-3;
    const double i4 = adaptive_simpson(
        [&](double x) { return w / (w * w + x * x); }, -1.0, 1.0, 1e-10, 1e-12);
    CHECK(i4 == doctest::Approx(2.0 * std::atan(1.0 / w)).epsilon(1e-9));

    // An integrable singularity at the depth limit fails loudly.
    CHECK_THROWS_AS(adaptive_simpson(
                        [](double x) { return 1.0 / std::sqrt(x); }, 1e-300,
                        1.0, 1e-14, 1e-16, 8),
                    QuadratureFailure);
}

TEST_CASE("g17 rendering round-trips doubles exactly") {
    const double vals[] = {0.0,     1.0 / 3.0, 0.1,    -2.5e-7, 1e300,
                           1e-300,  5e-324,    -0.0,   123456.75,
                           0.3333333333333333};
    for (const double v : vals) {
        const std::string s = g17(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
    }
    CHECK(g17(0.0) == "0");
    CHECK(g17(2.0) == "2");
}

TEST_CASE("counter RNG is a pure function of seed and counter") {
    CHECK(counter_rng(0, 0) == counter_rng(0, 0));
    CHECK(counter_rng(0, 0) != counter_rng(0, 1));
    CHECK(counter_rng(0, 0) != counter_rng(1, 0));
    double mean = 0.0;
    for (std::uint64_t k = 0; k < 4096; ++k) {
        const double u = uniform01(counter_rng(9, k));
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        mean += u;
    }
    mean /= 4096.0;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
}
