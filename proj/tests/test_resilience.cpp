// Resilience measures: precariousness, latitude by quadrature and by
// Monte-Carlo classification, and the basin grid.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "lvc/resilience.hpp"

using namespace lvc;

TEST_CASE("precariousness equals the curve and is monotone") {
    const SeparatrixCurve c = compute_separatrix({2.0, 3.0, 1.0});
    CHECK(precariousness(c, 0.25) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(precariousness(c, 0.0) == 0.0);
    double prev = -1.0;
    for (int i = 0; i <= 20; ++i) {
        const double pr = precariousness(c, i / 20.0);
        CHECK(pr > prev);
        prev = pr;
    }
    CHECK_THROWS_AS(precariousness(c, -0.01), InvalidInput);
    CHECK_THROWS_AS(precariousness(c, 1.01), InvalidInput);
}

TEST_CASE("latitude: pinned closed-form cases") {
    // Symmetric curve y=x: area below within the unit square is 1/2.
    const SeparatrixCurve sym = compute_separatrix({2.0, 2.0, 1.0});
    CHECK(std::abs(latitude(sym) - 0.5) < 1e-6);

    // y=2x: integral of min(2x,1) = 1/4 + 1/2.
    const SeparatrixCurve asym = compute_separatrix({2.0, 3.0, 1.0});
    CHECK(std::abs(latitude(asym) - 0.75) < 1e-6);

    // y=4x (alpha=1.5, beta=3): 1/8 + 3/4.
    const SeparatrixCurve steep = compute_separatrix({1.5, 3.0, 1.0});
    CHECK(std::abs(latitude(steep) - 0.875) < 1e-6);
}

TEST_CASE("latitude needs the curve to cover the unit square horizontally or "
          "vertically") {
    SeparatrixBuildConfig cfg;
    cfg.x_max = 0.8;
    cfg.y_cap = 0.9;  // curve ends below y=1 and left of x=1
    const SeparatrixCurve c = compute_separatrix({2.0, 2.0, 1.0}, cfg);
    CHECK_THROWS_AS(latitude(c), OutOfDomain);

    // A y-capped curve that crosses y=1 is fine even with x_max < 1.
    SeparatrixBuildConfig tall;
    tall.x_max = 3.0;
    const SeparatrixCurve d30 = compute_separatrix({2.0, 3.0, 30.0}, tall);
    CHECK(d30.x_max() < 1.0);
    const double lat = latitude(d30);
    // Near the vertical-line limit the native side keeps essentially the
    // whole strip x > A, so the area approaches 1 - A = 0.8.
    CHECK(lat > 0.75);
    CHECK(lat < 0.85);
}

TEST_CASE("Monte-Carlo latitude: deterministic in the seed, consistent with "
          "quadrature") {
    const NondimParams q{2.0, 3.0, 1.0};
    const LatitudeMC a = latitude_monte_carlo(q, 2000, 7);
    const LatitudeMC b = latitude_monte_carlo(q, 2000, 7);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(a.undecided == b.undecided);
    CHECK(a.n == 2000);
    CHECK(a.seed == 7);

    const SeparatrixCurve c = compute_separatrix(q);
    CHECK(std::abs(a.estimate - latitude(c)) <= 4.0 * a.std_error);

    CHECK_THROWS_AS(latitude_monte_carlo(q, 50, 0), InvalidInput);
}

TEST_CASE("Monte-Carlo with a hopeless time budget reports failure") {
    IntegrationConfig cfg;
    cfg.max_time = 1e-3;  // nothing can reach an equilibrium
    CHECK_THROWS_AS(latitude_monte_carlo({2.0, 2.0, 1.0}, 200, 0, cfg),
                    NumericalError);
}

TEST_CASE("basin grid: row-major layout and mirror antisymmetry in the "
          "symmetric case") {
    const NondimParams sym{2.0, 2.0, 1.0};
    const std::size_t res = 8;
    const std::vector<BasinLabel> g = basin_grid(sym, res);
    REQUIRE(g.size() == res * res);
    for (std::size_t i = 0; i < res; ++i)
        for (std::size_t j = 0; j < res; ++j) {
            const BasinLabel ij = g[i * res + j];
            const BasinLabel ji = g[j * res + i];
            // Swapping species mirrors the outcome across the diagonal.
            if (ij == BasinLabel::NativeWins)
                CHECK(ji == BasinLabel::InvaderWins);
            else if (ij == BasinLabel::InvaderWins)
                CHECK(ji == BasinLabel::NativeWins);
            else
                CHECK(ji == BasinLabel::Undecided);
            // Below the diagonal the native wins.
            if (i > j) CHECK(ij == BasinLabel::NativeWins);
        }
    // Diagonal cells sit exactly on the separatrix.
    for (std::size_t i = 0; i < res; ++i)
        CHECK(g[i * res + i] == BasinLabel::Undecided);

    CHECK_THROWS_AS(basin_grid(sym, 1), InvalidInput);
}

TEST_CASE("basin grid agrees with the curve away from the boundary band") {
    const NondimParams q{2.0, 3.0, 1.0};
    const SeparatrixCurve c = compute_separatrix(q);
    const std::size_t res = 16;
    const std::vector<BasinLabel> g = basin_grid(q, res);
    const double cell = 1.0 / static_cast<double>(res);
    const double diag = cell * std::sqrt(2.0);
    for (std::size_t i = 0; i < res; ++i)
        for (std::size_t j = 0; j < res; ++j) {
            const double x = (i + 0.5) * cell, y = (j + 0.5) * cell;
            const double sep = c.eval(x);
            if (y < sep - diag) CHECK(g[i * res + j] == BasinLabel::NativeWins);
            if (y > sep + diag) CHECK(g[i * res + j] == BasinLabel::InvaderWins);
        }
}

TEST_CASE("resilience report assembles all measures consistently") {
    const SeparatrixCurve c = compute_separatrix({2.0, 3.0, 1.0});
    const std::vector<double> x0{0.0, 0.25, 0.5};
    const ResilienceReport rep = resilience_report(c, x0, 500, 3, {}, 4);
    CHECK(rep.params.alpha == 2.0);
    REQUIRE(rep.precariousness_samples.size() == 3);
    CHECK(rep.precariousness_samples[1][0] == 0.25);
    CHECK(rep.precariousness_samples[1][1] ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(rep.latitude_quadrature - 0.75) < 1e-6);
    CHECK(rep.latitude_mc.n == 500);
    CHECK(rep.latitude_mc.seed == 3);
    CHECK(rep.basin_resolution == 4);
    CHECK(rep.basin.size() == 16);

    CHECK_THROWS_AS(resilience_report(c, {1.5}, 500, 0), InvalidInput);
}
