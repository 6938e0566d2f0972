#include "lvc/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lvc/quadrature.hpp"
#include "lvc/rng.hpp"

namespace lvc {

namespace {

// Splits [0, n) across workers and sums the per-index counts. The counts are
// order-independent, so the thread count never changes the result.
template <class PerIndex>
void parallel_count(std::size_t n, std::size_t& native,
                    std::size_t& undecided, PerIndex&& body) {
    std::size_t workers = std::thread::hardware_concurrency();
    workers = std::max<std::size_t>(1, std::min<std::size_t>(workers, 8));
    if (workers == 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) body(i, native, undecided);
        return;
    }
    std::vector<std::size_t> nat(workers, 0), und(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) body(i, nat[w], und[w]);
        });
    }
    for (auto& t : pool) t.join();
    for (std::size_t w = 0; w < workers; ++w) {
        native += nat[w];
        undecided += und[w];
    }
}

}  // namespace

double precariousness(const SeparatrixCurve& c, double x0) {
    if (!(x0 >= 0.0) || x0 > 1.0)
        throw InvalidInput("precariousness needs x0 in [0, 1]");
    return c.eval(x0);
}

double latitude(const SeparatrixCurve& c) {
    if (c.x_max() < 1.0 && c.max_y() < 1.0)
        throw OutOfDomain(
            "latitude needs the curve computed through x = 1 or above y = 1");
    const double up = std::min(1.0, c.x_max());
    double x1 = up;
    if (c.max_y() > 1.0) x1 = std::min(c.eval_inverse(1.0), up);
    double area = 1.0 - x1;  // columns with s >= 1 contribute fully
    if (x1 > 0.0)
        area += adaptive_simpson([&](double u) { return c.eval(u); }, 0.0, x1,
                                 1e-10, 1e-12, 48);
    return std::clamp(area, 0.0, 1.0);
}

LatitudeMC latitude_monte_carlo(const NondimParams& q, std::size_t n,
                                std::uint64_t seed,
                                const IntegrationConfig& icfg) {
    validate(q);
    validate(icfg);
    if (n < 100) throw InvalidInput("monte-carlo latitude needs n >= 100");

    std::size_t native = 0, undecided = 0;
    parallel_count(n, native, undecided,
                   [&](std::size_t i, std::size_t& nat, std::size_t& und) {
                       const State s0{
                           uniform01(counter_rng(seed, 2 * i)),
                           uniform01(counter_rng(seed, 2 * i + 1))};
                       switch (classify_initial_condition(s0, q, icfg)) {
                           case BasinLabel::NativeWins: ++nat; break;
                           case BasinLabel::Undecided: ++und; break;
                           case BasinLabel::InvaderWins: break;
                       }
                   });

    LatitudeMC out;
    out.n = n;
    out.seed = seed;
    out.undecided = undecided;
    const std::size_t decided = n - undecided;
    if (decided == 0)
        throw NumericalError("every monte-carlo point was undecided");
    const double p = static_cast<double>(native) / static_cast<double>(decided);
    out.estimate = p;
    out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(decided));
    return out;
}

std::vector<BasinLabel> basin_grid(const NondimParams& q,
                                   std::size_t resolution,
                                   const IntegrationConfig& icfg) {
    validate(q);
    validate(icfg);
    if (resolution < 2) throw InvalidInput("basin grid needs resolution >= 2");

    const double res = static_cast<double>(resolution);
    std::vector<BasinLabel> grid(resolution * resolution);
    std::size_t nat = 0, und = 0;  // counts unused; reuse the index splitter
    parallel_count(grid.size(), nat, und,
                   [&](std::size_t k, std::size_t&, std::size_t&) {
                       const std::size_t i = k / resolution, j = k % resolution;
                       const State s0{(static_cast<double>(i) + 0.5) / res,
                                      (static_cast<double>(j) + 0.5) / res};
                       grid[k] = classify_initial_condition(s0, q, icfg);
                   });
    return grid;
}

ResilienceReport resilience_report(const SeparatrixCurve& c,
                                   const std::vector<double>& x0_grid,
                                   std::size_t mc_n, std::uint64_t seed,
                                   const IntegrationConfig& icfg,
                                   std::size_t basin_resolution) {
    ResilienceReport rep;
    rep.params = c.params();
    rep.precariousness_samples.reserve(x0_grid.size());
    for (double x0 : x0_grid)
        rep.precariousness_samples.push_back({x0, precariousness(c, x0)});
    rep.latitude_quadrature = latitude(c);
    rep.latitude_mc = latitude_monte_carlo(c.params(), mc_n, seed, icfg);
    if (basin_resolution > 0) {
        rep.basin_resolution = basin_resolution;
        rep.basin = basin_grid(c.params(), basin_resolution, icfg);
    }
    return rep;
}

}  // namespace lvc
