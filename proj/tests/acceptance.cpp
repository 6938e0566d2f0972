// Acceptance suite: prints one PASS/FAIL line per criterion and returns the
// number of failures. argv[1] is the path to the lvcomp binary (used by the
// CLI reproducibility criterion).
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lvc/limits.hpp"
#include "lvc/model.hpp"
#include "lvc/resilience.hpp"
#include "lvc/rng.hpp"
#include "lvc/sensitivity.hpp"
#include "lvc/separatrix.hpp"

using namespace lvc;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
    std::string line = ok ? "PASS" : "FAIL";
    line += "  ";
    line += std::to_string(idx);
    line += ": ";
    line += what;
    if (!detail.empty()) line += "  [" + detail + "]";
    std::puts(line.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

NondimParams random_strong(std::uint64_t seed, std::uint64_t k) {
    const double a = 1.0 + 9.0 * uniform01(counter_rng(seed, 3 * k));
    const double b = 1.0 + 9.0 * uniform01(counter_rng(seed, 3 * k + 1));
    const double d = 10.0 * uniform01(counter_rng(seed, 3 * k + 2));
    return {a, b, d};
}

std::vector<NondimParams> grid27() {
    std::vector<NondimParams> out;
    for (const double a : {1.5, 2.0, 4.0})
        for (const double b : {1.5, 2.0, 4.0})
            for (const double d : {0.3, 1.0, 3.0}) out.push_back({a, b, d});
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. delta=1 exactness: sup |s(x) - Bx/A| < 1e-6 on [0,2].
void criterion1() {
    double worst = 0.0;
    std::string where;
    for (const double a : {1.5, 2.0, 4.0})
        for (const double b : {1.5, 2.0, 4.0}) {
            const SeparatrixCurve c = compute_separatrix({a, b, 1.0});
            const double slope = c.spectrum().saddle.y / c.spectrum().saddle.x;
            for (int i = 0; i <= 2000; ++i) {
                const double x = 2.0 * i / 2000.0;
                const double e = std::abs(c.eval(x) - slope * x);
                if (e > worst) {
                    worst = e;
                    where = "alpha=" + num(a) + " beta=" + num(b);
                }
            }
        }
    report(1, "delta=1 curves coincide with B x/A (sup < 1e-6 on [0,2])",
           worst < 1e-6, "sup=" + num(worst) + " at " + where);
}

// 2. Closed-form spectrum vs numeric eigen-decomposition, 1e-10 relative.
void criterion2() {
    double worst = 0.0;
    bool signs = true;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const NondimParams q = random_strong(42, k);
        const SaddleSpectrum sp = saddle_spectrum(q);
        signs = signs && sp.lambda1 < 0.0 && sp.lambda2 > 0.0 &&
                sp.stable_slope > 0.0 && sp.unstable_slope < 0.0;

        const Mat2 J = jacobian(sp.saddle, q);
        Eigen::Matrix2d M;
        M << J.a11, J.a12, J.a21, J.a22;
        const Eigen::EigenSolver<Eigen::Matrix2d> es(M);
        double l1 = es.eigenvalues()(0).real();
        double l2 = es.eigenvalues()(1).real();
        int i1 = 0, i2 = 1;
        if (l1 > l2) {
            std::swap(l1, l2);
            std::swap(i1, i2);
        }
        worst = std::max(worst, std::abs(sp.lambda1 - l1) / std::abs(l1));
        worst = std::max(worst, std::abs(sp.lambda2 - l2) / std::abs(l2));
        const auto slope_of = [&](int col) {
            return es.eigenvectors()(1, col).real() /
                   es.eigenvectors()(0, col).real();
        };
        worst = std::max(worst, std::abs(sp.stable_slope - slope_of(i1)) /
                                    std::abs(sp.stable_slope));
        worst = std::max(worst, std::abs(sp.unstable_slope - slope_of(i2)) /
                                    std::abs(sp.unstable_slope));
    }
    report(2,
           "closed-form spectrum matches Eigen to 1e-10 relative on 100 "
           "random sets",
           worst < 1e-10 && signs, "worst rel=" + num(worst));
}

// 3. |curve - bisection oracle| < 1e-5 at 10 abscissas per set, 27 sets.
void criterion3() {
    double worst = 0.0;
    std::string where;
    for (const NondimParams& q : grid27()) {
        const SeparatrixCurve c = compute_separatrix(q);
        const double A = c.spectrum().saddle.x;
        double x_hi = c.x_max();
        if (c.max_y() >= 3.0) x_hi = std::min(x_hi, c.eval_inverse(3.0));
        x_hi = std::min(x_hi, 1.0);
        const double lo = A / 10.0;
        for (int i = 0; i < 10; ++i) {
            const double x =
                lo * std::exp(std::log(x_hi / lo) * i / 9.0);
            const double e = std::abs(c.eval(x) - bisection_oracle(q, x, 1e-7));
            if (e > worst) {
                worst = e;
                where = "alpha=" + num(q.alpha) + " beta=" + num(q.beta) +
                        " delta=" + num(q.delta) + " x=" + num(x);
            }
        }
    }
    report(3, "curve matches the basin-bisection oracle within 1e-5",
           worst < 1e-5, "worst=" + num(worst) + " at " + where);
}

// 4. Integral-equation residual small on the grid; delta=1 integrand
//    pointwise < 1e-10 along the curve.
void criterion4() {
    double worst_ratio = 0.0;
    for (const NondimParams& q : grid27()) {
        const SeparatrixCurve c = compute_separatrix(q);
        const double A = c.spectrum().saddle.x;
        const double hi = std::min(2.0, c.x_max());
        for (int i = 0; i < 5; ++i) {
            const double x =
                (A / 4.0) * std::exp(std::log(hi / (A / 4.0)) * i / 4.0);
            const double r = std::abs(integral_residual(c, x));
            worst_ratio = std::max(
                worst_ratio, r / (1e-4 * std::max(c.eval(x), 1e-3)));
        }
    }

    double worst_integrand = 0.0;
    for (const double a : {1.5, 2.0, 4.0})
        for (const double b : {1.5, 2.0, 4.0}) {
            const NondimParams q{a, b, 1.0};
            const SeparatrixCurve c = compute_separatrix(q);
            const double A = c.spectrum().saddle.x;
            const double B = c.spectrum().saddle.y;
            for (const double x : c.knots_x()) {
                if (x <= 0.0 || std::abs(x - A) <= 1e-7) continue;
                const double s = c.eval(x);
                const double numr =
                    (a - 1.0) * (s - B) - (b - 1.0) * (x - A);
                const double den = x * (-(x - A) - a * (s - B));
                worst_integrand =
                    std::max(worst_integrand, std::abs(numr / den));
            }
        }
    report(4,
           "integral-equation residual within 1e-4*max(s,1e-3); delta=1 "
           "integrand < 1e-10 pointwise",
           worst_ratio < 1.0 && worst_integrand < 1e-10,
           "residual-ratio=" + num(worst_ratio) +
               " integrand=" + num(worst_integrand));
}

// 5. Knot values strictly increasing across the grid.
void criterion5() {
    bool ok = true;
    std::string where;
    for (const NondimParams& q : grid27()) {
        const SeparatrixCurve c = compute_separatrix(q);
        const auto& ys = c.knots_y();
        const auto& xs = c.knots_x();
        for (std::size_t i = 1; i < ys.size(); ++i)
            if (!(ys[i] > ys[i - 1] && xs[i] > xs[i - 1])) {
                ok = false;
                where = "alpha=" + num(q.alpha) + " beta=" + num(q.beta) +
                        " delta=" + num(q.delta);
            }
    }
    report(5, "knots strictly increasing for every grid curve", ok, where);
}

// 6. Sensitivity signs and finite-difference agreement at x in {A/2, 2A}.
void criterion6() {
    bool signs_ok = true;
    double worst = 0.0;
    std::string where;
    for (const NondimParams& q : grid27()) {
        const SeparatrixCurve c = compute_separatrix(q);
        const double A = c.spectrum().saddle.x;
        const std::vector<double> xs{A / 2.0, 2.0 * A};
        for (const Param xi : {Param::Alpha, Param::Beta, Param::Delta}) {
            const auto z = separatrix_sensitivity(c, xi, xs);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double zi = z.samples[i][1];
                if (xi == Param::Alpha && !(zi < 0.0)) signs_ok = false;
                if (xi == Param::Beta && !(zi > 0.0)) signs_ok = false;
                if (xi == Param::Delta) {
                    if (i == 0 && !(zi < 0.0)) signs_ok = false;
                    if (i == 1 && !(zi > 0.0)) signs_ok = false;
                }
                NondimParams lo = q, hi = q;
                double* vl = xi == Param::Alpha  ? &lo.alpha
                             : xi == Param::Beta ? &lo.beta
                                                 : &lo.delta;
                double* vh = xi == Param::Alpha  ? &hi.alpha
                             : xi == Param::Beta ? &hi.beta
                                                 : &hi.delta;
                const double h = 1e-4 * *vl;
                *vl -= h;
                *vh += h;
                const double fd = (compute_separatrix(hi).eval(xs[i]) -
                                   compute_separatrix(lo).eval(xs[i])) /
                                  (2.0 * h);
                const double rel = std::abs(zi - fd) / std::abs(fd);
                if (rel > worst) {
                    worst = rel;
                    where = std::string(to_string(xi)) +
                            " alpha=" + num(q.alpha) + " beta=" + num(q.beta) +
                            " delta=" + num(q.delta);
                }
            }
        }
    }
    report(6,
           "sensitivity signs (-,+,-/+) and finite-difference agreement "
           "within 1e-3 relative",
           signs_ok && worst < 1e-3, "worst rel=" + num(worst) + " at " + where);
}

// 7. A,B derivative closed forms vs central differences, 1e-6 relative.
void criterion7() {
    double worst = 0.0;
    bool signs = true;
    for (const NondimParams& q : grid27()) {
        const ABDerivatives d = dAB_dparam(q);
        signs = signs && d.dA_dalpha > 0.0 && d.dB_dalpha < 0.0 &&
                d.dA_dbeta < 0.0 && d.dB_dbeta > 0.0;
        const auto AB = [](const NondimParams& r) {
            const double den = r.alpha * r.beta - 1.0;
            return std::array<double, 2>{(r.alpha - 1.0) / den,
                                         (r.beta - 1.0) / den};
        };
        const double h = 1e-6;
        NondimParams ap = q, am = q, bp = q, bm = q;
        ap.alpha += h;
        am.alpha -= h;
        bp.beta += h;
        bm.beta -= h;
        const auto fa = AB(ap), fm = AB(am), ga = AB(bp), gm = AB(bm);
        const double fds[4] = {(fa[0] - fm[0]) / (2 * h),
                               (fa[1] - fm[1]) / (2 * h),
                               (ga[0] - gm[0]) / (2 * h),
                               (ga[1] - gm[1]) / (2 * h)};
        const double cls[4] = {d.dA_dalpha, d.dB_dalpha, d.dA_dbeta,
                               d.dB_dbeta};
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst,
                             std::abs(cls[i] - fds[i]) / std::abs(cls[i]));
    }
    report(7,
           "A,B derivatives: signs (+,-),(-,+) and central differences "
           "within 1e-6 relative",
           signs && worst < 1e-6, "worst rel=" + num(worst));
}

// 8. Latitude: symmetric 0.5 and asymmetric 0.75 by quadrature; Monte-Carlo
//    within 4 sigma at n=20000.
void criterion8() {
    const SeparatrixCurve sym = compute_separatrix({2.0, 2.0, 1.0});
    const double lat_sym = latitude(sym);
    const LatitudeMC mc = latitude_monte_carlo({2.0, 2.0, 1.0}, 20000, 1);
    const SeparatrixCurve asym = compute_separatrix({2.0, 3.0, 1.0});
    const double lat_asym = latitude(asym);

    const bool ok = std::abs(lat_sym - 0.5) < 1e-6 &&
                    std::abs(lat_asym - 0.75) < 1e-6 &&
                    std::abs(mc.estimate - lat_sym) <= 4.0 * mc.std_error;
    report(8,
           "latitude 0.5 and 0.75 by quadrature (1e-6); Monte-Carlo within "
           "4 sigma at n=20000",
           ok,
           "sym=" + num(lat_sym) + " asym=" + num(lat_asym) +
               " mc=" + num(mc.estimate) + " se=" + num(mc.std_error));
}

// 9. Limit ladders strictly decreasing; end deviations below 0.05.
void criterion9() {
    const NondimParams base{2.0, 3.0, 1.0};
    const LimitStudy z = limit_study(base, LimitDirection::DeltaToZero);
    const LimitStudy s = limit_study(base, LimitDirection::DeltaToInfinity);
    bool mono = true;
    for (std::size_t i = 1; i < z.deviations.size(); ++i)
        mono = mono && z.deviations[i] < z.deviations[i - 1];
    for (std::size_t i = 1; i < s.deviations.size(); ++i)
        mono = mono && s.deviations[i] < s.deviations[i - 1];
    const bool ends = z.deviations.back() < 0.05 && s.deviations.back() < 0.05;
    report(9,
           "limit ladders decrease monotonically; deviation < 0.05 at "
           "delta=0.01 and delta=100",
           mono && ends,
           "final-to-zero=" + num(z.deviations.back()) +
               " final-to-inf=" + num(s.deviations.back()));
}

// 10. Vector-field sign regions: positive in K_L, negative in K_R.
void criterion10() {
    bool ok = true;
    for (std::uint64_t set = 0; set < 10 && ok; ++set) {
        const NondimParams q = random_strong(101, set);
        const SaddleSpectrum sp = saddle_spectrum(q);
        const double A = sp.saddle.x, B = sp.saddle.y;
        for (std::uint64_t k = 0; k < 1000 && ok; ++k) {
            const double u = uniform01(counter_rng(500 + set, 4 * k));
            const double v = uniform01(counter_rng(500 + set, 4 * k + 1));
            const State lo{A * u, B * v};
            const State fl = vector_field(lo, q);
            ok = ok && fl.x > 0.0 && fl.y > 0.0;
            const State hi{
                A + 3.0 * uniform01(counter_rng(500 + set, 4 * k + 2)),
                B + 3.0 * uniform01(counter_rng(500 + set, 4 * k + 3))};
            const State fh = vector_field(hi, q);
            ok = ok && fh.x < 0.0 && fh.y < 0.0;
        }
    }
    report(10,
           "vector field positive on 1000 points of K_L and negative on "
           "1000 of K_R, 10 sets",
           ok, "");
}

// 11. Every CLI command, run twice, produces byte-identical files.
std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion11(const char* cli) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path("acceptance_out");
    fs::create_directories(dir);

    struct Cmd {
        const char* name;
        std::string args;
        bool basin_sibling = false;
    };
    const std::vector<Cmd> cmds{
        {"analyze", "analyze --alpha 2 --beta 3 --delta 1.5"},
        {"separatrix",
         "separatrix --alpha 2 --beta 3 --delta 0.7 --with-model "
         "--with-residual --knots 128"},
        {"resilience",
         "resilience --alpha 2 --beta 3 --delta 1 --mc-n 2000 --seed 5 "
         "--grid 8 --x0 0.2,0.5,0.8",
         true},
        {"sensitivity",
         "sensitivity --alpha 2 --beta 3 --delta 2 --x 0.05,0.1,0.2,0.4"},
        {"sweep",
         "sweep --alpha 2 --beta 3 --delta 1 --vary alpha=1.5,2,4 --x "
         "0.25,0.5"},
        {"limits",
         "limits --alpha 2 --beta 3 --delta 1 --direction to-infinity "
         "--ladder 1,3,10"},
        {"phase-portrait",
         "phase-portrait --alpha 2 --beta 2 --delta 1 --ic 0.4,0.2 --ic "
         "0.3,0.5"},
    };

    bool ok = true;
    std::string detail;
    for (const Cmd& c : cmds) {
        std::array<std::string, 2> outs;
        const fs::path out =
            dir / (std::string(c.name) + (std::string(c.name) == "analyze" ||
                                                  std::string(c.name) ==
                                                      "resilience"
                                              ? ".json"
                                              : ".csv"));
        const std::string cmd = std::string("\"") + cli + "\" " + c.args +
                                " --out \"" + out.string() + "\"";
        for (int run = 0; run < 2; ++run) {
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail = std::string(c.name) + " exited nonzero";
                break;
            }
            outs[run] = slurp(out);
            if (c.basin_sibling) {
                fs::path basin = out;
                basin.replace_filename(basin.stem().string() + "_basin.csv");
                outs[run] += slurp(basin);
            }
        }
        if (!ok) break;
        if (outs[0].empty() || outs[0] != outs[1]) {
            ok = false;
            detail = std::string(c.name) + " outputs differ between runs";
            break;
        }
    }
    report(11, "every CLI command is byte-identical across repeated runs", ok,
           detail);
}

}  // namespace

int main(int argc, char** argv) {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (argc > 1) {
        criterion11(argv[1]);
    } else {
        report(11, "every CLI command is byte-identical across repeated runs",
               false, "lvcomp path not supplied");
    }
    if (g_failures == 0) std::puts("all acceptance criteria passed");
    return g_failures;
}
