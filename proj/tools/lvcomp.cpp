// lvcomp: command-line front end for the competition-model resilience
// analyses. Every subcommand reads model parameters (nondimensional triple or
// dimensional sextuple), runs one analysis, and writes a flat CSV or JSON
// file; given identical inputs the output is byte-identical across runs.
//
// Exit codes: 0 success, 2 invalid input, 3 regime violation (the analysis
// needs strong competition), 4 numerical failure.
#include <algorithm>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lvc/format.hpp"
#include "lvc/integrator.hpp"
#include "lvc/limits.hpp"
#include "lvc/model.hpp"
#include "lvc/resilience.hpp"
#include "lvc/sensitivity.hpp"
#include "lvc/separatrix.hpp"

namespace {

using nlohmann::ordered_json;

// One parameter block per subcommand: either --alpha/--beta/--delta or the
// dimensional sextuple, never a mixture.
struct ParamOpts {
    double alpha = 0, beta = 0, delta = 0;
    double rn = 0, ri = 0, kn = 0, ki = 0, a = 0, b = 0;
    CLI::Option* nd[3];
    CLI::Option* dim[6];
};

void add_param_opts(CLI::App* cmd, ParamOpts& po) {
    po.nd[0] = cmd->add_option("--alpha", po.alpha,
                               "Competition strength felt by the native");
    po.nd[1] = cmd->add_option("--beta", po.beta,
                               "Competition strength felt by the invader");
    po.nd[2] = cmd->add_option("--delta", po.delta, "Growth-rate ratio");
    po.dim[0] = cmd->add_option("--rn", po.rn, "Native growth rate");
    po.dim[1] = cmd->add_option("--ri", po.ri, "Invader growth rate");
    po.dim[2] = cmd->add_option("--kn", po.kn, "Native carrying capacity");
    po.dim[3] = cmd->add_option("--ki", po.ki, "Invader carrying capacity");
    po.dim[4] = cmd->add_option("--a", po.a, "Competition coefficient on the native");
    po.dim[5] = cmd->add_option("--b", po.b, "Competition coefficient on the invader");
}

lvc::NondimParams resolve_params(const ParamOpts& po) {
    int nset = 0, dset = 0;
    for (auto* o : po.nd) nset += o->count() > 0;
    for (auto* o : po.dim) dset += o->count() > 0;
    if (nset > 0 && dset > 0)
        throw lvc::InvalidInput(
            "give either --alpha/--beta/--delta or the dimensional block, "
            "not both");
    if (dset > 0) {
        if (dset != 6)
            throw lvc::InvalidInput(
                "dimensional parameters need all of --rn --ri --kn --ki --a "
                "--b");
        return lvc::nondimensionalize(
            {po.rn, po.ri, po.kn, po.ki, po.a, po.b});
    }
    if (nset != 3)
        throw lvc::InvalidInput("need all of --alpha --beta --delta");
    lvc::NondimParams q{po.alpha, po.beta, po.delta};
    lvc::validate(q);
    return q;
}

// Config-file support: `--config FILE` names a file of `key = value` lines
// (keys are the long option names of the current subcommand, without the
// leading dashes). The file is merged into the argument list before parsing;
// a key is skipped when the same option was given on the command line, so
// explicit flags always override the file.
std::vector<std::string> inject_config(std::vector<std::string> args) {
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            file = args[i].substr(std::string("--config=").size());
    }
    if (file.empty()) return args;

    std::ifstream in(file);
    if (!in) throw lvc::InvalidInput("cannot read config file " + file);
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw lvc::InvalidInput("config line is not key = value: '" +
                                    line + "'");
        const std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw lvc::InvalidInput("config line has an empty key: '" + line +
                                    "'");
        if (val.size() >= 2 && (val.front() == '"' || val.front() == '\'') &&
            val.back() == val.front())
            val = val.substr(1, val.size() - 2);
        const std::string flag = "--" + key;
        bool overridden = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) overridden = true;
        if (!overridden) args.push_back(flag + "=" + val);
    }
    return args;
}

// Relative output paths resolve against $LVCOMP_OUT_DIR when it is set; an
// empty path means stdout.
std::filesystem::path resolve_out(const std::string& out) {
    std::filesystem::path p(out);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("LVCOMP_OUT_DIR"))
            if (*dir) p = std::filesystem::path(dir) / p;
    }
    return p;
}

void write_text(const std::string& out, const std::string& body) {
    if (out.empty()) {
        std::cout << body;
        return;
    }
    const std::filesystem::path p = resolve_out(out);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw lvc::InvalidInput("cannot open output file " + p.string());
    f << body;
    if (!f) throw lvc::InvalidInput("write failed for " + p.string());
}

ordered_json params_json(const lvc::NondimParams& q) {
    return ordered_json{{"alpha", q.alpha}, {"beta", q.beta}, {"delta", q.delta}};
}

// ---------------------------------------------------------------- analyze --

int cmd_analyze(const lvc::NondimParams& q, const std::string& out) {
    const lvc::RegimeClass rc = lvc::classify_regime(q);
    const lvc::EquilibriumSet eq = lvc::equilibria(q);

    ordered_json j;
    j["params"] = params_json(q);
    j["regime"] = {{"kind", rc.kind == lvc::RegimeKind::StrongCompetition
                                ? "StrongCompetition"
                                : "Other"},
                   {"detail", rc.detail}};
    j["warning"] = eq.warning;

    auto one = [](const char* name, const lvc::EquilibriumInfo& e) {
        return ordered_json{{"name", name},
                            {"x", e.point.x},
                            {"y", e.point.y},
                            {"stability", lvc::to_string(e.stability)}};
    };
    ordered_json eqs = ordered_json::array();
    eqs.push_back(one("origin", eq.origin));
    eqs.push_back(one("resident_only", eq.resident_only));
    eqs.push_back(one("competitor_only", eq.competitor_only));
    if (eq.coexistence) eqs.push_back(one("coexistence", *eq.coexistence));
    j["equilibria"] = eqs;

    if (eq.strong_regime) {
        const lvc::SaddleSpectrum sp = lvc::saddle_spectrum(q);
        j["spectrum"] = ordered_json{
            {"A", sp.saddle.x},       {"B", sp.saddle.y},
            {"lambda1", sp.lambda1},  {"lambda2", sp.lambda2},
            {"m", sp.stable_slope},   {"m_u", sp.unstable_slope},
            {"Delta", sp.discriminant}, {"kappa", sp.kappa},
            {"eta", sp.eta}};
    } else {
        j["spectrum"] = nullptr;
    }
    write_text(out, j.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------- separatrix --

int cmd_separatrix(const lvc::NondimParams& q, double xmax, std::size_t knots,
                   bool with_model, bool with_residual, const std::string& out) {
    lvc::SeparatrixBuildConfig scfg;
    scfg.x_max = xmax;
    scfg.resample_count = knots;
    const lvc::SeparatrixCurve curve = lvc::compute_separatrix(q, scfg);

    std::string body = "x,y";
    if (with_model) body += ",s_star";
    if (with_residual) body += ",residual";
    body += "\n";
    const auto& xs = curve.knots_x();
    const auto& ys = curve.knots_y();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        body += lvc::g17(xs[i]) + "," + lvc::g17(ys[i]);
        if (with_model) body += "," + lvc::g17(lvc::model_separatrix(q, xs[i]));
        if (with_residual)
            body += "," + lvc::g17(xs[i] == 0.0
                                       ? 0.0
                                       : lvc::integral_residual(curve, xs[i]));
        body += "\n";
    }
    write_text(out, body);
    return 0;
}

// ------------------------------------------------------------- resilience --

int cmd_resilience(const lvc::NondimParams& q, std::vector<double> x0,
                   std::size_t mc_n, std::uint64_t seed, std::size_t grid,
                   const std::string& out) {
    if (grid > 0 && out.empty())
        throw lvc::InvalidInput("--grid needs --out (the basin CSV path is "
                                "derived from it)");
    if (x0.empty())
        for (int i = 0; i <= 10; ++i) x0.push_back(0.1 * i);

    const lvc::SeparatrixCurve curve = lvc::compute_separatrix(q);
    const lvc::ResilienceReport rep =
        lvc::resilience_report(curve, x0, mc_n, seed, {}, grid);

    ordered_json j;
    j["params"] = params_json(q);
    j["latitude"] = rep.latitude_quadrature;
    j["latitude_mc"] = ordered_json{{"estimate", rep.latitude_mc.estimate},
                                    {"se", rep.latitude_mc.std_error},
                                    {"n", rep.latitude_mc.n},
                                    {"seed", rep.latitude_mc.seed},
                                    {"undecided", rep.latitude_mc.undecided}};
    ordered_json prec = ordered_json::array();
    for (const auto& s : rep.precariousness_samples)
        prec.push_back(ordered_json::array({s[0], s[1]}));
    j["precariousness"] = prec;

    if (grid > 0) {
        std::filesystem::path basin = resolve_out(out);
        basin.replace_filename(basin.stem().string() + "_basin.csv");
        j["basin_csv"] = basin.string();
        std::string body = "x,y,label\n";
        for (std::size_t i = 0; i < grid; ++i)
            for (std::size_t k = 0; k < grid; ++k) {
                const double cx = (static_cast<double>(i) + 0.5) /
                                  static_cast<double>(grid);
                const double cy = (static_cast<double>(k) + 0.5) /
                                  static_cast<double>(grid);
                body += lvc::g17(cx) + "," + lvc::g17(cy) + "," +
                        lvc::to_string(rep.basin[i * grid + k]);
                body += "\n";
            }
        if (basin.has_parent_path())
            std::filesystem::create_directories(basin.parent_path());
        std::ofstream f(basin);
        if (!f) throw lvc::InvalidInput("cannot open " + basin.string());
        f << body;
    }
    write_text(out, j.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------ sensitivity --

int cmd_sensitivity(const lvc::NondimParams& q, std::vector<double> xs,
                    const std::string& out) {
    if (xs.empty())
        for (int i = 1; i <= 40; ++i) xs.push_back(0.05 * i);
    const lvc::SeparatrixCurve curve = lvc::compute_separatrix(q);
    const auto za = lvc::separatrix_sensitivity(curve, lvc::Param::Alpha, xs);
    const auto zb = lvc::separatrix_sensitivity(curve, lvc::Param::Beta, xs);
    const auto zd = lvc::separatrix_sensitivity(curve, lvc::Param::Delta, xs);

    std::string body = "x,dsda,dsdb,dsdd\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        body += lvc::g17(xs[i]) + "," + lvc::g17(za.samples[i][1]) + "," +
                lvc::g17(zb.samples[i][1]) + "," + lvc::g17(zd.samples[i][1]) +
                "\n";
    write_text(out, body);
    return 0;
}

// ------------------------------------------------------------------ sweep --

struct VarySpec {
    lvc::Param p;
    std::vector<double> values;
};

VarySpec parse_vary(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw lvc::InvalidInput("--vary wants name=v1,v2,... or name=lo:hi:n");
    const std::string name = spec.substr(0, eq);
    VarySpec v;
    if (name == "alpha")
        v.p = lvc::Param::Alpha;
    else if (name == "beta")
        v.p = lvc::Param::Beta;
    else if (name == "delta")
        v.p = lvc::Param::Delta;
    else
        throw lvc::InvalidInput("--vary parameter must be alpha, beta or delta");

    const std::string rest = spec.substr(eq + 1);
    const auto parse_num = [&](const std::string& tok) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw lvc::InvalidInput("bad number in --vary: '" + tok + "'");
        }
        if (used != tok.size())
            throw lvc::InvalidInput("bad number in --vary: '" + tok + "'");
        return x;
    };

    if (std::count(rest.begin(), rest.end(), ':') == 2) {
        // lo:hi:n linear ramp
        const auto c1 = rest.find(':'), c2 = rest.find(':', c1 + 1);
        const double lo = parse_num(rest.substr(0, c1));
        const double hi = parse_num(rest.substr(c1 + 1, c2 - c1 - 1));
        const double nd = parse_num(rest.substr(c2 + 1));
        const long n = static_cast<long>(nd);
        if (n < 2 || static_cast<double>(n) != nd)
            throw lvc::InvalidInput("--vary lo:hi:n needs integer n >= 2");
        for (long i = 0; i < n; ++i)
            v.values.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                        static_cast<double>(n - 1));
    } else {
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ','))
            v.values.push_back(parse_num(tok));
    }
    if (v.values.empty()) throw lvc::InvalidInput("--vary got no values");
    return v;
}

int cmd_sweep(const lvc::NondimParams& q, const std::vector<std::string>& vary,
              std::vector<double> xs, const std::string& out) {
    if (vary.empty() || vary.size() > 2)
        throw lvc::InvalidInput("sweep wants one or two --vary specs");
    std::vector<VarySpec> specs;
    for (const auto& s : vary) specs.push_back(parse_vary(s));
    if (specs.size() == 2 && specs[0].p == specs[1].p)
        throw lvc::InvalidInput("--vary parameters must differ");
    if (xs.empty()) xs.push_back(0.5);

    const auto apply = [](lvc::NondimParams qq, lvc::Param p, double v) {
        switch (p) {
            case lvc::Param::Alpha: qq.alpha = v; break;
            case lvc::Param::Beta: qq.beta = v; break;
            case lvc::Param::Delta: qq.delta = v; break;
        }
        return qq;
    };

    std::vector<lvc::NondimParams> pts;
    for (double v0 : specs[0].values) {
        const lvc::NondimParams q0 = apply(q, specs[0].p, v0);
        if (specs.size() == 1)
            pts.push_back(q0);
        else
            for (double v1 : specs[1].values)
                pts.push_back(apply(q0, specs[1].p, v1));
    }

    // Grid points are independent; evaluate them on a small pool and emit in
    // grid order regardless of completion order.
    std::vector<std::string> blocks(pts.size());
    const auto work = [&](std::size_t i) {
        const lvc::NondimParams qi = pts[i];
        lvc::validate(qi);
        const lvc::SeparatrixCurve curve = lvc::compute_separatrix(qi);
        const double lat = lvc::latitude(curve);
        const auto za = lvc::separatrix_sensitivity(curve, lvc::Param::Alpha, xs);
        const auto zb = lvc::separatrix_sensitivity(curve, lvc::Param::Beta, xs);
        const auto zd = lvc::separatrix_sensitivity(curve, lvc::Param::Delta, xs);
        std::string rows;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            rows += lvc::g17(qi.alpha) + "," + lvc::g17(qi.beta) + "," +
                    lvc::g17(qi.delta) + "," + lvc::g17(xs[k]) + "," +
                    lvc::g17(curve.eval(xs[k])) + "," +
                    lvc::g17(za.samples[k][1]) + "," +
                    lvc::g17(zb.samples[k][1]) + "," +
                    lvc::g17(zd.samples[k][1]) + "," + lvc::g17(lat) + "\n";
        }
        blocks[i] = std::move(rows);
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>({8, hw, pts.size()});
    if (workers <= 1) {
        for (std::size_t i = 0; i < pts.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < pts.size(); i += workers)
                        work(i);
                } catch (...) {
                    errs[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (const auto& e : errs)
            if (e) std::rethrow_exception(e);
    }

    std::string body =
        "alpha,beta,delta,x,s,ds_dalpha,ds_dbeta,ds_ddelta,latitude\n";
    for (const auto& bl : blocks) body += bl;
    write_text(out, body);
    return 0;
}

// ----------------------------------------------------------------- limits --

int cmd_limits(const lvc::NondimParams& q, lvc::LimitDirection dir,
               std::vector<double> ladder, std::vector<double> window,
               const std::string& out) {
    if (window.size() != 2)
        throw lvc::InvalidInput("--window wants lo,hi");
    const lvc::LimitStudy study = lvc::limit_study(
        q, dir, std::move(ladder), {window[0], window[1]});
    std::string body = "delta,deviation\n";
    for (std::size_t i = 0; i < study.ladder.size(); ++i)
        body += lvc::g17(study.ladder[i]) + "," +
                lvc::g17(study.deviations[i]) + "\n";
    write_text(out, body);
    return 0;
}

// --------------------------------------------------------- phase-portrait --

int cmd_phase_portrait(const lvc::NondimParams& q,
                       const std::vector<std::string>& ics, std::size_t grid,
                       const std::string& out) {
    std::vector<lvc::State> starts;
    for (const auto& s : ics) {
        const auto comma = s.find(',');
        std::size_t u1 = 0, u2 = 0;
        double x = 0, y = 0;
        bool ok = comma != std::string::npos;
        if (ok) {
            try {
                x = std::stod(s.substr(0, comma), &u1);
                y = std::stod(s.substr(comma + 1), &u2);
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok || u1 != comma || u2 != s.size() - comma - 1)
            throw lvc::InvalidInput("--ic wants x,y with x,y >= 0: '" + s + "'");
        starts.push_back({x, y});
    }
    if (starts.empty()) {
        if (grid < 2) throw lvc::InvalidInput("--ic-grid must be >= 2");
        for (std::size_t i = 0; i < grid; ++i)
            for (std::size_t k = 0; k < grid; ++k)
                starts.push_back(
                    {(static_cast<double>(i) + 0.5) / static_cast<double>(grid),
                     (static_cast<double>(k) + 0.5) / static_cast<double>(grid)});
    }

    lvc::StopSpec stop;
    stop.targets = {{1.0, 0.0}, {0.0, 1.0}};
    std::string body = "traj_id,t,x,y,label\n";
    for (std::size_t id = 0; id < starts.size(); ++id) {
        const lvc::Trajectory tr = lvc::integrate(
            starts[id], q, lvc::Direction::Forward, {}, stop);
        const char* label =
            tr.reached_target == 0   ? lvc::to_string(lvc::BasinLabel::NativeWins)
            : tr.reached_target == 1 ? lvc::to_string(lvc::BasinLabel::InvaderWins)
                                     : lvc::to_string(lvc::BasinLabel::Undecided);
        for (const auto& smp : tr.samples)
            body += std::to_string(id) + "," + lvc::g17(smp.t) + "," +
                    lvc::g17(smp.s.x) + "," + lvc::g17(smp.s.y) + "," + label +
                    "\n";
    }
    write_text(out, body);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Separatrix, resilience and sensitivity analysis of the bistable "
        "two-species competition model"};
    app.require_subcommand(1);

    struct SubState {
        ParamOpts po;
        std::string out;
        // separatrix
        double xmax = 3.0;
        std::size_t knots = 512;
        bool with_model = false, with_residual = false;
        // resilience
        std::vector<double> x0;
        std::size_t mc_n = 10000;
        std::uint64_t seed = 0;
        std::size_t grid = 0;
        // sensitivity / sweep
        std::vector<double> xs;
        std::vector<std::string> vary;
        // limits
        lvc::LimitDirection dir = lvc::LimitDirection::DeltaToZero;
        std::vector<double> ladder;
        std::vector<double> window{0.2, 0.8};
        // phase portrait
        std::vector<std::string> ics;
        std::size_t ic_grid = 5;
    };
    auto st = std::make_unique<SubState[]>(7);

    std::string config_path;  // consumed before parsing; see inject_config
    const auto common = [&](CLI::App* cmd, SubState& s) {
        add_param_opts(cmd, s.po);
        cmd->add_option("--out", s.out,
                        "Output file (default stdout; relative paths resolve "
                        "against $LVCOMP_OUT_DIR)");
        cmd->add_option("--config", config_path,
                        "Config file of key = value lines; flags override");
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Regime, equilibria and saddle spectrum as JSON");
    common(analyze, st[0]);
    analyze->callback([&] { cmd_analyze(resolve_params(st[0].po), st[0].out); });

    CLI::App* sep = app.add_subcommand(
        "separatrix", "Separatrix curve knots as CSV");
    common(sep, st[1]);
    sep->add_option("--xmax", st[1].xmax, "Right end of the computed domain")
        ->capture_default_str();
    sep->add_option("--knots", st[1].knots, "Knot count")->capture_default_str();
    sep->add_flag("--with-model", st[1].with_model,
                  "Add the closed-form model curve column s_star");
    sep->add_flag("--with-residual", st[1].with_residual,
                  "Add the integral-equation residual column");
    sep->callback([&] {
        cmd_separatrix(resolve_params(st[1].po), st[1].xmax, st[1].knots,
                       st[1].with_model, st[1].with_residual, st[1].out);
    });

    CLI::App* res = app.add_subcommand(
        "resilience", "Latitude, precariousness and optional basin grid");
    common(res, st[2]);
    res->add_option("--x0", st[2].x0,
                    "Native densities for precariousness (default 0,0.1,..,1)")
        ->delimiter(',');
    res->add_option("--mc-n", st[2].mc_n, "Monte-Carlo sample count")
        ->capture_default_str();
    res->add_option("--seed", st[2].seed, "Monte-Carlo seed")
        ->capture_default_str();
    res->add_option("--grid", st[2].grid,
                    "Basin grid resolution (0 = none; writes a _basin.csv "
                    "sibling of --out)");
    res->callback([&] {
        cmd_resilience(resolve_params(st[2].po), st[2].x0, st[2].mc_n,
                       st[2].seed, st[2].grid, st[2].out);
    });

    CLI::App* sens = app.add_subcommand(
        "sensitivity", "Separatrix parameter sensitivities as CSV");
    common(sens, st[3]);
    sens->add_option("--x", st[3].xs,
                     "Abscissas to report (default 0.05,0.10,..,2.0)")
        ->delimiter(',');
    sens->callback(
        [&] { cmd_sensitivity(resolve_params(st[3].po), st[3].xs, st[3].out); });

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Curve, sensitivities and latitude over a parameter grid");
    common(sweep, st[4]);
    sweep->add_option("--vary", st[4].vary,
                      "Parameter ramp, name=v1,v2,... or name=lo:hi:n (one or "
                      "two)")
        ->expected(1, 2);
    sweep->add_option("--x", st[4].xs, "Abscissas to report (default 0.5)")
        ->delimiter(',');
    sweep->callback([&] {
        cmd_sweep(resolve_params(st[4].po), st[4].vary, st[4].xs, st[4].out);
    });

    CLI::App* lim = app.add_subcommand(
        "limits", "Deviation from the singular-perturbation limit along a "
                  "delta ladder");
    common(lim, st[5]);
    lim->add_option("--direction", st[5].dir, "Limit direction")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, lvc::LimitDirection>{
                {"to-zero", lvc::LimitDirection::DeltaToZero},
                {"to-infinity", lvc::LimitDirection::DeltaToInfinity}}))
        ->default_str("to-zero");
    lim->add_option("--ladder", st[5].ladder,
                    "Delta ladder (default per direction)")
        ->delimiter(',');
    lim->add_option("--window", st[5].window,
                    "Measurement window lo,hi (default 0.2,0.8)")
        ->delimiter(',')
        ->expected(2);
    lim->callback([&] {
        cmd_limits(resolve_params(st[5].po), st[5].dir, st[5].ladder,
                   st[5].window, st[5].out);
    });

    CLI::App* pp = app.add_subcommand(
        "phase-portrait", "Forward trajectories from a set of initial "
                          "conditions as CSV");
    common(pp, st[6]);
    pp->add_option("--ic", st[6].ics, "Initial condition x,y (repeatable)");
    pp->add_option("--ic-grid", st[6].ic_grid,
                   "Cell-centered n x n grid over (0,1)^2 when no --ic is given")
        ->capture_default_str();
    pp->callback([&] {
        cmd_phase_portrait(resolve_params(st[6].po), st[6].ics, st[6].ic_grid,
                           st[6].out);
    });

    try {
        std::vector<std::string> args;
        for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
        args = inject_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const lvc::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lvc::RegimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
