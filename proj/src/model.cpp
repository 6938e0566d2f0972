#include "lvc/model.hpp"

#include <cmath>
#include <sstream>

namespace lvc {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        std::ostringstream os;
        os << name << " must be finite and > 0, got " << v;
        throw InvalidInput(os.str());
    }
}

}  // namespace

void validate(const DimensionalParams& p) {
    require_positive_finite(p.growth_n, "growth_n");
    require_positive_finite(p.growth_i, "growth_i");
    require_positive_finite(p.capacity_n, "capacity_n");
    require_positive_finite(p.capacity_i, "capacity_i");
    require_positive_finite(p.comp_on_n, "comp_on_n");
    require_positive_finite(p.comp_on_i, "comp_on_i");
}

void validate(const NondimParams& q) {
    require_positive_finite(q.alpha, "alpha");
    require_positive_finite(q.beta, "beta");
    require_positive_finite(q.delta, "delta");
}

NondimParams nondimensionalize(const DimensionalParams& p) {
    validate(p);
    NondimParams q;
    q.alpha = p.comp_on_n * p.capacity_i / p.capacity_n;
    q.beta = p.comp_on_i * p.capacity_n / p.capacity_i;
    q.delta = p.growth_i / p.growth_n;
    return q;
}

RegimeClass classify_regime(const NondimParams& q) {
    validate(q);
    if (q.alpha > 1.0 && q.beta > 1.0)
        return {RegimeKind::StrongCompetition, ""};
    std::ostringstream os;
    if (q.alpha <= 1.0) os << "alpha = " << q.alpha << " <= 1";
    if (q.alpha <= 1.0 && q.beta <= 1.0) os << " and ";
    if (q.beta <= 1.0) os << "beta = " << q.beta << " <= 1";
    return {RegimeKind::Other, os.str()};
}

void require_strong(const NondimParams& q) {
    validate(q);
    if (q.alpha == 1.0 || q.beta == 1.0)
        throw BoundaryRegime(
            "alpha == 1 or beta == 1 is a degenerate boundary case");
    if (q.alpha < 1.0 || q.beta < 1.0)
        throw NotStrongCompetition(classify_regime(q).detail);
}

State vector_field(const State& s, const NondimParams& q) {
    State d;
    d.x = s.x * (1.0 - s.x - q.alpha * s.y);
    d.y = q.delta * (s.y * (1.0 - s.y - q.beta * s.x));
    return d;
}

Mat2 jacobian(const State& s, const NondimParams& q) {
    Mat2 j;
    j.a11 = 1.0 - 2.0 * s.x - q.alpha * s.y;
    j.a12 = -q.alpha * s.x;
    j.a21 = -q.delta * q.beta * s.y;
    j.a22 = q.delta * (1.0 - 2.0 * s.y - q.beta * s.x);
    return j;
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::UnstableNode: return "unstable node";
        case Stability::StableNode: return "stable node";
        case Stability::Saddle: return "saddle";
        case Stability::StableSpiral: return "stable spiral";
        case Stability::UnstableSpiral: return "unstable spiral";
        case Stability::Degenerate: return "degenerate";
    }
    return "?";
}

namespace {

// Label from the eigenvalue signs of a 2x2 Jacobian.
Stability label(const Mat2& j) {
    const double tr = j.a11 + j.a22;
    const double det = j.a11 * j.a22 - j.a12 * j.a21;
    const double scale = std::abs(j.a11) + std::abs(j.a12) +
                         std::abs(j.a21) + std::abs(j.a22);
    const double tiny = 1e-14 * std::max(1.0, scale * scale);
    if (std::abs(det) < tiny) return Stability::Degenerate;
    if (det < 0.0) return Stability::Saddle;
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0)
        return tr < 0.0 ? Stability::StableNode : Stability::UnstableNode;
    return tr < 0.0 ? Stability::StableSpiral : Stability::UnstableSpiral;
}

EquilibriumInfo info_at(const State& p, const NondimParams& q) {
    return {p, label(jacobian(p, q))};
}

}  // namespace

EquilibriumSet equilibria(const NondimParams& q) {
    validate(q);
    EquilibriumSet set;
    set.origin = info_at({0.0, 0.0}, q);
    set.resident_only = info_at({1.0, 0.0}, q);
    set.competitor_only = info_at({0.0, 1.0}, q);

    const double denom = q.alpha * q.beta - 1.0;
    if (denom != 0.0) {
        const double a = (q.alpha - 1.0) / denom;
        const double b = (q.beta - 1.0) / denom;
        set.coexistence = info_at({a, b}, q);
    }

    const RegimeClass rc = classify_regime(q);
    set.strong_regime = rc.kind == RegimeKind::StrongCompetition;
    if (!set.strong_regime) {
        set.warning = "not in the strong-competition regime (" + rc.detail +
                      "); no interior saddle / separatrix";
        if (!set.coexistence)
            set.warning += "; coexistence point undefined (alpha*beta == 1)";
    }
    return set;
}

SaddleSpectrum saddle_spectrum(const NondimParams& q) {
    require_strong(q);
    const double am1 = q.alpha - 1.0;
    const double bm1 = q.beta - 1.0;
    const double denom = q.alpha * q.beta - 1.0;

    SaddleSpectrum sp;
    sp.saddle = {am1 / denom, bm1 / denom};
    sp.kappa = am1 + q.delta * bm1;
    sp.eta = am1 - q.delta * bm1;
    sp.discriminant = sp.kappa * sp.kappa + 4.0 * q.delta * am1 * bm1 * denom;
    const double root = std::sqrt(sp.discriminant);
    sp.lambda1 = (-sp.kappa - root) / (2.0 * denom);
    sp.lambda2 = (-sp.kappa + root) / (2.0 * denom);
    sp.stable_slope = (root - sp.eta) / (2.0 * q.alpha * am1);
    sp.unstable_slope = -(root + sp.eta) / (2.0 * q.alpha * am1);
    sp.stable_dir = {(sp.eta + root) / (2.0 * q.delta * q.beta * bm1), 1.0};
    sp.unstable_dir = {(sp.eta - root) / (2.0 * q.delta * q.beta * bm1), 1.0};
    return sp;
}

const char* to_string(Param p) {
    switch (p) {
        case Param::Alpha: return "alpha";
        case Param::Beta: return "beta";
        case Param::Delta: return "delta";
    }
    return "?";
}

}  // namespace lvc
