// Bistable two-species competition model in nondimensional form:
//
//   dx/dt = f(x,y) = x (1 - x - alpha y)
//   dy/dt = g(x,y) = delta y (1 - y - beta x)
//
// x and y are the two population densities scaled by their carrying
// capacities, alpha and beta are the cross-competition strengths, delta is the
// ratio of intrinsic growth rates, and time is scaled by the first species'
// growth rate. In the strong-competition regime (alpha > 1 and beta > 1) the
// system is bistable: the single-species states (1,0) and (0,1) are stable
// nodes and the interior coexistence point is a saddle whose stable manifold
// separates the two basins.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "lvc/errors.hpp"

namespace lvc {

struct State {
    double x = 0.0;
    double y = 0.0;
};

// Raw model parameters before scaling: per-capita growth rates, carrying
// capacities, and competition coefficients of the resident (n) and the
// competitor (i).
struct DimensionalParams {
    double growth_n;     // r_N > 0
    double growth_i;     // r_I > 0
    double capacity_n;   // K_N > 0
    double capacity_i;   // K_I > 0
    double comp_on_n;    // a > 0, effect of the competitor on the resident
    double comp_on_i;    // b > 0, effect of the resident on the competitor
};

struct NondimParams {
    double alpha;  // scaled competition felt by x
    double beta;   // scaled competition felt by y
    double delta;  // growth-rate ratio (timescale of y relative to x)
};

// Throws InvalidInput unless every field is finite and strictly positive.
void validate(const DimensionalParams& p);
void validate(const NondimParams& q);

// alpha = a K_I / K_N, beta = b K_N / K_I, delta = r_I / r_N.
NondimParams nondimensionalize(const DimensionalParams& p);

enum class RegimeKind {
    StrongCompetition,  // alpha > 1 and beta > 1: bistable, separatrix exists
    Other,
};

struct RegimeClass {
    RegimeKind kind;
    std::string detail;  // for Other: which condition failed
};

RegimeClass classify_regime(const NondimParams& q);

// Throws BoundaryRegime if alpha == 1 or beta == 1, NotStrongCompetition if
// alpha < 1 or beta < 1. No-op in the strong regime.
void require_strong(const NondimParams& q);

// Right-hand side (f, g) at a state.
State vector_field(const State& s, const NondimParams& q);

// Row-major 2x2 Jacobian of the vector field.
struct Mat2 {
    double a11, a12;
    double a21, a22;
};

Mat2 jacobian(const State& s, const NondimParams& q);

enum class Stability {
    UnstableNode,
    StableNode,
    Saddle,
    StableSpiral,    // not reachable in this model family; kept for honesty
    UnstableSpiral,
    Degenerate,      // an eigenvalue is zero within roundoff
};

const char* to_string(Stability s);

struct EquilibriumInfo {
    State point;
    Stability stability;
};

// The four equilibria: origin, resident-only (1,0), competitor-only (0,1),
// and the interior coexistence point
//   A = (alpha-1)/(alpha beta-1),  B = (beta-1)/(alpha beta-1).
// Outside the strong regime the set is still returned, with `warning`
// explaining what is degenerate; coexistence is absent when alpha beta == 1
// (the formulas blow up).
struct EquilibriumSet {
    EquilibriumInfo origin;
    EquilibriumInfo resident_only;
    EquilibriumInfo competitor_only;
    std::optional<EquilibriumInfo> coexistence;
    bool strong_regime = false;
    std::string warning;
};

EquilibriumSet equilibria(const NondimParams& q);

// Closed-form spectrum of the Jacobian at the interior saddle, valid in the
// strong regime. With
//   kappa = (alpha-1) + delta (beta-1)
//   eta   = (alpha-1) - delta (beta-1)
//   D     = kappa^2 + 4 delta (alpha-1)(beta-1)(alpha beta - 1)
// the eigenvalues are lambda_{1,2} = (-kappa -+ sqrt(D)) / (2 (alpha beta-1))
// with lambda1 < 0 < lambda2, the stable eigenvector is
// v1 = ((eta + sqrt(D)) / (2 delta beta (beta-1)), 1) and the stable manifold
// crosses the saddle with slope m = (sqrt(D) - eta) / (2 alpha (alpha-1)) > 0;
// the unstable slope m_u = -(sqrt(D) + eta) / (2 alpha (alpha-1)) < 0.
struct SaddleSpectrum {
    State saddle;                 // (A, B)
    double lambda1;               // stable eigenvalue, < 0
    double lambda2;               // unstable eigenvalue, > 0
    double stable_slope;          // m, slope of the separatrix at the saddle
    double unstable_slope;        // m_u
    double discriminant;          // D
    double kappa;
    double eta;
    std::array<double, 2> stable_dir;    // v1, not normalized
    std::array<double, 2> unstable_dir;  // v2

    // Tangent lines to the stable/unstable manifolds at the saddle.
    double stable_tangent(double x) const {
        return saddle.y + stable_slope * (x - saddle.x);
    }
    double unstable_tangent(double x) const {
        return saddle.y + unstable_slope * (x - saddle.x);
    }
};

// Throws RegimeError outside the strong regime.
SaddleSpectrum saddle_spectrum(const NondimParams& q);

// Which nondimensional parameter a sensitivity is taken with respect to.
enum class Param { Alpha, Beta, Delta };

const char* to_string(Param p);

}  // namespace lvc
