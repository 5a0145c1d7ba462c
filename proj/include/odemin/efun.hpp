#pragma once

#include "odemin/minimize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace odemin {

using MatK = Mat<RatFun<AlgNum>>;
using PolyMatK = Mat<PolyK>;

struct DesingularizationError : Error {
    using Error::Error;
};

// Y = B Z with Z' = C Z holomorphic at alpha.
struct BeukersResult {
    PolyMatK B;
    Rat residue;             // residue of Trace(A) at alpha
    int steps = 0;
    std::vector<int> rows;   // row chosen at each step
    int precision = 0;       // Laurent terms used; 0 in exact mode
};

// Laurent mode: C is carried as truncated expansions at alpha.
BeukersResult beukersRemoveSingularity(const Mat<RatFunQ>& A, const AlgNum& alpha);

// Exact mode over Q(alpha)(z); also returns C = B^-1 (A B - B').
struct BeukersExact {
    BeukersResult result;
    MatK C;
};
BeukersExact beukersRemoveSingularityExact(const Mat<RatFunQ>& A, const AlgNum& alpha);

PolyMatK identity_poly_matrix(int n, const AlgNum& proto);
Mat<AlgNum> evaluate(const PolyMatK& B, const AlgNum& x);
// valuation at alpha of det B
int det_valuation(const PolyMatK& B, const AlgNum& alpha);

struct AlgebraicIdentity {
    bool origin = false;
    PolyQ mu;                                    // minimal polynomial of alpha; z at the origin
    AlgNum alpha;                                // generator of Q[x]/mu
    AlgNum beta;                                 // f(alpha), in Q(alpha)
    std::vector<std::vector<AlgNum>> relations;  // left kernel basis of B(alpha)
    Rat residue;
    int steps = 0;
};

// Result of a Beukers step at one factor of v0, identity or not.
struct ExaminedFactor {
    PolyQ mu;
    int kernel_dim = 0;
    Rat residue;
    bool identity = false;
};

struct AlgebraicValues {
    bool polynomial = false;
    PolyQ poly;                              // f itself when polynomial
    std::vector<AlgebraicIdentity> identities;  // origin first
    std::vector<ExaminedFactor> examined;
    MinimizationResult minimal;
    std::optional<InhomResult> inhom;        // nullopt: homogeneous system
    DiffOp equation;                         // cleared inhomogeneous operator, or L_min
    PolyQ rhs;                               // cleared right-hand side
    int s = 0;                               // order of the inhomogeneous equation
    bool complete = true;                    // false when minimality is uncertified
};

// Identities f(alpha) = beta for the series of (L, ini), assumed to be an
// E-function. Completeness rests on that assumption.
AlgebraicValues algebraicValues(const DiffOp& L, const InitialConditions& ini, const MinimizeOptions& opt = {});

struct ExceptionalBlock {
    PolyQ E;                     // monic irreducible
    std::vector<AlgNum> roots;   // isolated roots of E
    AlgNum beta;                 // value at the generator of Q[x]/E
};
std::vector<ExceptionalBlock> exceptionalSet(const DiffOp& L, const InitialConditions& ini, const MinimizeOptions& opt = {});

struct DecompositionBlock {
    PolyQ E;
    int depth = 0;   // q contains E^depth
};

struct Decomposition {
    PolyQ p, q;
    DiffOp g_operator;   // minimal operator of g
    InitialConditions g_initial;
    std::vector<DecompositionBlock> blocks;
    bool exc_empty = false;   // Exc(g) = {} by a final run on g
    bool certified = true;    // every minimization along the way was certified
};

struct DecomposeOptions {
    MinimizeOptions minimize;
    int max_depth = 16;
};

// f = p + q g with q monic, q(0) != 0, deg p < deg q, g purely transcendental.
Decomposition canonicalDecomposition(const DiffOp& L, const InitialConditions& ini, const DecomposeOptions& opt = {});

// Series of (L, ini) to the given precision.
TruncSeries<Rat> seriesOf(const DiffOp& L, const InitialConditions& ini, int prec);
// Initial conditions of L read off a series.
InitialConditions initialFromSeries(const DiffOp& L, const TruncSeries<Rat>& S);

// z Dz^2 + (a+z+d+1) Dz + (d+1) for 1F1[d+1; a+d+1; -z] and the expected
// values -(a)_(d+1) / (rho R'(rho)) at the roots of R.
struct OneF1Fixture {
    DiffOp L;
    InitialConditions ini;
    PolyQ R;
    std::vector<std::pair<PolyQ, AlgNum>> identities;  // (irreducible factor of R, value at its generator)
};
OneF1Fixture oneF1Fixture(int d, const Rat& a);

}  // namespace odemin
