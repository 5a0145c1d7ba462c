#pragma once

#include "odemin/ore.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace odemin {

// Lower boundary of the Newton polygon built from the points
// (i, val(a_i) - i) at a finite point and (i, i - deg a_i) at infinity,
// translated so that the first vertex is (0, 0).
struct NewtonPolygon {
    Point point;
    std::vector<std::pair<int, int>> vertices;  // x ascending
    std::vector<std::pair<int, int>> segments;  // (width, rise) by increasing slope
    int order() const { return vertices.empty() ? 0 : vertices.back().first; }
};

// Lower hull of points (x, y) with the quadrant (x' <= x, y' >= y) attached.
NewtonPolygon hullOf(const std::vector<std::pair<int, int>>& pts);
NewtonPolygon newtonPolygonAt(const DiffOp& L, const Point& pt);

// Segments split into their smallest lattice pieces (width q, rise a) for a
// slope a/q in lowest terms.
std::vector<std::pair<int, int>> polygonPieces(const NewtonPolygon& P);

struct KnapsackResult {
    int value = 0;                               // total rise
    std::vector<std::pair<int, int>> segments;  // chosen pieces merged by slope
    std::vector<std::pair<int, int>> vertices;  // factor polygon from (0, 0)
};

// Steepest possible factor polygon of width m: the chosen pieces maximize the
// total rise. Anchored at the monic end this is the lowest polygon a factor
// of order m can have. nullopt when no piece subset has width m.
std::optional<KnapsackResult> knapsackFactorPolygon(const NewtonPolygon& P, int m);

// For each i = 0..m, the largest rise a width-m factor polygon can have over
// [i, m]; this is what bounds the valuations of the monic factor.
std::optional<std::vector<Rat>> maxRiseProfile(const NewtonPolygon& P, int m);

// Galois orbit of exponential parts w = sum_k w_k t^-k at a point, t the local
// parameter. Parts come from a tree of Newton-polygon substitutions; `path`
// records the nodes so that deg(w_i - w_j) can be read off for any pair.
struct ExpPartBlock {
    int ramification = 1;
    std::vector<AlgNum> w;  // w[k], k = 0..pole order; w[0] unset when leaf_factor has degree > 1
    PolyK leaf_factor;      // factor of the last indicial polynomial giving w[0]
    int multiplicity = 1;
    NF field;               // field of the w[k], k >= 1
    int ext_degree = 1;     // [field : site field]
    int ext_level = -1;     // level at which field was adjoined, -1 if none
    int ext_node = -1;
    int leaf_degree = 1;
    std::vector<std::pair<int, int>> path;  // (node id, level)
    Rat exp_trace;          // sum of w(0) over the block and all conjugate points
    int size() const { return ext_degree * leaf_degree; }
    int pole_order() const { return (int)w.size() - 1; }
};

struct GeneralizedExponents {
    std::vector<ExpPartBlock> blocks;
    bool complete = true;
    std::string reason;  // why the list is incomplete
};

// Unordered pairs (x in a, y in b) summed over deg(w_x - w_y), counting
// equal parts as 0; a == b gives the pairs inside one block.
int pairDegreeSum(const ExpPartBlock& a, const ExpPartBlock& b, bool same_block);

GeneralizedExponents generalizedExponents(const DiffOp& L, const Point& pt);

// True iff the roots of mu are apparent singularities: r distinct nonnegative
// integer exponents and r independent power series solutions.
bool apparencyTest(const DiffOp& L, const PolyQ& mu);

enum class SiteClass { Ordinary, RegularSingular, Irregular, Apparent };
std::string to_string(SiteClass c);

struct IndicialFactor {
    PolyK factor;  // monic irreducible over Q(rho)
    int multiplicity = 1;
    Rat trace;     // sum of its roots, summed over the conjugates of rho
};

struct SingularSite {
    Point point;
    PolyQ mu;  // monic minimal polynomial; z for the origin, empty at infinity
    bool at_infinity = false;
    SiteClass cls = SiteClass::Ordinary;
    std::vector<IndicialFactor> indicial;
    GeneralizedExponents exps;
    NewtonPolygon polygon;
    int degree() const { return at_infinity ? 1 : mu.deg(); }
};

// Origin, the irreducible factors of the leading coefficient, and infinity.
std::vector<SingularSite> singularSiteList(const DiffOp& L);

}  // namespace odemin
