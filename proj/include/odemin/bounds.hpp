#pragma once

#include "odemin/localdata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace odemin {

// Maximize c.x subject to eq rows (= b), le rows (<= b), x >= 0, over Q.
struct LPResult {
    bool feasible = false;
    Rat value;
    std::vector<Rat> x;
};
LPResult lpMaximize(const std::vector<Rat>& c, const std::vector<std::vector<Rat>>& eq, const std::vector<Rat>& beq,
                    const std::vector<std::vector<Rat>>& le, const std::vector<Rat>& ble);

// 0-1 program: maximize A = a0 + obj.x subject to the equality rows and
// A >= 0; in exact mode A must also be an integer.
struct ILPInstance {
    struct Row {
        std::vector<std::pair<int, Rat>> terms;
        Rat rhs;
    };
    int m = 0;
    std::vector<std::string> names;
    Rat a0;
    std::vector<Rat> obj;
    std::vector<Row> rows;
    bool relaxed = false;
    std::optional<Rat> cap;  // A <= cap: stop once a known bound is reached
    bool incomplete = false;
    std::string reason;
    int size() const { return (int)names.size(); }
    int add_var(const std::string& name, const Rat& coef)
    {
        names.push_back(name);
        obj.push_back(coef);
        return size() - 1;
    }
};

struct ILPSolution {
    bool feasible = false;
    Rat A;                // exact mode: the integral optimum; relaxed: the LP optimum
    std::vector<Rat> x;
    long nodes = 0;
};

ILPSolution solve01(const ILPInstance& inst);

struct FeasiblePoint {
    std::vector<int> x;
    Rat A;
};
// Every binary point satisfying the rows with A integral and >= 0.
std::vector<FeasiblePoint> enumerateFeasible(const ILPInstance& inst);

// Sites that enter the Fuchs relation for factors: the origin, infinity and
// the non-apparent finite singularities.
std::vector<const SingularSite*> listedSites(const std::vector<SingularSite>& sites);

// fuchsian = true drops the pair variables; only valid without irregular sites.
ILPInstance buildFuchsInstance(const std::vector<SingularSite>& sites, int m, bool fuchsian);

// Local Fuchs terms of L itself: S_rho without the irregularity part, and I_rho.
struct FuchsTerm {
    const SingularSite* site = nullptr;
    Rat S;
    Rat I;
};
std::vector<FuchsTerm> fuchsTerms(const std::vector<SingularSite>& sites, int r);

struct DegreeBounds {
    std::vector<int> degrees;  // coefficients of Dz^m, ..., Dz^0 after clearing denominators
    int denominator_degree = 0;
    std::string blueprint;
};

// Valuation limits at the listed sites plus an apparent-singularity
// polynomial of degree <= A; nullopt when some polygon cannot host width m.
std::optional<DegreeBounds> assembleDegreeBounds(const DiffOp& L, int m, int A, const std::vector<SingularSite>& sites);

enum class BoundTag { NoFactor, Bound, Unknown };
std::string to_string(BoundTag t);

struct BoundOptions {
    bool relaxed = false;
    std::optional<int> cap;  // known bound on A
};

struct BoundOutcome {
    BoundTag tag = BoundTag::Unknown;
    int m = 0;
    bool relaxed = false;
    int A = 0;
    Rat objective;
    std::vector<int> degrees;
    int denominator_degree = 0;
    std::string blueprint;
    std::string reason;
    ILPInstance instance;
    std::vector<Rat> assignment;
    long nodes = 0;
    int max_degree() const
    {
        int d = -1;
        for (int x : degrees) d = std::max(d, x);
        return d;
    }
};

BoundOutcome boundDegreeCoeffs(const DiffOp& L, int m, const BoundOptions& opt = {});
BoundOutcome boundDegreeCoeffs(const DiffOp& L, const std::vector<SingularSite>& sites, int m, const BoundOptions& opt = {});

}  // namespace odemin
