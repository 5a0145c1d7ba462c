#pragma once

#include "odemin/bounds.hpp"
#include "odemin/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace odemin {

struct MinimizeOptions {
    uint64_t prime = kDefaultPrime;
    std::optional<int> max_terms;  // cap on the series precision; default 200 * order
    bool certify = true;           // false: stop at the first factor found
    bool relaxed = false;          // relaxed 0-1 programs for the degree bounds
    int threads = 1;               // degree bounds of different orders in parallel
};

enum class EvidenceKind {
    NoFactor,  // the 0-1 program rules the order out
    Empty,     // degree bound N and an empty selection at precision p >= (m+1)(N+1)
    Covered,   // degree bound N within the shifts of an empty selection at a higher order
    Found,     // a factor was found at this order
    Unknown,   // no proof
};
std::string to_string(EvidenceKind k);

struct OrderEvidence {
    EvidenceKind kind = EvidenceKind::Unknown;
    BoundTag bound = BoundTag::Unknown;
    int A = 0;
    std::vector<int> degrees;
    int N = -1;            // max degree bound, -1 without a bound
    int precision = 0;     // order of the deciding approximant
    int shift = -1;        // its uniform shift
    int covered_by = 0;    // order of the covering search
    std::string note;
};

struct MinimizationResult {
    DiffOp M;
    bool certified = false;
    bool capped = false;  // the precision cap stopped some search
    std::map<int, OrderEvidence> evidence;
    int precision = 0;    // largest series precision used by the search
    uint64_t prime = 0;
    std::vector<uint64_t> lift_primes;
    int lift_terms = 0;   // series length per prime during reconstruction
    DiffOpP candidate;    // modular gcrd that triggered the reconstruction
};

MinimizationResult minimalRightFactor(const DiffOp& L, const InitialConditions& ini, const MinimizeOptions& opt = {});

// True iff every order 1 <= m < ord M carries NoFactor, or a bound N with an
// empty selection of shift >= N at some order >= m and precision
// p >= (m'+1)(shift+1).
bool certifyMinimality(const DiffOp& M, const std::map<int, OrderEvidence>& evidence);

// Basis of the rational solutions of L.
std::vector<RatFunQ> rationalSolutions(const DiffOp& L);

struct InhomResult {
    std::vector<RatFunQ> b;  // M = sum b[j] Dz^j, order r - 1
    Rat B;                   // M(S) = B
    RatFunQ R;               // Dz o M = R L
    int checked_precision = 0;
    DiffOp cleared() const;  // denominators cleared; acts as D * M with D = cleared_factor()
    PolyQ cleared_factor() const;
};

// Minimal inhomogeneous equation M(y) = B for the series of (L, ini); L is
// assumed minimal. nullopt when the adjoint has no rational solution.
std::optional<InhomResult> minimalInhomogeneous(const DiffOp& L, const InitialConditions& ini);

}  // namespace odemin
