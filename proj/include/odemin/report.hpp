#pragma once

#include "odemin/efun.hpp"
#include "odemin/problem.hpp"

#include "json.hpp"

#include <string>

namespace odemin {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

// Problem echo in the input format; parseProblemText(dump) gives back the problem.
Json problemJson(const ProblemSpec& spec);

// Rationals print as strings; irrational numbers carry the field modulus,
// the residue in x, the minimal polynomial over Q and one box per embedding.
Json algNumJson(const AlgNum& a);

Json minimizeJson(const MinimizationResult& r);
Json inhomJson(const std::optional<InhomResult>& r);
Json valuesJson(const AlgebraicValues& v);
Json exceptionalJson(const std::vector<ExceptionalBlock>& blocks);
Json decompositionJson(const Decomposition& d);
Json boundsJson(const BoundOutcome& b);

// Human-readable rendering of a report.
std::string reportText(const Json& report);

}  // namespace odemin
