#pragma once

#include "odemin/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace odemin {

enum class InputKind { DiffOp, Recurrence };

// Validated input: operator, initial conditions at the indices of Z_L.
struct ProblemSpec {
    std::string name;
    InputKind kind = InputKind::DiffOp;
    DiffOp L;
    InitialConditions ini;
    std::optional<RecOp> rec;
    std::vector<Rat> terms;  // sequence terms supplied with a recurrence
};

// Accepts a path to a JSON file or JSON text (starting with '{').
ProblemSpec parseProblem(const std::string& path_or_text);
ProblemSpec parseProblemText(const std::string& json_text);

std::string ini_to_string(const InitialConditions& ini);

}  // namespace odemin
