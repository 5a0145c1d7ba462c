#include "odemin/problem.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace odemin {

using nlohmann::json;

namespace {

Rat rat_of(const json& j)
{
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
    throw ValidationError("expected a rational string, got " + j.dump());
}

PolyQ poly_of(const json& j)
{
    if (j.is_string()) return parse_polyq(j.get<std::string>(), "z");
    if (!j.is_array()) throw ValidationError("expected a coefficient array, got " + j.dump());
    std::vector<Rat> cs;
    for (auto& x : j) cs.push_back(rat_of(x));
    return polyq_from(cs);
}

}  // namespace

std::string ini_to_string(const InitialConditions& ini)
{
    std::string s;
    for (auto& [k, v] : ini) s += (s.empty() ? "" : ", ") + std::to_string(k) + ": " + to_string(v);
    return "{" + s + "}";
}

ProblemSpec parseProblemText(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("problem must be a JSON object");
    ProblemSpec spec;
    spec.name = j.value("name", std::string());
    if (j.contains("terms"))
        for (auto& x : j.at("terms")) spec.terms.push_back(rat_of(x));

    if (j.contains("operator")) {
        const json& op = j.at("operator");
        if (op.is_string())
            spec.L = parse_diffop(op.get<std::string>());
        else if (op.is_array()) {
            for (auto& c : op) spec.L.c.push_back(poly_of(c));
            spec.L.trim();
            if (spec.L.is_zero()) throw ValidationError("zero operator");
        } else
            throw ValidationError("operator must be a string or an array of coefficient arrays");
    } else if (j.contains("recurrence")) {
        spec.kind = InputKind::Recurrence;
        RecOp R;
        for (auto& c : j.at("recurrence")) {
            if (!c.is_array()) throw ValidationError("recurrence coefficients must be arrays");
            std::vector<Rat> cs;
            for (auto& x : c) cs.push_back(rat_of(x));
            R.c.push_back(polyq_from(cs));
        }
        if (R.c.empty() || R.c.back().is_zero_poly() || R.c.front().is_zero_poly())
            throw ValidationError("recurrence needs nonzero leading and trailing coefficients");
        spec.rec = R;
        if (spec.terms.empty())
            spec.L = recToDeq(R);
        else
            spec.L = recToDeq(R, spec.terms);
    } else {
        throw ValidationError("problem needs an \"operator\" or a \"recurrence\"");
    }

    auto zset = integerRootSet(spec.L);
    if (j.contains("initial")) {
        const json& ini = j.at("initial");
        if (!ini.is_object()) throw ValidationError("initial must be an object {index: value}");
        for (auto& [k, v] : ini.items()) {
            long idx;
            try {
                size_t pos;
                idx = std::stol(k, &pos);
                if (pos != k.size() || idx < 0) throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw ValidationError("bad initial-condition index '" + k + "'");
            }
            spec.ini[idx] = rat_of(v);
        }
    } else if (!spec.terms.empty()) {
        for (long z : zset) {
            if (z >= (long)spec.terms.size())
                throw ValidationError("not enough sequence terms for the initial condition at index " + std::to_string(z));
            spec.ini[z] = spec.terms[z];
        }
    }
    // checks keys and the recurrence constraints on the prefix
    TruncSeries<Rat> pre = prefix_from_initial(spec.L, spec.ini);
    if (!spec.terms.empty()) {
        TruncSeries<Rat> t(spec.terms, Rat(0), 0);
        seriesSolution(spec.L, t, (int)spec.terms.size(), zset);
        for (int i = 0; i < pre.prec() && i < (int)spec.terms.size(); ++i)
            if (pre.c[i] != spec.terms[i])
                throw ValidationError("initial conditions disagree with the sequence terms at index " + std::to_string(i));
    }
    return spec;
}

ProblemSpec parseProblem(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b != std::string::npos && s[b] == '{') return parseProblemText(s);
    std::ifstream in(s);
    if (!in) throw ValidationError("cannot read input file '" + s + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parseProblemText(ss.str());
}

}  // namespace odemin
