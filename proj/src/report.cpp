#include "odemin/report.hpp"

#include <cstdio>
#include <sstream>

namespace odemin {

namespace {

std::string rs(const Rat& x) { return to_string(x); }

Json ini_json(const InitialConditions& ini)
{
    Json j = Json::object();
    for (auto& [k, v] : ini) j[std::to_string(k)] = rs(v);
    return j;
}

std::string approx(const Rat& lo, const Rat& hi)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", Rat((lo + hi) / 2).get_d());
    return buf;
}

Json box_json(const CInterval& b)
{
    return Json{{"re", {rs(b.re_lo), rs(b.re_hi)}},
                {"im", {rs(b.im_lo), rs(b.im_hi)}},
                {"approx", {approx(b.re_lo, b.re_hi), approx(b.im_lo, b.im_hi)}}};
}

const Rat kBoxWidth(1, 1 << 30);

}  // namespace

Json problemJson(const ProblemSpec& spec)
{
    Json j;
    j["name"] = spec.name;
    j["operator"] = to_string(spec.L);
    j["initial"] = ini_json(spec.ini);
    return j;
}

Json algNumJson(const AlgNum& a)
{
    if (a.is_rational()) return rs(a.rational_value());
    const PolyQ& mod = a.K->modulus;
    Json j;
    j["field"] = to_string(mod, "x");
    j["residue"] = to_string(a.r, "x");
    j["minpoly"] = to_string(minpoly(a));
    Json boxes = Json::array();
    for (auto& root : isolateRoots(mod)) {
        Box b = *root.box;
        while (box_width(b) > kBoxWidth) b = refine_box(mod, b);
        boxes.push_back(box_json(enclose(a, b)));
    }
    j["embeddings"] = boxes;
    return j;
}

Json minimizeJson(const MinimizationResult& r)
{
    Json j;
    j["operator"] = to_string(r.M);
    j["order"] = r.M.order();
    j["degree"] = r.M.degree();
    j["certified"] = r.certified;
    j["capped"] = r.capped;
    j["precision"] = r.precision;
    j["prime"] = r.prime;
    j["lift_primes"] = r.lift_primes.size();
    j["lift_terms"] = r.lift_terms;
    Json ev = Json::object();
    for (auto& [m, e] : r.evidence) {
        Json x;
        x["kind"] = to_string(e.kind);
        x["bound"] = to_string(e.bound);
        if (e.N >= 0) {
            x["N"] = e.N;
            x["A"] = e.A;
            x["degrees"] = e.degrees;
        }
        if (e.precision > 0) x["precision"] = e.precision;
        if (e.shift >= 0) x["shift"] = e.shift;
        if (e.covered_by > 0) x["covered_by"] = e.covered_by;
        if (!e.note.empty()) x["note"] = e.note;
        ev[std::to_string(m)] = x;
    }
    j["evidence"] = ev;
    return j;
}

Json inhomJson(const std::optional<InhomResult>& r)
{
    Json j;
    if (!r) {
        j["operator"] = nullptr;
        j["reason"] = "the adjoint has no rational solution";
        return j;
    }
    j["operator"] = to_string(r->cleared());
    j["rhs"] = to_string(r->B * r->cleared_factor());
    j["B"] = rs(r->B);
    j["integrating_factor"] = to_string(r->R.num) + (r->R.den.deg() > 0 ? " / (" + to_string(r->R.den) + ")" : "");
    j["checked_precision"] = r->checked_precision;
    return j;
}

Json valuesJson(const AlgebraicValues& v)
{
    Json j;
    j["complete"] = v.complete;
    j["assumption"] = "completeness conditional on E-function input";
    j["minimal_order"] = v.minimal.M.order();
    j["certified"] = v.minimal.certified;
    if (v.polynomial) {
        j["polynomial"] = to_string(v.poly);
        j["identities"] = Json::array({Json{{"alpha", "0"}, {"beta", algNumJson(v.identities[0].beta)}, {"kernel_dim", 0}}});
        return j;
    }
    j["equation"] = to_string(v.equation);
    j["rhs"] = to_string(v.rhs);
    Json ids = Json::array();
    for (auto& id : v.identities) {
        Json x;
        x["alpha"] = id.origin ? Json("0") : algNumJson(id.alpha);
        x["beta"] = algNumJson(id.beta);
        x["kernel_dim"] = id.relations.size();
        if (!id.origin) {
            x["minpoly_alpha"] = to_string(id.mu);
            x["residue"] = rs(id.residue);
        }
        ids.push_back(x);
    }
    j["identities"] = ids;
    Json ex = Json::array();
    for (auto& e : v.examined)
        ex.push_back({{"mu", to_string(e.mu)}, {"kernel_dim", e.kernel_dim}, {"residue", rs(e.residue)}, {"identity", e.identity}});
    j["examined"] = ex;
    return j;
}

Json exceptionalJson(const std::vector<ExceptionalBlock>& blocks)
{
    Json arr = Json::array();
    for (auto& b : blocks) {
        Json x;
        x["E"] = to_string(b.E);
        Json roots = Json::array();
        for (auto& r : b.roots) {
            Box bx = *r.box;
            while (box_width(bx) > kBoxWidth) bx = refine_box(b.E, bx);
            roots.push_back(box_json(CInterval::of(bx)));
        }
        x["roots"] = roots;
        x["beta"] = algNumJson(b.beta);
        arr.push_back(x);
    }
    return Json{{"blocks", arr}, {"assumption", "completeness conditional on E-function input"}};
}

Json decompositionJson(const Decomposition& d)
{
    Json j;
    j["p"] = to_string(d.p);
    j["q"] = to_string(d.q);
    j["g"] = {{"operator", to_string(d.g_operator)}, {"initial", ini_json(d.g_initial)}};
    Json bl = Json::array();
    for (auto& b : d.blocks) bl.push_back({{"E", to_string(b.E)}, {"depth", b.depth}});
    j["blocks"] = bl;
    j["exc_g_empty"] = d.exc_empty;
    j["certified"] = d.certified;
    return j;
}

Json boundsJson(const BoundOutcome& b)
{
    Json j;
    j["m"] = b.m;
    j["tag"] = to_string(b.tag);
    j["relaxed"] = b.relaxed;
    if (b.tag == BoundTag::Bound) {
        j["A"] = b.A;
        j["degrees"] = b.degrees;
        j["N"] = b.max_degree();
        j["denominator_degree"] = b.denominator_degree;
        j["objective"] = rs(b.objective);
    }
    if (!b.reason.empty()) j["reason"] = b.reason;
    j["nodes"] = b.nodes;
    return j;
}

namespace {

void text_rec(std::ostringstream& os, const Json& j, const std::string& indent)
{
    for (auto& [k, v] : j.items()) {
        if (v.is_object()) {
            os << indent << k << ":\n";
            text_rec(os, v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v[0].is_object()) {
            os << indent << k << ":\n";
            for (auto& e : v) {
                os << indent << "  -\n";
                text_rec(os, e, indent + "    ");
            }
        } else {
            os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

}  // namespace

std::string reportText(const Json& report)
{
    std::ostringstream os;
    text_rec(os, report, "");
    return os.str();
}

}  // namespace odemin
