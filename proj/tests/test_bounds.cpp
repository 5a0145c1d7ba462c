#include "doctest.h"
#include "odemin/bounds.hpp"
#include "odemin/problem.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace odemin;

namespace {

std::string fixture(const std::string& name) { return std::string(ODEMIN_FIXTURE_DIR) + "/" + name; }

const DiffOp& apery()
{
    static DiffOp L = parseProblem(fixture("apery.json")).L;
    return L;
}

const std::vector<SingularSite>& apery_sites()
{
    static auto s = singularSiteList(apery());
    return s;
}

std::optional<Rat> brute_max(const ILPInstance& inst)
{
    std::optional<Rat> best;
    for (auto& p : enumerateFeasible(inst))
        if (!best || p.A > *best) best = p.A;
    return best;
}

ILPInstance random_instance(std::mt19937_64& g)
{
    ILPInstance inst;
    int n = 3 + (int)(g() % 14);
    for (int j = 0; j < n; ++j) inst.add_var("x" + std::to_string(j), canon(Rat((long)(g() % 13) - 4, 1 + (long)(g() % 3))));
    inst.a0 = Rat((long)(g() % 7) - 3);
    int rows = 1 + (int)(g() % 3);
    for (int r = 0; r < rows; ++r) {
        ILPInstance::Row row;
        long s = 0;
        for (int j = 0; j < n; ++j) {
            if (g() % 2) continue;
            long a = 1 + (long)(g() % 3);
            row.terms.push_back({j, Rat(a)});
            if (g() % 2) s += a;
        }
        row.rhs = s;
        inst.rows.push_back(row);
    }
    return inst;
}

}  // namespace

TEST_CASE("exact simplex")
{
    // max x + y, x + 2y <= 4, 3x + y <= 6
    auto r = lpMaximize({1, 1}, {}, {}, {{1, 2}, {3, 1}}, {4, 6});
    REQUIRE(r.feasible);
    CHECK(r.value == Rat(14, 5));
    CHECK(r.x == std::vector<Rat>{Rat(8, 5), Rat(6, 5)});
    // equality with a negative right-hand side
    auto e = lpMaximize({1, -1}, {{1, 1}}, {2}, {{1, 0}}, {Rat(3, 2)});
    REQUIRE(e.feasible);
    CHECK(e.value == 1);
    // x + y = -1 with x, y >= 0
    CHECK(!lpMaximize({1, 1}, {{1, 1}}, {-1}, {}, {}).feasible);
    // redundant equalities
    auto d = lpMaximize({1, 0}, {{1, 1}, {2, 2}}, {1, 2}, {}, {});
    REQUIRE(d.feasible);
    CHECK(d.value == 1);
}

TEST_CASE("solve01 agrees with enumeration")
{
    std::mt19937_64 g(99);
    int feasible = 0;
    for (int it = 0; it < 200; ++it) {
        auto inst = random_instance(g);
        CAPTURE(it);
        auto s = solve01(inst);
        auto b = brute_max(inst);
        CHECK(s.feasible == b.has_value());
        if (!b) continue;
        ++feasible;
        CHECK(s.A == *b);
        // the returned point is admissible
        Rat A = inst.a0;
        for (int j = 0; j < inst.size(); ++j) A += inst.obj[j] * s.x[j];
        CHECK(A == s.A);
        // relaxed optimum dominates
        auto rel = inst;
        rel.relaxed = true;
        auto sr = solve01(rel);
        REQUIRE(sr.feasible);
        CHECK(sr.A >= s.A);
    }
    CHECK(feasible > 50);
}

TEST_CASE("Apery Fuchs programs")
{
    auto& sites = apery_sites();
    auto inst = buildFuchsInstance(sites, 6, false);
    CHECK(inst.size() == 19);
    CHECK(!inst.incomplete);
    std::vector<Rat> obj = inst.obj;
    CHECK(std::count(obj.begin(), obj.end(), Rat(-500, 43)) == 1);
    CHECK(std::count(obj.begin(), obj.end(), Rat(-360, 43)) == 1);
    CHECK(std::count(obj.begin(), obj.end(), Rat(-6)) == 1);
    CHECK(std::count(obj.begin(), obj.end(), Rat(4)) == 2);
    CHECK(std::count(obj.begin(), obj.end(), Rat(16)) == 1);
    CHECK(std::count(obj.begin(), obj.end(), Rat(6)) == 1);
    std::map<int, std::pair<Rat, size_t>> expect{{4, {0, 0}}, {5, {2, 12}}, {6, {4, 1}}};
    for (int m = 1; m <= 9; ++m) {
        CAPTURE(m);
        auto I = buildFuchsInstance(sites, m, false);
        auto s = solve01(I);
        auto pts = enumerateFeasible(I);
        if (!expect.count(m)) {
            CHECK(!s.feasible);
            CHECK(pts.empty());
            continue;
        }
        REQUIRE(s.feasible);
        CHECK(s.A == expect[m].first);
        if (m != 4) CHECK(pts.size() == expect[m].second);
        CHECK(brute_max(I) == s.A);
    }
}

TEST_CASE("Apery relaxed programs")
{
    // LP optima cross-checked with an independent LP solver
    std::map<int, Rat> lp{{4, 1}, {5, Rat(5, 2)}, {9, 3}};
    for (auto [m, v] : lp) {
        auto I = buildFuchsInstance(apery_sites(), m, false);
        I.relaxed = true;
        auto s = solve01(I);
        REQUIRE(s.feasible);
        CHECK(s.A == v);
    }
    for (int m = 1; m <= 3; ++m) {
        auto I = buildFuchsInstance(apery_sites(), m, false);
        I.relaxed = true;
        CHECK(!solve01(I).feasible);
    }
}

TEST_CASE("sec234 program at order 1")
{
    DiffOp L = parse_diffop("z*Dz^2 + (1-6*z)*Dz + (z-3)");
    auto sites = singularSiteList(L);
    auto I = buildFuchsInstance(sites, 1, false);
    CHECK(!solve01(I).feasible);
    auto b = boundDegreeCoeffs(L, 1);
    CHECK(b.tag == BoundTag::NoFactor);
}

TEST_CASE("Apery degree bounds")
{
    auto& L = apery();
    auto& sites = apery_sites();
    std::map<int, std::vector<int>> want{{6, {30, 30, 30, 30, 30, 29, 28}}, {5, {15, 15, 15, 15, 15, 14}}, {4, {4, 4, 4, 4, 4}}};
    std::vector<int> possible;
    for (int m = 1; m <= 9; ++m) {
        auto b = boundDegreeCoeffs(L, sites, m);
        CAPTURE(m);
        if (b.tag == BoundTag::Bound) possible.push_back(m);
        if (want.count(m)) {
            REQUIRE(b.tag == BoundTag::Bound);
            CHECK(b.degrees == want[m]);
        } else {
            CHECK(b.tag == BoundTag::NoFactor);
        }
    }
    CHECK(possible == std::vector<int>{4, 5, 6});
    CHECK(boundDegreeCoeffs(L, sites, 5).max_degree() == 15);
    auto rel = boundDegreeCoeffs(L, sites, 5, {true, std::nullopt});
    REQUIRE(rel.tag == BoundTag::Bound);
    CHECK(rel.objective == Rat(5, 2));
    CHECK(rel.A >= boundDegreeCoeffs(L, sites, 5).A);
}

TEST_CASE("degree bounds hold for the known Apery factor")
{
    std::ifstream in(fixture("apery_factor.txt"));
    std::stringstream ss;
    ss << in.rdbuf();
    DiffOp M = parse_diffop(ss.str());
    REQUIRE(rrem(apery(), M).is_zero());
    auto b = boundDegreeCoeffs(apery(), apery_sites(), 6);
    REQUIRE(b.tag == BoundTag::Bound);
    // M_i / M_6 cleared by the blueprint denominator of degree 30
    int shift = b.denominator_degree - M.lc().deg();
    for (int i = 0; i <= 6; ++i) CHECK(M.c[i].deg() + shift <= b.degrees[6 - i]);
}

TEST_CASE("Apery Fuchs terms")
{
    auto t = fuchsTerms(apery_sites(), 10);
    Rat total = 0;
    for (auto& x : t) {
        total += x.S - x.I / 2;
        if (x.site->at_infinity) {
            CHECK(x.S == Rat(-1091, 43));
            CHECK(x.I == 60);
        } else if (x.site->point.kind == PointKind::Origin) {
            CHECK(x.S == Rat(-1489, 43));
            CHECK(x.I == 0);
        } else {
            CHECK(x.S == 0);
        }
    }
    CHECK(total == -90);
}

TEST_CASE("early exit cap")
{
    auto I = buildFuchsInstance(apery_sites(), 5, false);
    I.cap = Rat(1);
    auto s = solve01(I);
    REQUIRE(s.feasible);
    CHECK(s.A >= 1);
}
