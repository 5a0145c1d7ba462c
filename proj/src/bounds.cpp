#include "odemin/bounds.hpp"

#include <algorithm>
#include <functional>

namespace odemin {

namespace {

Rat floor_rat(const Rat& q)
{
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rat(f);
}

long floor_long(const Rat& q) { return Int(floor_rat(q).get_num()).get_si(); }

bool is_integral(const Rat& q) { return q.get_den() == 1; }

// Dense simplex tableau with Bland's rule.
struct Tableau {
    std::vector<std::vector<Rat>> T;  // rows, last column the right-hand side
    std::vector<Rat> d;               // reduced costs, last entry minus the objective value
    std::vector<int> basis;
    std::vector<bool> blocked;
    int ncol = 0;

    void pivot(int r, int j)
    {
        Rat p = T[r][j];
        for (auto& v : T[r])
            if (sgn(v) != 0) v /= p;
        auto elim = [&](std::vector<Rat>& row) {
            Rat f = row[j];
            if (sgn(f) == 0) return;
            for (int k = 0; k <= ncol; ++k)
                if (sgn(T[r][k]) != 0) row[k] -= f * T[r][k];
        };
        for (int i = 0; i < (int)T.size(); ++i)
            if (i != r) elim(T[i]);
        elim(d);
        basis[r] = j;
    }

    // false when unbounded
    bool optimize()
    {
        while (true) {
            int j = -1;
            for (int k = 0; k < ncol; ++k)
                if (!blocked[k] && sgn(d[k]) > 0) {
                    j = k;
                    break;
                }
            if (j < 0) return true;
            int r = -1;
            Rat best;
            for (int i = 0; i < (int)T.size(); ++i) {
                if (sgn(T[i][j]) <= 0) continue;
                Rat ratio = T[i][ncol] / T[i][j];
                if (r < 0 || ratio < best || (ratio == best && basis[i] < basis[r])) r = i, best = ratio;
            }
            if (r < 0) return false;
            pivot(r, j);
        }
    }

    void set_costs(const std::vector<Rat>& c)
    {
        d.assign(ncol + 1, Rat(0));
        for (int k = 0; k < ncol; ++k) d[k] = c[k];
        for (int i = 0; i < (int)T.size(); ++i) {
            const Rat& cb = c[basis[i]];
            if (sgn(cb) == 0) continue;
            for (int k = 0; k <= ncol; ++k)
                if (sgn(T[i][k]) != 0) d[k] -= cb * T[i][k];
        }
    }
};

}  // namespace

LPResult lpMaximize(const std::vector<Rat>& c, const std::vector<std::vector<Rat>>& eq, const std::vector<Rat>& beq,
                    const std::vector<std::vector<Rat>>& le, const std::vector<Rat>& ble)
{
    int n = (int)c.size(), ne = (int)eq.size(), nl = (int)le.size(), rows = ne + nl;
    std::vector<int> art_row;
    std::vector<std::vector<Rat>> T(rows);
    std::vector<int> basis(rows, -1);
    for (int r = 0; r < rows; ++r) {
        const auto& a = r < ne ? eq[r] : le[r - ne];
        Rat b = r < ne ? beq[r] : ble[r - ne];
        T[r].assign(n + nl + 1, Rat(0));
        for (int j = 0; j < n; ++j) T[r][j] = a[j];
        if (r >= ne) T[r][n + r - ne] = 1;
        T[r][n + nl] = b;
        if (sgn(b) < 0)
            for (auto& v : T[r]) v = -v;
        if (r >= ne && sgn(b) >= 0) basis[r] = n + r - ne;
        else art_row.push_back(r);
    }
    int na = (int)art_row.size(), ncol = n + nl + na;
    for (int r = 0; r < rows; ++r) {
        Rat rhs = T[r][n + nl];
        T[r].resize(ncol + 1, Rat(0));
        T[r][n + nl] = 0;
        T[r][ncol] = rhs;
    }
    for (int a = 0; a < na; ++a) {
        T[art_row[a]][n + nl + a] = 1;
        basis[art_row[a]] = n + nl + a;
    }
    Tableau tb{std::move(T), {}, std::move(basis), std::vector<bool>(ncol, false), ncol};
    LPResult res;
    if (na > 0) {
        std::vector<Rat> c1(ncol, Rat(0));
        for (int a = 0; a < na; ++a) c1[n + nl + a] = -1;
        tb.set_costs(c1);
        tb.optimize();
        if (sgn(tb.d[ncol]) != 0) return res;  // artificial sum stays positive
        // drive remaining artificials out of the basis
        for (int i = 0; i < (int)tb.T.size(); ++i) {
            if (tb.basis[i] < n + nl) continue;
            int j = -1;
            for (int k = 0; k < n + nl; ++k)
                if (sgn(tb.T[i][k]) != 0) {
                    j = k;
                    break;
                }
            if (j >= 0) {
                tb.pivot(i, j);
            } else {
                tb.T.erase(tb.T.begin() + i);
                tb.basis.erase(tb.basis.begin() + i);
                --i;
            }
        }
        for (int a = 0; a < na; ++a) tb.blocked[n + nl + a] = true;
    }
    std::vector<Rat> c2(ncol, Rat(0));
    for (int j = 0; j < n; ++j) c2[j] = c[j];
    tb.set_costs(c2);
    if (!tb.optimize()) throw Error("lpMaximize: unbounded program");
    res.feasible = true;
    res.x.assign(n, Rat(0));
    for (int i = 0; i < (int)tb.T.size(); ++i)
        if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.T[i][ncol];
    res.value = 0;
    for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

namespace {

struct BranchAndBound {
    const ILPInstance& inst;
    int n;
    std::optional<Rat> best;
    std::vector<Rat> best_x;
    long nodes = 0;
    bool stop = false;
    static constexpr int kEnumerate = 10;

    explicit BranchAndBound(const ILPInstance& i) : inst(i), n(i.size()) {}

    bool acceptable(const Rat& A) const { return sgn(A) >= 0 && (inst.relaxed || is_integral(A)); }

    void offer(const std::vector<int>& fix)
    {
        Rat A = inst.a0;
        for (int j = 0; j < n; ++j)
            if (fix[j]) A += inst.obj[j];
        if (!acceptable(A)) return;
        for (auto& row : inst.rows) {
            Rat s = 0;
            for (auto& [j, a] : row.terms)
                if (fix[j]) s += a;
            if (s != row.rhs) return;
        }
        if (!best || A > *best) {
            best = A;
            best_x.assign(n, Rat(0));
            for (int j = 0; j < n; ++j) best_x[j] = fix[j];
            if (inst.cap && A >= *inst.cap) stop = true;
        }
    }

    void enumerate(std::vector<int>& fix, const std::vector<int>& free, size_t k)
    {
        if (stop) return;
        if (k == free.size()) {
            ++nodes;
            offer(fix);
            return;
        }
        for (int v : {1, 0}) {
            fix[free[k]] = v;
            enumerate(fix, free, k + 1);
        }
        fix[free[k]] = -1;
    }

    void node(std::vector<int>& fix)
    {
        if (stop) return;
        ++nodes;
        std::vector<int> free, pos(n, -1);
        for (int j = 0; j < n; ++j)
            if (fix[j] < 0) pos[j] = (int)free.size(), free.push_back(j);
        if ((int)free.size() <= kEnumerate) {
            enumerate(fix, free, 0);
            return;
        }
        int f = (int)free.size();
        std::vector<std::vector<Rat>> eq, le;
        std::vector<Rat> beq, ble, c(f);
        for (auto& row : inst.rows) {
            std::vector<Rat> a(f, Rat(0));
            Rat rhs = row.rhs;
            bool any = false;
            for (auto& [j, v] : row.terms) {
                if (fix[j] < 0) a[pos[j]] += v, any = true;
                else if (fix[j]) rhs -= v;
            }
            if (!any) {
                if (sgn(rhs) != 0) return;
                continue;
            }
            eq.push_back(std::move(a));
            beq.push_back(rhs);
        }
        Rat fixed = inst.a0;
        for (int j = 0; j < n; ++j)
            if (fix[j] == 1) fixed += inst.obj[j];
        for (int k = 0; k < f; ++k) {
            c[k] = inst.obj[free[k]];
            std::vector<Rat> u(f, Rat(0));
            u[k] = 1;
            le.push_back(std::move(u));
            ble.push_back(Rat(1));
        }
        // A >= 0
        std::vector<Rat> negc(f);
        for (int k = 0; k < f; ++k) negc[k] = -c[k];
        le.push_back(negc);
        ble.push_back(fixed);
        auto lp = lpMaximize(c, eq, beq, le, ble);
        if (!lp.feasible) return;
        Rat ub = fixed + lp.value;
        if (!inst.relaxed) ub = floor_rat(ub);
        if (best && ub <= *best) return;
        // branch on the most fractional variable
        int bj = -1;
        Rat bdist;
        for (int k = 0; k < f; ++k) {
            Rat dist = abs(lp.x[k] - Rat(1, 2));
            if (is_integral(lp.x[k])) continue;
            if (bj < 0 || dist < bdist) bj = k, bdist = dist;
        }
        if (bj < 0) {
            // integral optimum of this subtree; otherwise A was fractional
            std::vector<int> pt = fix;
            for (int k = 0; k < f; ++k) pt[free[k]] = lp.x[k] == 1 ? 1 : 0;
            auto before = best;
            offer(pt);
            if (best && (!before || *best > *before) && *best == ub) return;
            bj = 0;
        }
        int j = free[bj];
        int first = lp.x[bj] >= Rat(1, 2) ? 1 : 0;
        for (int v : {first, 1 - first}) {
            fix[j] = v;
            node(fix);
            if (stop) break;
        }
        fix[j] = -1;
    }
};

}  // namespace

ILPSolution solve01(const ILPInstance& inst)
{
    ILPSolution sol;
    int n = inst.size();
    if (inst.relaxed) {
        std::vector<std::vector<Rat>> eq, le;
        std::vector<Rat> beq, ble;
        for (auto& row : inst.rows) {
            std::vector<Rat> a(n, Rat(0));
            for (auto& [j, v] : row.terms) a[j] += v;
            eq.push_back(std::move(a));
            beq.push_back(row.rhs);
        }
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> u(n, Rat(0));
            u[j] = 1;
            le.push_back(std::move(u));
            ble.push_back(Rat(1));
        }
        std::vector<Rat> negc(n);
        for (int j = 0; j < n; ++j) negc[j] = -inst.obj[j];
        le.push_back(negc);
        ble.push_back(inst.a0);
        auto lp = lpMaximize(inst.obj, eq, beq, le, ble);
        sol.nodes = 1;
        if (!lp.feasible) return sol;
        sol.feasible = true;
        sol.A = inst.a0 + lp.value;
        sol.x = lp.x;
        return sol;
    }
    BranchAndBound bb(inst);
    std::vector<int> fix(n, -1);
    bb.node(fix);
    sol.nodes = bb.nodes;
    if (!bb.best) return sol;
    sol.feasible = true;
    sol.A = *bb.best;
    sol.x = bb.best_x;
    return sol;
}

std::vector<FeasiblePoint> enumerateFeasible(const ILPInstance& inst)
{
    int n = inst.size();
    int nr = (int)inst.rows.size();
    // per variable, the rows it touches; per row, the range of what is still free
    std::vector<std::vector<std::pair<int, Rat>>> col(n);
    for (int r = 0; r < nr; ++r)
        for (auto& [j, a] : inst.rows[r].terms) col[j].push_back({r, a});
    std::vector<std::vector<Rat>> lo(n + 1, std::vector<Rat>(nr, Rat(0))), hi = lo;
    for (int j = n - 1; j >= 0; --j) {
        lo[j] = lo[j + 1];
        hi[j] = hi[j + 1];
        for (auto& [r, a] : col[j]) (sgn(a) < 0 ? lo[j][r] : hi[j][r]) += a;
    }
    std::vector<FeasiblePoint> out;
    std::vector<Rat> res(nr);
    for (int r = 0; r < nr; ++r) res[r] = inst.rows[r].rhs;
    std::vector<int> x(n, 0);
    std::function<void(int, Rat)> go = [&](int j, Rat A) {
        for (int r = 0; r < nr; ++r)
            if (res[r] < lo[j][r] || res[r] > hi[j][r]) return;
        if (j == n) {
            if (sgn(A) >= 0 && (inst.relaxed || is_integral(A))) out.push_back({x, A});
            return;
        }
        x[j] = 0;
        go(j + 1, A);
        x[j] = 1;
        for (auto& [r, a] : col[j]) res[r] -= a;
        go(j + 1, A + inst.obj[j]);
        for (auto& [r, a] : col[j]) res[r] += a;
        x[j] = 0;
    };
    go(0, inst.a0);
    return out;
}

std::vector<const SingularSite*> listedSites(const std::vector<SingularSite>& sites)
{
    std::vector<const SingularSite*> out;
    for (auto& s : sites) {
        bool origin = !s.at_infinity && s.point.kind == PointKind::Origin;
        if (!origin && !s.at_infinity && (s.cls == SiteClass::Apparent || s.cls == SiteClass::Ordinary)) continue;
        out.push_back(&s);
    }
    return out;
}

namespace {

std::vector<const ExpPartBlock*> site_items(const SingularSite& s)
{
    std::vector<const ExpPartBlock*> items;
    for (auto& b : s.exps.blocks)
        for (int k = 0; k < b.multiplicity; ++k) items.push_back(&b);
    return items;
}

std::string site_label(const SingularSite& s)
{
    if (s.at_infinity) return "inf";
    return to_string(s.mu);
}

}  // namespace

ILPInstance buildFuchsInstance(const std::vector<SingularSite>& sites, int m, bool fuchsian)
{
    ILPInstance inst;
    inst.m = m;
    Rat mm = Rat(m) * Rat(m - 1);
    inst.a0 = -mm;
    auto listed = listedSites(sites);
    for (size_t si = 0; si < listed.size(); ++si) {
        const SingularSite& s = *listed[si];
        if (!s.exps.complete) {
            inst.incomplete = true;
            inst.reason = "incomplete local data at " + site_label(s) + ": " + s.exps.reason;
            continue;
        }
        if (fuchsian && s.cls == SiteClass::Irregular) throw Error("buildFuchsInstance: irregular site in a Fuchsian instance");
        int dmu = s.degree();
        inst.a0 += canon(Rat(dmu) * mm / 2);
        auto items = site_items(s);
        int k = (int)items.size();
        std::vector<int> cv(k);
        ILPInstance::Row width;
        width.rhs = m;
        std::string tag = std::to_string(si);
        for (int j = 0; j < k; ++j) {
            cv[j] = inst.add_var("c[" + tag + "][" + std::to_string(j) + "]", -items[j]->exp_trace);
            width.terms.push_back({cv[j], Rat(items[j]->size())});
        }
        inst.rows.push_back(width);
        bool pairs = false;
        for (int j = 0; j < k && !fuchsian; ++j) {
            pairs |= pairDegreeSum(*items[j], *items[j], true) > 0;
            for (int l = j + 1; l < k; ++l) pairs |= pairDegreeSum(*items[j], *items[l], false) > 0;
        }
        if (!pairs) continue;
        std::vector<ILPInstance::Row> prow(k);
        for (int j = 0; j < k; ++j) prow[j].terms.push_back({cv[j], Rat(-(m - 1))});
        for (int j = 0; j < k; ++j) {
            if (items[j]->size() > 1) {
                int v = inst.add_var("d[" + tag + "][" + std::to_string(j) + "," + std::to_string(j) + "]",
                                     Rat(dmu * pairDegreeSum(*items[j], *items[j], true)));
                prow[j].terms.push_back({v, Rat(items[j]->size() - 1)});
            }
            for (int l = j + 1; l < k; ++l) {
                int v = inst.add_var("d[" + tag + "][" + std::to_string(j) + "," + std::to_string(l) + "]",
                                     Rat(dmu * pairDegreeSum(*items[j], *items[l], false)));
                prow[j].terms.push_back({v, Rat(items[l]->size())});
                prow[l].terms.push_back({v, Rat(items[j]->size())});
            }
        }
        for (auto& r : prow) inst.rows.push_back(std::move(r));
    }
    return inst;
}

std::vector<FuchsTerm> fuchsTerms(const std::vector<SingularSite>& sites, int r)
{
    std::vector<FuchsTerm> out;
    for (auto& s : sites) {
        if (!s.exps.complete) throw Error("fuchsTerms: incomplete local data at " + site_label(s));
        FuchsTerm t;
        t.site = &s;
        t.S = canon(Rat(-s.degree() * r * (r - 1), 2));
        auto items = site_items(s);
        int pairs = 0;
        for (size_t j = 0; j < items.size(); ++j) {
            t.S += items[j]->exp_trace;
            pairs += pairDegreeSum(*items[j], *items[j], true);
            for (size_t l = j + 1; l < items.size(); ++l) pairs += pairDegreeSum(*items[j], *items[l], false);
        }
        t.I = 2 * s.degree() * pairs;
        out.push_back(t);
    }
    return out;
}

std::optional<DegreeBounds> assembleDegreeBounds(const DiffOp& L, int m, int A, const std::vector<SingularSite>& sites)
{
    (void)L;
    DegreeBounds db;
    std::vector<Rat> inf;
    int den = A * m;
    std::string bp = A > 0 ? "App^" + std::to_string(m) + " (deg App <= " + std::to_string(A) + ")" : "";
    for (auto* s : listedSites(sites)) {
        auto prof = maxRiseProfile(s->polygon, m);
        if (!prof) return std::nullopt;
        if (s->at_infinity) {
            inf = *prof;
            continue;
        }
        int e = m + (int)floor_long((*prof)[0]);
        den += s->degree() * e;
        if (!bp.empty()) bp += " * ";
        bp += "(" + to_string(s->mu) + ")^" + std::to_string(e);
    }
    if (inf.empty()) throw Error("assembleDegreeBounds: no site at infinity");
    db.denominator_degree = den;
    db.blueprint = bp.empty() ? "1" : bp;
    for (int i = m; i >= 0; --i) db.degrees.push_back(den + (int)floor_long(Rat(i - m) + inf[i]));
    return db;
}

std::string to_string(BoundTag t)
{
    switch (t) {
    case BoundTag::NoFactor: return "NoFactor";
    case BoundTag::Bound: return "Bound";
    case BoundTag::Unknown: return "Unknown";
    }
    return "?";
}

BoundOutcome boundDegreeCoeffs(const DiffOp& L, int m, const BoundOptions& opt)
{
    return boundDegreeCoeffs(L, singularSiteList(L), m, opt);
}

BoundOutcome boundDegreeCoeffs(const DiffOp& L, const std::vector<SingularSite>& sites, int m, const BoundOptions& opt)
{
    if (m < 1 || m >= L.order()) throw ValidationError("factor order must satisfy 1 <= m < ord L");
    BoundOutcome out;
    out.m = m;
    out.relaxed = opt.relaxed;
    bool fuchsian = true;
    for (auto* s : listedSites(sites)) fuchsian &= s->cls != SiteClass::Irregular;
    out.instance = buildFuchsInstance(sites, m, fuchsian);
    if (out.instance.incomplete) {
        out.tag = BoundTag::Unknown;
        out.reason = out.instance.reason;
        return out;
    }
    out.instance.relaxed = opt.relaxed;
    if (opt.cap) out.instance.cap = Rat(*opt.cap);
    auto sol = solve01(out.instance);
    out.nodes = sol.nodes;
    if (!sol.feasible) {
        out.tag = BoundTag::NoFactor;
        out.reason = "the Fuchs program has no admissible assignment";
        return out;
    }
    out.objective = sol.A;
    out.assignment = sol.x;
    out.A = (int)floor_long(sol.A);
    auto db = assembleDegreeBounds(L, m, out.A, sites);
    if (!db) {
        out.tag = BoundTag::NoFactor;
        out.reason = "no factor polygon of width m";
        return out;
    }
    out.tag = BoundTag::Bound;
    out.degrees = db->degrees;
    out.denominator_degree = db->denominator_degree;
    out.blueprint = db->blueprint;
    return out;
}

}  // namespace odemin
