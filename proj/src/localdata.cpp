#include "odemin/localdata.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>

namespace odemin {

namespace {

// Operator in normal form sum_a t^a Q_a(theta), theta = t d/dt.
using TOp = std::map<int, PolyK>;

TOp to_top(const ThetaForm<AlgNum>& tf)
{
    TOp r;
    for (size_t j = 0; j < tf.P.size(); ++j)
        if (!tf.P[j].is_zero_poly()) r[tf.lo + (int)j] = tf.P[j];
    return r;
}

TOp to_top(const ThetaForm<Rat>& tf, const NF& K)
{
    TOp r;
    for (size_t j = 0; j < tf.P.size(); ++j)
        if (!tf.P[j].is_zero_poly()) r[tf.lo + (int)j] = lift_to_field(tf.P[j], K);
    return r;
}

void add_term(TOp& r, int a, const PolyK& q)
{
    if (q.is_zero_poly()) return;
    auto it = r.find(a);
    if (it == r.end()) {
        r.emplace(a, q);
        return;
    }
    it->second += q;
    if (it->second.is_zero_poly()) r.erase(it);
}

// theta -> theta + c t^-k, i.e. conjugation by exp(-c t^-k / k)
TOp substitute(const TOp& op, const AlgNum& c, int k)
{
    AlgNum zero = zero_of(c);
    PolyK x = PolyK::x(zero);
    TOp out;
    for (auto& [a, Q] : op) {
        TOp acc;
        for (int i = Q.deg(); i >= 0; --i) {
            TOp next;
            for (auto& [b, R] : acc) {
                add_term(next, b, R * x);
                add_term(next, b - k, c * R.taylor_shift(from_int(zero, -k)));
            }
            if (!is_zero(Q.c[i])) add_term(next, 0, PolyK::constant(Q.c[i]));
            acc = std::move(next);
        }
        for (auto& [b, R] : acc) add_term(out, a + b, R);
    }
    return out;
}

AlgNum lift_value(const AlgNum& v, const NF& F)
{
    if (!v.is_rational()) throw Error("cannot move a non-rational coefficient to a new field");
    return AlgNum::of(F, v.rational_value());
}

TOp lift_top(const TOp& op, const NF& F)
{
    TOp r;
    AlgNum z = AlgNum::of(F, Rat(0));
    for (auto& [a, Q] : op) r[a] = map_poly(Q, z, [&](const AlgNum& v) { return lift_value(v, F); });
    return r;
}

std::vector<std::pair<int, int>> top_points(const TOp& op)
{
    std::vector<std::pair<int, int>> pts;
    for (auto& [a, Q] : op) pts.push_back({Q.deg(), a});
    return pts;
}

// Untranslated hull vertices.
std::vector<std::pair<int, int>> raw_hull(const std::vector<std::pair<int, int>>& pts)
{
    if (pts.empty()) throw Error("Newton polygon of an empty point set");
    std::map<int, int> ys;
    for (auto [x, y] : pts) {
        auto it = ys.find(x);
        if (it == ys.end() || y < it->second) ys[x] = y;
    }
    int ymin = INT_MAX, xs = 0;
    for (auto [x, y] : ys)
        if (y <= ymin) ymin = y, xs = x;
    std::vector<std::pair<int, int>> v{{0, ymin}};
    if (xs > 0) v.push_back({xs, ymin});
    for (auto it = ys.upper_bound(xs); it != ys.end(); ++it) {
        std::pair<int, int> p = *it;
        // drop the last vertex unless slopes strictly increase
        while (v.size() >= 2) {
            auto [x1, y1] = v[v.size() - 2];
            auto [x2, y2] = v.back();
            if ((long)(y2 - y1) * (p.first - x2) < (long)(p.second - y2) * (x2 - x1)) break;
            v.pop_back();
        }
        v.push_back(p);
    }
    return v;
}

Rat frac_rise(int rise, int width, int part)
{
    return canon(Rat(rise) * Rat(part) / Rat(width));
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

struct Explorer {
    NF site_field;
    GeneralizedExponents out;
    int next_id = 0;

    struct State {
        NF F;
        int ext_level = -1, ext_node = -1, ext_degree = 1;
        std::vector<AlgNum> w;
        std::vector<std::pair<int, int>> path;
    };

    void fail(const std::string& why)
    {
        if (out.complete) out.reason = why;
        out.complete = false;
    }

    void leaves(const PolyK& ind, const State& st)
    {
        auto fac = factorNF(ind, st.F);
        for (auto& [f, mult] : fac.factors) {
            ExpPartBlock b;
            b.field = st.F;
            b.ext_degree = st.ext_degree;
            b.ext_level = st.ext_level;
            b.ext_node = st.ext_node;
            b.leaf_factor = f;
            b.leaf_degree = f.deg();
            b.multiplicity = mult;
            b.path = st.path;
            b.path.push_back({next_id++, 0});
            b.w = st.w;
            AlgNum zero = AlgNum::of(st.F, Rat(0));
            if (b.w.empty()) b.w.push_back(zero);
            AlgNum rootsum = -f.c[f.deg() - 1];
            if (f.deg() == 1) b.w[0] = rootsum;
            b.exp_trace = trace(rootsum);
            out.blocks.push_back(std::move(b));
        }
    }

    void explore(const TOp& op, const State& st, int kprev, int expected)
    {
        auto v = raw_hull(top_points(op));
        int total = 0;
        for (size_t s = 0; s + 1 < v.size(); ++s) {
            auto [x0, y0] = v[s];
            auto [x1, y1] = v[s + 1];
            int wdt = x1 - x0, rise = y1 - y0;
            if (wdt == 0) continue;
            // slope rise/wdt; only slopes below kprev belong to this branch
            if (kprev != INT_MAX && (long)rise >= (long)kprev * wdt) break;
            total += wdt;
            if (rise == 0) {
                auto it = op.find(y0);
                leaves(it->second, st);
                continue;
            }
            if (rise % wdt != 0) {
                fail("ramified exponential part");
                continue;
            }
            int k = rise / wdt;
            AlgNum zero = AlgNum::of(st.F, Rat(0));
            std::vector<AlgNum> chi(wdt + 1, zero);
            for (int i = x0; i <= x1; ++i) {
                auto it = op.find(y0 + k * (i - x0));
                if (it != op.end()) chi[i - x0] = it->second.coeff(i);
            }
            PolyK ch(chi, zero);
            auto fac = factorNF(ch, st.F);
            for (auto& [h, mult] : fac.factors) {
                State nx = st;
                int id = next_id++;
                nx.path.push_back({id, k});
                TOp base = op;
                AlgNum c;
                if (h.deg() == 1) {
                    c = -h.c[0];
                } else if (st.F->degree() == 1) {
                    PolyQ hq;
                    for (auto& a : h.c) hq.c.push_back(a.rational_value());
                    hq.trim();
                    nx.F = make_field(hq, true);
                    nx.ext_level = k;
                    nx.ext_node = id;
                    nx.ext_degree = h.deg();
                    c = AlgNum::gen(nx.F);
                    base = lift_top(op, nx.F);
                    for (auto& a : nx.w) a = lift_value(a, nx.F);
                } else {
                    fail("exponential part needs a tower of fields");
                    continue;
                }
                if (nx.w.empty()) nx.w.assign(k + 1, AlgNum::of(nx.F, Rat(0)));
                nx.w[k] = c;
                explore(substitute(base, c, k), nx, k, mult);
            }
        }
        if (kprev != INT_MAX && out.complete && total != expected)
            throw Error("generalized exponents: branch width mismatch");
    }
};

TOp local_top(const DiffOp& L, const Point& pt, NF& K)
{
    switch (pt.kind) {
    case PointKind::Origin:
        K = rational_field();
        return to_top(theta_form(L), K);
    case PointKind::Infinity:
        K = rational_field();
        return to_top(theta_form_infinity(L), K);
    default:
        K = pt.alpha.K;
        return to_top(theta_form_at(L, pt.alpha));
    }
}

Point point_of_factor(const PolyQ& mu)
{
    if (mu.deg() == 1) return Point::at(AlgNum::of(rational_field(), -mu.c[0] / mu.c[1]));
    return Point::at(AlgNum::gen(make_field(mu, true)));
}

}  // namespace

NewtonPolygon hullOf(const std::vector<std::pair<int, int>>& pts)
{
    auto v = raw_hull(pts);
    NewtonPolygon P;
    int y0 = v[0].second;
    for (auto [x, y] : v) P.vertices.push_back({x, y - y0});
    for (size_t i = 0; i + 1 < P.vertices.size(); ++i)
        P.segments.push_back({P.vertices[i + 1].first - P.vertices[i].first,
                              P.vertices[i + 1].second - P.vertices[i].second});
    return P;
}

NewtonPolygon newtonPolygonAt(const DiffOp& L, const Point& pt)
{
    NF K;
    auto P = hullOf(top_points(local_top(L, pt, K)));
    P.point = pt;
    return P;
}

std::vector<std::pair<int, int>> polygonPieces(const NewtonPolygon& P)
{
    std::vector<std::pair<int, int>> out;
    for (auto [w, r] : P.segments) {
        int g = gcd_int(w, r);
        if (g == 0) g = w;
        for (int i = 0; i < g; ++i) out.push_back({w / g, r / g});
    }
    return out;
}

std::optional<KnapsackResult> knapsackFactorPolygon(const NewtonPolygon& P, int m)
{
    auto pieces = polygonPieces(P);
    int n = (int)pieces.size();
    const int NEG = INT_MIN / 2;
    // best[j][u]: max rise with width u using the first j pieces
    std::vector<std::vector<int>> best(n + 1, std::vector<int>(m + 1, NEG));
    best[0][0] = 0;
    for (int j = 0; j < n; ++j) {
        auto [w, r] = pieces[j];
        for (int u = 0; u <= m; ++u) {
            if (best[j][u] == NEG) continue;
            best[j + 1][u] = std::max(best[j + 1][u], best[j][u]);
            if (u + w <= m) best[j + 1][u + w] = std::max(best[j + 1][u + w], best[j][u] + r);
        }
    }
    if (m < 0 || best[n][m] == NEG) return std::nullopt;
    KnapsackResult res;
    res.value = best[n][m];
    std::vector<std::pair<int, int>> chosen;
    for (int j = n, u = m; j > 0; --j) {
        auto [w, r] = pieces[j - 1];
        if (best[j - 1][u] == best[j][u]) continue;
        chosen.push_back(pieces[j - 1]);
        u -= w;
    }
    std::sort(chosen.begin(), chosen.end(), [](auto a, auto b) { return (long)a.second * b.first < (long)b.second * a.first; });
    for (auto pc : chosen) {
        if (!res.segments.empty() && (long)res.segments.back().second * pc.first == (long)pc.second * res.segments.back().first) {
            res.segments.back().first += pc.first;
            res.segments.back().second += pc.second;
        } else {
            res.segments.push_back(pc);
        }
    }
    res.vertices.push_back({0, 0});
    for (auto [w, r] : res.segments) res.vertices.push_back({res.vertices.back().first + w, res.vertices.back().second + r});
    return res;
}

std::optional<std::vector<Rat>> maxRiseProfile(const NewtonPolygon& P, int m)
{
    auto pieces = polygonPieces(P);
    std::sort(pieces.begin(), pieces.end(), [](auto a, auto b) { return (long)a.second * b.first > (long)b.second * a.first; });
    int n = (int)pieces.size();
    std::vector<Rat> prof(m + 1);
    for (int i = 0; i <= m; ++i) {
        int top = m - i;
        // f[u]: max rise inside the steepest `top` width, chosen width u so far
        std::vector<std::optional<Rat>> f(m + 1);
        f[0] = Rat(0);
        for (int j = 0; j < n; ++j) {
            auto [w, r] = pieces[j];
            for (int u = m - w; u >= 0; --u) {
                if (!f[u]) continue;
                int part = std::max(0, std::min(u + w, top) - u);
                Rat val = *f[u] + frac_rise(r, w, part);
                if (!f[u + w] || val > *f[u + w]) f[u + w] = val;
            }
        }
        if (!f[m]) return std::nullopt;
        prof[i] = *f[m];
    }
    return prof;
}

int pairDegreeSum(const ExpPartBlock& a, const ExpPartBlock& b, bool same_block)
{
    int e = a.ext_degree;
    if (same_block) return e * (e - 1) / 2 * a.leaf_degree * a.leaf_degree * std::max(0, a.ext_level);
    int kN = -1;
    size_t n = std::min(a.path.size(), b.path.size());
    for (size_t i = 0; i < std::max(a.path.size(), b.path.size()); ++i) {
        if (i < n && a.path[i].first == b.path[i].first) continue;
        int la = i < a.path.size() ? a.path[i].second : 0, lb = i < b.path.size() ? b.path[i].second : 0;
        kN = std::max(la, lb);
        break;
    }
    kN = std::max(kN, 0);
    if (a.ext_node >= 0 && a.ext_node == b.ext_node) {
        int dd = a.leaf_degree * b.leaf_degree;
        return e * dd * kN + e * (e - 1) * dd * a.ext_level;
    }
    return a.size() * b.size() * kN;
}

GeneralizedExponents generalizedExponents(const DiffOp& L, const Point& pt)
{
    if (L.is_zero()) throw Error("generalized exponents of the zero operator");
    Explorer ex;
    TOp op = local_top(L, pt, ex.site_field);
    Explorer::State st;
    st.F = ex.site_field;
    ex.explore(op, st, INT_MAX, L.order());
    if (!ex.out.complete) ex.out.blocks.clear();
    return ex.out;
}

bool apparencyTest(const DiffOp& L, const PolyQ& mu)
{
    Point pt = point_of_factor(mu.monic());
    auto tf = theta_form_at(L, pt.alpha);
    int r = L.order();
    const PolyK& P0 = tf.P[0];
    if (P0.deg() != r) return false;
    for (auto& P : tf.P)
        if (P.deg() > r) return false;
    if (gcd(P0, P0.derivative()).deg() > 0) return false;
    auto roots = integer_roots(P0);
    if ((int)roots.size() != r) return false;
    long emax = 0;
    for (auto& x : roots) {
        if (sgn(x) < 0) return false;
        emax = std::max(emax, x.get_si());
    }
    AlgNum zero = zero_of(pt.alpha);
    int n = (int)emax + 1;
    Mat<AlgNum> A(n, std::vector<AlgNum>(n, zero));
    for (int N = 0; N < n; ++N)
        for (int j = 0; j <= N && j < (int)tf.P.size(); ++j)
            A[N][N - j] = tf.P[j](from_int(zero, N - j));
    return (int)nullspace(A, n, zero).size() == r;
}

std::string to_string(SiteClass c)
{
    switch (c) {
    case SiteClass::Ordinary: return "ordinary";
    case SiteClass::RegularSingular: return "regular";
    case SiteClass::Irregular: return "irregular";
    case SiteClass::Apparent: return "apparent";
    }
    return "?";
}

std::vector<SingularSite> singularSiteList(const DiffOp& L)
{
    if (L.order() < 1) throw ValidationError("operator of order at least 1 expected");
    std::vector<SingularSite> out;
    auto make = [&](const Point& pt, const PolyQ& mu, bool inf) {
        SingularSite s;
        s.point = pt;
        s.mu = mu;
        s.at_infinity = inf;
        s.polygon = newtonPolygonAt(L, pt);
        s.exps = generalizedExponents(L, pt);
        auto ind = indicialAt(L, pt);
        NF K = pt.kind == PointKind::Finite ? pt.alpha.K : rational_field();
        for (auto& [f, mult] : factorNF(ind.indicial, K).factors)
            s.indicial.push_back({f, mult, trace(-f.c[f.deg() - 1])});
        bool irregular = false;
        for (auto [w, rise] : s.polygon.segments) irregular |= rise > 0;
        if (irregular) s.cls = SiteClass::Irregular;
        else if (!inf && (L.lc() % mu).deg() >= 0) s.cls = SiteClass::Ordinary;
        else if (!inf && apparencyTest(L, mu)) s.cls = SiteClass::Apparent;
        else s.cls = SiteClass::RegularSingular;
        out.push_back(std::move(s));
    };
    PolyQ z = PolyQ::x(Rat(0));
    make(Point::origin(), z, false);
    for (auto& [mu, e] : factorQ(L.lc()).factors) {
        if (mu == z) continue;
        make(point_of_factor(mu), mu, false);
    }
    make(Point::infinity(), PolyQ(), true);
    return out;
}

}  // namespace odemin
