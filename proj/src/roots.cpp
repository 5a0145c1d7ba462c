#include "odemin/algebra.hpp"

#include <deque>

namespace odemin {

namespace {

std::vector<PolyQ> sturm_chain(const PolyQ& p)
{
    std::vector<PolyQ> s{p, p.derivative()};
    while (s.back().deg() > 0) {
        PolyQ r = -(s[s.size() - 2] % s.back());
        if (r.is_zero_poly()) break;
        Rat c = abs(rat_content(r));
        s.push_back(inv(c) * r);
    }
    return s;
}

int sign_variations(const std::vector<PolyQ>& s, const Rat& x)
{
    int v = 0, last = 0;
    for (auto& q : s) {
        int sg = sgn(q(x));
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}

// Disjoint open intervals (l, r) in (a, b), each holding one root; p squarefree,
// p(a), p(b) nonzero. Endpoints are never roots.
std::vector<std::pair<Rat, Rat>> isolate_real(const PolyQ& p, const Rat& a, const Rat& b)
{
    std::vector<std::pair<Rat, Rat>> out;
    if (p.deg() < 1) return out;
    auto s = sturm_chain(p);
    std::vector<std::pair<Rat, Rat>> stack{{a, b}};
    while (!stack.empty()) {
        auto [l, r] = stack.back();
        stack.pop_back();
        int c = sign_variations(s, l) - sign_variations(s, r);
        if (c == 0) continue;
        if (c == 1) {
            out.push_back({l, r});
            continue;
        }
        Rat m = (l + r) / 2;
        for (int k = 3; sgn(p(m)) == 0; ++k) m = l + (r - l) * Rat(k - 1, 2 * k);
        stack.push_back({m, r});
        stack.push_back({l, m});
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct CPoly {
    PolyQ re, im;
};

// p(z0 + t*(z1 - z0)) split in real and imaginary parts, as polynomials in t
CPoly edge_poly(const PolyQ& p, const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1)
{
    PolyQ zr = polyq_from({x0, x1 - x0}), zi = polyq_from({y0, y1 - y0});
    CPoly acc;
    for (int k = p.deg(); k >= 0; --k) {
        PolyQ nr = acc.re * zr - acc.im * zi + PolyQ::constant(p.c[k]);
        PolyQ ni = acc.re * zi + acc.im * zr;
        acc.re = nr;
        acc.im = ni;
    }
    return acc;
}

int quadrant(int su, int sv)
{
    if (su > 0 && sv > 0) return 0;
    if (su < 0 && sv > 0) return 1;
    if (su < 0 && sv < 0) return 2;
    return 3;
}

// quarter turns of arg p along the edge; nullopt if p may vanish on it or
// an endpoint maps onto an axis
std::optional<int> edge_turns(const PolyQ& p, const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1)
{
    CPoly e = edge_poly(p, x0, y0, x1, y1);
    if (e.re.is_zero_poly() || e.im.is_zero_poly()) return std::nullopt;
    PolyQ w = e.re * e.im;
    if (sgn(w(Rat(0))) == 0 || sgn(w(Rat(1))) == 0) return std::nullopt;
    if (w.deg() >= 1) {
        PolyQ g = gcd(e.re, e.im);
        if (g.deg() >= 1 && !isolate_real(squarefree_part(g), Rat(0), Rat(1)).empty()) return std::nullopt;
    }
    PolyQ ws = w.deg() >= 1 ? squarefree_part(w) : w;
    std::vector<Rat> pts{Rat(0)};
    for (auto& [l, r] : isolate_real(ws, Rat(0), Rat(1))) {
        pts.push_back(l);
        pts.push_back(r);
    }
    pts.push_back(Rat(1));
    int turns = 0;
    int prev = -1;
    for (auto& t : pts) {
        int q = quadrant(sgn(e.re(t)), sgn(e.im(t)));
        if (prev >= 0) {
            int d = ((q - prev) % 4 + 4) % 4;
            if (d == 1)
                ++turns;
            else if (d == 3)
                --turns;
            else if (d == 2)
                return std::nullopt;
        }
        prev = q;
    }
    return turns;
}

bool box_degenerate_real(const Box& b) { return sgn(b.im_lo) == 0 && sgn(b.im_hi) == 0; }

}  // namespace

int sturm_count(const PolyQ& p, const Rat& a, const Rat& b)
{
    auto s = sturm_chain(p);
    return sign_variations(s, a) - sign_variations(s, b);
}

std::optional<int> count_in_box(const PolyQ& p, const Box& b)
{
    if (box_degenerate_real(b)) {
        if (sgn(p(b.re_lo)) == 0 || sgn(p(b.re_hi)) == 0) return std::nullopt;
        return sturm_count(p, b.re_lo, b.re_hi);
    }
    int total = 0;
    const Rat xs[4] = {b.re_lo, b.re_hi, b.re_hi, b.re_lo};
    const Rat ys[4] = {b.im_lo, b.im_lo, b.im_hi, b.im_hi};
    for (int k = 0; k < 4; ++k) {
        auto t = edge_turns(p, xs[k], ys[k], xs[(k + 1) % 4], ys[(k + 1) % 4]);
        if (!t) return std::nullopt;
        total += *t;
    }
    if (total % 4 != 0) return std::nullopt;
    return total / 4;
}

Rat root_bound(const PolyQ& p)
{
    Rat m = 0;
    for (int i = 0; i < p.deg(); ++i) {
        Rat q = abs(p.c[i] / p.lc());
        if (q > m) m = q;
    }
    // round up to a simple rational
    Int c = m.get_num() / m.get_den() + 2;
    return Rat(c);
}

namespace {

// Split b into four children using off-centre cuts; retries cut offsets until
// every child count is well defined.
std::vector<std::pair<Box, int>> split4(const PolyQ& p, const Box& b)
{
    for (int k = 0; k < 50; ++k) {
        Rat fx(49 + 2 * k, 97 + 3 * k), fy(50 + k, 103 + 2 * k);
        Rat cx = b.re_lo + (b.re_hi - b.re_lo) * fx;
        Rat cy = b.im_lo + (b.im_hi - b.im_lo) * fy;
        Box kids[4] = {{b.re_lo, cx, b.im_lo, cy}, {cx, b.re_hi, b.im_lo, cy}, {b.re_lo, cx, cy, b.im_hi}, {cx, b.re_hi, cy, b.im_hi}};
        std::vector<std::pair<Box, int>> out;
        bool ok = true;
        for (auto& kb : kids) {
            auto c = count_in_box(p, kb);
            if (!c) {
                ok = false;
                break;
            }
            out.push_back({kb, *c});
        }
        if (ok) return out;
    }
    throw Error("root isolation: could not split box");
}

std::vector<Box> isolate_squarefree(const PolyQ& p)
{
    std::vector<Box> out;
    if (p.deg() == 1) {
        Rat r = -p.c[0] / p.c[1];
        out.push_back({r, r, Rat(0), Rat(0)});
        return out;
    }
    Rat B = root_bound(p);
    auto reals = isolate_real(p, -B, B);
    for (auto& [l, r] : reals) out.push_back({l, r, Rat(0), Rat(0)});
    int nonreal = p.deg() - (int)reals.size();
    if (nonreal == 0) return out;
    Box root{-B - Rat(1, 7), B + Rat(1, 5), -B - Rat(1, 11), B + Rat(1, 3)};
    auto c0 = count_in_box(p, root);
    if (!c0 || *c0 != p.deg()) throw Error("root isolation: bounding box failed");
    std::deque<std::pair<Box, int>> work{{root, *c0}};
    auto reals_inside = [&](const Box& b) {
        if (!(sgn(b.im_lo) < 0 && sgn(b.im_hi) > 0)) return 0;
        if (sgn(p(b.re_lo)) == 0 || sgn(p(b.re_hi)) == 0) return -1;
        return sturm_count(p, b.re_lo, b.re_hi);
    };
    while (!work.empty()) {
        auto [b, c] = work.front();
        work.pop_front();
        if (c == 0) continue;
        int ri = reals_inside(b);
        if (ri < 0) ri = 0;  // cannot happen: real roots are never on box edges
        int nr = c - ri;
        if (nr == 0) continue;
        bool crosses = sgn(b.im_lo) < 0 && sgn(b.im_hi) > 0;
        if (c == 1 && !crosses) {
            out.push_back(b);
            continue;
        }
        for (auto& kid : split4(p, b)) work.push_back(kid);
    }
    if ((int)out.size() != p.deg()) throw Error("root isolation: root count mismatch");
    return out;
}

}  // namespace

std::vector<AlgNum> isolateRoots(const PolyQ& p)
{
    if (p.is_zero_poly()) throw Error("isolateRoots: zero polynomial");
    std::vector<AlgNum> out;
    for (auto& [f, e] : factorQ(p).factors) {
        NF K = make_field(f, true);
        for (auto& b : isolate_squarefree(f)) {
            AlgNum a = AlgNum::gen(K);
            a.box = b;
            out.push_back(a);
        }
    }
    return out;
}

Rat box_width(const Box& b)
{
    Rat w = b.re_hi - b.re_lo, h = b.im_hi - b.im_lo;
    return w > h ? w : h;
}

Box refine_box(const PolyQ& p0, const Box& b)
{
    PolyQ p = squarefree_part(p0);
    if (box_degenerate_real(b)) {
        if (b.re_lo == b.re_hi) return b;
        Rat m = (b.re_lo + b.re_hi) / 2;
        for (int k = 3; sgn(p(m)) == 0; ++k) m = b.re_lo + (b.re_hi - b.re_lo) * Rat(k - 1, 2 * k);
        if (sturm_count(p, b.re_lo, m) == 1) return {b.re_lo, m, Rat(0), Rat(0)};
        return {m, b.re_hi, Rat(0), Rat(0)};
    }
    for (auto& [kb, c] : split4(p, b))
        if (c == 1) return kb;
    throw Error("refine_box: root lost");
}

// ---------------------------------------------------------------- intervals

namespace {

void rmul(const Rat& a0, const Rat& a1, const Rat& b0, const Rat& b1, Rat& lo, Rat& hi)
{
    Rat p[4] = {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
    lo = hi = p[0];
    for (auto& x : p) {
        if (x < lo) lo = x;
        if (x > hi) hi = x;
    }
}

}  // namespace

CInterval operator+(const CInterval& a, const CInterval& b)
{
    return {a.re_lo + b.re_lo, a.re_hi + b.re_hi, a.im_lo + b.im_lo, a.im_hi + b.im_hi};
}

CInterval operator-(const CInterval& a, const CInterval& b)
{
    return {a.re_lo - b.re_hi, a.re_hi - b.re_lo, a.im_lo - b.im_hi, a.im_hi - b.im_lo};
}

CInterval operator*(const CInterval& a, const CInterval& b)
{
    Rat l1, h1, l2, h2, l3, h3, l4, h4;
    rmul(a.re_lo, a.re_hi, b.re_lo, b.re_hi, l1, h1);
    rmul(a.im_lo, a.im_hi, b.im_lo, b.im_hi, l2, h2);
    rmul(a.re_lo, a.re_hi, b.im_lo, b.im_hi, l3, h3);
    rmul(a.im_lo, a.im_hi, b.re_lo, b.re_hi, l4, h4);
    return {l1 - h2, h1 - l2, l3 + l4, h3 + h4};
}

CInterval enclose(const PolyQ& p, const CInterval& x)
{
    CInterval acc = CInterval::point(Rat(0));
    for (int k = p.deg(); k >= 0; --k) acc = acc * x + CInterval::point(p.c[k]);
    return acc;
}

CInterval enclose(const AlgNum& a, const Box& alpha_box) { return enclose(a.r, CInterval::of(alpha_box)); }

AlgNum locate(const AlgNum& a, const Box& alpha_box0)
{
    PolyQ mp = minpoly(a);
    NF K = make_field(mp, true);
    std::vector<Box> cands = isolate_squarefree(mp);
    Box ab = alpha_box0;
    for (int iter = 0; iter < 400; ++iter) {
        CInterval e = enclose(a, ab);
        std::vector<size_t> hit;
        for (size_t i = 0; i < cands.size(); ++i) {
            const Box& c = cands[i];
            bool inter = !(c.re_hi < e.re_lo || e.re_hi < c.re_lo || c.im_hi < e.im_lo || e.im_hi < c.im_lo);
            if (inter) hit.push_back(i);
        }
        if (hit.size() == 1) {
            AlgNum r = AlgNum::gen(K);
            r.box = cands[hit[0]];
            return r;
        }
        if (hit.empty()) throw Error("locate: enclosure misses every root");
        ab = refine_box(a.K->modulus, ab);
        for (auto i : hit) cands[i] = refine_box(mp, cands[i]);
    }
    throw Error("locate: refinement did not converge");
}

// ---------------------------------------------------------------- modular

Int crt(const Int& a, const Int& m, uint64_t b, uint64_t p)
{
    // x = a mod m, x = b mod p
    uint64_t am = mod_int(a, p), mm = mod_int(m, p);
    uint64_t diff = (b + p - am) % p;
    uint64_t k = (unsigned __int128)diff * powmod(mm, p - 2, p) % p;
    return a + m * Int((unsigned long)k);
}

std::optional<Rat> rational_reconstruct(const Int& a0, const Int& m)
{
    Int a = a0 % m;
    if (a < 0) a += m;
    Int r0 = m, r1 = a, t0 = 0, t1 = 1;
    Int bound = sqrt(m / 2);
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (abs(t1) > bound || t1 == 0) return std::nullopt;
    Int g = gcd(r1, t1);
    if (g != 1) return std::nullopt;
    Rat q(r1, t1);
    q.canonicalize();
    return q;
}

}  // namespace odemin
