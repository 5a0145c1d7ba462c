#include "odemin/algebra.hpp"

#include <functional>
#include <random>

namespace odemin {

std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& p0)
{
    std::vector<std::pair<PolyQ, int>> out;
    if (p0.deg() <= 0) return out;
    PolyQ p = p0.monic();
    PolyQ dp = p.derivative();
    PolyQ a = gcd(p, dp);
    PolyQ b = p / a, c = dp / a;
    int i = 1;
    while (b.deg() > 0) {
        PolyQ d = c - b.derivative();
        PolyQ g = gcd(b, d);
        if (g.deg() > 0) out.push_back({g.monic(), i});
        b = b / g;
        c = d / g;
        ++i;
    }
    return out;
}

namespace {

using ZP = std::vector<Int>;  // integer polynomial, low degree first

void ztrim(ZP& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void zmod(ZP& a, const Int& m)
{
    for (auto& x : a) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    }
    ztrim(a);
}

ZP zmul(const ZP& a, const ZP& b, const Int& m)
{
    if (a.empty() || b.empty()) return {};
    ZP r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    zmod(r, m);
    return r;
}

ZP zadd(const ZP& a, const ZP& b, const Int& m)
{
    ZP r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    zmod(r, m);
    return r;
}

ZP zsub(const ZP& a, const ZP& b, const Int& m)
{
    ZP r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    zmod(r, m);
    return r;
}

ZP zscale(const ZP& a, const Int& s, const Int& m)
{
    ZP r = a;
    for (auto& x : r) x *= s;
    zmod(r, m);
    return r;
}

// division by a monic polynomial modulo m
void zdivrem_monic(const ZP& a, const ZP& b, const Int& m, ZP& q, ZP& r)
{
    r = a;
    zmod(r, m);
    q.clear();
    int db = (int)b.size() - 1;
    if ((int)r.size() - 1 < db) return;
    q.assign(r.size() - db, Int(0));
    for (int i = (int)r.size() - 1; i >= db; --i) {
        Int f = r[i];
        mpz_fdiv_r(f.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
        if (f == 0) continue;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
    }
    zmod(r, m);
    zmod(q, m);
}

ZP from_polyp(const PolyP& a)
{
    ZP r;
    for (auto& x : a.c) r.push_back(Int((unsigned long)x.v));
    return r;
}

PolyP to_polyp(const ZP& a, uint64_t p)
{
    PolyP r(Fp(0, p));
    for (auto& x : a) r.c.push_back(Fp(mod_int(x, p), p));
    r.trim();
    return r;
}

ZP from_polyq_int(const PolyQ& a)
{
    ZP r;
    for (auto& x : a.c) r.push_back(x.get_num());
    return r;
}

PolyQ to_polyq_sym(const ZP& a, const Int& m)
{
    Int half = m / 2;
    PolyQ r;
    for (auto x : a) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        if (x > half) x -= m;
        r.c.push_back(Rat(x));
    }
    r.trim();
    return r;
}

// Cantor-Zassenhaus over F_p, p odd; input monic squarefree
std::vector<PolyP> factor_modp(const PolyP& f0, std::mt19937_64& gen)
{
    uint64_t p = f0.zero.p;
    std::vector<PolyP> out;
    PolyP f = f0.monic();
    PolyP x = PolyP::x(Fp(0, p));
    PolyP h = x;
    std::vector<std::pair<PolyP, int>> dd;
    for (int d = 1; 2 * d <= f.deg(); ++d) {
        h = powmod(h, Int((unsigned long)p), f);
        PolyP g = gcd(h - x, f);
        if (g.deg() > 0) {
            dd.push_back({g, d});
            f = f / g;
            h = h % f;
        }
    }
    if (f.deg() > 0) dd.push_back({f, f.deg()});
    std::function<void(const PolyP&, int)> edf = [&](const PolyP& g, int d) {
        if (g.deg() == d) {
            out.push_back(g.monic());
            return;
        }
        Int e;
        mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)p, (unsigned long)d);
        e = (e - 1) / 2;
        while (true) {
            PolyP a(Fp(0, p));
            for (int i = 0; i < g.deg(); ++i) a.c.push_back(Fp(gen() % p, p));
            a.trim();
            if (a.deg() < 1) continue;
            PolyP b = powmod(a, e, g) - PolyP::constant(Fp(1, p));
            PolyP u = gcd(b, g);
            if (u.deg() > 0 && u.deg() < g.deg()) {
                edf(u, d);
                edf(g / u, d);
                return;
            }
        }
    };
    for (auto& [g, d] : dd) edf(g, d);
    return out;
}

// Hensel step: f = g h mod m with s g + t h = 1 mod m, h monic; lift to m^2
void hensel_step(const ZP& f, ZP& g, ZP& h, ZP& s, ZP& t, const Int& m)
{
    Int M = m * m;
    ZP e = zsub(f, zmul(g, h, M), M);
    ZP q, r;
    zdivrem_monic(zmul(s, e, M), h, M, q, r);
    ZP g2 = zadd(zadd(g, zmul(t, e, M), M), zmul(q, g, M), M);
    ZP h2 = zadd(h, r, M);
    ZP b = zsub(zadd(zmul(s, g2, M), zmul(t, h2, M), M), ZP{Int(1)}, M);
    ZP c, d;
    zdivrem_monic(zmul(s, b, M), h2, M, c, d);
    s = zsub(s, d, M);
    t = zsub(zsub(t, zmul(t, b, M), M), zmul(c, g2, M), M);
    g = g2;
    h = h2;
}

// lift monic modular factors of f (f = lc * prod fac mod p) to modulus p^(2^steps)
std::vector<ZP> multilift(const ZP& f, const std::vector<PolyP>& fac, uint64_t p, int steps)
{
    Int P((unsigned long)p);
    Int mod = P;
    for (int i = 0; i < steps; ++i) mod *= mod;
    if (fac.size() == 1) {
        Int lc = f.back(), il;
        mpz_invert(il.get_mpz_t(), lc.get_mpz_t(), mod.get_mpz_t());
        return {zscale(f, il, mod)};
    }
    size_t k = fac.size() / 2;
    std::vector<PolyP> A(fac.begin(), fac.begin() + k), B(fac.begin() + k, fac.end());
    Fp proto(0, p);
    PolyP g0 = PolyP::constant(Fp(mod_int(f.back(), p), p)), h0 = PolyP::constant(Fp(1, p));
    for (auto& u : A) g0 = g0 * u;
    for (auto& u : B) h0 = h0 * u;
    PolyP s0, t0;
    xgcd(g0, h0, s0, t0);
    ZP g = from_polyp(g0), h = from_polyp(h0), s = from_polyp(s0), t = from_polyp(t0);
    Int m = P;
    for (int i = 0; i < steps; ++i) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    auto ra = multilift(g, A, p, steps);
    auto rb = multilift(h, B, p, steps);
    ra.insert(ra.end(), rb.begin(), rb.end());
    return ra;
}

// f primitive integral squarefree, deg >= 2, f(0) != 0
std::vector<PolyQ> zassenhaus(const PolyQ& f)
{
    int n = f.deg();
    Int lc = f.lc().get_num();
    std::mt19937_64 gen(12345);
    uint64_t best_p = 0;
    std::vector<PolyP> best;
    int tried = 0;
    for (uint64_t p = 3; tried < 6 && p < 100000; p += 2) {
        if (!is_prime_u64(p) || mod_int(lc, p) == 0) continue;
        PolyP fp = reduce_mod(f, p);
        if (gcd(fp, fp.derivative()).deg() > 0) continue;
        auto fac = factor_modp(fp, gen);
        ++tried;
        if (best_p == 0 || fac.size() < best.size()) {
            best_p = p;
            best = fac;
        }
        if (best.size() <= 1) break;
    }
    if (best_p == 0) throw Error("no good prime for factorization");
    if (best.size() <= 1) return {f};
    // Mignotte-style bound on factor coefficients times lc
    Int norm2 = 0;
    for (auto& a : f.c) norm2 += a.get_num() * a.get_num();
    Int nrm = sqrt(norm2) + 1;
    Int bound = 2 * (Int(1) << n) * nrm * abs(lc) + 1;
    Int P((unsigned long)best_p), mod = P;
    int steps = 0;
    while (mod <= 2 * bound) {
        mod *= mod;
        ++steps;
    }
    ZP fz = from_polyq_int(f);
    auto lifted = multilift(fz, best, best_p, steps);

    std::vector<PolyQ> out;
    PolyQ F = f;
    std::vector<ZP> U = lifted;
    size_t s = 1;
    while (2 * s <= U.size()) {
        bool found = false;
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            Int lcF = F.lc().get_num();
            ZP g{lcF}, h{lcF};
            std::vector<bool> in(U.size(), false);
            for (auto i : idx) in[i] = true;
            for (size_t i = 0; i < U.size(); ++i) {
                if (in[i])
                    g = zmul(g, U[i], mod);
                else
                    h = zmul(h, U[i], mod);
            }
            PolyQ gq = primitive_part(to_polyq_sym(g, mod));
            PolyQ hq = primitive_part(to_polyq_sym(h, mod));
            if (gq * hq == F) {
                out.push_back(gq);
                F = hq;
                std::vector<ZP> rest;
                for (size_t i = 0; i < U.size(); ++i)
                    if (!in[i]) rest.push_back(U[i]);
                U = rest;
                found = true;
                break;
            }
            // next combination
            int k = (int)s - 1;
            while (k >= 0 && idx[k] == U.size() - s + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (size_t j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (F.deg() > 0) out.push_back(F);
    return out;
}

}  // namespace

FactorizationQ factorQ(const PolyQ& p)
{
    if (p.is_zero_poly()) throw Error("factorQ: zero polynomial");
    FactorizationQ res;
    res.unit = p.lc();
    for (auto& [sqf, mult] : squarefree_decomposition(p)) {
        PolyQ g = primitive_part(sqf);
        int v = g.val();
        if (v > 0) {
            res.factors.push_back({PolyQ::x(Rat(0)), mult * v});
            g = g.shift_down(v);
        }
        if (g.deg() <= 0) continue;
        if (g.deg() == 1) {
            res.factors.push_back({g.monic(), mult});
            continue;
        }
        for (auto& f : zassenhaus(g)) res.factors.push_back({f.monic(), mult});
    }
    // merge equal factors (x may appear from several squarefree layers)
    std::vector<std::pair<PolyQ, int>> merged;
    for (auto& fe : res.factors) {
        bool done = false;
        for (auto& me : merged)
            if (me.first == fe.first) {
                me.second += fe.second;
                done = true;
            }
        if (!done) merged.push_back(fe);
    }
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        for (int i = a.first.deg(); i >= 0; --i)
            if (a.first.c[i] != b.first.c[i]) return a.first.c[i] < b.first.c[i];
        return a.second < b.second;
    });
    res.factors = merged;
    return res;
}

bool is_irreducibleQ(const PolyQ& p)
{
    if (p.deg() < 1) return false;
    auto f = factorQ(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

std::vector<Rat> rational_roots(const PolyQ& p)
{
    std::vector<Rat> out;
    if (p.deg() < 1) return out;
    for (auto& [f, e] : factorQ(p).factors)
        if (f.deg() == 1) out.push_back(-f.c[0]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> integer_roots(const PolyQ& p)
{
    std::vector<Int> out;
    for (auto& r : rational_roots(p))
        if (r.get_den() == 1) out.push_back(r.get_num());
    return out;
}

std::vector<Int> integer_roots(const PolyK& p)
{
    if (p.is_zero_poly()) throw Error("integer_roots of zero polynomial");
    int d = p.zero.K->degree();
    PolyQ g;
    for (int i = 0; i < d; ++i) {
        PolyQ comp;
        for (auto& a : p.c) comp.c.push_back(a.r.coeff(i));
        comp.trim();
        g = g.is_zero_poly() ? comp : gcd(g, comp);
    }
    if (g.is_zero_poly()) throw Error("integer_roots of zero polynomial");
    return integer_roots(g);
}

// ---------------------------------------------------------------- number fields

namespace {

Rat norm_via_resultant(const AlgNum& a)
{
    if (a.r.deg() <= 0) {
        Rat v = a.rational_value(), r = 1;
        for (int i = 0; i < a.K->degree(); ++i) r *= v;
        return r;
    }
    return resultant(a.K->modulus, a.r);
}

PolyQ interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys)
{
    // Newton divided differences
    size_t n = xs.size();
    std::vector<Rat> c = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
    PolyQ r;
    for (size_t k = n; k-- > 0;) r = r * polyq_from({-xs[k], Rat(1)}) + PolyQ::constant(c[k]);
    return r;
}

std::vector<std::pair<PolyK, int>> squarefree_decomposition_k(const PolyK& p0)
{
    std::vector<std::pair<PolyK, int>> out;
    if (p0.deg() <= 0) return out;
    PolyK p = p0.monic();
    PolyK dp = p.derivative();
    PolyK a = gcd(p, dp);
    PolyK b = p / a, c = dp / a;
    int i = 1;
    while (b.deg() > 0) {
        PolyK d = c - b.derivative();
        PolyK g = gcd(b, d);
        if (g.deg() > 0) out.push_back({g.monic(), i});
        b = b / g;
        c = d / g;
        ++i;
    }
    return out;
}

}  // namespace

FactorizationK factorNF(const PolyK& p, const NF& K)
{
    if (p.is_zero_poly()) throw Error("factorNF: zero polynomial");
    if (!is_irreducibleQ(K->modulus)) throw Error("factorNF: reducible number field modulus");
    FactorizationK res;
    res.unit = p.lc();
    AlgNum alpha = AlgNum::gen(K);
    int d = K->degree();
    for (auto& [g, mult] : squarefree_decomposition_k(p)) {
        if (g.deg() == 1) {
            res.factors.push_back({g, mult});
            continue;
        }
        int n = g.deg();
        for (long s = 0;; s = s > 0 ? -s : -s + 1) {
            AlgNum shift = from_int(alpha, -s) * alpha;
            PolyK gs = g.taylor_shift(shift);  // g(x - s alpha)
            std::vector<Rat> xs, ys;
            for (int k = 0; k <= n * d; ++k) {
                Rat x0(k);
                xs.push_back(x0);
                ys.push_back(norm_via_resultant(gs(AlgNum::of(K, x0))));
            }
            PolyQ N = interpolate(xs, ys);
            if (gcd(N, N.derivative()).deg() > 0) continue;
            auto fq = factorQ(N);
            for (auto& [h, e] : fq.factors) {
                PolyK hk = gcd(gs, lift_to_field(h, K));
                if (hk.deg() <= 0) continue;
                res.factors.push_back({hk.taylor_shift(-shift).monic(), mult});
            }
            break;
        }
    }
    return res;
}

}  // namespace odemin
