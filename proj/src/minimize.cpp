#include "odemin/minimize.hpp"
#include "odemin/approximant.hpp"

#include <future>

namespace odemin {

std::string to_string(EvidenceKind k)
{
    switch (k) {
    case EvidenceKind::NoFactor: return "NoFactor";
    case EvidenceKind::Empty: return "Bound+empty";
    case EvidenceKind::Covered: return "Bound+covered";
    case EvidenceKind::Found: return "Found";
    case EvidenceKind::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// L and the series modulo one prime.
struct ModContext {
    uint64_t q = 0;
    DiffOpP L;
    TruncSeries<Fp> T;
};

bool reduces(const PolyQ& p, uint64_t q)
{
    for (auto& x : p.c)
        if (mod_int(x.get_den(), q) == 0) return false;
    return true;
}

std::optional<ModContext> make_context(const DiffOp& L, const TruncSeries<Rat>& S0, uint64_t q)
{
    for (auto& a : L.c)
        if (!reduces(a, q)) return std::nullopt;
    for (auto& x : S0.c)
        if (mod_int(x.get_den(), q) == 0) return std::nullopt;
    ModContext ctx;
    ctx.q = q;
    ctx.L = reduce_mod(L, q);
    if (ctx.L.order() != L.order()) return std::nullopt;
    for (int i = 0; i <= L.order(); ++i)
        if (ctx.L.c[i].deg() != L.c[i].deg() || ctx.L.c[i].val() != L.c[i].val()) return std::nullopt;
    ctx.T = reduce_series(S0, Fp(0, q));
    return ctx;
}

void extend(ModContext& ctx, int target, const std::vector<long>& zset)
{
    if (ctx.T.prec() < target) ctx.T = seriesSolution(ctx.L, ctx.T, target, zset);
}

template <class T>
bool annihilates(const Op<T>& G, const TruncSeries<T>& S)
{
    auto r = applyOp(G, S);
    for (auto& x : r.c)
        if (!is_zero(x)) return false;
    return true;
}

// Factor reconstruction from modular images sharing the degree profile of a
// modular candidate.
struct Lifter {
    const DiffOp& L;
    const TruncSeries<Rat>& S0;
    const std::vector<long>& zset;
    std::vector<int> profile;
    int s = 0;
    int terms = 0;

    // Normalized image (leading coefficient of the leading polynomial 1) of
    // the order-s annihilator of S with this profile, modulo q.
    std::optional<DiffOpP> image(uint64_t q)
    {
        auto ctx = make_context(L, S0, q);
        if (!ctx) return std::nullopt;
        std::vector<int> shifts = profile;
        for (int P = terms, tries = 0; tries < 3; P *= 2, ++tries) {
            try {
                extend(*ctx, P + s, zset);
            } catch (const BadPrime&) {
                return std::nullopt;
            }
            auto res = approximantBasis(derivative_stack(ctx->T, s, P), shifts, P);
            if (std::find(res.selected.begin(), res.selected.end(), s) == res.selected.end()) continue;
            DiffOpP H(Fp(0, q));
            H.c = res.rows[s];
            H.trim();
            normalize_scalar(H);
            if (H.order() != s) continue;
            bool same = true;
            for (int i = 0; i <= s; ++i) same = same && H.c[i].deg() == profile[i];
            if (!same) return std::nullopt;
            if (P != terms) terms = P;
            return H;
        }
        return std::nullopt;
    }
};

bool verify_exact(const DiffOp& L, const DiffOp& G, const TruncSeries<Rat>& S0)
{
    if (!annihilates(G, S0)) return false;
    return rrem(L, G).is_zero();
}

struct LiftResult {
    std::optional<DiffOp> M;
    std::vector<uint64_t> primes;
    int terms = 0;
};

LiftResult lift_factor(const DiffOp& L, const TruncSeries<Rat>& S0, const std::vector<long>& zset, const DiffOpP& Gq,
                       uint64_t q0)
{
    Lifter lf{L, S0, zset, {}, Gq.order(), 0};
    for (auto& c : Gq.c) lf.profile.push_back(c.deg());
    for (int d : lf.profile) lf.terms += std::max(d, 0) + 1;
    lf.terms += 2 * lf.s + 16;

    LiftResult out;
    std::vector<std::vector<Int>> res(lf.s + 1);
    Int mod = 0;
    std::optional<DiffOp> prev;
    constexpr int kMaxPrimes = 400;
    int misses = 0;
    uint64_t q = q0;
    for (int used = 0; used < kMaxPrimes; q = prev_prime(q)) {
        auto H = lf.image(q);
        if (!H) {
            if (++misses > 20) break;
            continue;
        }
        ++used;
        out.primes.push_back(q);
        for (int i = 0; i <= lf.s; ++i) {
            res[i].resize(H->c[i].c.size());
            for (size_t j = 0; j < H->c[i].c.size(); ++j) {
                uint64_t v = H->c[i].c[j].v;
                res[i][j] = mod == 0 ? Int((unsigned long)v) : crt(res[i][j], mod, v, q);
            }
        }
        mod = mod == 0 ? Int((unsigned long)q) : mod * Int((unsigned long)q);
        if (used < 2) continue;
        DiffOp cand;
        bool ok = true;
        for (int i = 0; i <= lf.s && ok; ++i) {
            PolyQ p;
            for (auto& r : res[i]) {
                auto x = rational_reconstruct(r, mod);
                if (!x) {
                    ok = false;
                    break;
                }
                p.c.push_back(*x);
            }
            p.trim();
            cand.c.push_back(p);
        }
        if (!ok) continue;
        cand.trim();
        if (prev && *prev == cand && verify_exact(L, cand, S0)) {
            out.M = primitive(cand);
            out.terms = lf.terms;
            return out;
        }
        prev = cand;
    }
    out.terms = lf.terms;
    return out;
}

DiffOpP normalized(DiffOpP G)
{
    normalize_scalar(G);
    return G;
}

}  // namespace

MinimizationResult minimalRightFactor(const DiffOp& L, const InitialConditions& ini, const MinimizeOptions& opt)
{
    if (L.is_zero() || L.order() < 1) throw ValidationError("operator of order at least 1 expected");
    auto zset = integerRootSet(L);
    if (zset.empty()) throw ValidationError("the operator has no nonzero power series solution");
    TruncSeries<Rat> S0 = prefix_from_initial(L, ini);
    bool nonzero = false;
    for (auto& x : S0.c) nonzero = nonzero || !is_zero(x);
    if (!nonzero) throw ValidationError("initial conditions define the zero series");

    const int r = L.order();
    const int maxZ = (int)zset.back();
    const int max_terms = opt.max_terms ? *opt.max_terms : 200 * r;

    MinimizationResult out;
    out.M = primitive(L);
    if (r == 1) {
        out.certified = true;
        return out;
    }

    auto sites = singularSiteList(L);
    BoundOptions bopt{opt.relaxed, std::nullopt};
    std::map<int, BoundOutcome> bounds;
    if (opt.threads > 1) {
        std::vector<int> orders;
        for (int m = r - 1; m >= 1; --m) orders.push_back(m);
        for (size_t i = 0; i < orders.size(); i += opt.threads) {
            std::vector<std::pair<int, std::future<BoundOutcome>>> jobs;
            for (size_t j = i; j < std::min(orders.size(), i + (size_t)opt.threads); ++j) {
                int m = orders[j];
                jobs.emplace_back(m, std::async(std::launch::async, [&, m] { return boundDegreeCoeffs(L, sites, m, bopt); }));
            }
            for (auto& [m, f] : jobs) bounds[m] = f.get();
        }
    }
    auto bound_at = [&](int m) -> const BoundOutcome& {
        auto it = bounds.find(m);
        if (it == bounds.end()) it = bounds.emplace(m, boundDegreeCoeffs(L, sites, m, bopt)).first;
        return it->second;
    };

    // modular context for the search, moved to a smaller prime on failure
    uint64_t q = opt.prime;
    std::optional<ModContext> ctx;
    auto open = [&](int target) {
        for (int tries = 0; tries < 50; ++tries, q = prev_prime(q)) {
            if (!ctx || ctx->q != q) ctx = make_context(L, S0, q);
            if (!ctx) continue;
            try {
                extend(*ctx, target, zset);
                return;
            } catch (const BadPrime&) {
                ctx.reset();
            }
        }
        throw ResourceError("no usable prime found for the modular search");
    };

    struct Proof {
        int m, shift, p;
    };
    std::vector<Proof> proofs;

    int p = maxZ + r;
    int m = r;
    bool found_any = false;
    while (m > 1) {
        --m;
        const BoundOutcome& b = bound_at(m);
        OrderEvidence ev;
        ev.bound = b.tag;
        ev.A = b.A;
        ev.degrees = b.degrees;
        ev.note = b.reason;
        if (b.tag == BoundTag::NoFactor) {
            ev.kind = EvidenceKind::NoFactor;
            out.evidence[m] = ev;
            continue;
        }
        std::optional<int> N;
        if (b.tag == BoundTag::Bound) {
            N = b.max_degree();
            ev.N = *N;
            for (auto& pr : proofs) {
                if (pr.m >= m && pr.shift >= *N) {
                    ev.kind = EvidenceKind::Covered;
                    ev.covered_by = pr.m;
                    ev.precision = pr.p;
                    ev.shift = pr.shift;
                    break;
                }
            }
            if (ev.kind == EvidenceKind::Covered) {
                out.evidence[m] = ev;
                continue;
            }
        }
        int p_before = p;
        bool done = false;
        while (!done) {
            if (p + m > max_terms) {
                ev.kind = EvidenceKind::Unknown;
                ev.note = "precision cap of " + std::to_string(max_terms) + " terms reached";
                out.capped = true;
                p = p_before;
                break;
            }
            open(p + m);
            out.precision = std::max(out.precision, p + m);
            int k = p / (m + 1);
            int shift = k - 1;
            auto res = approximantBasis(derivative_stack(ctx->T, m, p), std::vector<int>(m + 1, shift), p);
            auto cands = candidateOperators(res);
            if (cands.empty()) {
                if (N && p >= (m + 1) * (*N + 1)) {
                    ev.kind = EvidenceKind::Empty;
                    ev.precision = p;
                    ev.shift = shift;
                    proofs.push_back({m, shift, p});
                    done = true;
                    continue;
                }
            } else {
                for (auto& h : cands) {
                    DiffOpP G = gcrd(ctx->L, h);
                    if (G.order() < 1 || G.order() > m) continue;
                    if (!annihilates(G, ctx->T.truncate(p))) continue;
                    G = normalized(G);
                    auto lift = lift_factor(L, S0, zset, G, ctx->q);
                    if (!lift.M) continue;
                    out.M = *lift.M;
                    out.candidate = G;
                    out.lift_primes = lift.primes;
                    out.lift_terms = lift.terms;
                    ev.kind = EvidenceKind::Found;
                    ev.precision = p;
                    ev.shift = shift;
                    done = true;
                    break;
                }
                if (done) {
                    int g = out.M.order();
                    out.evidence[m] = ev;
                    // orders between the new factor and m need no proof
                    m = g;
                    found_any = true;
                    break;
                }
            }
            p *= 2;
        }
        if (ev.kind != EvidenceKind::Found) out.evidence[m] = ev;
        if (found_any && !opt.certify) break;
    }
    out.prime = ctx ? ctx->q : q;

    // the factor annihilates the series at twice the search precision
    if (out.M.order() < r) {
        int twice = std::max(2 * out.precision, 2 * (maxZ + r));
        open(twice);
        DiffOpP Mq = reduce_mod(out.M, ctx->q);
        if (!annihilates(Mq, ctx->T.truncate(twice)))
            throw Error("reconstructed factor fails the series check at double precision");
    }
    std::map<int, OrderEvidence> kept;
    for (auto& [k, v] : out.evidence)
        if (k < out.M.order()) kept[k] = v;
    out.evidence = kept;
    out.certified = opt.certify && certifyMinimality(out.M, out.evidence);
    return out;
}

bool certifyMinimality(const DiffOp& M, const std::map<int, OrderEvidence>& evidence)
{
    for (int m = 1; m < M.order(); ++m) {
        auto it = evidence.find(m);
        if (it == evidence.end()) return false;
        const auto& ev = it->second;
        switch (ev.kind) {
        case EvidenceKind::NoFactor:
            if (ev.bound != BoundTag::NoFactor) return false;
            break;
        case EvidenceKind::Empty:
            if (ev.bound != BoundTag::Bound || ev.N < 0 || ev.shift < ev.N || ev.precision < (m + 1) * (ev.N + 1))
                return false;
            break;
        case EvidenceKind::Covered: {
            if (ev.bound != BoundTag::Bound || ev.N < 0 || ev.covered_by < m || ev.shift < ev.N) return false;
            auto c = evidence.find(ev.covered_by);
            if (c == evidence.end() || c->second.kind != EvidenceKind::Empty || c->second.shift != ev.shift ||
                c->second.precision != ev.precision)
                return false;
            break;
        }
        default:
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- rational solutions

namespace {

Point point_of(const PolyQ& mu)
{
    if (mu.deg() == 1 && is_zero(mu.c[0])) return Point::origin();
    if (mu.deg() == 1) return Point::at(AlgNum::of(rational_field(), -mu.c[0] / mu.c[1]));
    return Point::at(AlgNum::gen(make_field(mu, true)));
}

}  // namespace

std::vector<RatFunQ> rationalSolutions(const DiffOp& L)
{
    if (L.is_zero()) throw ValidationError("rational solutions of the zero operator");
    if (L.order() == 0) return {};
    PolyQ D = polyq({1});
    auto fac = factorQ(L.lc());
    for (auto& [mu, e] : fac.factors) {
        (void)e;
        auto ind = indicialAt(L, point_of(mu));
        auto roots = integer_roots(ind.indicial);
        if (roots.empty()) continue;
        Int lo = *std::min_element(roots.begin(), roots.end());
        if (lo < 0) D = D * pow(mu, (int)Int(-lo).get_si());
    }
    auto rinf = integer_roots(indicialInfinity(L));
    if (rinf.empty()) return {};
    Int smin = *std::min_element(rinf.begin(), rinf.end());
    Int Nz = Int(D.deg()) - smin;
    if (Nz < 0) return {};
    int N = (int)Nz.get_si();

    // L(P/D) = T(P) / D^(r+1) with T = sum t_j Dz^j polynomial
    int r = L.order();
    std::vector<PolyQ> Q{polyq({1})}, Dp{polyq({1})};
    PolyQ dD = D.derivative();
    for (int k = 0; k < r; ++k) {
        Q.push_back(Q[k].derivative() * D - Rat(k + 1) * (dD * Q[k]));
        Dp.push_back(Dp[k] * D);
    }
    std::vector<PolyQ> t(r + 1);
    int tdeg = -1;
    for (int j = 0; j <= r; ++j) {
        for (int i = j; i <= r; ++i)
            if (!L.c[i].is_zero_poly()) t[j] = t[j] + Rat(binom_small(i, j)) * (L.c[i] * Q[i - j] * Dp[r - i + j]);
        tdeg = std::max(tdeg, t[j].deg());
    }
    int rows = tdeg + N + 1;
    auto build = [&](auto conv, auto zero) {
        using T = decltype(zero);
        Mat<T> A(rows, std::vector<T>(N + 1, zero));
        for (int k = 0; k <= N; ++k) {
            Int fall = 1;
            for (int j = 0; j <= std::min(k, r); ++j) {
                if (j > 0) fall *= k - j + 1;
                for (int m = 0; m <= t[j].deg(); ++m)
                    if (!is_zero(t[j].c[m])) A[k - j + m][k] += conv(t[j].c[m] * Rat(fall));
            }
        }
        return A;
    };
    // a trivial kernel modulo a prime is trivial over Q
    for (uint64_t p = prev_prime(kDefaultPrime), tries = 0; tries < 3; p = prev_prime(p), ++tries) {
        Fp z0(0, p);
        bool bad = false;
        auto conv = [&](const Rat& x) {
            if (x.get_den() % p == 0) {
                bad = true;
                return z0;
            }
            return from_rat(z0, x);
        };
        auto Ap = build(conv, z0);
        if (bad) continue;
        if (nullspace(Ap, N + 1, z0).empty()) return {};
        break;
    }
    auto A = build([](const Rat& x) { return x; }, Rat(0));
    auto ker = nullspace(A, N + 1, Rat(0));
    std::vector<RatFunQ> out;
    for (auto& v : ker) {
        PolyQ P;
        P.c = v;
        P.trim();
        RatFunQ f(P, D);
        Rat lc = f.num.lc();
        f.num = inv(lc) * f.num;
        out.push_back(f);
    }
    return out;
}

// ---------------------------------------------------------------- inhomogeneous

PolyQ InhomResult::cleared_factor() const
{
    PolyQ l = polyq({1});
    for (auto& f : b)
        if (!f.is_zero()) l = l / gcd(l, f.den) * f.den;
    return l;
}

DiffOp InhomResult::cleared() const
{
    PolyQ l = cleared_factor();
    DiffOp r;
    for (auto& f : b) r.c.push_back(f.is_zero() ? PolyQ() : f.num * (l / f.den));
    r.trim();
    return r;
}

std::optional<InhomResult> minimalInhomogeneous(const DiffOp& L, const InitialConditions& ini)
{
    if (L.order() < 1) throw ValidationError("operator of order at least 1 expected");
    auto sols = rationalSolutions(adjoint(L));
    if (sols.empty()) return std::nullopt;
    if (sols.size() > 1)
        throw ValidationError("the adjoint has " + std::to_string(sols.size()) +
                              " independent rational solutions; the operator is not minimal");
    InhomResult out;
    out.R = sols[0];
    const int r = L.order();
    out.b.assign(r, RatFunQ(PolyQ()));
    out.b[r - 1] = out.R * RatFunQ(L.c[r]);
    for (int j = r - 2; j >= 0; --j) out.b[j] = out.R * RatFunQ(L.c[j + 1]) - out.b[j + 1].derivative();

    // D M(S) = D B with D the common denominator
    DiffOp Mc = out.cleared();
    PolyQ D = out.cleared_factor();
    int vD = D.val();
    int prec = vD + r + 8;
    auto S = seriesSolution(L, prefix_from_initial(L, ini), prec);
    TruncSeries<Rat> img(Rat(0), 0);
    img.c.assign(prec - r, Rat(0));
    TruncSeries<Rat> d = S;
    for (int j = 0; j <= Mc.order(); ++j) {
        auto t = Mc.c[j] * d;
        for (int n = 0; n < prec - r; ++n) img.c[n] += t.c[n];
        if (j < Mc.order()) d = d.derivative();
    }
    out.B = img.c[vD] / D.c[vD];
    for (int n = 0; n < prec - r; ++n)
        if (img.c[n] != out.B * D.coeff(n)) throw Error("inhomogeneous equation check failed at z^" + std::to_string(n));
    out.checked_precision = prec - r;
    return out;
}

}  // namespace odemin
