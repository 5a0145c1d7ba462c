#include "odemin/efun.hpp"

#include <algorithm>

namespace odemin {

namespace {

// Coefficients of f at alpha in t = z - alpha for exponents [lo, hi).
std::vector<AlgNum> laurent_window(const PolyK& num, const PolyK& den, const AlgNum& alpha, int lo, int hi)
{
    AlgNum zero = zero_of(alpha);
    std::vector<AlgNum> out(std::max(0, hi - lo), zero);
    if (num.is_zero_poly()) return out;
    PolyK n = num.taylor_shift(alpha), d = den.taylor_shift(alpha);
    int vn = n.val(), vd = d.val();
    int v = vn - vd;
    if (v < lo) throw Error("Laurent window starts above the pole order");
    int terms = hi - v;
    if (terms <= 0) return out;
    auto A = series_of_poly(n.shift_down(vn), terms);
    auto B = series_of_poly(d.shift_down(vd), terms);
    auto Q = (A * inverse(B)).truncate(terms);
    for (int k = 0; k < terms; ++k) out[v + k - lo] = Q.coeff(k);
    return out;
}

// Multiplicity of the irreducible mu in p.
int multiplicity(PolyQ p, const PolyQ& mu)
{
    int k = 0;
    while (p.deg() >= mu.deg()) {
        PolyQ q, r;
        divrem(p, mu, q, r);
        if (!r.is_zero_poly()) break;
        p = q;
        ++k;
    }
    return k;
}

PolyQ minimal_polynomial(const AlgNum& alpha)
{
    return alpha.is_rational() ? polyq({0, 1}) - PolyQ::constant(alpha.rational_value()) : minpoly(alpha);
}

// Laurent expansions of rational functions at alpha; the entries of a
// companion matrix share denominators, so inverse series are cached.
class Expander {
public:
    explicit Expander(const AlgNum& alpha) : alpha_(alpha), mu_(minimal_polynomial(alpha)) {}

    int pole_order(const RatFunQ& f) const { return f.is_zero() ? 0 : multiplicity(f.den, mu_); }

    std::vector<AlgNum> window(const RatFunQ& f, int lo, int hi)
    {
        AlgNum zero = zero_of(alpha_);
        std::vector<AlgNum> out(std::max(0, hi - lo), zero);
        if (f.is_zero()) return out;
        int vn = multiplicity(f.num, mu_);
        auto& den = inverse_of(f.den);
        int v = vn - den.v;
        if (v < lo) throw Error("Laurent window starts above the pole order");
        int terms = hi - v;
        if (terms <= 0) return out;
        if (den.inv.prec() < terms) den = expand_den(f.den, terms);
        PolyK n = lift_to_field(f.num, alpha_.K).taylor_shift(alpha_);
        auto Q = (series_of_poly(n.shift_down(vn), terms) * den.inv).truncate(terms);
        for (int k = 0; k < terms; ++k) out[v + k - lo] = Q.coeff(k);
        return out;
    }

private:
    struct Den {
        int v = 0;
        TruncSeries<AlgNum> inv;
    };

    Den expand_den(const PolyQ& den, int terms)
    {
        Den d;
        PolyK s = lift_to_field(den, alpha_.K).taylor_shift(alpha_);
        d.v = s.val();
        d.inv = inverse(series_of_poly(s.shift_down(d.v), terms));
        return d;
    }

    Den& inverse_of(const PolyQ& den)
    {
        for (auto& [p, d] : cache_)
            if (p == den) return d;
        cache_.emplace_back(den, expand_den(den, 1));
        return cache_.back().second;
    }

    AlgNum alpha_;
    PolyQ mu_;
    std::vector<std::pair<PolyQ, Den>> cache_;
};

int valuation_at(const PolyK& p, const AlgNum& alpha)
{
    return p.taylor_shift(alpha).val();
}

RatFun<AlgNum> lift(const RatFunQ& f, const NF& K)
{
    AlgNum proto = AlgNum::of(K, Rat(0));
    if (f.is_zero()) return RatFun<AlgNum>(PolyK(proto));
    return RatFun<AlgNum>(lift_to_field(f.num, K), lift_to_field(f.den, K));
}

Rat trace_residue(const Mat<RatFunQ>& A, const AlgNum& alpha)
{
    RatFunQ tr(PolyQ{});
    for (size_t i = 0; i < A.size(); ++i) tr += A[i][i];
    if (tr.is_zero()) return Rat(0);
    Expander ex(alpha);
    int lo = -std::max(1, ex.pole_order(tr));
    auto w = ex.window(tr, lo, 0);
    const AlgNum& res = w[-1 - lo];
    if (!res.is_rational()) throw DesingularizationError("residue of the trace is irrational; singularity cannot be removed");
    return res.rational_value();
}

long budget_of(const Rat& r)
{
    if (r.get_den() != 1 || sgn(r) < 0)
        throw DesingularizationError("residue of the trace is " + to_string(r) + ", not a nonnegative integer; singularity cannot be removed");
    return r.get_num().get_si();
}

// Invertible constant matrix with v as row i: standard rows elsewhere,
// skipping the first nonzero coordinate of v.
Mat<AlgNum> complete_row(const std::vector<AlgNum>& v, int i)
{
    int n = (int)v.size();
    AlgNum zero = zero_of(v[0]), one = one_of(v[0]);
    int j0 = 0;
    while (j0 < n && is_zero(v[j0])) ++j0;
    if (j0 == n) throw Error("zero pole row");
    Mat<AlgNum> M(n, std::vector<AlgNum>(n, zero));
    M[i] = v;
    int row = 0;
    for (int l = 0; l < n; ++l) {
        if (l == j0) continue;
        if (row == i) ++row;
        M[row][l] = one;
        ++row;
    }
    return M;
}

// B := B Minv D with D = diag(.., z - alpha at i, ..)
void update_transform(PolyMatK& B, const Mat<AlgNum>& Minv, int i, const AlgNum& alpha)
{
    int n = (int)B.size();
    AlgNum zero = zero_of(alpha);
    PolyMatK R(n, std::vector<PolyK>(n, PolyK(zero)));
    for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l) {
            if (B[a][l].is_zero_poly()) continue;
            for (int b = 0; b < n; ++b)
                if (!is_zero(Minv[l][b])) R[a][b] += Minv[l][b] * B[a][l];
        }
    PolyK lin(std::vector<AlgNum>{-alpha, one_of(alpha)}, zero);
    for (int a = 0; a < n; ++a) R[a][i] = R[a][i] * lin;
    B = std::move(R);
}

// Matrix of truncated Laurent series at alpha, exponents [val, prec).
struct LMat {
    int n = 0, val = 0, prec = 0;
    AlgNum zero;
    std::vector<std::vector<std::vector<AlgNum>>> c;

    int width() const { return prec - val; }
    // -1 when the known coefficients cannot decide
    int pole_order() const
    {
        if (prec < 0) return -1;
        for (int e = val; e < 0; ++e)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!is_zero(c[i][j][e - val])) return -e;
        return 0;
    }
};

LMat conj_const(const LMat& C, const Mat<AlgNum>& M, const Mat<AlgNum>& Minv)
{
    int n = C.n, w = C.width();
    LMat T = C;
    // M C
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) {
            std::vector<AlgNum> acc(w, C.zero);
            for (int l = 0; l < n; ++l) {
                if (is_zero(M[a][l])) continue;
                for (int e = 0; e < w; ++e)
                    if (!is_zero(C.c[l][j][e])) acc[e] += M[a][l] * C.c[l][j][e];
            }
            T.c[a][j] = std::move(acc);
        }
    LMat R = T;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<AlgNum> acc(w, C.zero);
            for (int l = 0; l < n; ++l) {
                if (is_zero(Minv[l][b])) continue;
                for (int e = 0; e < w; ++e)
                    if (!is_zero(T.c[a][l][e])) acc[e] += T.c[a][l][e] * Minv[l][b];
            }
            R.c[a][b] = std::move(acc);
        }
    return R;
}

// D^-1 X D - D^-1 D'
LMat gauge_diag(const LMat& X, int i)
{
    LMat R;
    R.n = X.n;
    R.zero = X.zero;
    R.val = X.val - 1;
    R.prec = X.prec - 1;
    int w = R.width();
    R.c.assign(R.n, std::vector<std::vector<AlgNum>>(R.n, std::vector<AlgNum>(w, R.zero)));
    auto old = [&](int a, int b, int e) -> AlgNum {
        if (e < X.val || e >= X.prec) return X.zero;
        return X.c[a][b][e - X.val];
    };
    for (int a = 0; a < R.n; ++a)
        for (int b = 0; b < R.n; ++b)
            for (int e = R.val; e < R.prec; ++e) {
                // row a divided by t when a = i, column b multiplied by t when b = i
                int shift = (a == i ? 1 : 0) - (b == i ? 1 : 0);
                R.c[a][b][e - R.val] = old(a, b, e + shift);
            }
    R.c[i][i][-1 - R.val] -= one_of(R.zero);
    return R;
}

}  // namespace

PolyMatK identity_poly_matrix(int n, const AlgNum& proto)
{
    AlgNum zero = zero_of(proto);
    PolyMatK B(n, std::vector<PolyK>(n, PolyK(zero)));
    for (int i = 0; i < n; ++i) B[i][i] = PolyK::constant(one_of(proto));
    return B;
}

Mat<AlgNum> evaluate(const PolyMatK& B, const AlgNum& x)
{
    Mat<AlgNum> r;
    for (auto& row : B) {
        std::vector<AlgNum> out;
        for (auto& p : row) out.push_back(p.is_zero_poly() ? zero_of(x) : p(x));
        r.push_back(out);
    }
    return r;
}

int det_valuation(const PolyMatK& B, const AlgNum& alpha)
{
    // determinant over Q(alpha)[z] by fraction-free elimination in Q(alpha)(z)
    int n = (int)B.size();
    MatK m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i].push_back(RatFun<AlgNum>(B[i][j]));
    RatFun<AlgNum> det = RatFun<AlgNum>::constant(one_of(alpha));
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error("singular transform");
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        RatFun<AlgNum> ip = inv(m[col][col]);
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            RatFun<AlgNum> f = m[r][col] * ip;
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return valuation_at(det.num, alpha) - valuation_at(det.den, alpha);
}

BeukersResult beukersRemoveSingularity(const Mat<RatFunQ>& A, const AlgNum& alpha)
{
    int n = (int)A.size();
    BeukersResult out;
    out.residue = trace_residue(A, alpha);
    long r = budget_of(out.residue);
    Expander ex(alpha);
    int pole = 0;
    for (auto& row : A)
        for (auto& f : row) pole = std::max(pole, ex.pole_order(f));
    int P = std::max(2, 2 * (pole + (int)r));
    AlgNum zero = zero_of(alpha);
    while (true) {
        LMat C;
        C.n = n;
        C.zero = zero;
        C.val = -pole;
        C.prec = P;
        C.c.assign(n, std::vector<std::vector<AlgNum>>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) C.c[i][j] = ex.window(A[i][j], C.val, C.prec);
        PolyMatK B = identity_poly_matrix(n, alpha);
        std::vector<int> rows;
        bool short_of_terms = false;
        int k = 0;
        for (long m = 1; m <= r; ++m) {
            k = C.pole_order();
            if (k < 0) {
                short_of_terms = true;
                break;
            }
            if (k == 0) break;
            int i = -1;
            for (int a = 0; a < n && i < 0; ++a)
                for (int b = 0; b < n; ++b)
                    if (!is_zero(C.c[a][b][-k - C.val])) {
                        i = a;
                        break;
                    }
            std::vector<AlgNum> v;
            for (int b = 0; b < n; ++b) v.push_back(C.c[i][b][-k - C.val]);
            auto M = complete_row(v, i);
            auto Minv = mat_inverse(M);
            update_transform(B, Minv, i, alpha);
            C = gauge_diag(conj_const(C, M, Minv), i);
            rows.push_back(i);
        }
        if (!short_of_terms) {
            k = C.pole_order();
            if (k < 0) short_of_terms = true;
        }
        if (short_of_terms) {
            P *= 2;
            continue;
        }
        if (k > 0) throw DesingularizationError("a pole remains after the residue budget; the singularity is not apparent");
        out.B = std::move(B);
        out.rows = rows;
        out.steps = (int)rows.size();
        out.precision = P;
        return out;
    }
}

BeukersExact beukersRemoveSingularityExact(const Mat<RatFunQ>& A, const AlgNum& alpha)
{
    int n = (int)A.size();
    BeukersExact out;
    out.result.residue = trace_residue(A, alpha);
    long r = budget_of(out.result.residue);
    const NF& K = alpha.K;
    MatK C(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C[i].push_back(lift(A[i][j], K));
    auto val_of = [&](const RatFun<AlgNum>& f) {
        return f.is_zero() ? INT32_MAX : valuation_at(f.num, alpha) - valuation_at(f.den, alpha);
    };
    auto pole_order = [&]() {
        int k = 0;
        for (auto& row : C)
            for (auto& f : row) k = std::max(k, -std::min(0, val_of(f)));
        return k;
    };
    PolyMatK B = identity_poly_matrix(n, alpha);
    AlgNum zero = zero_of(alpha), one = one_of(alpha);
    RatFun<AlgNum> t(PolyK(std::vector<AlgNum>{-alpha, one}, zero));
    RatFun<AlgNum> tinv = inv(t);
    for (long m = 1; m <= r; ++m) {
        int k = pole_order();
        if (k == 0) break;
        int i = -1;
        for (int a = 0; a < n && i < 0; ++a)
            for (int b = 0; b < n; ++b)
                if (val_of(C[a][b]) == -k) {
                    i = a;
                    break;
                }
        std::vector<AlgNum> v;
        for (int b = 0; b < n; ++b)
            v.push_back(C[i][b].is_zero() ? zero : laurent_window(C[i][b].num, C[i][b].den, alpha, -k, -k + 1)[0]);
        auto M = complete_row(v, i);
        auto Minv = mat_inverse(M);
        update_transform(B, Minv, i, alpha);
        MatK T(n, std::vector<RatFun<AlgNum>>(n, RatFun<AlgNum>(PolyK(zero))));
        for (int a = 0; a < n; ++a)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    if (!is_zero(M[a][l]) && !C[l][j].is_zero()) T[a][j] += RatFun<AlgNum>::constant(M[a][l]) * C[l][j];
        MatK X(n, std::vector<RatFun<AlgNum>>(n, RatFun<AlgNum>(PolyK(zero))));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int l = 0; l < n; ++l)
                    if (!is_zero(Minv[l][b]) && !T[a][l].is_zero()) X[a][b] += T[a][l] * RatFun<AlgNum>::constant(Minv[l][b]);
        for (int b = 0; b < n; ++b)
            if (b != i) X[i][b] = X[i][b] * tinv;
        for (int a = 0; a < n; ++a)
            if (a != i) X[a][i] = X[a][i] * t;
        X[i][i] -= tinv;
        C = std::move(X);
        out.result.rows.push_back(i);
    }
    if (pole_order() > 0) throw DesingularizationError("a pole remains after the residue budget; the singularity is not apparent");
    out.result.B = std::move(B);
    out.result.steps = (int)out.result.rows.size();
    out.C = std::move(C);
    return out;
}

// ---------------------------------------------------------------- series helpers

TruncSeries<Rat> seriesOf(const DiffOp& L, const InitialConditions& ini, int prec)
{
    return seriesSolution(L, prefix_from_initial(L, ini), prec);
}

InitialConditions initialFromSeries(const DiffOp& L, const TruncSeries<Rat>& S)
{
    InitialConditions ini;
    for (long z : integerRootSet(L)) ini[z] = S.coeff((int)z);
    return ini;
}

namespace {

bool factor_less(const PolyQ& a, const PolyQ& b)
{
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = a.deg(); i >= 0; --i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

std::vector<PolyQ> sorted_factors(const PolyQ& p)
{
    std::vector<PolyQ> out;
    for (auto& [f, e] : factorQ(p).factors) {
        (void)e;
        out.push_back(f);
    }
    std::sort(out.begin(), out.end(), factor_less);
    return out;
}

PolyQ poly_in_z(const AlgNum& a)
{
    return a.r;
}

// Series precision that covers the initial indices of L with room to spare.
int series_length(const DiffOp& L)
{
    auto z = integerRootSet(L);
    return (z.empty() ? 0 : (int)z.back()) + L.order() + 16;
}

}  // namespace

AlgebraicValues algebraicValues(const DiffOp& L, const InitialConditions& ini, const MinimizeOptions& opt)
{
    AlgebraicValues out;
    out.minimal = minimalRightFactor(L, ini, opt);
    out.complete = out.minimal.certified;
    const DiffOp& Lm = out.minimal.M;
    auto S = seriesOf(L, ini, std::max(series_length(L), series_length(Lm)));
    InitialConditions iniM = initialFromSeries(Lm, S);
    out.inhom = minimalInhomogeneous(Lm, iniM);

    DiffOp Mc;
    PolyQ rhs;
    if (out.inhom) {
        Mc = out.inhom->cleared();
        rhs = out.inhom->B * out.inhom->cleared_factor();
    } else {
        Mc = Lm;
    }
    // common content of the equation and its right-hand side
    DiffOp joint;
    joint.c = Mc.c;
    joint.c.insert(joint.c.begin(), rhs);
    joint = primitive(joint);
    rhs = joint.c.front();
    Mc.c.assign(joint.c.begin() + 1, joint.c.end());
    out.equation = Mc;
    out.rhs = rhs;
    out.s = Mc.order();

    AlgebraicIdentity o;
    o.origin = true;
    o.mu = polyq({0, 1});
    o.alpha = AlgNum::of(rational_field(), Rat(0));
    o.beta = AlgNum::of(rational_field(), S.coeff(0));

    if (out.s == 0) {
        PolyQ q, r;
        divrem(rhs, Mc.c[0], q, r);
        if (!r.is_zero_poly()) throw Error("order-0 inhomogeneous equation with a non-polynomial solution");
        out.polynomial = true;
        out.poly = q;
        out.identities.push_back(o);
        return out;
    }
    out.identities.push_back(o);

    auto A = companionMatrix(Mc, RatFunQ(rhs));
    for (auto& mu : sorted_factors(Mc.lc())) {
        if (is_zero(mu.c[0])) continue;
        NF K = make_field(mu, true);
        AlgNum alpha = AlgNum::gen(K);
        auto br = beukersRemoveSingularity(A, alpha);
        auto Ba = evaluate(br.B, alpha);
        auto ker = left_kernel(Ba, zero_of(alpha));
        ExaminedFactor ex{mu, (int)ker.size(), br.residue, false};
        // combinations of kernel vectors supported on the first two coordinates
        std::vector<std::vector<AlgNum>> lambdas;
        if (!ker.empty()) {
            int m = (int)ker.size();
            if (out.s == 1) {
                for (int k = 0; k < m; ++k) {
                    std::vector<AlgNum> e(m, zero_of(alpha));
                    e[k] = one_of(alpha);
                    lambdas.push_back(e);
                }
            } else {
                Mat<AlgNum> W(m);
                for (int k = 0; k < m; ++k) W[k].assign(ker[k].begin() + 2, ker[k].end());
                lambdas = left_kernel(W, zero_of(alpha));
            }
        }
        for (auto& lam : lambdas) {
            std::vector<AlgNum> w(out.s + 1, zero_of(alpha));
            for (size_t k = 0; k < lam.size(); ++k)
                for (int j = 0; j <= out.s; ++j) w[j] += lam[k] * ker[k][j];
            if (is_zero(w[1])) continue;
            AlgebraicIdentity id;
            id.mu = mu;
            id.alpha = alpha;
            id.beta = -(w[0] / w[1]);
            id.relations = ker;
            id.residue = br.residue;
            id.steps = br.steps;
            out.identities.push_back(id);
            ex.identity = true;
            break;
        }
        out.examined.push_back(ex);
    }
    return out;
}

std::vector<ExceptionalBlock> exceptionalSet(const DiffOp& L, const InitialConditions& ini, const MinimizeOptions& opt)
{
    auto av = algebraicValues(L, ini, opt);
    std::vector<ExceptionalBlock> out;
    for (auto& id : av.identities) {
        if (id.origin) continue;
        out.push_back({id.mu, isolateRoots(id.mu), id.beta});
    }
    return out;
}

Decomposition canonicalDecomposition(const DiffOp& L, const InitialConditions& ini, const DecomposeOptions& opt)
{
    auto av = algebraicValues(L, ini, opt.minimize);
    if (av.polynomial) throw ValidationError("the series is a polynomial; a canonical decomposition needs a transcendental function");
    Decomposition out;
    out.p = PolyQ();
    out.q = polyq({1});
    out.certified = av.complete;

    DiffOp Lg = av.minimal.M;
    int len = std::max(series_length(L), series_length(Lg)) + 32;
    TruncSeries<Rat> g = seriesOf(L, ini, len);

    std::vector<PolyQ> blocks;
    for (auto& id : av.identities)
        if (!id.origin) blocks.push_back(id.mu);

    auto identity_at = [](const AlgebraicValues& v, const PolyQ& mu) -> const AlgebraicIdentity* {
        for (auto& id : v.identities)
            if (!id.origin && id.mu == mu) return &id;
        return nullptr;
    };

    AlgebraicValues cur = av;
    for (auto& E : blocks) {
        DecompositionBlock blk{E, 0};
        while (const AlgebraicIdentity* id = identity_at(cur, E)) {
            if (blk.depth >= opt.max_depth)
                throw ResourceError("E-adic expansion depth limit of " + std::to_string(opt.max_depth) + " exceeded");
            PolyQ pm = poly_in_z(id->beta);
            // g = pm + E h
            DiffOp Lh = substituteImage(Lg, pm, E);
            auto shifted = g - series_of_poly(pm, g.prec());
            TruncSeries<Rat> h = (shifted * inverse(series_of_poly(E, g.prec()))).truncate(g.prec());
            h.val = 0;
            int need = series_length(Lh);
            if (h.prec() < need) {
                // regrow the series of f and redo the division chain
                throw ResourceError("series prefix too short for the E-adic step");
            }
            out.p = out.p + out.q * pm;
            out.q = out.q * E;
            ++blk.depth;
            InitialConditions inih = initialFromSeries(Lh, h);
            cur = algebraicValues(Lh, inih, opt.minimize);
            out.certified = out.certified && cur.complete;
            Lg = cur.minimal.M;
            g = h;
        }
        out.blocks.push_back(blk);
    }
    out.g_operator = Lg;
    out.g_initial = initialFromSeries(Lg, g);
    out.exc_empty = true;
    for (auto& id : cur.identities)
        if (!id.origin) out.exc_empty = false;
    // deg p < deg q already holds by construction; keep the remainder form regardless
    if (out.p.deg() >= out.q.deg()) {
        PolyQ quo, rem;
        divrem(out.p, out.q, quo, rem);
        out.p = rem;
    }
    return out;
}

OneF1Fixture oneF1Fixture(int d, const Rat& a)
{
    if (d < 0) throw ValidationError("d must be nonnegative");
    if (a.get_den() == 1 && sgn(a) <= 0) throw ValidationError("a must not be a nonpositive integer");
    OneF1Fixture fx;
    fx.L.c = {polyq({d + 1}), PolyQ::constant(a + d + 1) + polyq({0, 1}), polyq({0, 1})};
    fx.L.trim();
    auto zset = integerRootSet(fx.L);
    int top = zset.empty() ? 0 : (int)zset.back();
    // 1F1[d+1; a+d+1; -z] coefficients
    Rat c = 1;
    for (int n = 0; n <= top; ++n) {
        if (std::binary_search(zset.begin(), zset.end(), (long)n)) fx.ini[n] = c;
        c = c * Rat(d + 1 + n) / ((a + d + 1 + n) * (n + 1)) * -1;
    }
    PolyQ R;
    R.c.assign(d + 1, Rat(0));
    Rat poch = 1;
    for (int k = 0; k <= d; ++k) {
        R.c[d - k] = Rat(binom_small(d, k)) * poch;
        poch *= a + k;
    }
    R.trim();
    fx.R = R;
    Rat pd1 = poch;  // (a)_(d+1)
    if (R.deg() < 1) return fx;
    for (auto& mu : sorted_factors(R)) {
        NF K = make_field(mu, true);
        AlgNum rho = AlgNum::gen(K);
        AlgNum Rp = lift_to_field(R.derivative(), K)(rho);
        AlgNum val = -(AlgNum::of(K, pd1) / (rho * Rp));
        fx.identities.push_back({mu, val});
    }
    return fx;
}

}  // namespace odemin
