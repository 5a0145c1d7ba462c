#include "odemin/ore.hpp"

#include <cctype>

namespace odemin {

void normalize_scalar(Op<Rat>& a)
{
    a.trim();
    if (a.is_zero()) return;
    Int l = 1, g = 0;
    for (auto& p : a.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denom_lcm(p).get_mpz_t());
    for (auto& p : a.c)
        for (auto& x : p.c) {
            Int n = x.get_num() * (l / x.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        }
    Rat s(l, g);
    s.canonicalize();
    if (sgn(a.lc().lc()) < 0) s = -s;
    if (s == 1) return;
    for (auto& p : a.c)
        for (auto& x : p.c) x *= s;
}

void normalize_scalar(Op<Fp>& a)
{
    a.trim();
    if (a.is_zero()) return;
    Fp s = inv(a.lc().lc());
    for (auto& p : a.c) p = s * p;
}

DiffOpP reduce_mod(const DiffOp& a, uint64_t prime)
{
    Fp proto(0, prime);
    return map_op(a, proto, [&](const Rat& q) { return from_rat(proto, q); });
}

DiffOp adjoint(const DiffOp& L)
{
    DiffOp r;
    if (L.is_zero()) return r;
    r.c.assign(L.c.size(), PolyQ());
    for (int i = 0; i <= L.order(); ++i) {
        PolyQ d = L.c[i];
        Rat sign = (i & 1) ? -1 : 1;
        for (int k = 0; k <= i && !d.is_zero_poly(); ++k) {
            r.c[i - k] += (sign * binom_small(i, k)) * d;
            d = d.derivative();
        }
    }
    r.trim();
    normalize_scalar(r);
    return r;
}

RatFunQ apply(const DiffOp& L, const RatFunQ& f)
{
    RatFunQ r, d = f;
    r = zero_of(f);
    for (int i = 0; i <= L.order(); ++i) {
        if (!L.c[i].is_zero_poly()) r += RatFunQ(L.c[i]) * d;
        if (i < L.order()) d = d.derivative();
    }
    return r;
}

DiffOp clear_denominators(const std::vector<RatFunQ>& cs)
{
    PolyQ l = polyq({1});
    for (auto& f : cs)
        if (!f.is_zero()) l = l / gcd(l, f.den) * f.den;
    DiffOp r;
    for (auto& f : cs) r.c.push_back(f.is_zero() ? PolyQ() : f.num * (l / f.den));
    r.trim();
    return primitive(r);
}

std::string to_string(const DiffOp& L)
{
    if (L.is_zero()) return "0";
    std::string out;
    for (int i = L.order(); i >= 0; --i) {
        if (L.c[i].is_zero_poly()) continue;
        std::string t = "(" + to_string(L.c[i], "z") + ")";
        if (i >= 1) t += "*Dz";
        if (i >= 2) t += "^" + std::to_string(i);
        out += out.empty() ? t : " + " + t;
    }
    return out;
}

DiffOp parse_diffop(const std::string& s)
{
    auto fail = [&](const std::string& why) -> DiffOp {
        throw ValidationError("malformed operator '" + s + "': " + why);
    };
    // split at top-level + and -
    std::vector<std::pair<int, std::string>> terms;
    int depth = 0, sign = 1;
    std::string cur;
    char prev = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) return fail("unbalanced parentheses");
        bool binary = prev != 0 && prev != '^' && prev != '*' && prev != '/' && prev != '(';
        if (depth == 0 && (ch == '+' || ch == '-') && binary) {
            terms.push_back({sign, cur});
            cur.clear();
            sign = ch == '-' ? -1 : 1;
            prev = ch;
            continue;
        }
        if (depth == 0 && (ch == '+' || ch == '-') && prev == 0) {
            if (ch == '-') sign = -sign;
            prev = 0;
            continue;
        }
        cur += ch;
        if (!std::isspace((unsigned char)ch)) prev = ch;
    }
    if (depth != 0) return fail("unbalanced parentheses");
    terms.push_back({sign, cur});

    DiffOp L;
    for (auto& [sg, t] : terms) {
        size_t b = t.find_first_not_of(" \t\n"), e = t.find_last_not_of(" \t\n");
        if (b == std::string::npos) return fail("empty term");
        std::string term = t.substr(b, e - b + 1);
        int order = 0;
        std::string coef = term;
        int dpos = -1;
        for (int i = 0, d = 0; i + 1 < (int)term.size(); ++i) {
            if (term[i] == '(') ++d;
            if (term[i] == ')') --d;
            if (d == 0 && term[i] == 'D' && term[i + 1] == 'z') {
                dpos = i;
                break;
            }
        }
        if (dpos >= 0) {
            coef = term.substr(0, dpos);
            std::string rest = term.substr(dpos + 2);
            size_t k = rest.find_first_not_of(" ");
            order = 1;
            if (k != std::string::npos) {
                if (rest[k] != '^') return fail("unexpected text after Dz");
                std::string num = rest.substr(k + 1);
                size_t nb = num.find_first_not_of(" "), ne = num.find_last_not_of(" ");
                if (nb == std::string::npos) return fail("missing exponent");
                num = num.substr(nb, ne - nb + 1);
                for (char ch : num)
                    if (!std::isdigit((unsigned char)ch)) return fail("bad Dz exponent");
                order = std::stoi(num);
            }
            size_t ce = coef.find_last_not_of(" ");
            if (ce != std::string::npos && coef[ce] == '*') coef = coef.substr(0, ce);
            if (coef.find_first_not_of(" ") == std::string::npos) coef = "1";
        }
        PolyQ p = parse_polyq(coef, "z");
        if (sg < 0) p = -p;
        if ((int)L.c.size() <= order) L.c.resize(order + 1);
        L.c[order] += p;
    }
    L.trim();
    if (L.is_zero()) return fail("zero operator");
    return L;
}

// ---------------------------------------------------------------- theta form

ThetaForm<Rat> theta_form_infinity(const DiffOp& L)
{
    if (L.is_zero()) throw Error("theta form of the zero operator");
    int lo = INT32_MAX, hi = INT32_MIN;
    for (int i = 0; i <= L.order(); ++i) {
        if (L.c[i].is_zero_poly()) continue;
        lo = std::min(lo, i - L.c[i].deg());
        hi = std::max(hi, i - L.c[i].val());
    }
    ThetaForm<Rat> tf;
    tf.lo = lo;
    tf.P.assign(hi - lo + 1, PolyQ());
    PolyQ x = PolyQ::x(Rat(0));
    for (int i = 0; i <= L.order(); ++i) {
        const PolyQ& a = L.c[i];
        if (a.is_zero_poly()) continue;
        // (-s)(-s-1)...(-s-i+1)
        PolyQ f = polyq({1});
        for (int k = 0; k < i; ++k) f = f * (-x - PolyQ::constant(Rat(k)));
        for (int k = 0; k <= a.deg(); ++k)
            if (sgn(a.c[k]) != 0) tf.P[i - k - lo] += a.c[k] * f;
    }
    return tf;
}

ThetaForm<AlgNum> theta_form_at(const DiffOp& L, const AlgNum& alpha)
{
    AlgNum proto = zero_of(alpha);
    Op<AlgNum> s(proto);
    for (auto& p : L.c) s.c.push_back(lift_to_field(p, alpha.K).taylor_shift(alpha));
    s.trim();
    return theta_form(s);
}

IndicialData indicialAt(const DiffOp& L, const Point& pt)
{
    IndicialData d;
    d.point = pt;
    if (pt.kind == PointKind::Finite) {
        auto tf = theta_form_at(L, pt.alpha);
        d.indicial = tf.P[0];
        d.g = tf.lo;
        return d;
    }
    auto tf = pt.kind == PointKind::Origin ? theta_form(L) : theta_form_infinity(L);
    d.indicial = lift_to_field(tf.P[0], rational_field());
    d.g = tf.lo;
    if (pt.kind == PointKind::Origin) d.expansion = tf.P;
    return d;
}

PolyQ indicial0(const DiffOp& L) { return theta_form(L).P[0]; }
PolyQ indicialInfinity(const DiffOp& L) { return theta_form_infinity(L).P[0]; }

std::vector<long> integerRootSet(const DiffOp& L)
{
    std::vector<long> out;
    for (auto& r : integer_roots(indicial0(L)))
        if (sgn(r) >= 0) out.push_back(r.get_si());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- recurrences

std::vector<Rat> rec_terms(const RecOp& R, const std::vector<Rat>& initial, int count)
{
    int t = R.order();
    std::vector<Rat> u;
    for (int k = 0; k < count; ++k) {
        int n = k - t;
        Rat lead = n >= 0 ? R.c[t](Rat(n)) : Rat(0);
        Rat rhs = 0;
        if (n >= 0)
            for (int j = 0; j < t; ++j) rhs -= R.c[j](Rat(n)) * u[n + j];
        if (k < (int)initial.size()) {
            if (n >= 0 && sgn(lead) != 0 && initial[k] != rhs / lead)
                throw ValidationError("initial term " + std::to_string(k) + " contradicts the recurrence");
            if (n >= 0 && sgn(lead) == 0 && sgn(rhs) != 0)
                throw ValidationError("initial terms violate the recurrence at n = " + std::to_string(n));
            u.push_back(initial[k]);
            continue;
        }
        if (n < 0 || sgn(lead) == 0)
            throw ValidationError("term u_" + std::to_string(k) + " is not determined by the recurrence");
        u.push_back(rhs / lead);
    }
    return u;
}

namespace {

// p(s) = sum_i q_i (s)_i
std::vector<Rat> to_falling_basis(const PolyQ& p)
{
    int d = p.deg();
    std::vector<Rat> v(d + 1);
    for (int k = 0; k <= d; ++k) v[k] = p(Rat(k));
    for (int i = 1; i <= d; ++i)
        for (int k = d; k >= i; --k) v[k] -= v[k - 1];
    Rat f = 1;
    for (int i = 1; i <= d; ++i) {
        f *= i;
        v[i] /= f;
    }
    return v;
}

}  // namespace

DiffOp recToDeq(const RecOp& R, const std::optional<std::vector<Rat>>& initial)
{
    int t = R.order();
    if (t < 0) throw ValidationError("empty recurrence");
    // sum_j z^(t-j) c_j(theta - j)
    std::vector<PolyQ> cs;
    for (int j = 0; j <= t; ++j) {
        if (R.c[j].is_zero_poly()) continue;
        auto q = to_falling_basis(R.c[j].taylor_shift(Rat(-j)));
        for (int i = 0; i < (int)q.size(); ++i) {
            if (sgn(q[i]) == 0) continue;
            if ((int)cs.size() <= i) cs.resize(i + 1);
            cs[i] += PolyQ::monomial(q[i], t - j + i);
        }
    }
    DiffOp L0;
    L0.c = cs;
    L0.trim();
    if (L0.is_zero()) throw ValidationError("recurrence is identically zero");
    int mu = INT32_MAX;
    for (auto& p : L0.c)
        if (!p.is_zero_poly()) mu = std::min(mu, p.val());
    DiffOp L1 = L0;
    for (auto& p : L1.c) p = p.shift_down(mu);

    // boundary polynomial b(z) = L0(f), degree < t
    bool symbolic_zero = true;
    for (int N = 0; N < t; ++N)
        for (int j = t - N; j <= t; ++j)
            if (sgn(R.c[j](Rat(N - t))) != 0) symbolic_zero = false;
    if (symbolic_zero) return primitive(L1);
    if (!initial) {
        DiffOp r = L1;
        for (int i = 0; i < t - mu; ++i) r = dz_left(r);
        return primitive(r);
    }
    std::vector<Rat> u = rec_terms(R, *initial, std::max(t, (int)initial->size()));
    PolyQ b;
    for (int N = 0; N < t; ++N) {
        Rat s = 0;
        for (int j = t - N; j <= t; ++j) s += R.c[j](Rat(N - t)) * u[N - t + j];
        b += PolyQ::monomial(s, N);
    }
    if (b.is_zero_poly()) return primitive(L1);
    if (b.val() < mu) throw Error("boundary polynomial not divisible by the removed power of z");
    b = b.shift_down(mu);
    // (b Dz - b') o L1
    DiffOp h;
    h.c = {-b.derivative(), b};
    h.trim();
    return primitive(mul(h, L1));
}

RecOp deqToRec(const DiffOp& L)
{
    auto tf = theta_form(L);
    int t = tf.hi() - tf.lo;
    RecOp R;
    R.c.resize(t + 1);
    for (int j = 0; j <= t; ++j) R.c[j] = tf.P[t - j].taylor_shift(Rat(j));
    return R;
}

std::string to_string(const RecOp& R)
{
    std::string out;
    for (int j = R.order(); j >= 0; --j) {
        if (R.c[j].is_zero_poly()) continue;
        std::string t = "(" + to_string(R.c[j], "n") + ")*u(n+" + std::to_string(j) + ")";
        out += out.empty() ? t : " + " + t;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- closure operations

namespace {

using VecR = std::vector<RatFunQ>;

RatFunQ rzero() { return RatFunQ(PolyQ()); }

// derivative of sum v_i f^(i) reduced modulo L
VecR reduce_derivative(const DiffOp& L, const VecR& v)
{
    int r = L.order();
    VecR w(r, rzero());
    for (int i = 0; i < r; ++i) {
        w[i] = v[i].derivative();
        if (i > 0) w[i] += v[i - 1];
        if (!v[r - 1].is_zero() && !L.c[i].is_zero_poly()) w[i] -= v[r - 1] * RatFunQ(L.c[i], L.c[r]);
    }
    return w;
}

}  // namespace

DiffOp imageAnnihilator(const DiffOp& L, const DiffOp& P)
{
    int r = L.order();
    if (r < 1) throw Error("imageAnnihilator needs an operator of positive order");
    VecR e(r, rzero());
    e[0] = RatFunQ(polyq({1}));
    VecR v0(r, rzero());
    VecR b = e;
    for (int k = 0; k <= P.order(); ++k) {
        if (!P.c[k].is_zero_poly())
            for (int i = 0; i < r; ++i) v0[i] += RatFunQ(P.c[k]) * b[i];
        if (k < P.order()) b = reduce_derivative(L, b);
    }
    bool zero = true;
    for (auto& x : v0) zero = zero && x.is_zero();
    if (zero) return DiffOp::from_poly(polyq({1}));

    std::vector<VecR> vs{v0};
    while (true) {
        int k = (int)vs.size();
        Mat<RatFunQ> m(r, VecR(k, rzero()));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = vs[j][i];
        auto ker = nullspace(m, k, rzero());
        if (!ker.empty()) return clear_denominators(ker.back());
        vs.push_back(reduce_derivative(L, vs.back()));
    }
}

DiffOp substituteImage(const DiffOp& L, const RatFunQ& p, const RatFunQ& q)
{
    if (q.is_zero()) throw Error("substituteImage needs q != 0");
    int r = L.order();
    // L o q
    std::vector<RatFunQ> qd{q};
    for (int k = 1; k <= r; ++k) qd.push_back(qd.back().derivative());
    VecR k(r + 1, rzero());
    for (int i = 0; i <= r; ++i) {
        if (L.c[i].is_zero_poly()) continue;
        RatFunQ a(L.c[i]);
        for (int m = 0; m <= i; ++m)
            if (!qd[i - m].is_zero()) k[m] += a * qd[i - m] * RatFunQ::constant(Rat(binom_small(i, i - m)));
    }
    RatFunQ h = -apply(L, p);
    if (h.is_zero()) return clear_denominators(k);
    RatFunQ hd = h.derivative();
    VecR out(r + 2, rzero());
    for (int m = 0; m <= r; ++m) {
        out[m] += h * k[m].derivative() - hd * k[m];
        out[m + 1] += h * k[m];
    }
    return clear_denominators(out);
}

DiffOp substituteImage(const DiffOp& L, const PolyQ& p, const PolyQ& q)
{
    return substituteImage(L, RatFunQ(p), RatFunQ(q));
}

Mat<RatFunQ> companionMatrix(const DiffOp& L)
{
    int r = L.order();
    if (r < 1) throw Error("companion matrix needs positive order");
    Mat<RatFunQ> m(r, VecR(r, rzero()));
    for (int i = 0; i + 1 < r; ++i) m[i][i + 1] = RatFunQ(polyq({1}));
    for (int j = 0; j < r; ++j)
        if (!L.c[j].is_zero_poly()) m[r - 1][j] = -RatFunQ(L.c[j], L.c[r]);
    return m;
}

Mat<RatFunQ> companionMatrix(const DiffOp& M, const RatFunQ& B)
{
    int s = M.order();
    if (s < 0) throw Error("companion matrix of the zero operator");
    Mat<RatFunQ> m(s + 1, VecR(s + 1, rzero()));
    if (s == 0) return m;
    for (int i = 1; i < s; ++i) m[i][i + 1] = RatFunQ(polyq({1}));
    RatFunQ v0(M.c[s]);
    m[s][0] = B / v0;
    for (int i = 0; i < s; ++i)
        if (!M.c[i].is_zero_poly()) m[s][i + 1] = -RatFunQ(M.c[i], M.c[s]);
    return m;
}

}  // namespace odemin
