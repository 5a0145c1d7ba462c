#pragma once

#include "odemin/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace odemin {

// Linear differential operator sum_i c[i](z) * Dz^i.
template <class T>
struct Op {
    std::vector<Poly<T>> c;
    T zero{};

    Op() = default;
    explicit Op(const T& proto) : zero(zero_of(proto)) {}
    Op(std::vector<Poly<T>> cs, const T& proto) : c(std::move(cs)), zero(zero_of(proto)) { trim(); }

    static Op from_poly(const Poly<T>& p)
    {
        Op r(p.zero);
        if (!p.is_zero_poly()) r.c.push_back(p);
        return r;
    }
    // Dz^k
    static Op dz(const T& proto, int k = 1)
    {
        Op r(proto);
        r.c.assign(k + 1, Poly<T>(proto));
        r.c[k] = Poly<T>::constant(one_of(proto));
        return r;
    }

    void trim()
    {
        while (!c.empty() && c.back().is_zero_poly()) c.pop_back();
    }
    int order() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    const Poly<T>& lc() const { return c.back(); }
    Poly<T> coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : Poly<T>(zero); }
    int degree() const
    {
        int d = -1;
        for (auto& p : c) d = std::max(d, p.deg());
        return d;
    }

    Op& operator+=(const Op& b)
    {
        if (b.c.size() > c.size()) c.resize(b.c.size(), Poly<T>(zero));
        for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
        trim();
        return *this;
    }
    Op& operator-=(const Op& b)
    {
        if (b.c.size() > c.size()) c.resize(b.c.size(), Poly<T>(zero));
        for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
        trim();
        return *this;
    }
    friend Op operator+(Op a, const Op& b) { return a += b; }
    friend Op operator-(Op a, const Op& b) { return a -= b; }
    friend Op operator-(Op a)
    {
        for (auto& p : a.c) p = -p;
        return a;
    }
    // left multiplication by a function
    friend Op operator*(const Poly<T>& p, Op a)
    {
        for (auto& q : a.c) q = p * q;
        a.trim();
        return a;
    }
    friend Op operator*(const T& s, Op a)
    {
        for (auto& q : a.c) q = s * q;
        a.trim();
        return a;
    }
    friend bool operator==(const Op& a, const Op& b) { return a.c == b.c; }
    friend bool operator!=(const Op& a, const Op& b) { return !(a == b); }
};

using DiffOp = Op<Rat>;
using DiffOpP = Op<Fp>;

template <class T>
Poly<T> nth_derivative(Poly<T> p, int k)
{
    for (int i = 0; i < k && !p.is_zero_poly(); ++i) p = p.derivative();
    return p;
}

inline long binom_small(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Dz o X
template <class T>
Op<T> dz_left(const Op<T>& x)
{
    Op<T> r(x.zero);
    if (x.is_zero()) return r;
    r.c.assign(x.c.size() + 1, Poly<T>(x.zero));
    for (size_t i = 0; i < x.c.size(); ++i) {
        r.c[i] += x.c[i].derivative();
        r.c[i + 1] += x.c[i];
    }
    r.trim();
    return r;
}

// A o B
template <class T>
Op<T> mul(const Op<T>& a, const Op<T>& b)
{
    Op<T> r(a.zero);
    if (a.is_zero() || b.is_zero()) return r;
    int ra = a.order(), rb = b.order();
    r.c.assign(ra + rb + 1, Poly<T>(a.zero));
    for (int j = 0; j <= rb; ++j) {
        Poly<T> d = b.c[j];
        for (int k = 0; k <= ra && !d.is_zero_poly(); ++k) {
            // Dz^i o d = sum_k C(i,k) d^(k) Dz^(i-k)
            for (int i = k; i <= ra; ++i) {
                if (a.c[i].is_zero_poly()) continue;
                T bc = from_int(a.zero, binom_small(i, k));
                r.c[j + i - k] += bc * (a.c[i] * d);
            }
            d = d.derivative();
        }
    }
    r.trim();
    return r;
}

// Apply to a polynomial.
template <class T>
Poly<T> apply(const Op<T>& L, const Poly<T>& p)
{
    Poly<T> r(L.zero), d = p;
    for (int i = 0; i <= L.order() && !d.is_zero_poly(); ++i) {
        r += L.c[i] * d;
        d = d.derivative();
    }
    return r;
}

// Content normalization: scalar part only.
void normalize_scalar(Op<Rat>& a);  // integral, content 1, leading poly with positive lc
void normalize_scalar(Op<Fp>& a);   // leading poly monic

// Divide out the polynomial gcd of all coefficients and normalize scalars.
template <class T>
Op<T> primitive(Op<T> a)
{
    if (a.is_zero()) return a;
    Poly<T> g = a.c.back();
    for (auto& p : a.c) {
        if (g.deg() == 0) break;
        if (!p.is_zero_poly()) g = gcd(g, p);
    }
    if (g.deg() > 0)
        for (auto& p : a.c) p = p / g;
    normalize_scalar(a);
    return a;
}

// Right pseudo-remainder: R = u*A - V o B with u a polynomial, ord R < ord B.
template <class T>
Op<T> rrem(Op<T> a, const Op<T>& b, bool strip = true)
{
    if (b.is_zero()) throw Error("right division by zero operator");
    int rb = b.order();
    while (!a.is_zero() && a.order() >= rb) {
        int k = a.order() - rb;
        Op<T> db = b;
        for (int i = 0; i < k; ++i) db = dz_left(db);
        Poly<T> g = gcd(a.lc(), b.lc());
        Poly<T> la = a.lc() / g, lb = b.lc() / g;
        a = lb * a - la * db;
        if (strip) normalize_scalar(a);
    }
    return a;
}

template <class T>
bool right_divides(const Op<T>& b, const Op<T>& a)
{
    return rrem(a, b).is_zero();
}

// Greatest common right divisor over Q(z), cleared and primitive.
template <class T>
Op<T> gcrd(Op<T> a, Op<T> b)
{
    if (a.is_zero() && b.is_zero()) throw Error("gcrd of two zero operators");
    if (a.order() < b.order()) std::swap(a, b);
    while (!b.is_zero()) {
        Op<T> r = primitive(rrem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return primitive(a);
}

template <class U, class T, class F>
Op<U> map_op(const Op<T>& a, const U& proto, F&& f)
{
    Op<U> r(proto);
    for (auto& p : a.c) r.c.push_back(map_poly(p, proto, f));
    r.trim();
    return r;
}

DiffOpP reduce_mod(const DiffOp& a, uint64_t prime);
DiffOp adjoint(const DiffOp& L);
RatFunQ apply(const DiffOp& L, const RatFunQ& f);
// Left-multiply rational-function coefficients by their common denominator.
DiffOp clear_denominators(const std::vector<RatFunQ>& cs);

std::string to_string(const DiffOp& L);
DiffOp parse_diffop(const std::string& s);

// ---------------------------------------------------------------- theta form

// L = sum_j z^(lo+j) P[j](theta), theta = z Dz.
template <class T>
struct ThetaForm {
    int lo = 0;
    std::vector<Poly<T>> P;
    int hi() const { return lo + (int)P.size() - 1; }
    Poly<T> at(int n) const
    {
        int j = n - lo;
        return j >= 0 && j < (int)P.size() ? P[j] : Poly<T>(P.empty() ? T{} : P[0].zero);
    }
};

// (s)(s-1)...(s-i+1)
template <class T>
Poly<T> falling(const T& proto, int i)
{
    Poly<T> r = Poly<T>::constant(one_of(proto)), x = Poly<T>::x(proto);
    for (int k = 0; k < i; ++k) r = r * (x - Poly<T>::constant(from_int(proto, k)));
    return r;
}

template <class T>
ThetaForm<T> theta_form(const Op<T>& L)
{
    ThetaForm<T> tf;
    if (L.is_zero()) throw Error("theta form of the zero operator");
    int lo = INT32_MAX, hi = INT32_MIN;
    for (int i = 0; i <= L.order(); ++i) {
        const auto& a = L.c[i];
        if (a.is_zero_poly()) continue;
        lo = std::min(lo, a.val() - i);
        hi = std::max(hi, a.deg() - i);
    }
    tf.lo = lo;
    tf.P.assign(hi - lo + 1, Poly<T>(L.zero));
    for (int i = 0; i <= L.order(); ++i) {
        const auto& a = L.c[i];
        if (a.is_zero_poly()) continue;
        Poly<T> f = falling(L.zero, i);
        for (int k = 0; k <= a.deg(); ++k)
            if (!is_zero(a.c[k])) tf.P[k - i - lo] += a.c[k] * f;
    }
    return tf;
}

// Theta form at infinity in t = 1/z: L = sum_n t^n P_n(theta_t).
ThetaForm<Rat> theta_form_infinity(const DiffOp& L);
// Theta form at z = alpha in t = z - alpha, over Q(alpha).
ThetaForm<AlgNum> theta_form_at(const DiffOp& L, const AlgNum& alpha);

enum class PointKind { Origin, Finite, Infinity };

struct Point {
    PointKind kind = PointKind::Origin;
    AlgNum alpha;  // Finite only
    static Point origin() { return {}; }
    static Point infinity() { return {PointKind::Infinity, {}}; }
    static Point at(const AlgNum& a) { return {PointKind::Finite, a}; }
};

struct IndicialData {
    Point point;
    PolyK indicial;                 // over Q(alpha), or Q embedded as Q[x]/(x)
    int g = 0;                      // L(t^s) ~ ind(s) t^(s+g)
    std::vector<PolyQ> expansion;   // p_0..p_t at the origin
};

IndicialData indicialAt(const DiffOp& L, const Point& pt);
// Indicial polynomial at the origin and at infinity, over Q.
PolyQ indicial0(const DiffOp& L);
PolyQ indicialInfinity(const DiffOp& L);
// Nonnegative integer roots of the indicial polynomial at 0, sorted.
std::vector<long> integerRootSet(const DiffOp& L);

// ---------------------------------------------------------------- recurrences

// sum_j c[j](n) u(n+j) = 0 for n >= 0
struct RecOp {
    std::vector<PolyQ> c;
    int order() const { return (int)c.size() - 1; }
};

// Unroll from the given initial terms; throws if a leading-coefficient zero
// leaves a term undetermined.
std::vector<Rat> rec_terms(const RecOp& R, const std::vector<Rat>& initial, int count);
// Differential operator for the generating function. With initial terms the
// boundary polynomial is removed by one extra order; without, by enough
// derivatives to cover every solution.
DiffOp recToDeq(const RecOp& R, const std::optional<std::vector<Rat>>& initial = std::nullopt);
RecOp deqToRec(const DiffOp& L);
std::string to_string(const RecOp& R);

// ---------------------------------------------------------------- closure operations

// Annihilator of P(f) for f solutions of L.
DiffOp imageAnnihilator(const DiffOp& L, const DiffOp& P);
// Annihilator of (f - p)/q for f solutions of L.
DiffOp substituteImage(const DiffOp& L, const PolyQ& p, const PolyQ& q);
DiffOp substituteImage(const DiffOp& L, const RatFunQ& p, const RatFunQ& q);

// Companion system Y' = M Y on (f, ..., f^(r-1)).
Mat<RatFunQ> companionMatrix(const DiffOp& L);
// Inhomogeneous M(f) = B: system on (1, f, ..., f^(s-1)).
Mat<RatFunQ> companionMatrix(const DiffOp& M, const RatFunQ& B);

}  // namespace odemin
