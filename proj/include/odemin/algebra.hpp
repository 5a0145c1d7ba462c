#pragma once

#include "odemin/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace odemin {

// ---------------------------------------------------------------- RatFun

template <class T>
class RatFun {
public:
    Poly<T> num, den;

    RatFun() = default;
    explicit RatFun(const Poly<T>& p) : num(p), den(Poly<T>::constant(p.one())) {}
    RatFun(const Poly<T>& n, const Poly<T>& d) : num(n), den(d) { normalize(); }

    static RatFun constant(const T& a) { return RatFun(Poly<T>::constant(a)); }

    void normalize()
    {
        if (den.is_zero_poly()) throw Error("rational function with zero denominator");
        if (num.is_zero_poly()) {
            den = Poly<T>::constant(den.one());
            return;
        }
        Poly<T> g = gcd(num, den);
        if (g.deg() > 0) {
            num = num / g;
            den = den / g;
        }
        T l = den.lc();
        if (l != one_of(l)) {
            T il = inv(l);
            num = il * num;
            den = il * den;
        }
    }
    bool is_zero() const { return num.is_zero_poly(); }
    bool is_poly() const { return den.deg() == 0; }

    friend RatFun operator+(const RatFun& a, const RatFun& b)
    {
        if (a.den == b.den) return RatFun(a.num + b.num, a.den);
        return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b)
    {
        if (a.den == b.den) return RatFun(a.num - b.num, a.den);
        return RatFun(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFun operator-(const RatFun& a)
    {
        RatFun r = a;
        r.num = -r.num;
        return r;
    }
    friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num * b.num, a.den * b.den); }
    friend RatFun operator/(const RatFun& a, const RatFun& b)
    {
        if (b.is_zero()) throw Error("rational function division by zero");
        return RatFun(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
    RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
    RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
    RatFun& operator*=(const RatFun& b) { return *this = *this * b; }

    RatFun derivative() const
    {
        return RatFun(num.derivative() * den - num * den.derivative(), den * den);
    }
    T operator()(const T& x) const { return num(x) / den(x); }
};

template <class T>
bool is_zero(const RatFun<T>& a)
{
    return a.is_zero();
}
template <class T>
RatFun<T> zero_of(const RatFun<T>& a)
{
    return RatFun<T>(Poly<T>(a.num.zero));
}
template <class T>
RatFun<T> one_of(const RatFun<T>& a)
{
    return RatFun<T>::constant(a.num.one());
}
template <class T>
RatFun<T> inv(const RatFun<T>& a)
{
    if (a.is_zero()) throw Error("rational function division by zero");
    return RatFun<T>(a.den, a.num);
}

using RatFunQ = RatFun<Rat>;

// ---------------------------------------------------------------- matrices

template <class T>
using Mat = std::vector<std::vector<T>>;

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& a)
{
    std::vector<int> piv;
    if (a.empty()) return piv;
    int rows = (int)a.size(), cols = (int)a[0].size();
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (!is_zero(a[i][col])) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[sel], a[r]);
        T il = inv(a[r][col]);
        for (int j = col; j < cols; ++j) a[r][j] = a[r][j] * il;
        for (int i = 0; i < rows; ++i) {
            if (i == r || is_zero(a[i][col])) continue;
            T f = a[i][col];
            for (int j = col; j < cols; ++j)
                if (!is_zero(a[r][j])) a[i][j] -= f * a[r][j];
        }
        piv.push_back(col);
        ++r;
    }
    return piv;
}

// Right kernel basis: vectors x with a*x = 0.
template <class T>
std::vector<std::vector<T>> nullspace(Mat<T> a, int cols, const T& proto)
{
    std::vector<std::vector<T>> out;
    if (a.empty()) {
        for (int j = 0; j < cols; ++j) {
            std::vector<T> v(cols, zero_of(proto));
            v[j] = one_of(proto);
            out.push_back(v);
        }
        return out;
    }
    auto piv = rref(a);
    std::vector<int> is_piv(cols, -1);
    for (size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = (int)i;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f] >= 0) continue;
        std::vector<T> v(cols, zero_of(proto));
        v[f] = one_of(proto);
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
        out.push_back(v);
    }
    return out;
}

template <class T>
std::vector<std::vector<T>> left_kernel(const Mat<T>& a, const T& proto)
{
    int rows = (int)a.size();
    if (rows == 0) return {};
    int cols = (int)a[0].size();
    Mat<T> t(cols, std::vector<T>(rows, zero_of(proto)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return nullspace(t, rows, proto);
}

template <class T>
Mat<T> mat_inverse(const Mat<T>& a)
{
    int n = (int)a.size();
    const T& proto = a[0][0];
    Mat<T> aug(n, std::vector<T>(2 * n, zero_of(proto)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = one_of(proto);
    }
    auto piv = rref(aug);
    if ((int)piv.size() < n || piv[n - 1] != n - 1) throw Error("singular matrix");
    Mat<T> r(n, std::vector<T>(n, zero_of(proto)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
    return r;
}

// ---------------------------------------------------------------- number fields

struct NumberField {
    PolyQ modulus;  // monic irreducible
    int degree() const { return modulus.deg(); }
};
using NF = std::shared_ptr<const NumberField>;

// checks irreducibility unless trusted
NF make_field(const PolyQ& modulus, bool trusted = false);
NF rational_field();  // Q as Q[x]/(x)

struct Box {
    Rat re_lo, re_hi, im_lo, im_hi;
};

struct AlgNum {
    NF K;
    PolyQ r;  // residue, deg < K->degree()
    std::optional<Box> box;

    AlgNum() = default;
    AlgNum(NF k, PolyQ res) : K(std::move(k)), r(std::move(res)) {}
    static AlgNum of(NF k, const Rat& q) { return AlgNum(k, PolyQ::constant(q)); }
    static AlgNum gen(NF k);

    bool is_rational() const { return r.deg() <= 0; }
    Rat rational_value() const { return r.deg() < 0 ? Rat(0) : r.c[0]; }

    friend AlgNum operator+(const AlgNum& a, const AlgNum& b) { return AlgNum(pick(a, b), a.r + b.r); }
    friend AlgNum operator-(const AlgNum& a, const AlgNum& b) { return AlgNum(pick(a, b), a.r - b.r); }
    friend AlgNum operator-(const AlgNum& a) { return AlgNum(a.K, -a.r); }
    friend AlgNum operator*(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator/(const AlgNum& a, const AlgNum& b);
    AlgNum& operator+=(const AlgNum& b) { return *this = *this + b; }
    AlgNum& operator-=(const AlgNum& b) { return *this = *this - b; }
    AlgNum& operator*=(const AlgNum& b) { return *this = *this * b; }
    friend bool operator==(const AlgNum& a, const AlgNum& b) { return a.r == b.r; }
    friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

private:
    static const NF& pick(const AlgNum& a, const AlgNum& b) { return a.K ? a.K : b.K; }
};

AlgNum inv(const AlgNum& a);
inline bool is_zero(const AlgNum& a) { return a.r.is_zero_poly(); }
inline AlgNum zero_of(const AlgNum& a) { return AlgNum(a.K, PolyQ()); }
inline AlgNum one_of(const AlgNum& a) { return AlgNum::of(a.K, Rat(1)); }
inline AlgNum from_int(const AlgNum& a, long n) { return AlgNum::of(a.K, Rat(n)); }
inline AlgNum from_rat(const AlgNum& a, const Rat& q) { return AlgNum::of(a.K, q); }

using PolyK = Poly<AlgNum>;

PolyK lift_to_field(const PolyQ& p, const NF& K);
// trace and norm of K/Q
Rat trace(const AlgNum& a);
Rat norm(const AlgNum& a);
// characteristic polynomial of multiplication by a
PolyQ charpoly(const AlgNum& a);
// minimal polynomial over Q (monic)
PolyQ minpoly(const AlgNum& a);

// ---------------------------------------------------------------- factorization

struct FactorizationQ {
    Rat unit;
    std::vector<std::pair<PolyQ, int>> factors;  // monic irreducible
};

// Yun: list of (squarefree monic factor, multiplicity)
std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& p);
FactorizationQ factorQ(const PolyQ& p);
bool is_irreducibleQ(const PolyQ& p);

struct FactorizationK {
    AlgNum unit;
    std::vector<std::pair<PolyK, int>> factors;  // monic irreducible over K
};
FactorizationK factorNF(const PolyK& p, const NF& K);

// resultant over a field
template <class T>
T resultant(Poly<T> a, Poly<T> b)
{
    T proto = a.zero;
    if (a.is_zero_poly() || b.is_zero_poly()) return zero_of(proto);
    T res = one_of(proto);
    while (b.deg() > 0) {
        int da = a.deg(), db = b.deg();
        Poly<T> r = a % b;
        if (r.is_zero_poly()) return zero_of(proto);
        int dr = r.deg();
        T lb = b.lc();
        T f = one_of(proto);
        for (int i = 0; i < da - dr; ++i) f = f * lb;
        if ((da & 1) && (db & 1)) res = -res;
        res = res * f;
        a = std::move(b);
        b = std::move(r);
    }
    T lb = b.lc();
    for (int i = 0; i < a.deg(); ++i) res = res * lb;
    return res;
}

// Integer roots of a rational polynomial.
std::vector<Int> integer_roots(const PolyQ& p);
std::vector<Rat> rational_roots(const PolyQ& p);

// Integer roots of a polynomial over K (all coordinates must vanish).
std::vector<Int> integer_roots(const PolyK& p);

// ---------------------------------------------------------------- root isolation

// Number of real roots in (a, b] by Sturm's theorem; p squarefree.
int sturm_count(const PolyQ& p, const Rat& a, const Rat& b);

// Number of complex roots strictly inside the rectangle; nullopt if a
// root lies on the boundary. p squarefree.
std::optional<int> count_in_box(const PolyQ& p, const Box& b);

Rat root_bound(const PolyQ& p);

// One AlgNum per distinct complex root, grouped by irreducible factor;
// each AlgNum is the generator of Q[x]/(factor) with its isolating box.
std::vector<AlgNum> isolateRoots(const PolyQ& p);

// Halve the box while keeping its root. Degenerate real boxes stay real.
Box refine_box(const PolyQ& p, const Box& b);
Rat box_width(const Box& b);

// Complex rational interval (rectangle) arithmetic for enclosures.
struct CInterval {
    Rat re_lo, re_hi, im_lo, im_hi;
    static CInterval point(const Rat& x) { return {x, x, Rat(0), Rat(0)}; }
    static CInterval of(const Box& b) { return {b.re_lo, b.re_hi, b.im_lo, b.im_hi}; }
    bool contains_zero() const { return sgn(re_lo) <= 0 && sgn(re_hi) >= 0 && sgn(im_lo) <= 0 && sgn(im_hi) >= 0; }
};
CInterval operator+(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a, const CInterval& b);
CInterval operator*(const CInterval& a, const CInterval& b);
CInterval enclose(const PolyQ& p, const CInterval& x);
// enclosure of an element of Q(alpha) given the box of alpha
CInterval enclose(const AlgNum& a, const Box& alpha_box);

// Place an element of K (given the embedding box of K's generator) as an
// isolated root of its own minimal polynomial.
AlgNum locate(const AlgNum& a, const Box& alpha_box);

// ---------------------------------------------------------------- modular helpers

Int crt(const Int& a, const Int& m, uint64_t b, uint64_t p);
// a/b with |a|,|b| <= sqrt(m/2); nullopt on failure
std::optional<Rat> rational_reconstruct(const Int& a, const Int& m);

}  // namespace odemin
