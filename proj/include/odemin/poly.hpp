#pragma once

#include "odemin/field.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace odemin {

// Dense univariate polynomial, lowest degree first. `zero` carries the
// coefficient field context (prime, number field) for empty polynomials.
template <class T>
class Poly {
public:
    std::vector<T> c;
    T zero{};

    Poly() = default;
    explicit Poly(const T& proto) : zero(zero_of(proto)) {}
    Poly(std::vector<T> cs, const T& proto) : c(std::move(cs)), zero(zero_of(proto)) { trim(); }

    static Poly constant(const T& a)
    {
        Poly r(a);
        if (!is_zero(a)) r.c.push_back(a);
        return r;
    }
    static Poly monomial(const T& a, int k)
    {
        Poly r(a);
        if (!is_zero(a)) {
            r.c.assign(k + 1, zero_of(a));
            r.c[k] = a;
        }
        return r;
    }
    static Poly x(const T& proto) { return monomial(one_of(proto), 1); }

    void trim()
    {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }
    int deg() const { return (int)c.size() - 1; }
    bool is_zero_poly() const { return c.empty(); }
    const T& lc() const { return c.back(); }
    T coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : zero; }
    T one() const { return one_of(zero); }

    // lowest index with nonzero coefficient; -1 for zero
    int val() const
    {
        for (size_t i = 0; i < c.size(); ++i)
            if (!is_zero(c[i])) return (int)i;
        return -1;
    }

    T operator()(const T& x) const
    {
        T r = zero;
        for (int i = deg(); i >= 0; --i) r = r * x + c[i];
        return r;
    }

    Poly& operator+=(const Poly& b)
    {
        if (b.c.size() > c.size()) c.resize(b.c.size(), zero);
        for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& b)
    {
        if (b.c.size() > c.size()) c.resize(b.c.size(), zero);
        for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a)
    {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly r(a.zero);
        if (a.c.empty() || b.c.empty()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, a.zero);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    friend Poly operator*(const T& s, Poly a)
    {
        if (is_zero(s)) return Poly(a.zero);
        for (auto& x : a.c) x = s * x;
        a.trim();
        return a;
    }
    friend Poly operator*(Poly a, const T& s) { return s * std::move(a); }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly shift_up(int k) const
    {
        if (c.empty() || k == 0) return *this;
        Poly r(zero);
        r.c.assign(k, zero);
        r.c.insert(r.c.end(), c.begin(), c.end());
        return r;
    }
    // drops the lowest k coefficients
    Poly shift_down(int k) const
    {
        Poly r(zero);
        if ((int)c.size() > k) r.c.assign(c.begin() + k, c.end());
        return r;
    }
    Poly truncate(int n) const
    {
        Poly r = *this;
        if ((int)r.c.size() > n) r.c.resize(std::max(n, 0));
        r.trim();
        return r;
    }

    Poly derivative() const
    {
        Poly r(zero);
        for (size_t i = 1; i < c.size(); ++i) r.c.push_back(from_int(zero, (long)i) * c[i]);
        r.trim();
        return r;
    }

    Poly monic() const
    {
        if (c.empty()) return *this;
        return inv(lc()) * *this;
    }

    // p(x + a)
    Poly taylor_shift(const T& a) const
    {
        Poly r = *this;
        int n = deg();
        for (int i = 0; i < n; ++i)
            for (int j = n - 1; j >= i; --j) r.c[j] += a * r.c[j + 1];
        return r;
    }

    Poly compose(const Poly& q) const
    {
        Poly r(zero);
        for (int i = deg(); i >= 0; --i) r = r * q + constant(c[i]);
        return r;
    }
};

template <class T>
void divrem(const Poly<T>& a, const Poly<T>& b, Poly<T>& q, Poly<T>& r)
{
    if (b.is_zero_poly()) throw Error("polynomial division by zero");
    r = a;
    q = Poly<T>(a.zero);
    if (a.deg() < b.deg()) return;
    q.c.assign(a.deg() - b.deg() + 1, a.zero);
    T il = inv(b.lc());
    int db = b.deg();
    for (int i = a.deg(); i >= db; --i) {
        if ((int)r.c.size() <= i || is_zero(r.c[i])) continue;
        T f = r.c[i] * il;
        q.c[i - db] = f;
        for (int j = 0; j <= db; ++j) r.c[i - db + j] -= f * b.c[j];
    }
    q.trim();
    r.trim();
}

template <class T>
Poly<T> operator/(const Poly<T>& a, const Poly<T>& b)
{
    Poly<T> q, r;
    divrem(a, b, q, r);
    return q;
}

template <class T>
Poly<T> operator%(const Poly<T>& a, const Poly<T>& b)
{
    Poly<T> q, r;
    divrem(a, b, q, r);
    return r;
}

// exact division; throws when b does not divide a
template <class T>
Poly<T> div_exact(const Poly<T>& a, const Poly<T>& b)
{
    Poly<T> q, r;
    divrem(a, b, q, r);
    if (!r.is_zero_poly()) throw Error("inexact polynomial division");
    return q;
}

template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b)
{
    while (!b.is_zero_poly()) {
        Poly<T> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// s*a + t*b = g (monic)
template <class T>
Poly<T> xgcd(const Poly<T>& a, const Poly<T>& b, Poly<T>& s, Poly<T>& t)
{
    Poly<T> r0 = a, r1 = b;
    Poly<T> s0 = Poly<T>::constant(a.one()), s1(a.zero);
    Poly<T> t0(a.zero), t1 = Poly<T>::constant(a.one());
    while (!r1.is_zero_poly()) {
        Poly<T> q, r;
        divrem(r0, r1, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<T> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero_poly()) {
        s = s0;
        t = t0;
        return r0;
    }
    T il = inv(r0.lc());
    s = il * s0;
    t = il * t0;
    return il * r0;
}

template <class T>
Poly<T> pow(const Poly<T>& a, int e)
{
    Poly<T> r = Poly<T>::constant(a.one()), b = a;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

template <class T>
Poly<T> powmod(const Poly<T>& a, Int e, const Poly<T>& m)
{
    Poly<T> r = Poly<T>::constant(a.one()), b = a % m;
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

// Squarefree part (characteristic 0 or p > degree).
template <class T>
Poly<T> squarefree_part(const Poly<T>& a)
{
    if (a.deg() <= 0) return a;
    Poly<T> g = gcd(a, a.derivative());
    return (a / g).monic();
}

// Convert coefficients between fields via a callable.
template <class U, class T, class F>
Poly<U> map_poly(const Poly<T>& a, const U& proto, F&& f)
{
    Poly<U> r(proto);
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(f(x));
    r.trim();
    return r;
}

using PolyQ = Poly<Rat>;
using PolyP = Poly<Fp>;

PolyQ polyq(std::initializer_list<long> cs);
PolyQ polyq_from(const std::vector<Rat>& cs);
std::string to_string(const PolyQ& p, const std::string& var = "z");
PolyQ parse_polyq(const std::string& s, const std::string& var = "z");

Rat rat_content(const PolyQ& p);         // p = rat_content * primitive integral poly with positive lc
PolyQ primitive_part(const PolyQ& p);    // integral, content 1, positive lc
Int denom_lcm(const PolyQ& p);
PolyP reduce_mod(const PolyQ& p, uint64_t prime);  // throws on bad denominators

}  // namespace odemin
