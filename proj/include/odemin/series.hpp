#pragma once

#include "odemin/ore.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace odemin {

// Raised when a prime divides a value the modular computation must invert.
struct BadPrime : Error {
    using Error::Error;
};

// Truncated Laurent series: c[k] is the coefficient of z^(val+k), known up to
// the precision prec() = val + c.size() (exclusive).
template <class T>
struct TruncSeries {
    int val = 0;
    std::vector<T> c;
    T zero{};

    TruncSeries() = default;
    explicit TruncSeries(const T& proto, int v = 0) : val(v), zero(zero_of(proto)) {}
    TruncSeries(std::vector<T> cs, const T& proto, int v = 0) : val(v), c(std::move(cs)), zero(zero_of(proto)) {}

    int prec() const { return val + (int)c.size(); }
    T coeff(int n) const
    {
        if (n < val) return zero;
        if (n >= prec()) throw Error("series coefficient beyond precision requested");
        return c[n - val];
    }
    // first exponent with a nonzero coefficient, or prec() if none is known
    int valuation() const
    {
        for (size_t i = 0; i < c.size(); ++i)
            if (!is_zero(c[i])) return val + (int)i;
        return prec();
    }
    TruncSeries truncate(int p) const
    {
        TruncSeries r = *this;
        if (p < r.prec()) r.c.resize(std::max(0, p - val), zero);
        return r;
    }
    TruncSeries derivative() const
    {
        TruncSeries r(zero, val - 1);
        for (size_t i = 0; i < c.size(); ++i) r.c.push_back(from_int(zero, val + (long)i) * c[i]);
        if (val == 0 && !r.c.empty()) {  // drop the z^-1 slot of a power series
            r.c.erase(r.c.begin());
            r.val = 0;
        }
        return r;
    }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b)
    {
        if (a.prec() != b.prec()) return false;
        int lo = std::min(a.val, b.val);
        for (int n = lo; n < a.prec(); ++n)
            if (a.coeff(n) != b.coeff(n)) return false;
        return true;
    }
};

template <class T>
TruncSeries<T> operator+(const TruncSeries<T>& a, const TruncSeries<T>& b)
{
    int lo = std::min(a.val, b.val), hi = std::min(a.prec(), b.prec());
    TruncSeries<T> r(a.zero, lo);
    for (int n = lo; n < hi; ++n) r.c.push_back(a.coeff(n) + b.coeff(n));
    return r;
}

template <class T>
TruncSeries<T> operator-(const TruncSeries<T>& a, const TruncSeries<T>& b)
{
    int lo = std::min(a.val, b.val), hi = std::min(a.prec(), b.prec());
    TruncSeries<T> r(a.zero, lo);
    for (int n = lo; n < hi; ++n) r.c.push_back(a.coeff(n) - b.coeff(n));
    return r;
}

template <class T>
TruncSeries<T> operator*(const TruncSeries<T>& a, const TruncSeries<T>& b)
{
    int va = a.valuation(), vb = b.valuation();
    int hi = std::min(a.prec() + vb, b.prec() + va);
    TruncSeries<T> r(a.zero, a.val + b.val);
    for (int n = r.val; n < hi; ++n) {
        T s = a.zero;
        for (int i = a.val; i < a.prec(); ++i) {
            int j = n - i;
            if (j < b.val) break;
            if (j >= b.prec()) continue;
            s += a.c[i - a.val] * b.c[j - b.val];
        }
        r.c.push_back(s);
    }
    return r;
}

template <class T>
TruncSeries<T> operator*(const Poly<T>& p, const TruncSeries<T>& s)
{
    TruncSeries<T> r(s.zero, s.val);
    r.c.assign(s.c.size(), s.zero);
    for (int i = 0; i <= p.deg(); ++i) {
        if (is_zero(p.c[i])) continue;
        for (size_t k = 0; k + i < s.c.size(); ++k) r.c[k + i] += p.c[i] * s.c[k];
    }
    return r;
}

// 1/s; needs a known nonzero coefficient
template <class T>
TruncSeries<T> inverse(const TruncSeries<T>& s)
{
    int v = s.valuation();
    if (v >= s.prec()) throw Error("inverse of a series with no known nonzero coefficient");
    int n = s.prec() - v;
    T il = inv(s.coeff(v));
    TruncSeries<T> r(s.zero, -v);
    r.c.assign(n, s.zero);
    for (int k = 0; k < n; ++k) {
        T acc = k == 0 ? one_of(s.zero) : s.zero;
        for (int i = 1; i <= k; ++i) acc -= s.coeff(v + i) * r.c[k - i];
        r.c[k] = acc * il;
    }
    return r;
}

template <class T>
TruncSeries<T> series_of_poly(const Poly<T>& p, int prec)
{
    TruncSeries<T> r(p.zero, 0);
    for (int i = 0; i < prec; ++i) r.c.push_back(p.coeff(i));
    return r;
}

// Extend a solution prefix of L to the target precision with the recurrence
// given by the theta form. zset lists the nonnegative integer roots of the
// indicial polynomial over Q (free coefficients). Throws ValidationError on an
// inconsistent prefix and BadPrime when a modular division fails.
template <class T>
TruncSeries<T> seriesSolution(const Op<T>& L, const TruncSeries<T>& S, int target, const std::vector<long>& zset)
{
    if (S.val != 0) throw Error("seriesSolution expects a power series");
    auto tf = theta_form(L);
    int t = (int)tf.P.size() - 1;
    auto equation = [&](const std::vector<T>& c, int N) {
        T s = S.zero;
        for (int k = 1; k <= t && k <= N; ++k) {
            const auto& pk = tf.P[k];
            if (pk.is_zero_poly() || is_zero(c[N - k])) continue;
            s += pk(from_int(S.zero, N - k)) * c[N - k];
        }
        return s;
    };
    std::vector<T> c = S.c;
    for (int N = 0; N < (int)S.c.size(); ++N) {
        T v = tf.P[0](from_int(S.zero, N)) * c[N] + equation(c, N);
        if (!is_zero(v)) throw ValidationError("initial prefix inconsistent with the operator at index " + std::to_string(N));
    }
    for (int N = (int)S.c.size(); N < target; ++N) {
        T lead = tf.P[0](from_int(S.zero, N));
        if (is_zero(lead)) {
            if (std::binary_search(zset.begin(), zset.end(), (long)N))
                throw ValidationError("coefficient " + std::to_string(N) + " is free; prefix too short");
            throw BadPrime("prime divides the indicial polynomial at " + std::to_string(N));
        }
        c.push_back(-equation(c, N) / lead);
    }
    return TruncSeries<T>(c, S.zero, 0);
}

TruncSeries<Rat> seriesSolution(const DiffOp& L, const TruncSeries<Rat>& S, int target);

// L(S) computed from the theta form; output exponents [val+lo, prec+lo).
template <class T>
TruncSeries<T> applyOp(const Op<T>& L, const TruncSeries<T>& S)
{
    auto tf = theta_form(L);
    int t = (int)tf.P.size() - 1;
    TruncSeries<T> r(S.zero, S.val + tf.lo);
    for (int N = S.val; N < S.prec(); ++N) {
        T s = S.zero;
        for (int k = 0; k <= t && N - k >= S.val; ++k) {
            const auto& pk = tf.P[k];
            const T& cn = S.c[N - k - S.val];
            if (pk.is_zero_poly() || is_zero(cn)) continue;
            s += pk(from_int(S.zero, N - k)) * cn;
        }
        r.c.push_back(s);
    }
    return r;
}

template <class T>
TruncSeries<T> reduce_series(const TruncSeries<Rat>& s, const T& proto);

template <>
inline TruncSeries<Fp> reduce_series(const TruncSeries<Rat>& s, const Fp& proto)
{
    TruncSeries<Fp> r(proto, s.val);
    for (auto& x : s.c) r.c.push_back(from_rat(proto, x));
    return r;
}

// Initial conditions: coefficient index -> value.
using InitialConditions = std::map<long, Rat>;

// Series prefix c_0..c_max from initial conditions at the indices of zset,
// filling the others through the recurrence.
TruncSeries<Rat> prefix_from_initial(const DiffOp& L, const InitialConditions& ini);

// Laurent expansion of a rational function at alpha in t = z - alpha.
TruncSeries<AlgNum> laurentExpand(const RatFun<AlgNum>& f, const AlgNum& center, int terms);

}  // namespace odemin
