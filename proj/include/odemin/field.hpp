#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace odemin {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised on invalid user input (bad prefix, malformed operator...).
struct ValidationError : Error {
    using Error::Error;
};

// Raised when a configured cap (terms, depth) stops a computation.
struct ResourceError : Error {
    using Error::Error;
};

inline Rat canon(Rat x)
{
    x.canonicalize();
    return x;
}

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline Rat zero_of(const Rat&) { return Rat(0); }
inline Rat one_of(const Rat&) { return Rat(1); }
inline Rat inv(const Rat& x)
{
    if (sgn(x) == 0) throw Error("division by zero");
    return Rat(1) / x;
}
inline Rat from_int(const Rat&, long n) { return Rat(n); }
inline Rat from_rat(const Rat&, const Rat& q) { return q; }

std::string to_string(const Rat& x);
Rat parse_rat(const std::string& s);

// Element of Z/pZ, p < 2^31 prime. The modulus travels with the value.
struct Fp {
    uint64_t v = 0;
    uint64_t p = 0;

    Fp() = default;
    Fp(uint64_t v_, uint64_t p_) : v(v_ % p_), p(p_) {}

    friend Fp operator+(Fp a, Fp b)
    {
        uint64_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return {s, a.p, 0};
    }
    friend Fp operator-(Fp a, Fp b)
    {
        uint64_t s = a.v >= b.v ? a.v - b.v : a.v + a.p - b.v;
        return {s, a.p, 0};
    }
    friend Fp operator-(Fp a) { return {a.v ? a.p - a.v : 0, a.p, 0}; }
    friend Fp operator*(Fp a, Fp b) { return {a.v * b.v % a.p, a.p, 0}; }
    friend Fp operator/(Fp a, Fp b);
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }
    Fp& operator/=(Fp b) { return *this = *this / b; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

private:
    Fp(uint64_t v_, uint64_t p_, int) : v(v_), p(p_) {}
};

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);

inline Fp inv(const Fp& x)
{
    if (x.v == 0) throw Error("division by zero mod p");
    return Fp(powmod(x.v, x.p - 2, x.p), x.p);
}
inline Fp operator/(Fp a, Fp b) { return a * inv(b); }
inline bool is_zero(const Fp& x) { return x.v == 0; }
inline Fp zero_of(const Fp& x) { return Fp(0, x.p); }
inline Fp one_of(const Fp& x) { return Fp(1, x.p); }
inline Fp from_int(const Fp& x, long n)
{
    long m = n % (long)x.p;
    if (m < 0) m += (long)x.p;
    return Fp((uint64_t)m, x.p);
}
uint64_t mod_int(const Int& a, uint64_t p);
// Throws if p divides the denominator.
Fp from_rat(const Fp& proto, const Rat& q);

constexpr uint64_t kDefaultPrime = 2147483647ULL;  // largest prime below 2^31

bool is_prime_u64(uint64_t n);
uint64_t prev_prime(uint64_t n);

}  // namespace odemin
