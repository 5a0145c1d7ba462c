#include "odemin/field.hpp"

#include <cctype>

namespace odemin {

std::string to_string(const Rat& x)
{
    Rat y = canon(x);
    if (y.get_den() == 1) return y.get_num().get_str();
    return y.get_num().get_str() + "/" + y.get_den().get_str();
}

Rat parse_rat(const std::string& s0)
{
    std::string s;
    for (char ch : s0)
        if (!std::isspace((unsigned char)ch)) s += ch;
    if (s.empty()) throw ValidationError("empty rational");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit((unsigned char)t[i])) return false;
        return true;
    };
    auto mk = [&](std::string t) {
        if (!valid_int(t)) throw ValidationError("malformed rational: " + s0);
        if (t[0] == '+') t = t.substr(1);
        return Int(t);
    };
    if (slash == std::string::npos) return Rat(mk(s));
    Int n = mk(s.substr(0, slash)), d = mk(s.substr(slash + 1));
    if (d == 0) throw ValidationError("zero denominator: " + s0);
    return canon(Rat(n, d));
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p)
{
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = (unsigned __int128)r * a % p;
        a = (unsigned __int128)a * a % p;
        e >>= 1;
    }
    return r;
}

uint64_t mod_int(const Int& a, uint64_t p)
{
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), (unsigned long)p);
    return r.get_ui();
}

Fp from_rat(const Fp& proto, const Rat& q)
{
    uint64_t d = mod_int(q.get_den(), proto.p);
    if (d == 0) throw Error("prime divides a denominator");
    return Fp(mod_int(q.get_num(), proto.p), proto.p) / Fp(d, proto.p);
}

bool is_prime_u64(uint64_t n)
{
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = (unsigned __int128)x * x % n;
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

uint64_t prev_prime(uint64_t n)
{
    for (uint64_t m = n - 1; m >= 2; --m)
        if (is_prime_u64(m)) return m;
    throw Error("no prime below bound");
}

}  // namespace odemin
