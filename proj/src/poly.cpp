#include "odemin/poly.hpp"

#include <cctype>

namespace odemin {

PolyQ polyq(std::initializer_list<long> cs)
{
    PolyQ p;
    for (long v : cs) p.c.push_back(Rat(v));
    p.trim();
    return p;
}

PolyQ polyq_from(const std::vector<Rat>& cs)
{
    PolyQ p;
    p.c = cs;
    p.trim();
    return p;
}

std::string to_string(const PolyQ& p, const std::string& var)
{
    if (p.is_zero_poly()) return "0";
    std::string out;
    for (int i = p.deg(); i >= 0; --i) {
        const Rat& a = p.c[i];
        if (sgn(a) == 0) continue;
        Rat m = abs(a);
        std::string term;
        if (i == 0)
            term = to_string(m);
        else {
            if (m != 1) term = to_string(m) + "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (out.empty())
            out = (sgn(a) < 0 ? "-" : "") + term;
        else
            out += (sgn(a) < 0 ? " - " : " + ") + term;
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& s;
    const std::string& var;
    size_t i = 0;

    void ws()
    {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    [[noreturn]] void fail(const std::string& why)
    {
        throw ValidationError("malformed polynomial '" + s + "': " + why);
    }
    PolyQ expr()
    {
        ws();
        PolyQ r;
        bool first = true;
        while (true) {
            ws();
            int sign = 1;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                if (s[i] == '-') sign = -1;
                ++i;
            } else if (!first)
                break;
            PolyQ t = term();
            r = sign > 0 ? r + t : r - t;
            first = false;
        }
        return r;
    }
    PolyQ term()
    {
        PolyQ r = power();
        while (true) {
            ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                r = r * power();
            } else if (i < s.size() && s[i] == '/') {
                ++i;
                PolyQ d = power();
                if (d.deg() != 0) fail("division by non-constant");
                r = inv(d.c[0]) * r;
            } else if (i < s.size() && (s[i] == '(' || std::isalpha((unsigned char)s[i]))) {
                r = r * power();  // implicit product
            } else
                break;
        }
        return r;
    }
    PolyQ power()
    {
        PolyQ b = atom();
        ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            ws();
            size_t st = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            if (st == i) fail("bad exponent");
            b = pow(b, std::stoi(s.substr(st, i - st)));
        }
        return b;
    }
    PolyQ atom()
    {
        ws();
        if (i >= s.size()) fail("unexpected end");
        if (s[i] == '-' || s[i] == '+') {
            bool neg = s[i++] == '-';
            PolyQ r = power();
            return neg ? -r : r;
        }
        if (s[i] == '(') {
            ++i;
            PolyQ r = expr();
            ws();
            if (i >= s.size() || s[i] != ')') fail("missing )");
            ++i;
            return r;
        }
        if (std::isdigit((unsigned char)s[i])) {
            size_t st = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            return PolyQ::constant(Rat(Int(s.substr(st, i - st))));
        }
        if (s.compare(i, var.size(), var) == 0) {
            i += var.size();
            return PolyQ::x(Rat(0));
        }
        fail(std::string("unexpected '") + s[i] + "'");
    }
};

}  // namespace

PolyQ parse_polyq(const std::string& s, const std::string& var)
{
    PolyParser p{s, var};
    PolyQ r = p.expr();
    p.ws();
    if (p.i != s.size()) p.fail("trailing input");
    return r;
}

Int denom_lcm(const PolyQ& p)
{
    Int l = 1;
    for (const auto& a : p.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    return l;
}

Rat rat_content(const PolyQ& p)
{
    if (p.is_zero_poly()) return Rat(0);
    Int l = denom_lcm(p), g = 0;
    for (const auto& a : p.c) {
        Int n = a.get_num() * (l / a.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    Rat c(g, l);
    c.canonicalize();
    if (sgn(p.lc()) < 0) c = -c;
    return c;
}

PolyQ primitive_part(const PolyQ& p)
{
    if (p.is_zero_poly()) return p;
    Rat c = rat_content(p);
    return inv(c) * p;
}

PolyP reduce_mod(const PolyQ& p, uint64_t prime)
{
    Fp proto(0, prime);
    return map_poly(p, proto, [&](const Rat& a) { return from_rat(proto, a); });
}

}  // namespace odemin
