#include "doctest.h"
#include "odemin/algebra.hpp"

#include <random>

using namespace odemin;

namespace {

PolyQ P(const char* s) { return parse_polyq(s); }

PolyQ product(const FactorizationQ& f)
{
    PolyQ r = PolyQ::constant(f.unit);
    for (auto& [g, e] : f.factors) r = r * pow(g, e);
    return r;
}

PolyQ random_poly(std::mt19937_64& g, int deg, long range)
{
    std::uniform_int_distribution<long> d(-range, range);
    PolyQ p;
    for (int i = 0; i <= deg; ++i) p.c.push_back(Rat(d(g)));
    p.trim();
    return p;
}

}  // namespace

TEST_CASE("rational parsing and printing")
{
    CHECK(to_string(parse_rat("-6/4")) == "-3/2");
    CHECK(to_string(P("(z-1)^2*(z+3)"), "z") == "z^3 + z^2 - 5*z + 3");
    CHECK_THROWS_AS(parse_rat("1/0"), ValidationError);
    CHECK_THROWS_AS(P("z+*"), ValidationError);
}

TEST_CASE("factorQ examples")
{
    auto f = factorQ(P("z^2-1"));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == P("z-1"));
    CHECK(f.factors[1].first == P("z+1"));

    auto g = factorQ(P("z*(z^2-3)^2"));
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0] == std::make_pair(P("z"), 1));
    CHECK(g.factors[1] == std::make_pair(P("z^2-3"), 2));

    CHECK(is_irreducibleQ(P("z^4+16*z^3-112*z^2+284*z+4")));
    CHECK_THROWS(factorQ(PolyQ()));
}

TEST_CASE("factorQ round trip on random polynomials")
{
    std::mt19937_64 g(7);
    for (int it = 0; it < 1000; ++it) {
        int deg = 1 + (int)(g() % 12);
        PolyQ p = random_poly(g, deg, 1000000);
        if (p.is_zero_poly()) continue;
        auto f = factorQ(p);
        REQUIRE(product(f) == p);
        for (auto& [q, e] : f.factors) CHECK(q.lc() == 1);
    }
}

TEST_CASE("factorQ recovers planted factors")
{
    std::mt19937_64 g(11);
    for (int it = 0; it < 60; ++it) {
        PolyQ a = random_poly(g, 1 + (int)(g() % 5), 20), b = random_poly(g, 1 + (int)(g() % 5), 20);
        if (a.deg() < 1 || b.deg() < 1) continue;
        PolyQ p = a * b * b;
        auto f = factorQ(p);
        CHECK(product(f) == p);
        int total = 0;
        for (auto& [q, e] : f.factors) {
            CHECK(is_irreducibleQ(q));
            total += q.deg() * e;
        }
        CHECK(total == p.deg());
    }
}

TEST_CASE("Swinnerton-Dyer style polynomial is irreducible")
{
    // minimal polynomial of sqrt2 + sqrt3 + sqrt5 splits mod every prime
    PolyQ p = P("z^8 - 40*z^6 + 352*z^4 - 960*z^2 + 576");
    CHECK(is_irreducibleQ(p));
}

TEST_CASE("number field arithmetic")
{
    NF K = make_field(P("z^2-3"));
    AlgNum a = AlgNum::gen(K);
    CHECK(a * a == AlgNum::of(K, Rat(3)));
    AlgNum b = a + AlgNum::of(K, Rat(1));
    CHECK(b * inv(b) == one_of(b));
    CHECK(trace(b) == 2);
    CHECK(norm(b) == -2);
    CHECK(minpoly(b) == P("z^2-2*z-2"));
    CHECK_THROWS(make_field(P("z^2-4")));
}

TEST_CASE("field axioms on samples")
{
    std::mt19937_64 g(3);
    NF K = make_field(P("z^3-z-1"));
    auto rnd = [&]() {
        PolyQ r;
        for (int i = 0; i < 3; ++i) r.c.push_back(canon(Rat((long)(g() % 21) - 10, 1 + (long)(g() % 5))));
        r.trim();
        return AlgNum(K, r);
    };
    for (int it = 0; it < 50; ++it) {
        AlgNum x = rnd(), y = rnd(), z = rnd();
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!is_zero(x)) CHECK(x * inv(x) == one_of(x));
    }
    uint64_t p = kDefaultPrime;
    for (int it = 0; it < 200; ++it) {
        Fp x(g() % p, p), y(g() % p, p), z(g() % p, p);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!is_zero(x)) CHECK(x * inv(x) == one_of(x));
    }
}

TEST_CASE("factorNF")
{
    NF K = make_field(P("z^2-3"));
    auto f = factorNF(lift_to_field(P("z^2-3"), K), K);
    CHECK(f.factors.size() == 2);
    for (auto& [h, e] : f.factors) CHECK(h.deg() == 1);

    auto g = factorNF(lift_to_field(P("z^2-2"), K), K);
    CHECK(g.factors.size() == 1);

    // product of two K-irreducible cubics
    NF L = make_field(P("z^2+1"));
    AlgNum i = AlgNum::gen(L);
    PolyK x = PolyK::x(i);
    PolyK c1 = x * x * x + PolyK::constant(i) * x + PolyK::constant(AlgNum::of(L, Rat(1)));
    PolyK c2 = x * x * x - PolyK::constant(from_int(i, 2));
    auto h = factorNF(c1 * c2, L);
    REQUIRE(h.factors.size() == 2);
    PolyK prod = PolyK::constant(h.unit);
    for (auto& [q, e] : h.factors) prod = prod * pow(q, e);
    CHECK(prod == c1 * c2);
    // norm of each factor is a power of an irreducible rational polynomial
    for (auto& [q, e] : h.factors) {
        (void)e;
        CHECK(q.deg() == 3);
    }
}

TEST_CASE("root isolation")
{
    auto r0 = isolateRoots(P("z"));
    REQUIRE(r0.size() == 1);
    CHECK(r0[0].box->re_lo == 0);
    CHECK(r0[0].box->re_hi == 0);

    auto r1 = isolateRoots(P("z^2-3"));
    REQUIRE(r1.size() == 2);
    for (auto& a : r1) {
        CHECK(a.box->im_lo == 0);
        CHECK(count_in_box(P("z^2-3"), *a.box) == 1);
    }
    auto r2 = isolateRoots(P("z^2+1"));
    REQUIRE(r2.size() == 2);
    CHECK((sgn(r2[0].box->im_lo) > 0) != (sgn(r2[1].box->im_lo) > 0));

    PolyQ q = P("z^5-3*z+1");
    auto r3 = isolateRoots(q);
    CHECK(r3.size() == 5);
    for (auto& a : r3) {
        Box b = *a.box;
        Rat w = box_width(b);
        for (int k = 0; k < 4; ++k) {
            b = refine_box(q, b);
            CHECK(box_width(b) <= w);
            w = box_width(b);
            if (sgn(b.im_lo) == 0 && sgn(b.im_hi) == 0)
                CHECK(sturm_count(q, b.re_lo, b.re_hi) == 1);
            else
                CHECK(count_in_box(q, b) == 1);
        }
    }
}

TEST_CASE("locate element of a number field")
{
    auto roots = isolateRoots(P("z^2-15"));
    for (auto& a : roots) {
        AlgNum beta = from_rat(a, Rat(42, 5)) - from_rat(a, Rat(6, 5)) * a;
        AlgNum loc = locate(beta, *a.box);
        CHECK(loc.K->modulus == P("z^2-84/5*z+1224/25"));
    }
}

TEST_CASE("rational reconstruction")
{
    Int m = Int(kDefaultPrime) * Int(2147483629);
    Rat q = canon(Rat(Int(-12345), Int(6789)));
    Int num = q.get_num() % m, den = q.get_den();
    Int dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    Int a = (num * dinv) % m;
    auto r = rational_reconstruct(a, m);
    REQUIRE(r);
    CHECK(*r == q);
}
