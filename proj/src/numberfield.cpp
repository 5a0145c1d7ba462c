#include "odemin/algebra.hpp"

namespace odemin {

NF make_field(const PolyQ& modulus, bool trusted)
{
    if (modulus.deg() < 1) throw Error("number field modulus must have positive degree");
    PolyQ m = modulus.monic();
    if (!trusted && !is_irreducibleQ(m)) throw Error("number field modulus is reducible: " + to_string(m, "x"));
    auto k = std::make_shared<NumberField>();
    k->modulus = m;
    return k;
}

NF rational_field()
{
    static const NF q = make_field(polyq({0, 1}), true);
    return q;
}

AlgNum AlgNum::gen(NF k)
{
    PolyQ x = PolyQ::x(Rat(0)) % k->modulus;
    return AlgNum(std::move(k), x);
}

AlgNum operator*(const AlgNum& a, const AlgNum& b)
{
    const NF& k = a.K ? a.K : b.K;
    if (a.r.deg() <= 0 || b.r.deg() <= 0) {
        if (a.r.is_zero_poly() || b.r.is_zero_poly()) return AlgNum(k, PolyQ());
        if (a.r.deg() == 0) return AlgNum(k, a.r.c[0] * b.r);
        return AlgNum(k, b.r.c[0] * a.r);
    }
    return AlgNum(k, (a.r * b.r) % k->modulus);
}

AlgNum inv(const AlgNum& a)
{
    if (a.r.is_zero_poly()) throw Error("division by zero in number field");
    if (a.r.deg() == 0) return AlgNum(a.K, PolyQ::constant(inv(a.r.c[0])));
    PolyQ s, t;
    PolyQ g = xgcd(a.r, a.K->modulus, s, t);
    if (g.deg() != 0) throw Error("non-invertible element: modulus not irreducible");
    return AlgNum(a.K, s % a.K->modulus);
}

AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * inv(b); }

PolyK lift_to_field(const PolyQ& p, const NF& K)
{
    AlgNum proto = AlgNum::of(K, Rat(0));
    return map_poly(p, proto, [&](const Rat& q) { return AlgNum::of(K, q); });
}

namespace {

Mat<Rat> mult_matrix(const AlgNum& a)
{
    int n = a.K->degree();
    Mat<Rat> m(n, std::vector<Rat>(n, Rat(0)));
    PolyQ col = a.r;
    PolyQ x = PolyQ::x(Rat(0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) m[i][j] = col.coeff(i);
        col = (col * x) % a.K->modulus;
    }
    return m;
}

// characteristic polynomial via Hessenberg reduction
PolyQ charpoly_matrix(Mat<Rat> a)
{
    int n = (int)a.size();
    for (int m = 1; m < n - 1; ++m) {
        int piv = -1;
        for (int i = m; i < n; ++i)
            if (sgn(a[i][m - 1]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != m) {
            std::swap(a[piv], a[m]);
            for (int i = 0; i < n; ++i) std::swap(a[i][piv], a[i][m]);
        }
        for (int i = m + 1; i < n; ++i) {
            if (sgn(a[i][m - 1]) == 0) continue;
            Rat u = a[i][m - 1] / a[m][m - 1];
            for (int j = 0; j < n; ++j) a[i][j] -= u * a[m][j];
            for (int j = 0; j < n; ++j) a[j][m] += u * a[j][i];
        }
    }
    std::vector<PolyQ> p(n + 1);
    p[0] = PolyQ::constant(Rat(1));
    PolyQ x = PolyQ::x(Rat(0));
    for (int m = 1; m <= n; ++m) {
        p[m] = (x - PolyQ::constant(a[m - 1][m - 1])) * p[m - 1];
        Rat t = 1;
        for (int i = 1; i < m; ++i) {
            t *= a[m - i][m - i - 1];
            p[m] = p[m] - (t * a[m - i - 1][m - 1]) * p[m - i - 1];
        }
    }
    return p[n];
}

}  // namespace

PolyQ charpoly(const AlgNum& a) { return charpoly_matrix(mult_matrix(a)); }

Rat trace(const AlgNum& a)
{
    Rat t = 0;
    auto m = mult_matrix(a);
    for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

Rat norm(const AlgNum& a)
{
    PolyQ c = charpoly(a);
    Rat v = c.coeff(0);
    return (c.deg() & 1) ? Rat(-v) : v;
}

PolyQ minpoly(const AlgNum& a)
{
    if (a.r.deg() <= 0) return polyq_from({-a.rational_value(), Rat(1)});
    PolyQ c = charpoly(a);
    auto f = factorQ(c);
    for (auto& [g, e] : f.factors) {
        AlgNum v = AlgNum::of(a.K, Rat(0));
        for (int i = g.deg(); i >= 0; --i) v = v * a + AlgNum::of(a.K, g.c[i]);
        if (is_zero(v)) return g;
    }
    throw Error("minimal polynomial not found");
}

}  // namespace odemin
