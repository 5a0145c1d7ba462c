#include "odemin/series.hpp"

namespace odemin {

TruncSeries<Rat> seriesSolution(const DiffOp& L, const TruncSeries<Rat>& S, int target)
{
    return seriesSolution(L, S, target, integerRootSet(L));
}

TruncSeries<Rat> prefix_from_initial(const DiffOp& L, const InitialConditions& ini)
{
    auto zset = integerRootSet(L);
    std::string want;
    for (long z : zset) want += (want.empty() ? "" : ",") + std::to_string(z);
    bool same = ini.size() == zset.size();
    for (long z : zset) same = same && ini.count(z);
    if (!same) throw ValidationError("initial conditions must be given exactly at indices {" + want + "}");
    TruncSeries<Rat> S(Rat(0), 0);
    if (zset.empty()) return S;
    auto tf = theta_form(L);
    int t = (int)tf.P.size() - 1;
    for (int N = 0; N <= zset.back(); ++N) {
        Rat s = 0;
        for (int k = 1; k <= t && k <= N; ++k) s += tf.P[k](Rat(N - k)) * S.c[N - k];
        Rat lead = tf.P[0](Rat(N));
        if (sgn(lead) == 0) {
            if (sgn(s) != 0)
                throw ValidationError("initial conditions inconsistent with the operator at index " + std::to_string(N));
            S.c.push_back(ini.at(N));
        } else {
            S.c.push_back(-s / lead);
        }
    }
    return S;
}

TruncSeries<AlgNum> laurentExpand(const RatFun<AlgNum>& f, const AlgNum& center, int terms)
{
    if (f.den.is_zero_poly()) throw Error("laurentExpand: zero denominator");
    if (f.den.zero.K && center.K && f.den.zero.K != center.K && f.den.zero.K->modulus != center.K->modulus)
        throw Error("laurentExpand: center and function live in different fields");
    AlgNum proto = zero_of(center);
    PolyK n = f.num.taylor_shift(center), d = f.den.taylor_shift(center);
    int vd = d.val();
    TruncSeries<AlgNum> B = series_of_poly(d.shift_down(vd), terms);
    if (n.is_zero_poly()) {
        TruncSeries<AlgNum> z(proto, 0);
        z.c.assign(terms, proto);
        return z;
    }
    int vn = n.val();
    TruncSeries<AlgNum> A = series_of_poly(n.shift_down(vn), terms);
    TruncSeries<AlgNum> r = (A * inverse(B)).truncate(terms);
    r.val = vn - vd;
    return r;
}

}  // namespace odemin
