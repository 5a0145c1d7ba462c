#pragma once

#include "odemin/series.hpp"

#include <climits>
#include <vector>

namespace odemin {

// Basis of the module of (p_1..p_k) with sum p_j S_j = O(z^p), in shifted
// Popov form for the shift (-s_1..-s_k). Pivots sit on the diagonal.
template <class T>
struct ApproximantBasisResult {
    std::vector<std::vector<Poly<T>>> rows;
    std::vector<int> shifts;
    std::vector<int> rowdeg;    // shifted row degrees: max_j deg B_ij - s_j
    std::vector<int> selected;  // rows with deg B_ii <= s_i
    int order = 0;
};

namespace detail {

template <class T>
int shifted_deg(const Poly<T>& p, int s)
{
    return p.is_zero_poly() ? INT_MIN / 2 : p.deg() - s;
}

// Rows in weak Popov form with diagonal pivots are brought to Popov form:
// monic pivots, and every other entry of a pivot column has lower degree.
template <class T>
void popov_normalize(std::vector<std::vector<Poly<T>>>& B, const std::vector<int>& s)
{
    int k = (int)B.size();
    for (int i = 0; i < k; ++i) {
        T il = inv(B[i][i].lc());
        for (auto& e : B[i]) e = il * e;
    }
    for (int i = 0; i < k; ++i) {
        while (true) {
            // leading reducible term of row i in the (shifted degree, column) order
            int bj = -1, be = 0, bv = INT_MIN;
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                const Poly<T>& e = B[i][j];
                int dj = B[j][j].deg();
                for (int d = e.deg(); d >= dj; --d) {
                    if (is_zero(e.c[d])) continue;
                    int v = d - s[j];
                    if (v > bv || (v == bv && j > bj)) bv = v, bj = j, be = d;
                    break;
                }
            }
            if (bj < 0) break;
            T coef = B[i][bj].c[be];
            int sh = be - B[bj][bj].deg();
            for (int l = 0; l < k; ++l) B[i][l] -= coef * B[bj][l].shift_up(sh);
        }
    }
}

}  // namespace detail

// Iterative order basis: at each coefficient, the row of smallest shifted
// degree among those with a nonzero residual (lowest index on ties) becomes
// the pivot, clears the others and is multiplied by z.
template <class T>
ApproximantBasisResult<T> approximantBasis(const std::vector<TruncSeries<T>>& S, const std::vector<int>& shifts, int p)
{
    int k = (int)S.size();
    if (k == 0 || (int)shifts.size() != k) throw Error("approximantBasis: need one shift per series");
    for (auto& s : S) {
        if (s.val != 0) throw Error("approximantBasis: power series expected");
        if (s.prec() < p) throw Error("approximantBasis: series precision below the order");
    }
    T zero = S[0].zero, one = one_of(zero);
    std::vector<std::vector<Poly<T>>> B(k, std::vector<Poly<T>>(k, Poly<T>(zero)));
    std::vector<std::vector<T>> res(k);
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
        B[i][i] = Poly<T>::constant(one);
        res[i].assign(S[i].c.begin(), S[i].c.begin() + p);
        d[i] = -shifts[i];
    }
    for (int t = 0; t < p; ++t) {
        int piv = -1;
        for (int i = 0; i < k; ++i)
            if (!is_zero(res[i][t]) && (piv < 0 || d[i] < d[piv])) piv = i;
        if (piv < 0) continue;
        T ip = inv(res[piv][t]);
        for (int i = 0; i < k; ++i) {
            if (i == piv || is_zero(res[i][t])) continue;
            T f = res[i][t] * ip;
            for (int j = 0; j < k; ++j)
                if (!B[piv][j].is_zero_poly()) B[i][j] -= f * B[piv][j];
            for (int n = t; n < p; ++n)
                if (!is_zero(res[piv][n])) res[i][n] -= f * res[piv][n];
        }
        for (int j = 0; j < k; ++j) B[piv][j] = B[piv][j].shift_up(1);
        for (int n = p - 1; n > t; --n) res[piv][n] = res[piv][n - 1];
        res[piv][t] = zero;
        ++d[piv];
    }
    detail::popov_normalize(B, shifts);
    ApproximantBasisResult<T> r;
    r.rows = std::move(B);
    r.shifts = shifts;
    r.order = p;
    for (int i = 0; i < k; ++i) {
        int rd = INT_MIN / 2;
        for (int j = 0; j < k; ++j) rd = std::max(rd, detail::shifted_deg(r.rows[i][j], shifts[j]));
        r.rowdeg.push_back(rd);
        if (r.rows[i][i].deg() <= shifts[i]) r.selected.push_back(i);
    }
    return r;
}

// Selected rows read as p_1 + p_2 Dz + ... + p_k Dz^(k-1).
template <class T>
std::vector<Op<T>> candidateOperators(const ApproximantBasisResult<T>& res)
{
    std::vector<Op<T>> out;
    for (int i : res.selected) {
        Op<T> L;
        L.zero = res.rows[i][0].zero;
        L.c = res.rows[i];
        L.trim();
        if (!L.is_zero()) out.push_back(L);
    }
    return out;
}

// (S, S', ..., S^(m)) truncated at precision p; S needs precision p + m.
template <class T>
std::vector<TruncSeries<T>> derivative_stack(const TruncSeries<T>& S, int m, int p)
{
    std::vector<TruncSeries<T>> out;
    TruncSeries<T> cur = S;
    for (int i = 0; i <= m; ++i) {
        if (cur.prec() < p) throw Error("derivative_stack: series too short");
        out.push_back(cur.truncate(p));
        if (i < m) cur = cur.derivative();
    }
    return out;
}

}  // namespace odemin
