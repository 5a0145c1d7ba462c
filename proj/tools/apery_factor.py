#!/usr/bin/env python3
"""Order-6 right factor of the Apery operator annihilating sum u_n z^n,
found as the nullspace of a Hermite-Pade system; written to fixtures/."""
import os
from fractions import Fraction
from math import factorial, gcd, lcm

import flint
import sympy as sp

N, r, d = 200, 6, 8
u = [sum(Fraction(factorial(n) * factorial(n + k), factorial(k) ** 4 * factorial(n - k) ** 3)
         for k in range(n + 1)) for n in range(N + 10)]
rows = []
for n in range(150):
    row = []
    for i in range(r + 1):
        for k in range(d + 1):
            m = n - k
            if m < 0:
                row.append(Fraction(0))
                continue
            f = 1
            for t in range(i):
                f *= m + i - t
            row.append(f * u[m + i])
    den = lcm(*[x.denominator for x in row])
    rows.append([int(x * den) for x in row])
X, nul = flint.fmpz_mat(rows).nullspace()
assert nul == 1
v = [int(X[j, 0]) for j in range(X.nrows())]
g = 0
for x in v:
    g = gcd(g, x)
v = [x // g for x in v]
if v[r * (d + 1) + d] < 0:
    v = [-x for x in v]
z = sp.symbols('z')
terms = []
for i in range(r + 1):
    p = sp.expand(sum(v[i * (d + 1) + k] * z ** k for k in range(d + 1)))
    if p != 0:
        terms.append(f"({p})*Dz^{i}".replace("**", "^"))
out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures", "apery_factor.txt")
with open(out, "w") as fh:
    fh.write(" + ".join(terms) + "\n")
