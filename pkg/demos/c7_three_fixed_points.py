"""Why the C7 branch does not close.

For a C7-invariant curve C = L (genus 3) through all three fixed points the
single-generator holomorphic Lefschetz equation reads

    sum_{i=1..3} 1/(1 - eta_i) + xi_1 + xi_2 + xi_3 = 1.

It has solutions.  This script prints them and checks one numerically.
The rotation numbers (1, 2, 4) are those of the Klein quartic
x^3 y + y^3 z + z^3 x = 0 under (x, y, z) -> (w x, w^4 y, w^2 z),
w = exp(2 pi i / 7), at its three fixed points [1:0:0], [0:1:0], [0:0:1],
so the equation is solvable for a real curve.
"""

import cmath

from fpp_certifier import lefschetz as lf

sols = lf.search_lefschetz_solutions(7, 3, 3, 1, unordered=True)
print(f"{len(lf.search_lefschetz_solutions(7, 3, 3, 1))} ordered solutions, {len(sols)} up to order:")
for eta, xi in sols:
    print("  eta =", eta, " xi =", xi)

w = cmath.exp(2j * cmath.pi / 7)
eta, xi = (1, 2, 4), (3, 5, 6)
value = sum(1 / (1 - w ** e) for e in eta) + sum(w ** x for x in xi)
print(f"\nfloating point check for {eta}, {xi}: {value:.12f}")

print("\ncandidate classification for l = 7:")
for c in lf.classify_candidates(7):
    status = "ADMISSIBLE" if c.accepted else "excluded"
    print(f"  k={c.k} delta={c.delta} (n,x)=({c.n},{c.x}) genus {c.genus}: {status}  {c.reason}")
