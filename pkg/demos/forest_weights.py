"""
Minimum forest weights and atoms
================================

``phi(k)`` is the weight of the lightest spanning entering forest with k
trees.  Its successive decrements shrink as k grows.  Grouping vertices by
which tree they land in across all minimal k-forests gives the atoms.
"""
import numpy as np

from treesplit import atoms, check_convexity, fixtures, is_forest_divisible, minimal_forests
from treesplit.generators import random_digraph

g = fixtures.grid_digraph()
report = check_convexity(g)
phis = np.array(report.phis[1:])
print("phi(k), k=1..9:", phis)
print("decrements:", -np.diff(phis), "convex:", report.ok)

psi = random_digraph(7, 0.4, (1, 3), seed=11, strongly_connected=True)
for k in range(1, psi.n + 1):
    fam = atoms(psi, k)
    shown = ["{" + ",".join(psi.label_set(a)) + "}" + ("*" if lab else "") for a, lab in zip(fam.atoms, fam.labeled)]
    part = fam.partition(psi)
    divides = all(is_forest_divisible(f, part) for kk in (k, k - 1) if kk for f in minimal_forests(psi, kk))
    print(f"k={k}: {fam.minimal_forest_count} minimal forests, atoms {' '.join(shown)}, divide k and k-1: {divides}")
print("(* marks atoms holding a root)")
