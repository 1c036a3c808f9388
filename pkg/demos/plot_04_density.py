"""
Squarefree density in random cubes
==================================

Take n random C-subsets of GF(q) and count the monic polynomials with
coefficients in them that are squarefree.  For the full cube the density is
exactly 1 - 1/q; smaller cubes are noisier.  Takes a minute or two.
"""

import logging
from fractions import Fraction

from sqfree import make_field
from sqfree.expcli import decimal6, density_sweep

# decreases between consecutive cube sizes are logged, not raised
logging.basicConfig(format="warning: %(message)s")

F49 = make_field(7, 2)
aggregates, warnings = density_sweep(F49, 3, [2, 4, 8, 16, 32, 49], trials=200, seed=2024)
for rec in aggregates:
    print(f"C={rec.C:2d}  density {decimal6(rec.density)}  ({rec.squarefree_count}/{rec.total_count})")
print("1 - 1/q =", decimal6(1 - Fraction(1, 49)))
print(f"{len(warnings)} trend warnings")
