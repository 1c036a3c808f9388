"""
The generic discriminant and two of its monomials
=================================================

We expand Disc_T(A_0 + A_1 T + ... + A_n T^n) as an integer polynomial and
look at two coefficients that matter for the nonvanishing argument: the
coefficient of A_1^2 ... A_{n-1}^2 and that of A_1^{n-1} A_{n-1}^{n-1}.
"""

import time

from sqfree import (
    mp_serialize,
    symbolic_discriminant,
    verify_prop_squares,
    verify_prop_trinomial,
    verify_trinomial_identity,
)

print("n=2:", mp_serialize(symbolic_discriminant(2)))
print("n=3:", mp_serialize(symbolic_discriminant(3)))

##############################################################################
# Sizes grow quickly.  The counts follow a known integer sequence.

for n in range(2, 9):
    t0 = time.perf_counter()
    d = symbolic_discriminant(n)
    print(f"n={n}: {len(d):6d} terms  ({time.perf_counter() - t0:.2f}s)")

##############################################################################
# The squares coefficient is a unit, the sparse one is (n-2)^(n-2) up to sign.

for n in range(3, 9):
    sq, tri = verify_prop_squares(n), verify_prop_trinomial(n)
    print(f"n={n}: squares {sq:+d}   sparse {tri:+d}   (n-2)^(n-2) = {(n - 2) ** (n - 2)}")

##############################################################################
# Restricting to the monomials in A_1 and A_{n-1} alone leaves a trinomial
# discriminant times a power of A_1.

for n in range(3, 7):
    check = verify_trinomial_identity(n)
    print(f"n={n}: identity holds with signs ({check.outer_sign:+d}, {check.inner_sign:+d})")
