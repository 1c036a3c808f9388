"""
Arithmetic in small finite fields
=================================

Elements of GF(p^k) are stored as integers whose base-p digits are the
coefficients of a polynomial in x.  This script builds a few fields and
checks some identities by hand.
"""

from sqfree import ff_enumerate, ff_inv, make_field

# GF(4) is built over the only irreducible quadratic over GF(2), x^2 + x + 1
F4 = make_field(2, 2)
print("GF(4) modulus coefficients:", F4.modulus)
print("elements:", [str(e) for e in ff_enumerate(F4)])

x = F4([0, 1])
print("x * x =", x * x, " x^3 =", x**3, " 1/x =", ff_inv(x))

##############################################################################
# The multiplication table of GF(8); x^7 = 1 for every nonzero x.

F8 = make_field(2, 3)
elems = ff_enumerate(F8)
width = max(len(str(e)) for e in elems)
for a in elems:
    print(" ".join(f"{str(a * b):>{width}}" for b in elems))
assert all(a**7 == F8.one for a in elems if a)

##############################################################################
# Frobenius is additive: (a + b)^p = a^p + b^p.

F9 = make_field(3, 2)
pairs = [(a, b) for a in ff_enumerate(F9) for b in ff_enumerate(F9)]
print("Frobenius additive on GF(9):", all((a + b) ** 3 == a**3 + b**3 for a, b in pairs))
