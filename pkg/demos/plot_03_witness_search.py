"""
Finding squarefree polynomials inside a box
===========================================

A box S_0 x ... x S_n of field elements is guaranteed to contain the
coefficient vector of a squarefree polynomial once its sets are large
enough.  We classify a few boxes and search them for a witness.
"""

from sqfree import Box, Tag, classify_box, find_squarefree_in_box, make_field
from sqfree.nullsatz import sample_qualifying_boxes

F5 = make_field(5)
box = Box.of(F5, [[0], [0, 1, 2], [1, 2, 3], [1]])
kind, witness = find_squarefree_in_box(3, box)
print(box.describe(), "->", kind, witness.describe(), "disc =", witness.disc_value)

##############################################################################
# Over GF(2) every middle set may be as small as two elements.

F2 = make_field(2)
box = Box.of(F2, [[1], [0, 1], [0, 1], [1]])
kind, witness = find_squarefree_in_box(3, box)
print(box.describe(), "->", kind, witness.polynomial())

##############################################################################
# Too-small sets carry no guarantee, but a witness may still turn up.

tiny = Box.of(F5, [[0], [0, 1], [0, 1], [1]])
print(tiny.describe(), "->", classify_box(3, tiny), find_squarefree_in_box(3, tiny)[1].describe())

##############################################################################
# A seeded sample of qualifying boxes over GF(7); none should come up empty.

F7 = make_field(7)
steps = []
for b in sample_qualifying_boxes(F7, 4, Tag.GENERAL, 200, seed=1):
    _, w = find_squarefree_in_box(4, b)
    steps.append(w.steps)
print(f"200 boxes, mean search steps {sum(steps) / len(steps):.2f}, worst {max(steps)}")
