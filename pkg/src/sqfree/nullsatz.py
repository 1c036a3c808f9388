"""Nullstellensatz applicability and squarefree witness search in coefficient boxes.

A box is a product ``S_0 x ... x S_n`` of sets of field elements.  Three
guarantees are recognised, each certified by a monomial of the discriminant
(or, in characteristic 2, of its square root):

* ``GENERAL``: every middle set has at least 3 elements, monomial
  ``A_1^2 ... A_{n-1}^2``;
* ``CHAR2``: characteristic 2 and middle sets of size at least 2, monomial
  ``A_1 ... A_{n-1}`` of the square root;
* ``SPARSE``: ``|S_1|, |S_{n-1}| >= n``, ``n > 2`` and ``p`` not dividing
  ``n - 2``, monomial ``A_1^{n-1} A_{n-1}^{n-1}``.

All three require ``S_n != {0}``.  Searches are lexicographic scans, so the
reported witness is always the first hit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, product
from math import comb, prod
from typing import Iterator, Sequence

import numpy as np

from .field_core import FieldElement, FieldSpec, SpecMismatch
from .sympoly import (
    ArityMismatch,
    MultiPoly,
    evaluate_codes,
    mp_coefficient,
    mp_mod_p,
    mp_sqrt_char2,
    sparse_monomial,
    squares_monomial,
    symbolic_discriminant,
)
from .unipoly import UniPoly, squarefree_codes, up_discriminant

__all__ = [
    "Box",
    "Tag",
    "GuaranteeKind",
    "Witness",
    "NotHomogeneous",
    "BoxTooLarge",
    "GuaranteeViolation",
    "BOX_LIMIT",
    "cn_applicable",
    "find_nonvanishing",
    "classify_box",
    "applicable_guarantees",
    "certifying_polynomial",
    "find_squarefree_in_box",
    "search_squarefree",
    "family_feasible",
    "qualifying_family_size",
    "iter_qualifying_boxes",
    "sample_qualifying_boxes",
    "random_subset",
    "make_rng",
]

BOX_LIMIT = 10**8


class NotHomogeneous(ValueError):
    pass


class BoxTooLarge(ValueError):
    pass


class GuaranteeViolation(AssertionError):
    """A guaranteed nonvanishing point or squarefree witness was not found."""


@dataclass(frozen=True)
class Box:
    spec: FieldSpec
    sets: tuple[tuple[FieldElement, ...], ...]

    def __post_init__(self):
        if len(self.sets) < 2:
            raise ValueError("a box needs at least two coordinate sets")
        canon = []
        for i, s in enumerate(self.sets):
            elems = set()
            for x in s:
                if not isinstance(x, FieldElement):
                    x = self.spec(x)
                elif x.spec != self.spec:
                    raise SpecMismatch(f"S_{i} holds an element of {x.spec}")
                elems.add(x)
            if not elems:
                raise ValueError(f"S_{i} is empty")
            canon.append(tuple(sorted(elems)))
        object.__setattr__(self, "sets", tuple(canon))

    @classmethod
    def of(cls, spec: FieldSpec, sets: Sequence[Sequence]) -> Box:
        """Build a box from integers (mapped into F_p) or coefficient vectors."""
        return cls(spec, tuple(tuple(spec(x) for x in s) for s in sets))

    @property
    def n(self) -> int:
        return len(self.sets) - 1

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    def __len__(self):
        return prod(self.sizes)

    def __iter__(self) -> Iterator[tuple[FieldElement, ...]]:
        return product(*self.sets)

    def describe(self) -> str:
        return ";".join("{" + ",".join(str(x) for x in s) + "}" for s in self.sets)


class Tag(str, enum.Enum):
    GENERAL = "ThmGeneral"
    CHAR2 = "ThmChar2"
    SPARSE = "ThmSparse"
    NONE = "None"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GuaranteeKind:
    tag: Tag
    monomial: tuple[int, ...] | None = None

    def __bool__(self):
        return self.tag is not Tag.NONE

    def __str__(self):
        return self.tag.value


NO_GUARANTEE = GuaranteeKind(Tag.NONE)


@dataclass(frozen=True)
class Witness:
    tuple: tuple[FieldElement, ...]
    disc_value: FieldElement | None
    steps: int = 0

    def polynomial(self) -> UniPoly:
        return UniPoly(self.tuple[0].spec, self.tuple)

    def describe(self) -> str:
        return "(" + ",".join(str(x) for x in self.tuple) + ")"


def _check_box_size(box: Box):
    if len(box) > BOX_LIMIT:
        raise BoxTooLarge(f"box has {len(box)} points, limit is {BOX_LIMIT}")


def cn_applicable(f: MultiPoly, monomial: Sequence[int], box: Box) -> bool:
    """Does the homogeneous Nullstellensatz certify a nonvanishing point of f in the box?

    True iff the coefficient of ``monomial`` is nonzero in characteristic p and
    every ``|S_j|`` exceeds the corresponding exponent.
    """
    monomial = tuple(monomial)
    if len(monomial) != f.nvars or len(box.sets) != f.nvars:
        raise ArityMismatch("monomial, polynomial and box must agree on the number of variables")
    if not f.is_homogeneous():
        raise NotHomogeneous("the Nullstellensatz special case needs a homogeneous polynomial")
    degs = f.total_degrees()
    if degs and sum(monomial) != next(iter(degs)):
        raise ValueError("monomial must have the total degree of f")
    if mp_coefficient(f, monomial) % box.spec.p == 0:
        return False
    return all(size > e for size, e in zip(box.sizes, monomial))


def find_nonvanishing(f: MultiPoly, box: Box) -> Witness | None:
    """First point of the box (lexicographic) where f does not vanish.

    Returns ``None`` when f vanishes on the whole box; that outcome raises
    :class:`GuaranteeViolation` instead if some monomial of f certifies the box.
    """
    if len(box.sets) != f.nvars:
        raise ArityMismatch(f"box of dimension {len(box.sets)} for {f.nvars} variables")
    _check_box_size(box)
    spec = box.spec
    steps = 0
    for point in box:
        steps += 1
        v = evaluate_codes(f, [x.code for x in point], spec)
        if v:
            return Witness(point, FieldElement(spec, v), steps)
    if f.is_homogeneous() and any(cn_applicable(f, e, box) for e in f.terms):
        raise GuaranteeViolation(f"f vanishes on a certified box {box.describe()}")
    return None


def _is_zero_set(s) -> bool:
    return len(s) == 1 and s[0].code == 0


def applicable_guarantees(n: int, box: Box) -> list[GuaranteeKind]:
    """Every guarantee whose hypotheses the box meets, strongest first."""
    if box.n != n:
        raise ValueError(f"box has {box.n + 1} sets, expected {n + 1}")
    if n < 2 or _is_zero_set(box.sets[n]):
        return []
    p = box.spec.p
    middle = box.sizes[1:n]
    out = []
    if all(s >= 3 for s in middle):
        out.append(GuaranteeKind(Tag.GENERAL, squares_monomial(n)))
    if p == 2 and all(s >= 2 for s in middle):
        out.append(GuaranteeKind(Tag.CHAR2, tuple(e // 2 for e in squares_monomial(n))))
    if n > 2 and (n - 2) % p != 0 and box.sizes[1] >= n and box.sizes[n - 1] >= n:
        out.append(GuaranteeKind(Tag.SPARSE, sparse_monomial(n)))
    return out


def classify_box(n: int, box: Box) -> GuaranteeKind:
    """Strongest applicable guarantee (GENERAL > CHAR2 > SPARSE), or the None tag."""
    found = applicable_guarantees(n, box)
    return found[0] if found else NO_GUARANTEE


def certifying_polynomial(n: int, kind: GuaranteeKind) -> MultiPoly:
    """The polynomial the guarantee's monomial refers to."""
    disc = symbolic_discriminant(n)
    if kind.tag is Tag.CHAR2:
        return mp_sqrt_char2(mp_mod_p(disc, 2))
    return disc


def search_squarefree(box: Box) -> tuple[Witness | None, int]:
    """Lexicographic scan for a squarefree polynomial; returns (witness, steps)."""
    _check_box_size(box)
    spec = box.spec
    steps = 0
    for point in box:
        steps += 1
        codes = [x.code for x in point]
        while codes and codes[-1] == 0:
            codes.pop()
        if squarefree_codes(spec, codes):
            disc = None
            if len(codes) >= 3:
                disc = up_discriminant(UniPoly.from_codes(spec, codes))
                if not disc:
                    raise AssertionError(f"squarefree {codes} has zero discriminant")
            return Witness(point, disc, steps), steps
    return None, steps


def find_squarefree_in_box(n: int, box: Box) -> tuple[GuaranteeKind, Witness | None]:
    """Classify the box, then return its first squarefree point.

    Under any guarantee a miss raises :class:`GuaranteeViolation`.
    """
    if n < 2:
        raise ValueError("degree must be at least 2")
    kind = classify_box(n, box)
    witness, _ = search_squarefree(box)
    if witness is None and kind:
        raise GuaranteeViolation(f"{kind} box {box.describe()} has no squarefree point")
    return kind, witness


# --- qualifying box families -------------------------------------------------


def _family_sizes(n: int, tag: Tag) -> list[int]:
    """Coordinate set sizes of the minimal family for a guarantee."""
    if tag is Tag.GENERAL:
        return [1] + [3] * (n - 1) + [1]
    if tag is Tag.CHAR2:
        return [1] + [2] * (n - 1) + [1]
    if tag is Tag.SPARSE:
        sizes = [1] * (n + 1)
        sizes[1] = sizes[n - 1] = n
        return sizes
    raise ValueError(f"no family for {tag}")


def family_feasible(spec: FieldSpec, n: int, tag: Tag) -> bool:
    if tag is Tag.CHAR2 and spec.p != 2:
        return False
    if tag is Tag.SPARSE and (n <= 2 or (n - 2) % spec.p == 0):
        return False
    return all(s <= spec.q for s in _family_sizes(n, tag))


def qualifying_family_size(spec: FieldSpec, n: int, tag: Tag) -> int:
    """Number of boxes with |S_0| = |S_n| = 1, S_n != {0}, and the tag's middle sizes."""
    if not family_feasible(spec, n, tag):
        return 0
    q = spec.q
    sizes = _family_sizes(n, tag)
    total = q * (q - 1)
    for s in sizes[1:n]:
        total *= comb(q, s)
    return total


def iter_qualifying_boxes(spec: FieldSpec, n: int, tag: Tag) -> Iterator[Box]:
    """All boxes of the tag's minimal family, in a fixed order."""
    if not family_feasible(spec, n, tag):
        return
    q = spec.q
    sizes = _family_sizes(n, tag)
    elems = [FieldElement(spec, c) for c in range(q)]
    pools = [[(x,) for x in elems]]
    pools += [list(combinations(elems, s)) for s in sizes[1:n]]
    pools.append([(x,) for x in elems[1:]])
    for sets in product(*pools):
        yield Box(spec, sets)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_subset(items: Sequence, size: int, rng: np.random.Generator) -> list:
    """``size`` distinct items chosen by a partial Fisher-Yates shuffle."""
    if not 0 <= size <= len(items):
        raise ValueError(f"cannot draw {size} of {len(items)} items")
    pool = list(items)
    for i in range(size):
        j = i + int(rng.integers(len(pool) - i))
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:size]


def sample_qualifying_boxes(spec: FieldSpec, n: int, tag: Tag, count: int, seed: int) -> Iterator[Box]:
    """``count`` random boxes of the tag's family (with replacement), seeded."""
    if not family_feasible(spec, n, tag):
        return
    rng = make_rng(seed)
    sizes = _family_sizes(n, tag)
    elems = [FieldElement(spec, c) for c in range(spec.q)]
    for _ in range(count):
        sets = [random_subset(elems, sizes[0], rng)]
        sets += [random_subset(elems, s, rng) for s in sizes[1:n]]
        sets.append(random_subset(elems[1:], 1, rng))
        yield Box(spec, tuple(tuple(s) for s in sets))
