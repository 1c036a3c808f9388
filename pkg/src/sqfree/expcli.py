"""Experiment harness and command-line front end.

Subcommands::

    sqfree verify-monomials --n-max N
    sqfree theorem-check --p P --k K --n N --mode exhaustive|sample --samples S --seed SEED --out FILE.csv
    sqfree count-squarefree --p P --k K --n N
    sqfree density --p P --k K --n N --cube-size C --trials T --seed SEED --out FILE.csv
    sqfree show-disc --n N

A flat ``key = value`` file passed with ``--config`` supplies defaults for the
flags (keys are flag names without the dashes); explicit flags win.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or budget error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

from .field_core import FieldSpec, NonPrime, make_field
from .nullsatz import (
    Tag,
    applicable_guarantees,
    family_feasible,
    find_squarefree_in_box,
    iter_qualifying_boxes,
    make_rng,
    qualifying_family_size,
    random_subset,
    sample_qualifying_boxes,
)
from .sympoly import (
    mp_coefficient,
    mp_mod_p,
    mp_serialize,
    mp_sqrt_char2,
    symbolic_discriminant,
    verify_prop_squares,
    verify_prop_trinomial,
    verify_trinomial_identity,
)
from .unipoly import squarefree_codes

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BUDGET = 10**8
EXHAUSTIVE_LIMIT = 10**5
SHOW_DISC_MAX = 7
VERIFY_MAX = 8

DENSITY_COLUMNS = ["q", "n", "C", "trial", "squarefree_count", "total_count", "density_num", "density_den", "density_dec"]
THEOREM_COLUMNS = [
    "index", "q", "n", "family", "box", "guarantee", "all_guarantees",
    "witness_found", "witness", "disc_value", "steps",
]  # fmt: skip


class UsageError(Exception):
    pass


# --- monomial verification ---------------------------------------------------


@dataclass
class MonomialRow:
    n: int
    squares_coeff: int
    trinomial_coeff: int | None
    trinomial_expected: int | None
    identity_signs: tuple[int, int] | None
    char2_ok: bool

    @property
    def ok(self) -> bool:
        good = abs(self.squares_coeff) == 1 and self.char2_ok
        if self.trinomial_expected is not None:
            good = good and abs(self.trinomial_coeff) == self.trinomial_expected
            good = good and self.identity_signs is not None
        return good


def char2_sqrt_check(n: int) -> bool:
    """Disc mod 2 is a square whose root contains A_1 ... A_{n-1} with coefficient 1."""
    g = mp_sqrt_char2(mp_mod_p(symbolic_discriminant(n), 2))
    return mp_coefficient(g, (0,) + (1,) * (n - 1) + (0,)) == 1


def verify_monomials(n_max: int) -> list[MonomialRow]:
    if not 2 <= n_max <= VERIFY_MAX:
        raise UsageError(f"--n-max must lie in [2, {VERIFY_MAX}]")
    rows = []
    for n in range(2, n_max + 1):
        tri = expected = signs = None
        if n >= 3:
            tri = verify_prop_trinomial(n)
            expected = (n - 2) ** (n - 2)
            check = verify_trinomial_identity(n)
            signs = (check.outer_sign, check.inner_sign) if check else None
        rows.append(MonomialRow(n, verify_prop_squares(n), tri, expected, signs, char2_sqrt_check(n)))
    return rows


def cmd_verify_monomials(n_max: int, out=None) -> int:
    out = out or sys.stdout
    rows = verify_monomials(n_max)
    mark = {True: "ok", False: "FAIL"}
    for r in rows:
        line = f"n={r.n}  squares coeff={r.squares_coeff:+d} (|c|=1 {mark[abs(r.squares_coeff) == 1]})"
        if r.trinomial_expected is not None:
            line += (
                f"  trinomial coeff={r.trinomial_coeff:+d} (|c|={r.trinomial_expected}"
                f" {mark[abs(r.trinomial_coeff) == r.trinomial_expected]})"
                f"  identity {mark[r.identity_signs is not None]} signs={r.identity_signs}"
            )
        line += f"  char2-sqrt {mark[r.char2_ok]}"
        print(line, file=out)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAIL


# --- theorem instance checks -------------------------------------------------

TAG_NAMES = {"general": Tag.GENERAL, "char2": Tag.CHAR2, "sparse": Tag.SPARSE}


def theorem_check_rows(
    spec: FieldSpec,
    n: int,
    tags: Sequence[Tag],
    mode: str,
    samples: int = 1000,
    seed: int | None = None,
) -> list[dict]:
    """Run the witness search over qualifying boxes of each family.

    ``mode`` is ``exhaustive``, ``sample`` or ``auto`` (exhaustive up to
    ``EXHAUSTIVE_LIMIT`` boxes, sampled beyond).  Every row records the box,
    its guarantee and the witness; a guaranteed box without a witness raises.
    """
    rows = []
    index = 0
    for tag in tags:
        count = qualifying_family_size(spec, n, tag)
        if not count:
            continue
        use_sample = mode == "sample" or (mode == "auto" and count > EXHAUSTIVE_LIMIT)
        if use_sample:
            if seed is None:
                raise UsageError("sampled mode needs a seed")
            # one stream per family so adding families does not shift the others
            boxes: Iterable = sample_qualifying_boxes(spec, n, tag, samples, seed + list(Tag).index(tag))
        else:
            if count > BUDGET // 1000:
                raise UsageError(f"{count} boxes is too many for exhaustive mode")
            boxes = iter_qualifying_boxes(spec, n, tag)
        for box in boxes:
            kind, witness = find_squarefree_in_box(n, box)
            steps = witness.steps if witness else len(box)
            rows.append(
                {
                    "index": index,
                    "q": spec.q,
                    "n": n,
                    "family": tag.value,
                    "box": box.describe(),
                    "guarantee": str(kind),
                    "all_guarantees": "|".join(str(g) for g in applicable_guarantees(n, box)) or "None",
                    "witness_found": int(witness is not None),
                    "witness": witness.describe() if witness else "",
                    "disc_value": str(witness.disc_value) if witness and witness.disc_value is not None else "",
                    "steps": steps,
                }
            )
            index += 1
    return rows


def _write_csv(rows: list[dict], columns: list[str], out: str | None, stdout) -> None:
    buf = io.StringIO(newline="")
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if out:
        Path(out).write_text(buf.getvalue(), encoding="utf-8")
    else:
        stdout.write(buf.getvalue())


def cmd_theorem_check(p, k, n, mode, samples, seed, kind="all", out=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    spec = _field(p, k)
    if n is None or n < 2:
        raise UsageError("--n must be at least 2")
    if mode not in ("exhaustive", "sample", "auto"):
        raise UsageError(f"unknown mode {mode!r}")
    if kind == "all":
        tags = [t for t in TAG_NAMES.values() if family_feasible(spec, n, t)]
        if not tags:
            raise UsageError(f"no guarantee applies to n={n} over {spec}")
    else:
        tag = TAG_NAMES.get(kind)
        if tag is None:
            raise UsageError(f"unknown guarantee {kind!r}")
        if tag is Tag.SPARSE and n > 2 and (n - 2) % spec.p == 0:
            raise UsageError(f"sparse guarantee refused: n={n} is congruent to 2 mod {spec.p}")
        if not family_feasible(spec, n, tag):
            raise UsageError(f"{kind} guarantee does not apply to n={n} over {spec}")
        tags = [tag]
    try:
        rows = theorem_check_rows(spec, n, tags, mode, samples, seed)
    except AssertionError as exc:
        print(f"guarantee violation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write_csv(rows, THEOREM_COLUMNS, out, stdout)
    found = sum(r["witness_found"] for r in rows)
    print(f"{found}/{len(rows)} guaranteed boxes yielded a witness", file=sys.stderr)
    return EXIT_OK if found == len(rows) else EXIT_FAIL


# --- squarefree counts -------------------------------------------------------


def count_monic_squarefree(spec: FieldSpec, n: int) -> int:
    """Count monic squarefree polynomials of degree n by full enumeration."""
    if spec.q**n > BUDGET:
        raise UsageError(f"q^n = {spec.q ** n} exceeds the budget {BUDGET}")
    total = 0
    for low in product(range(spec.q), repeat=n):
        if squarefree_codes(spec, [*low, 1]):
            total += 1
    return total


def expected_monic_squarefree(q: int, n: int) -> int:
    return q if n == 1 else q**n - q ** (n - 1)


def cmd_count_squarefree(p, k, n, stdout=None) -> int:
    stdout = stdout or sys.stdout
    spec = _field(p, k)
    if n is None or n < 1:
        raise UsageError("--n must be positive")
    got = count_monic_squarefree(spec, n)
    want = expected_monic_squarefree(spec.q, n)
    status = "ok" if got == want else "FAIL"
    print(f"q={spec.q} n={n} squarefree monic count={got} expected={want} {status}", file=stdout)
    return EXIT_OK if got == want else EXIT_FAIL


# --- density experiments -----------------------------------------------------


@dataclass(frozen=True)
class DensityRecord:
    q: int
    n: int
    C: int
    trial: int | str
    squarefree_count: int
    total_count: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.squarefree_count, self.total_count)

    def row(self) -> dict:
        d = self.density
        return {
            "q": self.q,
            "n": self.n,
            "C": self.C,
            "trial": self.trial,
            "squarefree_count": self.squarefree_count,
            "total_count": self.total_count,
            "density_num": d.numerator,
            "density_den": d.denominator,
            "density_dec": decimal6(d),
        }


def decimal6(x: Fraction) -> str:
    """Render a nonnegative fraction with six decimals, rounding half to even."""
    scaled = round(x * 10**6)
    return f"{scaled // 10**6}.{scaled % 10**6:06d}"


def count_cube(spec: FieldSpec, sets: Sequence[Sequence[int]]) -> int:
    """Squarefree tuples in a monic cube; ``sets`` holds codes for S_0..S_{n-1}."""
    return sum(1 for low in product(*sets) if squarefree_codes(spec, [*low, 1]))


def density_records(spec: FieldSpec, n: int, C: int, trials: int, seed: int) -> list[DensityRecord]:
    """Per-trial squarefree counts in random monic cubes, plus an aggregate record.

    Each trial fixes ``S_n = {1}`` and draws ``S_0, ..., S_{n-1}`` as uniform
    random C-subsets of the field.
    """
    q = spec.q
    if C < 1:
        raise UsageError("--cube-size must be at least 1")
    if C > q:
        raise UsageError(f"cube size {C} exceeds the field order {q}")
    if trials < 1:
        raise UsageError("--trials must be at least 1")
    if C**n * trials > BUDGET:
        raise UsageError(f"C^n * trials = {C ** n * trials} exceeds the budget {BUDGET}")
    rng = make_rng(seed)
    elems = list(range(q))
    records = []
    seen: dict[tuple, int] = {}  # with C = q every trial draws the same cube
    for t in range(trials):
        sets = tuple(tuple(sorted(random_subset(elems, C, rng))) for _ in range(n))
        if sets not in seen:
            seen[sets] = count_cube(spec, sets)
        records.append(DensityRecord(q, n, C, t, seen[sets], C**n))
    records.append(
        DensityRecord(q, n, C, "all", sum(r.squarefree_count for r in records), C**n * trials)
    )
    return records


def density_sweep(spec: FieldSpec, n: int, cube_sizes: Sequence[int], trials: int, seed: int, tol=Fraction(1, 20)):
    """Aggregate density for each cube size, with trend warnings.

    Returns ``(aggregates, warnings)``.  Warnings flag a decrease between
    consecutive cube sizes and a final value more than ``tol`` below ``1 - 1/q``.
    """
    aggregates = [density_records(spec, n, C, trials, seed)[-1] for C in cube_sizes]
    warnings = []
    for a, b in zip(aggregates, aggregates[1:]):
        if b.density < a.density:
            warnings.append(f"density dropped from C={a.C} ({decimal6(a.density)}) to C={b.C} ({decimal6(b.density)})")
    endpoint = 1 - Fraction(1, spec.q)
    if aggregates and aggregates[-1].density < endpoint - tol:
        warnings.append(f"final density {decimal6(aggregates[-1].density)} is below 1 - 1/q - {tol}")
    for w in warnings:
        log.warning(w)
    return aggregates, warnings


def cmd_density(p, k, n, cube_size, trials, seed, out=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    spec = _field(p, k)
    if n is None or n < 1:
        raise UsageError("--n must be positive")
    if seed is None:
        raise UsageError("--seed is required")
    if cube_size is None or trials is None:
        raise UsageError("--cube-size and --trials are required")
    records = density_records(spec, n, cube_size, trials, seed)
    _write_csv([r.row() for r in records], DENSITY_COLUMNS, out, stdout)
    if cube_size == spec.q:
        want = expected_monic_squarefree(spec.q, n)
        bad = [r for r in records[:-1] if r.squarefree_count != want]
        if bad:
            print(f"full-cube count {bad[0].squarefree_count} != {want}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


# --- discriminant display ----------------------------------------------------


def cmd_show_disc(n, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if n is None or not 2 <= n <= SHOW_DISC_MAX:
        raise UsageError(f"show-disc supports 2 <= n <= {SHOW_DISC_MAX}")
    print(mp_serialize(symbolic_discriminant(n)), file=stdout)
    return EXIT_OK


# --- argument handling -------------------------------------------------------


def _field(p, k) -> FieldSpec:
    if p is None:
        raise UsageError("--p is required")
    try:
        return make_field(p, k or 1)
    except NonPrime as exc:
        raise UsageError(str(exc)) from exc


def load_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqfree", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="key = value file with flag defaults")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def field_args(sp):
        sp.add_argument("--p", type=int)
        sp.add_argument("--k", type=int, default=1)
        sp.add_argument("--n", type=int)

    sp = sub.add_parser("verify-monomials", help="check both discriminant monomial coefficients")
    sp.add_argument("--n-max", type=int, default=5)

    sp = sub.add_parser("theorem-check", help="witness search over qualifying boxes")
    field_args(sp)
    sp.add_argument("--mode", default="auto", choices=["exhaustive", "sample", "auto"])
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--kind", default="all", choices=["all", *TAG_NAMES])
    sp.add_argument("--out")

    sp = sub.add_parser("count-squarefree", help="compare the monic squarefree count with q^n - q^(n-1)")
    field_args(sp)

    sp = sub.add_parser("density", help="squarefree density in random monic cubes")
    field_args(sp)
    sp.add_argument("--cube-size", type=int)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")

    sp = sub.add_parser("show-disc", help="print the symbolic discriminant")
    sp.add_argument("--n", type=int)
    return parser


def _subparser(parser: argparse.ArgumentParser, command: str) -> argparse.ArgumentParser:
    return next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[command]


def _typed(parser: argparse.ArgumentParser, command: str, cfg: dict[str, str]) -> dict:
    sub = _subparser(parser, command)
    out = {}
    for action in sub._actions:
        if action.dest in cfg:
            raw = cfg[action.dest]
            out[action.dest] = action.type(raw) if action.type else raw
    unknown = set(cfg) - {a.dest for a in sub._actions}
    if unknown:
        raise UsageError(f"unknown config keys for {command}: {', '.join(sorted(unknown))}")
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.config:
            defaults = _typed(parser, args.command, load_config(args.config))
            _subparser(parser, args.command).set_defaults(**defaults)
            args = parser.parse_args(argv)
        if args.command == "verify-monomials":
            return cmd_verify_monomials(args.n_max)
        if args.command == "theorem-check":
            return cmd_theorem_check(args.p, args.k, args.n, args.mode, args.samples, args.seed, args.kind, args.out)
        if args.command == "count-squarefree":
            return cmd_count_squarefree(args.p, args.k, args.n)
        if args.command == "density":
            return cmd_density(args.p, args.k, args.n, args.cube_size, args.trials, args.seed, args.out)
        if args.command == "show-disc":
            return cmd_show_disc(args.n)
    except UsageError as exc:
        print(f"sqfree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
