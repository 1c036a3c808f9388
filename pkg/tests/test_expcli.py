import csv
import io
import subprocess
import sys
from fractions import Fraction

import pytest

from sqfree.expcli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_USAGE,
    DENSITY_COLUMNS,
    THEOREM_COLUMNS,
    count_monic_squarefree,
    decimal6,
    density_records,
    density_sweep,
    expected_monic_squarefree,
    main,
    verify_monomials,
)
from sqfree.field_core import make_field


def run(argv, capsys):
    rc = main(argv)
    out, err = capsys.readouterr()
    return rc, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


# --- show-disc ------------------------------------------------------------------


def test_show_disc_n2_exact(capsys):
    rc, out, _ = run(["show-disc", "--n", "2"], capsys)
    assert rc == EXIT_OK
    assert out == "1*A_1^2 + -4*A_0^1*A_2^1\n"


def test_show_disc_n3_has_five_terms(capsys):
    rc, out, _ = run(["show-disc", "--n", "3"], capsys)
    assert rc == EXIT_OK and len(out.strip().split(" + ")) == 5


@pytest.mark.parametrize("n", ["1", "8"])
def test_show_disc_out_of_range(n, capsys):
    rc, _, err = run(["show-disc", "--n", n], capsys)
    assert rc == EXIT_USAGE and "show-disc" in err


# --- verify-monomials ---------------------------------------------------------------


def test_verify_monomials_rows():
    rows = verify_monomials(5)
    assert [r.n for r in rows] == [2, 3, 4, 5]
    assert all(r.ok for r in rows)
    assert rows[-1].trinomial_expected == 27 and abs(rows[-1].trinomial_coeff) == 27
    assert rows[0].trinomial_coeff is None


def test_verify_monomials_cli(capsys):
    rc, out, _ = run(["verify-monomials", "--n-max", "3"], capsys)
    assert rc == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 2 and "FAIL" not in out
    assert "identity ok" in lines[1] and "char2-sqrt ok" in lines[1]


@pytest.mark.parametrize("n_max", ["1", "9"])
def test_verify_monomials_usage(n_max, capsys):
    assert run(["verify-monomials", "--n-max", n_max], capsys)[0] == EXIT_USAGE


# --- theorem-check --------------------------------------------------------------------


def test_theorem_check_char2_exhaustive(capsys):
    rc, out, err = run(["theorem-check", "--p", "2", "--n", "3", "--mode", "exhaustive", "--kind", "char2"], capsys)
    assert rc == EXIT_OK
    rows = rows_of(out)
    assert list(rows[0]) == THEOREM_COLUMNS
    assert [r["box"] for r in rows] == ["{0};{0,1};{0,1};{1}", "{1};{0,1};{0,1};{1}"]
    assert [r["witness"] for r in rows] == ["(0,1,1,1)", "(1,0,0,1)"]
    assert all(r["guarantee"] == "ThmChar2" for r in rows)
    assert "2/2" in err


def test_theorem_check_sampled(capsys):
    argv = ["theorem-check", "--p", "5", "--n", "3", "--mode", "sample", "--samples", "100", "--seed", "42", "--kind", "general"]
    rc, out, err = run(argv, capsys)
    rows = rows_of(out)
    assert rc == EXIT_OK and len(rows) == 100
    assert all(r["witness_found"] == "1" for r in rows)
    assert "100/100" in err


def test_theorem_check_sparse_refused(capsys):
    rc, _, err = run(["theorem-check", "--p", "3", "--n", "5", "--kind", "sparse", "--mode", "exhaustive"], capsys)
    assert rc == EXIT_USAGE and "congruent to 2 mod 3" in err


def test_theorem_check_needs_seed_when_sampling(capsys):
    assert run(["theorem-check", "--p", "5", "--n", "3", "--mode", "sample"], capsys)[0] == EXIT_USAGE


def test_theorem_check_bad_field(capsys):
    assert run(["theorem-check", "--p", "4", "--n", "3"], capsys)[0] == EXIT_USAGE


def test_theorem_check_reproducible(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        argv = ["theorem-check", "--p", "7", "--n", "4", "--mode", "sample", "--samples", "30", "--seed", "9", "--out", str(path)]
        assert main(argv) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()
    other = tmp_path / "c.csv"
    main(["theorem-check", "--p", "7", "--n", "4", "--mode", "sample", "--samples", "30", "--seed", "10", "--out", str(other)])
    assert other.read_bytes() != paths[0].read_bytes()


# --- count-squarefree -----------------------------------------------------------


@pytest.mark.parametrize("q,n,want", [(2, 2, 2), (3, 2, 6), (5, 4, 500)])
def test_count_examples(q, n, want):
    assert count_monic_squarefree(make_field(q), n) == want == expected_monic_squarefree(q, n)


def test_count_cli(capsys):
    rc, out, _ = run(["count-squarefree", "--p", "2", "--k", "2", "--n", "3"], capsys)
    assert rc == EXIT_OK and "count=48 expected=48 ok" in out


def test_count_budget(capsys):
    assert run(["count-squarefree", "--p", "101", "--n", "5"], capsys)[0] == EXIT_USAGE


# --- density -------------------------------------------------------------------------


def test_decimal6():
    assert decimal6(Fraction(100, 101)) == "0.990099"
    assert decimal6(Fraction(1)) == "1.000000"
    assert decimal6(Fraction(1, 3)) == "0.333333"


def test_density_full_cube_is_exact(capsys):
    rc, out, _ = run(["density", "--p", "7", "--n", "3", "--cube-size", "7", "--trials", "2", "--seed", "1"], capsys)
    rows = rows_of(out)
    assert rc == EXIT_OK
    assert list(rows[0]) == DENSITY_COLUMNS
    assert [r["trial"] for r in rows] == ["0", "1", "all"]
    for r in rows:
        assert Fraction(int(r["density_num"]), int(r["density_den"])) == Fraction(6, 7)


def test_density_records_bounds():
    recs = density_records(make_field(11), 3, 2, 50, seed=7)
    agg = recs[-1]
    assert agg.total_count == 8 * 50
    assert agg.squarefree_count == sum(r.squarefree_count for r in recs[:-1])
    assert all(0 <= r.squarefree_count <= r.total_count for r in recs)
    assert 0 < agg.density < 1


def test_density_sweep_reports_trend():
    aggregates, warnings = density_sweep(make_field(7), 2, [2, 7], 20, seed=3)
    assert [a.C for a in aggregates] == [2, 7]
    assert aggregates[-1].density == Fraction(6, 7)
    assert all(isinstance(w, str) for w in warnings)


@pytest.mark.parametrize("C", ["0", "8"])
def test_density_bad_cube_size(C, capsys):
    argv = ["density", "--p", "7", "--n", "3", "--cube-size", C, "--trials", "1", "--seed", "1"]
    assert run(argv, capsys)[0] == EXIT_USAGE


def test_density_seed_required(capsys):
    assert run(["density", "--p", "7", "--n", "3", "--cube-size", "3"], capsys)[0] == EXIT_USAGE


def test_density_reproducible(capsys):
    argv = ["density", "--p", "13", "--n", "3", "--cube-size", "4", "--trials", "5", "--seed", "11"]
    first = run(argv, capsys)[1]
    assert run(argv, capsys)[1] == first


def test_full_cube_mismatch_is_failure(monkeypatch, capsys):
    import sqfree.expcli as cli

    monkeypatch.setattr(cli, "expected_monic_squarefree", lambda q, n: -1)
    argv = ["density", "--p", "5", "--n", "2", "--cube-size", "5", "--trials", "1", "--seed", "1"]
    assert run(argv, capsys)[0] == EXIT_FAIL


# --- config file and entry points ------------------------------------------------------------


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# density run\np = 7\nn = 3\ncube-size = 7\ntrials = 1\nseed = 5\n")
    rc, out, _ = run(["--config", str(cfg), "density"], capsys)
    assert rc == EXIT_OK and rows_of(out)[0]["C"] == "7"
    # flags win over the file
    rc, out, _ = run(["--config", str(cfg), "density", "--cube-size", "3"], capsys)
    assert rc == EXIT_OK and rows_of(out)[0]["C"] == "3"


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(["--config", str(cfg), "show-disc", "--n", "2"], capsys)[0] == EXIT_USAGE
    cfg.write_text("just words\n")
    assert run(["--config", str(cfg), "show-disc", "--n", "2"], capsys)[0] == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sqfree", "show-disc", "--n", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1*A_1^2 + -4*A_0^1*A_2^1"
