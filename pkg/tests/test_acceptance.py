"""One test per acceptance criterion; each records a PASS/FAIL line for the run summary."""
import functools
import random
import time
from fractions import Fraction

import pytest

import conftest
from conftest import naive_power, naive_reduce
from mrq import ctest, dwz, seqcheck
from mrq.cli import check_negative_control, check_relators
from mrq.envelope import pl_minimax
from mrq.morphisms import is_primitive_rank2
from mrq.runs import PowerExpr
from mrq.words import Alphabet, Word, is_proper_power, random_word

F = Fraction


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                line = f"[{number:>2}] FAIL  {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
                conftest.ACCEPTANCE_LINES.append(line)
                raise
            took = time.perf_counter() - t0
            conftest.ACCEPTANCE_LINES.append(f"[{number:>2}] PASS  {title} ({took:.2f}s){': ' + detail if detail else ''}")

        return run

    return wrap


@criterion(1, "envelope minimizers")
def test_c01_envelope_minimizers():
    for s, expected in (("g", (F(0), F(2))), ("u", (F(1, 2), F(3)))):
        terms = dwz.envelope_terms(s)
        pl_minimax(terms)  # warm
        t0 = time.perf_counter()
        got = pl_minimax(terms)
        took = time.perf_counter() - t0
        assert got == expected and all(isinstance(v, Fraction) for v in got)
        assert took < 1e-3, f"{s}: {took * 1e3:.3f} ms"
    return "(0, 2) and (1/2, 3)"


@criterion(2, "shortening convergence")
def test_c02_shortening_convergence():
    t0 = time.perf_counter()
    ks = (25, 50, 100, 200)
    notes = []
    for s in ("g", "u"):
        _, floor = dwz.envelope_minimum(s)
        devs = []
        for k in ks:
            r = dwz.shorten(k, s=s)
            assert r.q_star == 0
            if s == "g":
                assert abs(r.ell_star) <= 3
            else:
                assert abs(r.ell_star - F(k, 2)) <= 3
            devs.append(abs(r.normalized - floor))
        assert devs[-1] <= F(5, 100)
        assert all(b <= a for a, b in zip(devs, devs[1:])), devs
        notes.append(f"{s} dev@200={float(devs[-1]):.2e}")
    assert time.perf_counter() - t0 < 120
    return ", ".join(notes)


@criterion(3, "homomorphy of the family")
def test_c03_homomorphy():
    t0 = time.perf_counter()
    ok, details = check_relators(samples=100, seed=0, bound=50)
    assert ok, details["failures"]
    ok, details = check_negative_control(0)
    assert ok and details["failing_relators"] == ["R4"]
    assert time.perf_counter() - t0 < 60
    return "100 triples hold, mutated family fails R4 only"


@criterion(4, "z-length law")
def test_c04_z_length_law():
    tr = dwz.w_length()
    pos = {dwz.z_image_length(dwz.HomParams(k, 0, 0)) - 6 * k * tr for k in range(5, 51)}
    neg = {dwz.z_image_length(dwz.HomParams(k, 0, 0)) - 6 * -k * tr for k in range(-50, -4)}
    assert len(pos) == 1 and len(neg) == 1
    return f"offset {pos.pop():+d} for k>0, {neg.pop():+d} for k<0"


@criterion(5, "homology separation")
def test_c05_homology():
    t0 = time.perf_counter()
    rep = dwz.homology_report((-5, -1, 0, 1, 5))
    took = time.perf_counter() - t0
    assert rep["G_w"] == {"betti": 4, "torsion": []}
    assert set(rep["M_tilde"]) == {"-5", "-1", "0", "1", "5"}
    assert all(v == {"betti": 3, "torsion": []} for v in rep["M_tilde"].values())
    assert took < 1.0
    return "Z^4 vs Z^3"


@criterion(6, "C-test exhaustive sweep")
def test_c06_ctest_sweep():
    t0 = time.perf_counter()
    rep = ctest.ctest_sweep(2)
    assert rep["pairs_checked"] == 17 ** 4
    assert rep["counterexamples"] == 0 and rep["witnessed"] > 0
    assert time.perf_counter() - t0 < 600
    return f"{rep['witnessed']} witnessed, 0 counterexamples"


@criterion(7, "cyclicity criterion")
def test_c07_cyclicity():
    rep = ctest.cyclicity_sweep(1000, 4, 0)
    assert rep["violations"] == 0
    assert 0 < rep["cyclic"] < 1000
    return f"{rep['cyclic']} cyclic of 1000"


@criterion(8, "no-roots facts")
def test_c08_no_roots():
    B = Alphabet(("b1", "b2"))
    w = ctest.ivanov_in(B, ("b1", "b2"))
    assert is_proper_power(w) is None
    assert is_proper_power(B.word("b1 b2 b1^4")) is None
    assert not is_primitive_rank2(ctest.build_ivanov().pattern)


# A concrete free-group instance violates the inequality (see test_seqcheck), so
# this sweep finds genuine violations. It is kept visible rather than weakened.
@pytest.mark.xfail(strict=True, reason="inequality fails in F2, e.g. a=x1^-1, b=x2^-1, z=x2^2 x1^-1, N=4")
@criterion(9, "twist-growth inequality")
def test_c09_twist_growth():
    rep = seqcheck.twist_sweep(500, 0)
    assert rep["violations"] == 0, f"{rep['violations']} of 500 violate, first {rep['violation_list'][0]}"


@criterion(10, "engine oracle equivalence")
def test_c10_powerexpr_vs_naive():
    X = Alphabet.standard(2)
    rng = random.Random(0)
    mismatches = 0
    for _ in range(10_000):
        blocks = []
        for _ in range(rng.randint(1, 4)):
            base = random_word(X, rng.randint(1, 8), rng)
            blocks.append((base, rng.randint(-50, 50)))
        expr = PowerExpr(X, blocks)
        naive = []
        for base, e in blocks:
            naive_reduce(naive_power(list(base.letters), e), naive)
        got = expr.expand()
        if list(got.letters) != naive or expr.length != len(got) or got != Word(X, naive):
            mismatches += 1
    assert mismatches == 0
    return "10000 expressions"
