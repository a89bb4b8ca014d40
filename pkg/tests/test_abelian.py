import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from mrq.abelian import HomologyResult, IntMatrix, homology_of_presentation, smith_normal_form
from mrq.words import Alphabet, parse_word


def minors_gcd(rows, k):
    """gcd of all k x k minors, via cofactor expansion (independent of Bareiss)."""

    def det(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))

    g = 0
    r, c = len(rows), len(rows[0])
    for ri in itertools.combinations(range(r), k):
        for ci in itertools.combinations(range(c), k):
            g = gcd(g, det([[rows[i][j] for j in ci] for i in ri]))
    return g


def oracle_invariants(rows):
    """Invariant factors d_k = D_k / D_{k-1} from determinantal divisors."""
    out, prev = [], 1
    for k in range(1, min(len(rows), len(rows[0])) + 1):
        dk = minors_gcd(rows, k)
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def test_snf_examples():
    d, _, _ = smith_normal_form(IntMatrix.identity(3))
    assert d == IntMatrix.identity(3)
    d, _, _ = smith_normal_form(IntMatrix.zeros(2, 3))
    assert d == IntMatrix.zeros(2, 3)
    d, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert d.diagonal() == [1, 6]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_snf_matches_determinantal_divisors(rows):
    m = IntMatrix.from_rows(rows)
    d, u, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(u.determinant()) == 1 and abs(v.determinant()) == 1
    diag = d.diagonal()
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d[i, j] == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert nz == oracle_invariants(rows)


@given(matrices, st.randoms(use_true_random=False))
def test_snf_permutation_invariant(rows, rnd):
    perm_rows = rows[:]
    rnd.shuffle(perm_rows)
    cols = list(range(len(rows[0])))
    rnd.shuffle(cols)
    shuffled = [[r[j] for j in cols] for r in perm_rows]
    a = smith_normal_form(IntMatrix.from_rows(rows))[0].diagonal()
    b = smith_normal_form(IntMatrix.from_rows(shuffled))[0].diagonal()
    assert a == b


def test_determinant():
    assert IntMatrix.from_rows([[2, 1], [7, 4]]).determinant() == 1
    assert IntMatrix.from_rows([[0, 1, 2], [1, 0, 3], [4, -3, 8]]).determinant() == -2
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2]]).determinant()


def test_homology_examples():
    A = Alphabet(("x",))
    assert homology_of_presentation(A, [parse_word("x^2", A)]) == HomologyResult(0, (2,))
    X = Alphabet.standard(2)
    assert homology_of_presentation(X, []) == HomologyResult(2, ())
    assert homology_of_presentation(X, [parse_word("[x1,x2]", X)]) == HomologyResult(2, ())
    r = homology_of_presentation(X, [parse_word("x1^2 x2^4", X), parse_word("x1^6 x2^-2", X)])
    assert r == HomologyResult(0, (2, 14))
    assert str(r) == "Z/2 + Z/14"
