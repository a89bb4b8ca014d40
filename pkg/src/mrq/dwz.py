"""The double-edged double ``D_{w,z}`` and its restricted homomorphisms to ``F(b1, b2)``.

Every restricted homomorphism is ``h_{k,l,q}``::

    b_i -> b_i                  a_i -> w^k b_i w^-k
    c_i -> w^l b_i w^-l         d_i -> w^(k+l) b_i w^-(k+l)
    gamma -> h(z(a,b))^q w^-l

with ``w = w(b1, b2)`` the Ivanov word and ``z(p, q) = p1 q2 p1 q1 p1 q1``.
Images are held as :class:`~mrq.runs.RunWord`, so lengths at ``|k|`` in the
hundreds (millions of letters) are exact and cheap.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from mrq.abelian import HomologyResult, homology_of_presentation
from mrq.ctest import X, build_ivanov, ivanov_expr
from mrq.envelope import PLTerm, envelope, pl_minimax
from mrq.morphisms import EndoMap, LazyMap, apply
from mrq.runs import PowerExpr, RunWord
from mrq.words import Alphabet, Word, product_of

D = Alphabet(("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2", "gamma"))
B = Alphabet(("b1", "b2"))
M = Alphabet(("a1", "a2", "b1", "b2", "gamma"))


class WindowBoundaryError(RuntimeError):
    """The optimum sits on the edge of the search window."""


def z_word(alphabet: Alphabet, p: str, q: str) -> Word:
    """``z(p, q) = p1 q2 p1 q1 p1 q1`` in the generators named ``p1, p2, q1, q2``."""
    return alphabet.word(f"{p}1 {q}2 {p}1 {q}1 {p}1 {q}1")


def _ivanov_block_expr(alphabet: Alphabet, pair: str) -> PowerExpr:
    return ivanov_expr(alphabet, (alphabet.gen(pair + "1"), alphabet.gen(pair + "2")))


@dataclass(frozen=True)
class DwzPresentation:
    generators: Alphabet
    relators: tuple[Word, ...]
    structured: tuple[PowerExpr, ...]
    names: tuple[str, ...] = ("R1", "R2", "R3", "R4")


@lru_cache(maxsize=None)
def presentation() -> DwzPresentation:
    wa, wb, wc, wd = (_ivanov_block_expr(D, s) for s in "abcd")
    gamma = D.gen("gamma")
    r4 = PowerExpr(
        D,
        [(z_word(D, "a", "b"), -1), (gamma, 1), (z_word(D, "d", "c"), 1), (gamma, -1)],
    )
    structured = (wa * wb.inverse(), wd * wc.inverse(), wb * wc.inverse(), r4)
    return DwzPresentation(D, tuple(e.expand() for e in structured), structured)


@dataclass(frozen=True)
class HomParams:
    k: int
    ell: int
    q: int


@dataclass(frozen=True)
class GenSet:
    id: str
    elements: tuple[Word, ...]

    def labels(self) -> list[str]:
        return [str(e) for e in self.elements]


def _genset(last: str) -> GenSet:
    base = [D.gen(n) for n in D.names]
    return GenSet("", tuple(base) + (D.word(last),))


GENSETS = {
    "g": GenSet("g", _genset("a1 d1 a1 d1").elements),
    "u": GenSet("u", _genset("a1 c1 a1 c1").elements),
}


def genset(s) -> GenSet:
    return s if isinstance(s, GenSet) else GENSETS[s]


# -- images ------------------------------------------------------------------------

@lru_cache(maxsize=1)
def w_b() -> RunWord:
    return RunWord.from_word(apply(EndoMap(X, B, tuple(B.gens())), build_ivanov().pattern))


def w_length() -> int:
    """``tr(w) = |w|``: the Ivanov word is cyclically reduced."""
    return w_b().length


@lru_cache(maxsize=4096)
def _wpow(n: int) -> RunWord:
    return w_b().power(n)


@lru_cache(maxsize=None)
def _letter(i: int) -> RunWord:
    return RunWord.from_word(B.gens()[i])


@lru_cache(maxsize=8192)
def twisted(n: int, i: int) -> RunWord:
    """``w^n b_i w^-n``."""
    return RunWord.concat(B, (_wpow(n), _letter(i), _wpow(-n)))


@lru_cache(maxsize=1024)
def z_image(k: int) -> RunWord:
    """``h(z(a, b)) = h(a1) b2 h(a1) b1 h(a1) b1``; depends on ``k`` only."""
    a1 = twisted(k, 0)
    b1, b2 = _letter(0), _letter(1)
    return RunWord.concat(B, (a1, b2, a1, b1, a1, b1))


@lru_cache(maxsize=1024)
def _z_power(k: int, q: int) -> RunWord:
    return z_image(k).power(q)


def gamma_image(p: HomParams) -> RunWord:
    return _z_power(p.k, p.q) * _wpow(-p.ell)


def hom_family(p: HomParams, d_shift: int = 0) -> LazyMap:
    """``h_{k,l,q}`` as a compressed map ``D -> F(b1, b2)``.

    ``d_shift`` twists ``h|_D`` by an extra power of ``w``; any nonzero value
    breaks relator R4 and serves as a negative control.
    """
    k, ell = p.k, p.ell
    dk = k + ell + d_shift
    images = [
        twisted(k, 0), twisted(k, 1),
        _letter(0), _letter(1),
        twisted(ell, 0), twisted(ell, 1),
        twisted(dk, 0), twisted(dk, 1),
        gamma_image(p),
    ]
    return LazyMap(D, B, images)


def relator_residuals(p: HomParams, d_shift: int = 0) -> dict[str, int]:
    """Reduced length of each relator's image; all zero for a homomorphism."""
    f = hom_family(p, d_shift)
    pres = presentation()
    return {name: f.apply(rel).length for name, rel in zip(pres.names, pres.structured)}


def verify_relators(p: HomParams, d_shift: int = 0) -> bool:
    return all(v == 0 for v in relator_residuals(p, d_shift).values())


def _element_image(p: HomParams, element: Word) -> RunWord:
    k, ell = p.k, p.ell
    table = {
        1: twisted(k, 0), 2: twisted(k, 1),
        3: _letter(0), 4: _letter(1),
        5: twisted(ell, 0), 6: twisted(ell, 1),
        7: twisted(k + ell, 0), 8: twisted(k + ell, 1),
    }
    parts = []
    for x in element.array:
        img = table[x] if abs(x) != 9 else gamma_image(p)
        parts.append(img if x > 0 else img.inverse())
    return RunWord.concat(B, parts)


def gen_lengths(p: HomParams, s="g") -> dict[str, int]:
    """Exact ``|h(e)|`` for each element ``e`` of the generating set."""
    gs = genset(s)
    return {str(e): _element_image(p, e).length for e in gs.elements}


def max_gen_length(p: HomParams, s="g") -> int:
    return max(gen_lengths(p, s).values())


def z_image_length(p: HomParams) -> int:
    return z_image(p.k).length


def z_law_offsets(ks: Iterable[int]) -> dict[int, int]:
    """``|h(z)| - 6 tr(w) |k|`` for each ``k``."""
    tw = w_length()
    return {k: z_image(k).length - 6 * tw * abs(k) for k in ks}


def z_law_threshold(max_k: int = 50) -> dict[str, tuple[int, int]]:
    """Smallest ``K`` per sign with a constant offset on ``K..max_k``; values ``(K, offset)``."""
    out = {}
    for sign, name in ((1, "positive"), (-1, "negative")):
        offs = z_law_offsets(sign * k for k in range(1, max_k + 1))
        last = offs[sign * max_k]
        start = max_k
        while start > 1 and offs[sign * (start - 1)] == last:
            start -= 1
        out[name] = (start, last)
    return out


# -- shortening ----------------------------------------------------------------------

@dataclass(frozen=True)
class ShortenResult:
    k: int
    genset: str
    ell_star: int
    q_star: int
    max_length: int
    normalized: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "genset": self.genset,
            "l_star": self.ell_star,
            "q_star": self.q_star,
            "max_length": self.max_length,
            "normalized_num": self.normalized.numerator,
            "normalized_den": self.normalized.denominator,
        }


def default_ell_window(k: int) -> range:
    b = 2 * abs(k) + 5
    return range(-b, b + 1)


def shorten(
    k: int,
    ell_window: Sequence[int] | None = None,
    q_window: Sequence[int] | None = None,
    s="g",
) -> ShortenResult:
    """Exhaustive exact minimization of the max generator length over ``(l, q)``.

    Ties go to smaller ``|l|``, then smaller ``|q|``, then nonnegative values.
    """
    if k == 0:
        raise ValueError("k = 0 is excluded: normalization by tr(w^k) is undefined")
    gs = genset(s)
    ells = list(default_ell_window(k) if ell_window is None else ell_window)
    qs = list(range(-2, 3) if q_window is None else q_window)
    if not ells or not qs:
        raise ValueError("empty search window")
    gamma_index = D.names.index("gamma")
    others = [e for e in gs.elements if not (len(e) == 1 and abs(e[0]) == gamma_index + 1)]
    best = None
    for ell in ells:
        # everything except gamma is independent of q
        base = max(_element_image(HomParams(k, ell, 0), e).length for e in others)
        for q in qs:
            g_len = gamma_image(HomParams(k, ell, q)).length
            m = max(base, g_len)
            key = (m, abs(ell), abs(q), ell < 0, q < 0)
            if best is None or key < best[0]:
                best = (key, ell, q)
    (m, *_), ell, q = best
    if ell in (min(ells), max(ells)) or (len(qs) > 1 and q in (min(qs), max(qs))):
        raise WindowBoundaryError(f"optimum (l={ell}, q={q}) lies on the window boundary")
    return ShortenResult(k, gs.id, ell, q, m, Fraction(m, abs(k) * w_length()))


# -- limiting envelopes ------------------------------------------------------------

_SHARED = (
    PLTerm(2),
    PLTerm(0, ((2, 0),)),
    PLTerm(0, ((2, 1),)),
    PLTerm(0, ((1, 0),)),
)


def envelope_terms(s="g") -> list[PLTerm]:
    """Limits of ``|h(e)| / (|k| tr(w))`` as functions of ``x = l/k``, one per element family."""
    gid = genset(s).id
    if gid == "g":
        fifth = PLTerm(1, ((3, 0), (1, 1)))
    else:
        fifth = PLTerm(1, ((1, 0), (3, -1)))
    return list(_SHARED) + [fifth]


def envelope_minimum(s="g") -> tuple[Fraction, Fraction]:
    return pl_minimax(envelope_terms(s))


def normalized_profile(k: int, s, grid: Sequence) -> list[tuple[Fraction, Fraction]]:
    """``max_e |h_{k, xk, 0}(e)| / (|k| tr(w))`` for each ``x`` in ``grid``."""
    if k == 0:
        raise ValueError("k must be nonzero")
    out = []
    for x in grid:
        x = Fraction(x)
        ell = x * k
        if ell.denominator != 1:
            raise ValueError(f"x = {x} gives a non-integral l at k = {k}")
        m = max_gen_length(HomParams(k, int(ell), 0), s)
        out.append((x, Fraction(m, abs(k) * w_length())))
    return out


def envelope_value(s, x) -> Fraction:
    return envelope(envelope_terms(s), x)


# -- homology comparison -----------------------------------------------------------------

def g_w_presentation() -> tuple[Alphabet, list[Word]]:
    G = Alphabet(("a1", "a2", "b1", "b2"))
    rel = _ivanov_block_expr(G, "a") * _ivanov_block_expr(G, "b").inverse()
    return G, [rel.expand()]


def m_tilde_presentation(eps: int) -> tuple[Alphabet, list[Word]]:
    """``<a, b, gamma | gamma^2 a_i gamma^-2 = w^eps b_i w^-eps>`` with ``w = w(b1, b2)``."""
    w = _ivanov_block_expr(M, "b").expand()
    gamma = M.gen("gamma")
    rels = []
    for i in (1, 2):
        a, b = M.gen(f"a{i}"), M.gen(f"b{i}")
        lhs = PowerExpr(M, [(gamma, 2), (a, 1), (gamma, -2)])
        rhs = PowerExpr(M, [(w, eps), (b, 1), (w, -eps)])
        rels.append((lhs * rhs.inverse()).expand())
    return M, rels


def homology_report(eps_window: Sequence[int] = (-5, -1, 0, 1, 5)) -> dict:
    G, g_rels = g_w_presentation()
    hg = homology_of_presentation(G, g_rels)
    m_results: dict[int, HomologyResult] = {}
    for eps in eps_window:
        alpha, rels = m_tilde_presentation(eps)
        m_results[eps] = homology_of_presentation(alpha, rels)
    distinct = all(
        (r.betti, r.torsion) != (hg.betti, hg.torsion) and r.betti < hg.betti
        for r in m_results.values()
    )
    return {
        "G_w": {"betti": hg.betti, "torsion": list(hg.torsion)},
        "M_tilde": {str(e): {"betti": r.betti, "torsion": list(r.torsion)} for e, r in m_results.items()},
        # betti numbers cannot grow under quotients, so every quotient of M~ stays below G_w
        "verdict": "distinct" if distinct else "not separated",
    }


def relator_word(name: str) -> Word:
    pres = presentation()
    return pres.relators[pres.names.index(name)]


def check_structured_relators() -> bool:
    """The compressed relators expand to the same words as direct reduction."""
    pres = presentation()
    return all(
        e.expand() == product_of([b ** n for b, n in e.blocks], D)
        for e in pres.structured
    )
