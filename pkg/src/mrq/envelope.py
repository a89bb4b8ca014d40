"""Exact minimization of upper envelopes of piecewise-linear terms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence


class UnboundedError(ValueError):
    pass


@dataclass(frozen=True)
class PLTerm:
    """``constant + sum(coef * |x + shift|)`` with nonnegative coefficients."""

    constant: Fraction
    pieces: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        pieces = tuple((Fraction(c), Fraction(s)) for c, s in self.pieces)
        if any(c < 0 for c, _ in pieces):
            raise ValueError("coefficients must be nonnegative")
        object.__setattr__(self, "pieces", pieces)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return self.constant + sum((c * abs(x + s) for c, s in self.pieces), Fraction(0))

    def __str__(self):
        parts = [str(self.constant)] if self.constant else []
        for c, s in self.pieces:
            inner = "x" if s == 0 else (f"x+{s}" if s > 0 else f"x-{-s}")
            parts.append(("" if c == 1 else str(c)) + f"|{inner}|")
        return " + ".join(parts) or "0"


def envelope(terms: Sequence[PLTerm], x) -> Fraction:
    return max(t(x) for t in terms)


def _integer_terms(terms):
    """Rescale ``x = y / dx`` and values by ``dv`` so every term has integer data."""
    dx = lcm(*(s.denominator for t in terms for _, s in t.pieces), 1)
    dv = lcm(*(t.constant.denominator for t in terms), *((c / dx).denominator for t in terms for c, _ in t.pieces), 1)
    scaled = []
    for t in terms:
        pieces = [(int(c / dx * dv), int(s * dx)) for c, s in t.pieces if c]
        scaled.append((int(t.constant * dv), pieces))
    return dx, dv, scaled


def _lines(scaled, y):
    """``(slope, intercept)`` of each scaled term on the open interval containing ``y``."""
    out = []
    for const, pieces in scaled:
        a, b = 0, const
        for c, s in pieces:
            if y + s > 0:
                a, b = a + c, b + c * s
            else:
                a, b = a - c, b - c * s
        out.append((a, b))
    return out


def pl_minimax(terms: Sequence[PLTerm]) -> tuple[Fraction, Fraction]:
    """Exact ``(argmin, min)`` of ``max_i term_i(x)`` over the reals.

    The envelope is convex, so only the intervals touching the best
    breakpoints can hold the optimum; inside those, candidates are the
    crossings of two affine pieces. A flat optimum returns the midpoint of
    its interval.
    """
    if not terms:
        raise ValueError("no terms")
    dx, dv, scaled = _integer_terms(terms)
    bps = sorted({-s for _, pieces in scaled for _, s in pieces})
    if not bps:
        return Fraction(0), max(t.constant for t in terms)

    for probe, side in ((2 * bps[0] - 2, -1), (2 * bps[-1] + 2, 1)):
        if max(side * a for a, _ in _lines(scaled, probe / 2)) <= 0:
            raise UnboundedError("envelope does not increase to the " + ("left" if side < 0 else "right"))

    # candidates as (p, q) for y = p / q with q > 0; value is max(a p + b q) / q
    def value(p, q, lines):
        return max(a * p + b * q for a, b in lines)

    cands = {}
    at_bp = []
    for y in bps:
        v = max(const + sum(c * abs(y + s) for c, s in pieces) for const, pieces in scaled)
        at_bp.append(v)
        cands[Fraction(y)] = Fraction(v)
    best = min(at_bp)
    hits = [i for i, v in enumerate(at_bp) if v == best]
    ext = [None] + bps + [None]
    for i in range(hits[0], hits[-1] + 2):
        lo, hi = ext[i], ext[i + 1]
        mid = hi - 1 if lo is None else lo + 1 if hi is None else (lo + hi) / 2
        lines = _lines(scaled, mid)
        for (a1, b1), (a2, b2) in combinations(lines, 2):
            if a1 == a2:
                continue
            p, q = b2 - b1, a1 - a2
            if q < 0:
                p, q = -p, -q
            if (lo is None or p > lo * q) and (hi is None or p < hi * q):
                cands[Fraction(p, q)] = Fraction(value(p, q, lines), q)
    best = min(cands.values())
    argmins = [y for y, v in cands.items() if v == best]
    return (min(argmins) + max(argmins)) / (2 * dx), best / dv
