"""Conjugacy and simultaneous conjugacy with explicit conjugators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from mrq.kernels import cancel_length
from mrq.words import (
    AlphabetMismatch,
    Word,
    conjugate,
    cyclic_reduce,
    invert,
    is_proper_power,
    multiply,
    power,
    translation_length,
)


class ConjugacyError(RuntimeError):
    """A witness failed its own verification; indicates an engine bug."""


@dataclass(frozen=True)
class ConjugacyAnswer:
    found: bool
    witness: Word | None = None

    def __bool__(self):
        return self.found


NOT_FOUND = ConjugacyAnswer(False)


def primitive_root(u: Word) -> Word:
    if u.is_identity():
        raise ValueError("the identity has no primitive root")
    pp = is_proper_power(u)
    return u if pp is None else pp[0]


def _rotation_offset(core: Word, other: Word) -> int | None:
    """``r`` with ``other == core[r:] + core[:r]``, or ``None``."""
    if len(core) != len(other):
        return None
    if not len(core):
        return 0
    a = core.array
    hay = (a + a).tobytes()
    needle = other.array.tobytes()
    size = a.itemsize
    pos = hay.find(needle)
    while pos != -1 and pos % size:
        pos = hay.find(needle, pos + 1)
    return None if pos == -1 else pos // size


def _raw_conjugator(u: Word, v: Word) -> Word | None:
    """Some ``S`` with ``S u S^-1 = v``."""
    cu, a = cyclic_reduce(u)
    cv, b = cyclic_reduce(v)
    r = _rotation_offset(cu.core, cv.core)
    if r is None:
        return None
    # cv = X^-1 cu X with X = cu[:r]
    x = cu.core[:r]
    return multiply(multiply(b, invert(x)), invert(a))


def _shortest_in_coset(s0: Word, root: Word) -> Word:
    """Shortest element of ``s0 <root>``; ties by printed form.

    ``t -> |s0 root^t|`` is the distance between two orbit points in the
    Cayley tree and is convex in ``t``, so a binary search on its forward
    difference finds the minimum.
    """
    tr = translation_length(root)

    def at(t):
        return multiply(s0, power(root, t).expand())

    bound = 2 * len(s0) // tr + 2
    lo, hi = -bound, bound
    while lo < hi:
        mid = (lo + hi) // 2
        if len(at(mid + 1)) >= len(at(mid)):
            hi = mid
        else:
            lo = mid + 1
    # the minimum can be a short plateau; settle ties on printed form
    return min((at(t) for t in range(lo - 2, lo + 3)), key=Word.sort_key)


def _twist_exponent(a: Word, b: Word, r: Word) -> int | None:
    """``t`` with ``r^t a r^-t = b``, for ``a`` not commuting with ``r``.

    With ``r = c r0 c^-1`` and ``r0`` cyclically reduced, conjugating
    ``c^-1 a c`` by ``r0`` eventually stops cancelling on both sides; from
    then on each step only adds ``r0 ... r0^-1`` and the length fixes ``t``.
    """
    core, c = cyclic_reduce(r)
    r0 = core.core
    a0, b0 = conjugate(a, invert(c)), conjugate(b, invert(c))
    for sign, step in ((1, r0), (-1, invert(r0))):
        back = invert(step)
        m, t = a0, 0
        while m != b0:
            if not cancel_length(step.array, m.array) and not cancel_length(m.array, back.array):
                break
            m = conjugate(m, step)
            t += 1
            if t > 2 * len(a0) + 4:
                raise ConjugacyError("twist conjugation never stabilised")
        else:
            return sign * t
        extra = len(b0) - len(m)
        if extra > 0 and extra % (2 * len(r0)) == 0:
            n = extra // (2 * len(r0))
            if conjugate(m, power(step, n).expand()) == b0:
                return sign * (t + n)
    return None


def are_conjugate(u: Word, v: Word) -> ConjugacyAnswer:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch("alphabet mismatch")
    s0 = _raw_conjugator(u, v)
    if s0 is None:
        return NOT_FOUND
    if not u.is_identity():
        s0 = _shortest_in_coset(s0, primitive_root(u))
    if conjugate(u, s0) != v:
        raise ConjugacyError("conjugator failed verification")
    return ConjugacyAnswer(True, s0)


def centralizer_generator(u: Word) -> Word:
    """Generator of the (cyclic) centralizer of a nontrivial element."""
    return primitive_root(u)


def commutes(u: Word, v: Word) -> bool:
    return multiply(u, v) == multiply(v, u)


def simultaneous_conjugator(A: Sequence[Word], B: Sequence[Word]) -> ConjugacyAnswer:
    """``S`` with ``S A_i S^-1 = B_i`` for every ``i``, if one exists."""
    if len(A) != len(B) or not A:
        raise ValueError("tuples must be nonempty and of equal length")
    alphabet = A[0].alphabet
    for u in list(A) + list(B):
        if u.alphabet != alphabet:
            raise AlphabetMismatch("alphabet mismatch")
    anchor = next((i for i, a in enumerate(A) if not a.is_identity()), None)
    if anchor is None:
        if all(b.is_identity() for b in B):
            return ConjugacyAnswer(True, alphabet.identity())
        return NOT_FOUND
    for a, b in zip(A, B):
        if a.is_identity() != b.is_identity():
            return NOT_FOUND

    s0 = _raw_conjugator(A[anchor], B[anchor])
    if s0 is None:
        return NOT_FOUND
    r = primitive_root(A[anchor])

    # every solution is s0 r^t; a coordinate outside <r> pins t
    pinned = None
    s0_inv = invert(s0)
    for a, b in zip(A, B):
        if a.is_identity() or commutes(a, r):
            continue
        pinned = _twist_exponent(a, conjugate(b, s0_inv), r)
        if pinned is None:
            return NOT_FOUND
        break

    if pinned is None:
        s = _shortest_in_coset(s0, r)
    else:
        s = multiply(s0, power(r, pinned).expand())
    # a pinned t is unique and an unpinned coset acts uniformly, so a failed
    # check here means no simultaneous conjugator exists
    if not all(conjugate(a, s) == b for a, b in zip(A, B)):
        return NOT_FOUND
    return ConjugacyAnswer(True, s)
