"""Length bounds for tuples with small mutual cancellation, and Dehn-twist growth."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from mrq.morphisms import EndoMap, apply
from mrq.words import (
    Alphabet,
    Word,
    commutator,
    multiply,
    power,
    random_word,
    translation_length,
)


class PreconditionError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class ImageTuple:
    source_rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source_rank:
            raise ValueError("need exactly one image per source generator")
        if any(u.is_identity() for u in self.images):
            raise ValueError("images must be nonempty")
        if len({u.alphabet for u in self.images}) > 1:
            raise ValueError("images over different alphabets")

    @property
    def target(self) -> Alphabet:
        return self.images[0].alphabet

    def endomap(self) -> EndoMap:
        return EndoMap(Alphabet.standard(self.source_rank), self.target, self.images)


@dataclass(frozen=True)
class TSStats:
    chi: int
    xi: int
    c: int


def cancellation_stats(t: ImageTuple) -> TSStats:
    """Max/min image length and the worst cancellation between distinct letters' images."""
    pool = [(i, 1, u) for i, u in enumerate(t.images)]
    pool += [(i, -1, u.inverse()) for i, u in enumerate(t.images)]
    c = 0
    for (i, si, u), (j, sj, v) in product(pool, repeat=2):
        if i == j and si == -sj:
            continue  # u u^-1 cancels completely by design
        c = max(c, (len(u) + len(v) - len(multiply(u, v))) // 2)
    lengths = [len(u) for u in t.images]
    return TSStats(max(lengths), min(lengths), c)


def _cyclically_reduced(u: Word) -> bool:
    return len(u) < 2 or u[0] != -u[-1]


def sample_smallcancel(rank: int, n: int, seed: int, budget: int = 10_000) -> ImageTuple:
    """``rank`` random reduced words of length ``n`` with cancellation at most ``n/8``."""
    if n < 16 or rank < 2:
        raise ValueError("need n >= 16 and rank >= 2")
    alphabet = Alphabet.standard(rank)
    rng = random.Random(seed)
    for _ in range(budget):
        images = tuple(random_word(alphabet, n, rng) for _ in range(rank))
        if not all(_cyclically_reduced(u) for u in images):
            continue
        t = ImageTuple(rank, images)
        if 8 * cancellation_stats(t).c <= n:
            return t
    raise BudgetExhausted(f"no admissible tuple in {budget} attempts")


def check_length_bounds(t: ImageTuple, probes: Sequence[Word], c: int | None = None) -> bool:
    """``(xi - 2c)|f| <= |h(f)| <= chi |f|`` for every probe ``f``.

    With the measured ``c`` the lower bound always holds; pass an assumed
    budget (say ``n // 8``) to test a tuple against it instead.
    """
    s = cancellation_stats(t)
    c = s.c if c is None else c
    h = t.endomap()
    for f in probes:
        n = len(apply(h, f))
        if not (s.xi - 2 * c) * len(f) <= n <= s.chi * len(f):
            return False
    return True


def random_probes(rank: int, count: int, max_len: int, seed: int) -> list[Word]:
    rng = random.Random(seed)
    alphabet = Alphabet.standard(rank)
    return [random_word(alphabet, rng.randint(1, max_len), rng) for _ in range(count)]


def _twisted_length(a: Word, b: Word, z: Word, n: int) -> int:
    zn = power(z, n).expand()
    return len(multiply(multiply(a, zn), multiply(b, zn.inverse())))


def twist_growth_check(a: Word, b: Word, z: Word, N: int) -> bool:
    """``|a z^{+-N} b z^{-+N}| >= 2N tr(z) - (|a| + |b|)`` for both signs."""
    if z.is_identity():
        raise PreconditionError("z must be nontrivial")
    if N <= 0:
        raise ValueError("N must be positive")
    if commutator(a, z).is_identity() or commutator(b, z).is_identity():
        raise PreconditionError("a and b must not commute with z")
    bound = 2 * N * translation_length(z) - (len(a) + len(b))
    return all(_twisted_length(a, b, z, n) >= bound for n in (N, -N))


def twist_sweep(samples: int = 500, seed: int = 0, rank: int = 2) -> dict:
    """Random ``(a, b, z)`` with ``|a|, |b| <= 6``, ``|z| <= 4`` and ``N = |a| + |b| + 2``.

    Draws that fail the non-commuting precondition are redrawn and counted.
    """
    alphabet = Alphabet.standard(rank)
    rng = random.Random(seed)
    done = rejected = 0
    violations = []
    while done < samples:
        a = random_word(alphabet, rng.randint(0, 6), rng)
        b = random_word(alphabet, rng.randint(0, 6), rng)
        z = random_word(alphabet, rng.randint(1, 4), rng)
        N = len(a) + len(b) + 2
        try:
            ok = twist_growth_check(a, b, z, N)
        except PreconditionError:
            rejected += 1
            continue
        done += 1
        if not ok:
            violations.append([str(a), str(b), str(z), N])
    return {
        "samples": samples,
        "rejected_draws": rejected,
        "violations": len(violations),
        "violation_list": violations[:10],
    }
