"""The two-letter Ivanov word and desk-scale checks of its defining properties."""
from __future__ import annotations

import enum
import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from mrq.conjugacy import simultaneous_conjugator
from mrq.morphisms import EndoMap, apply, compose, fold, is_cyclic_subgroup, is_surjective, membership
from mrq.runs import PowerExpr
from mrq.words import (
    Alphabet,
    AlphabetMismatch,
    Word,
    commutator,
    conjugate,
    is_proper_power,
    random_word,
    words_up_to,
)

X = Alphabet(("x1", "x2"))

IVANOV_TEXT = (
    "[x1,x2]^100 x1 [x1,x2]^200 x1 [x1,x2]^300 x1^-1 [x1,x2]^400 x1^-1 "
    "[x1,x2]^500 x2 [x1,x2]^600 x2 [x1,x2]^700 x2^-1 [x1,x2]^800 x2^-1"
)

# (commutator exponent, trailing letter) for the eight blocks
_BLOCKS = (
    (100, 1), (200, 1), (300, -1), (400, -1),
    (500, 2), (600, 2), (700, -2), (800, -2),
)

# reduced length of the word above; recomputed and compared in the tests
IVANOV_LENGTH = 14392


@dataclass(frozen=True)
class IvanovWord:
    pattern: Word
    structured: PowerExpr

    def __len__(self):
        return len(self.pattern)


def ivanov_expr(alphabet: Alphabet = X, images: tuple[Word, Word] | None = None) -> PowerExpr:
    """The Ivanov word as ``[y1,y2]^e y`` blocks, with ``x_i`` replaced by ``images[i]``."""
    y1, y2 = images if images is not None else alphabet.gens()
    c = commutator(y1, y2)
    letters = {1: y1, -1: y1.inverse(), 2: y2, -2: y2.inverse()}
    blocks = []
    for e, x in _BLOCKS:
        blocks.append((c, e))
        blocks.append((letters[x], 1))
    return PowerExpr(alphabet, blocks)


@lru_cache(maxsize=None)
def build_ivanov() -> IvanovWord:
    expr = ivanov_expr()
    return IvanovWord(expr.expand(), expr)


def ivanov_in(alphabet: Alphabet, names: tuple[str, str]) -> Word:
    """The Ivanov word spelled in two generators of ``alphabet``."""
    f = EndoMap(X, alphabet, (alphabet.gen(names[0]), alphabet.gen(names[1])))
    return apply(f, build_ivanov().pattern)


def eval_at(w: IvanovWord, A1: Word, A2: Word) -> Word:
    if A1.alphabet != A2.alphabet:
        raise AlphabetMismatch("A1 and A2 over different alphabets")
    return apply(EndoMap(X, A1.alphabet, (A1, A2)), w.pattern)


class Verdict(enum.Enum):
    VACUOUS = "vacuous"
    WITNESSED = "witnessed"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class PairResult:
    verdict: Verdict
    witness: Word | None = None


def ctest_check_pair(A: tuple[Word, Word], B: tuple[Word, Word]) -> PairResult:
    w = build_ivanov()
    va = eval_at(w, *A)
    vb = eval_at(w, *B)
    return _judge(A, B, va, vb)


def _judge(A, B, va: Word, vb: Word) -> PairResult:
    if va != vb or va.is_identity():
        return PairResult(Verdict.VACUOUS)
    ans = simultaneous_conjugator(A, B)
    if ans.found:
        return PairResult(Verdict.WITNESSED, ans.witness)
    return PairResult(Verdict.COUNTEREXAMPLE)


def ctest_sweep(max_len: int = 2, alphabet: Alphabet = X) -> dict:
    """All ordered pairs of 2-tuples of reduced words of length <= ``max_len``.

    Tuples are grouped by their w-value (dict lookup hashes length and
    content, full comparison only on collision), so only pairs with equal
    nontrivial values reach the conjugator search.
    """
    w = build_ivanov()
    pool = words_up_to(alphabet, max_len)
    tuples = [(a, b) for a in pool for b in pool]
    groups: dict[Word, list] = defaultdict(list)
    trivial = 0
    for t in tuples:
        v = eval_at(w, *t)
        if v.is_identity():
            trivial += 1
        else:
            groups[v].append(t)
    witnessed = 0
    counterexamples = []
    for members in groups.values():
        for A in members:
            for B in members:
                if simultaneous_conjugator(A, B).found:
                    witnessed += 1
                else:
                    counterexamples.append((A, B))
    total = len(tuples) ** 2
    return {
        "bound": max_len,
        "pairs_checked": total,
        "witnessed": witnessed,
        "vacuous": total - witnessed - len(counterexamples),
        "counterexamples": len(counterexamples),
        "counterexample_list": [[[str(x) for x in A], [str(x) for x in B]] for A, B in counterexamples[:10]],
    }


def cyclicity_criterion_check(A1: Word, A2: Word) -> bool:
    w = build_ivanov()
    return eval_at(w, A1, A2).is_identity() == is_cyclic_subgroup([A1, A2], A1.alphabet)


def random_pairs(count: int, max_len: int, seed: int, alphabet: Alphabet = X):
    rng = random.Random(seed)
    for _ in range(count):
        yield (
            random_word(alphabet, rng.randint(0, max_len), rng),
            random_word(alphabet, rng.randint(0, max_len), rng),
        )


def cyclicity_sweep(count: int = 1000, max_len: int = 4, seed: int = 0) -> dict:
    violations = []
    cyclic = 0
    for A1, A2 in random_pairs(count, max_len, seed):
        if is_cyclic_subgroup([A1, A2], A1.alphabet):
            cyclic += 1
        if not cyclicity_criterion_check(A1, A2):
            violations.append((str(A1), str(A2)))
    return {"samples": count, "cyclic": cyclic, "violations": len(violations), "violation_list": violations[:10]}


class PreconditionError(ValueError):
    pass


def lemma_root_check(S: Word, psi: EndoMap) -> bool:
    """For surjective ``psi`` with ``tau_S . psi`` agreeing with ``psi`` on w, is ``S`` in ``<psi(w)>``?"""
    if psi.source != X or psi.target.rank != 2:
        raise PreconditionError("psi must be an endomorphism of a rank-2 free group")
    if not is_surjective(psi):
        raise PreconditionError("psi is not surjective")
    w = build_ivanov().pattern
    pw = apply(psi, w)
    # (tau_S . psi)(w) = S psi(w) S^-1; substituting through the composite is far slower
    if conjugate(pw, S) != pw:
        raise PreconditionError("tau_S . psi and psi disagree on w")
    return membership(fold([pw], psi.target), S)


def random_automorphism(rng: random.Random, steps: int = 4) -> EndoMap:
    """Product of random elementary Nielsen moves on ``X``."""
    x1, x2 = X.gens()
    f = EndoMap.identity(X)
    for _ in range(steps):
        choice = rng.randrange(4)
        g = [
            EndoMap(X, X, (x1 * x2, x2)),
            EndoMap(X, X, (x1, x2 * x1)),
            EndoMap(X, X, (x1.inverse(), x2)),
            EndoMap(X, X, (x2, x1)),
        ][choice]
        f = compose(f, g)
    return f
