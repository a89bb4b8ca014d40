"""Reduced words in a free group of finite rank.

A letter is a nonzero int: generator ``g`` (0-based) is ``g + 1``, its
inverse ``-(g + 1)``.  :class:`Word` stores its letters in an ``array('i')``
so the compiled kernels can consume them without copying.
"""
from __future__ import annotations

import random
import re
from array import array
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from mrq import kernels

_FORBIDDEN = re.compile(r"[\s^\[\],]")


class AlphabetMismatch(ValueError):
    pass


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("alphabet needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for name in names:
            if not name or _FORBIDDEN.search(name) or name == "1":
                raise ValueError(f"invalid generator name {name!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def standard(cls, rank: int, prefix: str = "x") -> "Alphabet":
        return cls(tuple(f"{prefix}{i}" for i in range(1, rank + 1)))

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordSyntaxError(f"unknown generator {name!r}") from None

    def gen(self, name_or_index) -> "Word":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Word(self, (i + 1,), reduced=True)

    def gens(self) -> list["Word"]:
        return [Word(self, (i + 1,), reduced=True) for i in range(self.rank)]

    def identity(self) -> "Word":
        return Word(self, (), reduced=True)

    def word(self, text: str) -> "Word":
        return parse_word(text, self)

    def letter_name(self, letter: int) -> str:
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name + "^-1"


class Word:
    """An immutable freely reduced word."""

    __slots__ = ("alphabet", "_letters", "_hash")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = (), *, reduced: bool = False):
        arr = letters if isinstance(letters, array) and letters.typecode == "i" else array("i", letters)
        if not reduced:
            rank = alphabet.rank
            for x in arr:
                if x == 0 or abs(x) > rank:
                    raise ValueError(f"letter {x} outside alphabet of rank {rank}")
            arr = kernels.free_reduce(arr)
        self.alphabet = alphabet
        self._letters = arr
        self._hash = None

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(self._letters)

    @property
    def array(self) -> array:
        # shared buffer; callers must not mutate
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self._letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self._letters[item], reduced=True)
        return self._letters[item]

    def is_identity(self) -> bool:
        return len(self._letters) == 0

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self._letters == other._letters

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.names, len(self._letters), self._letters.tobytes()))
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, n: int) -> "Word":
        return power(self, n).expand()

    def inverse(self) -> "Word":
        return invert(self)

    def sort_key(self):
        """Order by length, then by canonical printed form."""
        return (len(self), format_word(self))

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


@dataclass(frozen=True)
class CyclicWord:
    core: Word

    def __post_init__(self):
        c = self.core
        if len(c) > 1 and c[0] == -c[len(c) - 1]:
            raise ValueError("core is not cyclically reduced")


def _check_same(u: Word, v: Word):
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet.names} vs {v.alphabet.names}")


def multiply(u: Word, v: Word) -> Word:
    _check_same(u, v)
    a, b = u.array, v.array
    c = kernels.cancel_length(a, b)
    return Word(u.alphabet, a[: len(a) - c] + b[c:], reduced=True)


def invert(u: Word) -> Word:
    arr = array("i", (-x for x in reversed(u.array)))
    return Word(u.alphabet, arr, reduced=True)


def conjugate(u: Word, s: Word) -> Word:
    """Reduced form of ``s u s^-1``."""
    return multiply(multiply(s, u), invert(s))


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return multiply(multiply(u, v), multiply(invert(u), invert(v)))


def product_of(words: Sequence[Word], alphabet: Alphabet | None = None) -> Word:
    if not words:
        if alphabet is None:
            raise ValueError("empty product needs an alphabet")
        return alphabet.identity()
    alpha = words[0].alphabet
    for w in words:
        _check_same(words[0], w)
    buf = array("i")
    for w in words:
        buf.extend(w.array)
    return Word(alpha, kernels.free_reduce(buf), reduced=True)


def cyclic_reduce(u: Word) -> tuple[CyclicWord, Word]:
    """Split ``u = s c s^-1`` with ``c`` cyclically reduced; returns ``(c, s)``."""
    a = u.array
    n = len(a)
    i = 0
    while i < n - 1 - i and a[i] == -a[n - 1 - i]:
        i += 1
    core = Word(u.alphabet, a[i : n - i], reduced=True)
    conj = Word(u.alphabet, a[:i], reduced=True)
    return CyclicWord(core), conj


def translation_length(u: Word) -> int:
    return len(cyclic_reduce(u)[0].core)


def exponent_vector(u: Word) -> tuple[int, ...]:
    vec = [0] * u.alphabet.rank
    for x in u.array:
        if x > 0:
            vec[x - 1] += 1
        else:
            vec[-x - 1] -= 1
    return tuple(vec)


def is_proper_power(u: Word) -> tuple[Word, int] | None:
    """``(root, e)`` with ``u = root^e`` and ``e >= 2`` maximal, else ``None``."""
    cyc, conj = cyclic_reduce(u)
    core = cyc.core.array
    n = len(core)
    if n == 0:
        return None
    p = kernels.smallest_period(core)
    if p == n or n % p:
        return None
    root = conjugate(Word(u.alphabet, core[:p], reduced=True), conj)
    return root, n // p


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\[|\]|,|\^|[^\s\[\],^]+)")


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.alphabet = alphabet
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise WordSyntaxError(f"cannot tokenize {text[pos:]!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def exponent(self) -> int:
        if self.peek() != "^":
            return 1
        self.take()
        tok = self.take()
        if tok is None or not re.fullmatch(r"[+-]?\d+", tok):
            raise WordSyntaxError(f"malformed exponent {tok!r}")
        return int(tok)

    def word(self, stop) -> Word:
        parts: list[Word] = []
        while self.peek() not in stop:
            tok = self.take()
            if tok == "[":
                u = self.word((",",))
                if self.take() != ",":
                    raise WordSyntaxError("unbalanced bracket")
                v = self.word(("]",))
                if self.take() != "]":
                    raise WordSyntaxError("unbalanced bracket")
                base = commutator(u, v)
            elif tok in ("]", ",", "^"):
                raise WordSyntaxError(f"unexpected {tok!r}")
            elif tok == "1":
                base = self.alphabet.identity()
            else:
                base = self.alphabet.gen(tok)
            parts.append(power(base, self.exponent()).expand())
        return product_of(parts, self.alphabet)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``name``, ``name^E`` and ``[u,v]^E`` tokens into a reduced word."""
    p = _Parser(text, alphabet)
    w = p.word((None, "]", ","))
    if p.peek() is not None:
        raise WordSyntaxError("unbalanced bracket")
    return w


def format_word(u: Word) -> str:
    a = u.array
    if not len(a):
        return "1"
    names = u.alphabet.names
    out = []
    i = 0
    n = len(a)
    while i < n:
        x = a[i]
        j = i
        while j < n and a[j] == x:
            j += 1
        e = (j - i) if x > 0 else -(j - i)
        name = names[abs(x) - 1]
        out.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(out)


# -- enumeration and sampling --------------------------------------------------

def reduced_words(alphabet: Alphabet, length: int) -> Iterator[Word]:
    """All reduced words of exactly ``length`` letters, in a fixed order."""
    letters = [s * (g + 1) for g in range(alphabet.rank) for s in (1, -1)]
    if length == 0:
        yield alphabet.identity()
        return

    def extend(prefix):
        if len(prefix) == length:
            yield Word(alphabet, prefix, reduced=True)
            return
        for x in letters:
            if prefix and prefix[-1] == -x:
                continue
            yield from extend(prefix + [x])

    yield from extend([])


def words_up_to(alphabet: Alphabet, max_length: int) -> list[Word]:
    return [w for n in range(max_length + 1) for w in reduced_words(alphabet, n)]


def random_word(alphabet: Alphabet, length: int, rng: random.Random) -> Word:
    """Uniformly random reduced word of exactly ``length`` letters."""
    r = alphabet.rank
    out = []
    for _ in range(length):
        while True:
            x = rng.randrange(1, r + 1) * rng.choice((1, -1))
            if not out or out[-1] != -x:
                break
        out.append(x)
    return Word(alphabet, out, reduced=True)


def all_tuples(alphabet: Alphabet, max_length: int, size: int) -> list[tuple[Word, ...]]:
    return list(product(words_up_to(alphabet, max_length), repeat=size))


# late import: power/expand live with the compressed representation
from mrq.runs import PowerExpr, expand, power  # noqa: E402
