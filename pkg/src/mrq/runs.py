"""Compressed reduced words.

A :class:`RunWord` is a freely reduced word stored as a short list of
*segments*.  A segment ``(bid, off, n)`` spells ``n`` letters of the
periodic sequence ``base[bid]`` read cyclically from offset ``off``.
Bases are interned by primitive root and least rotation, so two segments
describe the same infinite sequence exactly when their ``(bid, off)``
agree.  Otherwise, by Fine and Wilf, they differ within ``|p| + |q|``
letters, and the compiled ``periodic_lcp`` finds the first mismatch.

This makes ``w^k`` one segment of length ``k |w|`` and lets lengths of
products like ``w^k b w^l b w^-l ...`` be computed without expanding.
"""
from __future__ import annotations

import os
import threading
from array import array
from typing import Iterable, Sequence

from mrq import kernels

DEFAULT_CAP = 10**8
# cores at most this long become a single periodic segment when powered
_CORE_INLINE = 1 << 16


class MaterializationError(RuntimeError):
    pass


def materialize_cap() -> int:
    raw = os.environ.get("MRQ_MATERIALIZE_CAP")
    return int(raw) if raw else DEFAULT_CAP


class _BaseTable:
    def __init__(self):
        self.bases: list[array] = []
        self.inverse: list[tuple[int, int]] = []
        self._by_canon: dict[bytes, int] = {}
        self._memo: dict[bytes, tuple[int, int]] = {}
        self._lock = threading.RLock()

    def intern(self, seq: array) -> tuple[int, int]:
        """``(bid, off)`` such that ``seq`` is ``bases[bid]`` read from ``off``."""
        key = seq.tobytes()
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        with self._lock:
            n = len(seq)
            p = kernels.smallest_period(seq)
            if n % p:
                p = n
            root = seq[:p]
            s = kernels.least_rotation(root)
            canon = root[s:] + root[:s]
            bid = self._add(canon)
            res = (bid, (-s) % p)
            self._memo[key] = res
            return res

    def _add(self, canon: array) -> int:
        bid = self._by_canon.get(canon.tobytes())
        if bid is not None:
            return bid
        bid = self._new(canon)
        p = len(canon)
        revneg = array("i", (-x for x in reversed(canon)))
        s = kernels.least_rotation(revneg)
        inv_canon = revneg[s:] + revneg[:s]
        ibid = self._by_canon.get(inv_canon.tobytes())
        if ibid is None:
            # a class and its inverse are always added together
            ibid = self._new(inv_canon)
            back = array("i", (-x for x in reversed(inv_canon)))
            self.inverse[ibid] = (bid, _find_offset(canon, back))
        # revneg[m] == inv_canon[(m - s) % p]
        self.inverse[bid] = (ibid, (-s) % p)
        return bid

    def _new(self, canon: array) -> int:
        bid = len(self.bases)
        self.bases.append(canon)
        self.inverse.append((bid, 0))
        self._by_canon[canon.tobytes()] = bid
        return bid


def _find_offset(canon: array, seq: array) -> int:
    """Offset ``o`` with ``seq[m] == canon[(o + m) % p]`` (seq a rotation of canon)."""
    p = len(canon)
    doubled = (canon + canon).tobytes()
    pos = doubled.find(seq.tobytes())
    while pos % canon.itemsize:
        pos = doubled.find(seq.tobytes(), pos + 1)
    return pos // canon.itemsize


_TABLE = _BaseTable()


def _inv_seg(seg):
    bid, off, n = seg
    ibid, ioff = _TABLE.inverse[bid]
    p = len(_TABLE.bases[bid])
    return (ibid, (ioff - off - n) % p, n)


def _lcp(s, t, limit):
    """Common prefix of two segments, capped at ``limit``."""
    if s[0] == t[0] and s[1] == t[1]:
        return limit
    return kernels.periodic_lcp(_TABLE.bases[s[0]], s[1], _TABLE.bases[t[0]], t[1], limit)


def _advance(seg, c):
    bid, off, n = seg
    return (bid, (off + c) % len(_TABLE.bases[bid]), n - c)


def _push(stack: list, seg) -> None:
    """Append ``seg`` to the reduced segment list ``stack`` with free cancellation."""
    while seg[2] and stack:
        top = stack[-1]
        c = _lcp(_inv_seg(top), seg, min(top[2], seg[2]))
        if c == 0:
            break
        if c == top[2]:
            stack.pop()
        else:
            stack[-1] = (top[0], top[1], top[2] - c)
        seg = _advance(seg, c)
    if not seg[2]:
        return
    if stack:
        top = stack[-1]
        p = len(_TABLE.bases[top[0]])
        if top[0] == seg[0] and (top[1] + top[2]) % p == seg[1]:
            stack[-1] = (top[0], top[1], top[2] + seg[2])
            return
    stack.append(seg)


class RunWord:
    """A reduced word held as interned periodic segments."""

    __slots__ = ("alphabet", "segments", "length")

    def __init__(self, alphabet, segments: Sequence[tuple[int, int, int]] = ()):
        # segments must already form a reduced, merged list
        self.alphabet = alphabet
        self.segments = tuple(segments)
        self.length = sum(s[2] for s in self.segments)

    @classmethod
    def identity(cls, alphabet) -> "RunWord":
        return cls(alphabet)

    @classmethod
    def from_word(cls, u) -> "RunWord":
        if not len(u):
            return cls(u.alphabet)
        bid, off = _TABLE.intern(u.array)
        return cls(u.alphabet, [(bid, off, len(u))])

    @classmethod
    def concat(cls, alphabet, parts: Iterable["RunWord"]) -> "RunWord":
        stack: list = []
        for part in parts:
            if part.alphabet != alphabet:
                raise ValueError("alphabet mismatch")
            for seg in part.segments:
                _push(stack, seg)
        return cls(alphabet, stack)

    def __len__(self):
        return self.length

    def __mul__(self, other: "RunWord") -> "RunWord":
        return RunWord.concat(self.alphabet, (self, other))

    def inverse(self) -> "RunWord":
        return RunWord(self.alphabet, [_inv_seg(s) for s in reversed(self.segments)])

    def is_identity(self) -> bool:
        return self.length == 0

    def iter_letters(self):
        bases = _TABLE.bases
        for bid, off, n in self.segments:
            base = bases[bid]
            p = len(base)
            if off + n <= p:
                yield from base[off : off + n]
                continue
            yield from base[off:]
            n -= p - off
            full, rest = divmod(n, p)
            for _ in range(full):
                yield from base
            yield from base[:rest]

    def to_array(self, cap: int | None = None) -> array:
        cap = materialize_cap() if cap is None else cap
        if self.length > cap:
            raise MaterializationError(f"{self.length} letters exceed the cap of {cap}")
        bases = _TABLE.bases
        out = array("i")
        for bid, off, n in self.segments:
            base = bases[bid]
            p = len(base)
            rotated = base[off:] + base[:off]
            full, rest = divmod(n, p)
            if full:
                out.extend(rotated * full)
            out.extend(rotated[:rest])
        return out

    def to_word(self, cap: int | None = None):
        from mrq.words import Word

        return Word(self.alphabet, self.to_array(cap), reduced=True)

    def slice(self, start: int, stop: int) -> "RunWord":
        """Letters ``[start, stop)``; subwords of reduced words are reduced."""
        out = []
        pos = 0
        for seg in self.segments:
            lo = max(start, pos)
            hi = min(stop, pos + seg[2])
            if lo < hi:
                s = _advance(seg, lo - pos)
                out.append((s[0], s[1], hi - lo))
            pos += seg[2]
        return RunWord(self.alphabet, out)

    def common_prefix(self, other: "RunWord") -> int:
        a = list(self.segments)
        b = list(other.segments)
        i = j = 0
        total = 0
        sa = a[0] if a else None
        sb = b[0] if b else None
        while sa is not None and sb is not None:
            m = min(sa[2], sb[2])
            c = _lcp(sa, sb, m)
            total += c
            if c < m:
                break
            sa = _advance(sa, m)
            sb = _advance(sb, m)
            if not sa[2]:
                i += 1
                sa = a[i] if i < len(a) else None
            if not sb[2]:
                j += 1
                sb = b[j] if j < len(b) else None
        return total

    def cyclic_reduce(self) -> tuple["RunWord", "RunWord"]:
        """``(core, conjugator)`` with ``self = conjugator core conjugator^-1``."""
        c = self.common_prefix(self.inverse())
        if 2 * c >= self.length:
            empty = RunWord(self.alphabet)
            return empty, empty
        return self.slice(c, self.length - c), self.slice(0, c)

    def translation_length(self) -> int:
        c = self.common_prefix(self.inverse())
        return max(self.length - 2 * c, 0)

    def power(self, n: int) -> "RunWord":
        if n == 0 or not self.length:
            return RunWord(self.alphabet)
        core, conj = self.cyclic_reduce()
        if n < 0:
            core = core.inverse()
            n = -n
        if core.length <= _CORE_INLINE:
            bid, off = _TABLE.intern(core.to_array())
            body = [(bid, off, n * core.length)]
        else:
            body = list(core.segments) * n
        stack: list = []
        for seg in conj.segments:
            _push(stack, seg)
        for seg in body:
            _push(stack, seg)
        for seg in conj.inverse().segments:
            _push(stack, seg)
        return RunWord(self.alphabet, stack)

    def exponent_vector(self) -> tuple[int, ...]:
        vec = [0] * self.alphabet.rank
        bases = _TABLE.bases
        for bid, off, n in self.segments:
            base = bases[bid]
            p = len(base)
            full, rest = divmod(n, p)
            counts = [0] * len(vec)
            for x in base:
                counts[abs(x) - 1] += 1 if x > 0 else -1
            for g in range(len(vec)):
                vec[g] += full * counts[g]
            for i in range(rest):
                x = base[(off + i) % p]
                vec[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(vec)

    def __repr__(self):
        return f"RunWord(length={self.length}, segments={len(self.segments)})"


class PowerExpr:
    """Product of ``base^exponent`` blocks; reduction happens lazily."""

    __slots__ = ("alphabet", "blocks", "_reduced")

    def __init__(self, alphabet, blocks: Iterable[tuple[object, int]] = ()):
        kept = []
        for base, e in blocks:
            if base.alphabet != alphabet:
                raise ValueError("alphabet mismatch")
            if e != 0 and len(base):
                kept.append((base, int(e)))
        self.alphabet = alphabet
        self.blocks = tuple(kept)
        self._reduced = None

    def reduced(self) -> RunWord:
        if self._reduced is None:
            stack: list = []
            for base, e in self.blocks:
                for seg in RunWord.from_word(base).power(e).segments:
                    _push(stack, seg)
            self._reduced = RunWord(self.alphabet, stack)
        return self._reduced

    @property
    def length(self) -> int:
        return self.reduced().length

    def __len__(self):
        return self.length

    def expand(self, cap: int | None = None):
        return self.reduced().to_word(cap)

    def inverse(self) -> "PowerExpr":
        return PowerExpr(self.alphabet, [(b, -e) for b, e in reversed(self.blocks)])

    def __mul__(self, other: "PowerExpr") -> "PowerExpr":
        return PowerExpr(self.alphabet, self.blocks + other.blocks)

    def raw_length(self) -> int:
        return sum(len(b) * abs(e) for b, e in self.blocks)

    def exponent_vector(self) -> tuple[int, ...]:
        from mrq.words import exponent_vector

        vec = [0] * self.alphabet.rank
        for base, e in self.blocks:
            for g, v in enumerate(exponent_vector(base)):
                vec[g] += e * v
        return tuple(vec)

    def __repr__(self):
        from mrq.words import format_word

        inner = ", ".join(f"({format_word(b)}, {e})" for b, e in self.blocks)
        return f"PowerExpr([{inner}])"


def power(u, n: int) -> PowerExpr:
    return PowerExpr(u.alphabet, [(u, n)])


def expand(p: PowerExpr, cap: int | None = None):
    return p.expand(cap)
