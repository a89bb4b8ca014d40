"""Free-group homomorphisms, Stallings foldings and rank-2 Whitehead minimization."""
from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Sequence

from mrq import kernels
from mrq.runs import PowerExpr, RunWord
from mrq.words import (
    Alphabet,
    AlphabetMismatch,
    Word,
    conjugate,
    cyclic_reduce,
    format_word,
    invert,
    translation_length,
)


@dataclass(frozen=True)
class EndoMap:
    """Homomorphism ``F(source) -> F(target)`` given by generator images."""

    source: Alphabet
    target: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.rank:
            raise ValueError("one image per source generator required")
        for img in self.images:
            if img.alphabet != self.target:
                raise AlphabetMismatch("image over the wrong alphabet")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "EndoMap":
        return cls(alphabet, alphabet, tuple(alphabet.gens()))

    @classmethod
    def from_dict(cls, source: Alphabet, target: Alphabet, mapping: dict) -> "EndoMap":
        images = []
        for name in source.names:
            img = mapping.get(name, name)
            images.append(img if isinstance(img, Word) else target.word(img))
        return cls(source, target, tuple(images))

    @classmethod
    def conjugation(cls, s: Word) -> "EndoMap":
        return cls(s.alphabet, s.alphabet, tuple(conjugate(g, s) for g in s.alphabet.gens()))

    def __call__(self, u: Word) -> Word:
        return apply(self, u)

    def __str__(self):
        pairs = ", ".join(f"{n} -> {format_word(img)}" for n, img in zip(self.source.names, self.images))
        return "{" + pairs + "}"


def apply(f, u: Word) -> Word:
    if u.alphabet != f.source:
        raise AlphabetMismatch("word is not over the map's source alphabet")
    if isinstance(f, LazyMap):
        return f.apply(u).to_word()
    images = [img.array for img in f.images]
    inverses = [invert(img).array for img in f.images]
    return Word(f.target, kernels.substitute_reduce(u.array, images, inverses), reduced=True)


def compose(f: EndoMap, g: EndoMap) -> EndoMap:
    """``f . g``: apply ``g`` first."""
    if g.target != f.source:
        raise AlphabetMismatch("g.target must equal f.source")
    return EndoMap(g.source, f.target, tuple(apply(f, img) for img in g.images))


class LazyMap:
    """A homomorphism whose images are held compressed.

    Images of the form ``w^k b w^-k`` with ``|k|`` in the hundreds are far
    too long to substitute letter by letter; here each block ``base^e`` of
    the input is mapped once and then powered in compressed form.
    """

    def __init__(self, source: Alphabet, target: Alphabet, images: Sequence[RunWord]):
        if len(images) != source.rank:
            raise ValueError("one image per source generator required")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._inverses = tuple(img.inverse() for img in self.images)

    def _letter(self, x: int) -> RunWord:
        return self.images[x - 1] if x > 0 else self._inverses[-x - 1]

    def image_of_word(self, u: Word) -> RunWord:
        if u.alphabet != self.source:
            raise AlphabetMismatch("word is not over the map's source alphabet")
        return RunWord.concat(self.target, (self._letter(x) for x in u.array))

    def apply(self, x) -> RunWord:
        if isinstance(x, Word):
            return self.image_of_word(x)
        if x.alphabet != self.source:
            raise AlphabetMismatch("expression is not over the map's source alphabet")
        parts = [self.image_of_word(base).power(e) for base, e in x.blocks]
        return RunWord.concat(self.target, parts)

    def image_word(self, i: int) -> Word:
        return self.images[i].to_word()

    def materialize(self) -> EndoMap:
        return EndoMap(self.source, self.target, tuple(img.to_word() for img in self.images))


# -- Stallings foldings --------------------------------------------------------

@dataclass(frozen=True)
class SubgroupGraph:
    """Folded core graph; state 0 is the basepoint.

    ``edges`` holds ``(src, gen, dst)`` for positive generators only.
    """

    alphabet: Alphabet
    num_states: int
    edges: tuple[tuple[int, int, int], ...]

    def transitions(self) -> dict[tuple[int, int], int]:
        out = {}
        for s, g, t in self.edges:
            out[(s, g + 1)] = t
            out[(t, -(g + 1))] = s
        return out

    def is_full(self) -> bool:
        """True when the graph accepts the whole free group."""
        return self.num_states == 1 and len(self.edges) == self.alphabet.rank

    def index(self) -> int | None:
        """Index of the subgroup, or ``None`` when it is infinite."""
        trans = self.transitions()
        r = self.alphabet.rank
        for s in range(self.num_states):
            for g in range(1, r + 1):
                if (s, g) not in trans or (s, -g) not in trans:
                    return None
        return self.num_states


def fold(generators: Sequence[Word], alphabet: Alphabet | None = None) -> SubgroupGraph:
    if alphabet is None:
        if not generators:
            raise ValueError("alphabet required for an empty generating list")
        alphabet = generators[0].alphabet
    parent = [0]
    out: list[dict[int, int]] = [{}]

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def new_state():
        parent.append(len(parent))
        out.append({})
        return len(parent) - 1

    pending = []

    def add_edge(s, x, t):
        for a, lab, b in ((s, x, t), (t, -x, s)):
            cur = out[a].get(lab)
            if cur is None:
                out[a][lab] = b
            elif find(cur) != find(b):
                pending.append((cur, b))

    for u in generators:
        if u.alphabet != alphabet:
            raise AlphabetMismatch("generators over different alphabets")
        letters = u.array
        if not len(letters):
            continue
        s = 0
        for i, x in enumerate(letters):
            t = 0 if i == len(letters) - 1 else new_state()
            add_edge(s, x, t)
            s = t

    while pending:
        a, b = pending.pop()
        a, b = find(a), find(b)
        if a == b:
            continue
        if a > b:
            a, b = b, a
        parent[b] = a
        for lab, t in out[b].items():
            cur = out[a].get(lab)
            if cur is None:
                out[a][lab] = t
            elif find(cur) != find(t):
                pending.append((cur, t))
        out[b] = {}

    # collapse to representatives and deduplicate edges
    adj: dict[int, set[tuple[int, int]]] = {}
    for s in range(len(parent)):
        if find(s) != s:
            continue
        adj.setdefault(s, set())
        for lab, t in out[s].items():
            t = find(t)
            adj[s].add((lab, t))
            adj.setdefault(t, set()).add((-lab, s))

    # prune hanging trees away from the basepoint
    degree = {s: len(e) for s, e in adj.items()}
    stack = [s for s, d in degree.items() if d <= 1 and s != 0]
    removed = set()
    while stack:
        s = stack.pop()
        if s in removed or s == 0:
            continue
        removed.add(s)
        for lab, t in adj[s]:
            if t in removed:
                continue
            adj[t].discard((-lab, s))
            degree[t] -= 1
            if degree[t] <= 1 and t != 0:
                stack.append(t)
    live = sorted(s for s in adj if s not in removed)
    number = {s: i for i, s in enumerate(live)}
    edges = sorted(
        (number[s], lab - 1, number[t]) for s in live for lab, t in adj[s] if lab > 0
    )
    return SubgroupGraph(alphabet, len(live), tuple(edges))


def membership(g: SubgroupGraph, u: Word) -> bool:
    trans = g.transitions()
    s = 0
    for x in u.array:
        s = trans.get((s, x))
        if s is None:
            return False
    return s == 0


def subgroup_rank(g: SubgroupGraph) -> int:
    if not g.edges:
        return 0
    return len(g.edges) - g.num_states + 1


def is_cyclic_subgroup(words: Sequence[Word], alphabet: Alphabet | None = None) -> bool:
    return subgroup_rank(fold(words, alphabet)) <= 1


def is_surjective(f: EndoMap) -> bool:
    """Surjectivity onto the target; by the Hopf property this is injectivity in equal rank."""
    return fold(list(f.images), f.target).is_full()


# -- Whitehead minimization in rank 2 ----------------------------------------------

def whitehead_automorphisms(alphabet: Alphabet) -> list[EndoMap]:
    """The nonpermutation Whitehead automorphisms of a rank-2 free group.

    For each multiplier letter ``a`` the other generator ``y`` goes to
    ``y a``, ``a^-1 y`` or ``a^-1 y a``.
    """
    if alphabet.rank != 2:
        raise ValueError("rank 2 only")
    autos = []
    gens = alphabet.gens()
    for i in range(2):
        j = 1 - i
        for a in (gens[i], invert(gens[i])):
            y = gens[j]
            for img in (y * a, invert(a) * y, invert(a) * y * a):
                images = list(gens)
                images[j] = img
                autos.append(EndoMap(alphabet, alphabet, tuple(images)))
    return autos


def whitehead_minimize(u: Word) -> tuple[Word, list[int]]:
    """Cyclic core of minimal length in the automorphic orbit of ``u``.

    Returns the minimized core and the trace of cyclic lengths, which
    strictly decreases.
    """
    autos = whitehead_automorphisms(u.alphabet)
    cur = cyclic_reduce(u)[0].core
    trace = [len(cur)]
    while True:
        best = None
        for f in autos:
            cand = cyclic_reduce(apply(f, cur))[0].core
            if len(cand) < len(cur):
                key = (len(cand), format_word(cand))
                if best is None or key < best[0]:
                    best = (key, cand)
        if best is None:
            return cur, trace
        cur = best[1]
        trace.append(len(cur))


def is_primitive_rank2(u: Word) -> bool:
    if u.alphabet.rank != 2:
        raise ValueError("rank 2 only")
    if translation_length(u) == 0:
        return False
    core, _ = whitehead_minimize(u)
    return len(core) == 1
