"""Free groupoids on directed graphs.

Words are written additively, left to right: ``a + b`` means "first ``a``,
then ``b``".  A :class:`Word` is always stored freely reduced.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Letter = tuple[str, int]


class WordError(ValueError):
    """Ill-formed or non-composable word."""


@dataclass(frozen=True, order=True)
class Word:
    start: str
    end: str
    letters: tuple[Letter, ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return compose(self, other)

    def __neg__(self) -> "Word":
        return invert(self)

    def __sub__(self, other: "Word") -> "Word":
        return compose(self, invert(other))

    def __str__(self) -> str:
        return format_word(self)


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for e, s in letters:
        if out and out[-1][0] == e and out[-1][1] == -s:
            out.pop()
        else:
            out.append((e, s))
    return tuple(out)


def reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs; endpoints are preserved."""
    return Word(w.start, w.end, _reduce_letters(w.letters))


def compose(u: Word, v: Word) -> Word:
    if u.end != v.start:
        raise WordError(f"cannot compose {u} ending at {u.end!r} with {v} starting at {v.start!r}")
    return Word(u.start, v.end, _reduce_letters(u.letters + v.letters))


def invert(w: Word) -> Word:
    return Word(w.end, w.start, tuple((e, -s) for e, s in reversed(w.letters)))


def identity(p: str) -> Word:
    return Word(p, p, ())


def format_word(w: Word) -> str:
    if not w.letters:
        return "0"
    parts = []
    for k, (e, s) in enumerate(w.letters):
        if s > 0:
            parts.append(e if k == 0 else f"+ {e}")
        else:
            parts.append(f"- {e}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*([+-]|[^\s+\-]+)")


class Graph:
    """A finite directed graph; its edges freely generate a groupoid."""

    def __init__(self, objects: Iterable[str], edges: Mapping[str, tuple[str, str]]):
        self.objects = tuple(objects)
        obj = set(self.objects)
        if len(obj) != len(self.objects):
            raise ValueError("duplicate object names")
        self.edges = dict(edges)
        for e, (s, t) in self.edges.items():
            if s not in obj or t not in obj:
                raise ValueError(f"edge {e!r} has endpoints outside the object set")

    def source(self, e: str) -> str:
        return self.edges[e][0]

    def target(self, e: str) -> str:
        return self.edges[e][1]

    def gen(self, e: str, sign: int = 1) -> Word:
        s, t = self.edges[e]
        return Word(s, t, ((e, 1),)) if sign > 0 else Word(t, s, ((e, -1),))

    def word(self, letters: Sequence[Letter], start: str | None = None) -> Word:
        """Build and reduce a word, checking composability."""
        if not letters:
            if start is None:
                raise WordError("an empty word needs an explicit object")
            return identity(start)
        here = None
        for e, s in letters:
            if e not in self.edges:
                raise WordError(f"unknown edge {e!r}")
            a, b = self.edges[e] if s > 0 else self.edges[e][::-1]
            if here is None:
                if start is not None and a != start:
                    raise WordError(f"word does not start at {start!r}")
                first = a
            elif here != a:
                raise WordError(f"letter {e!r} does not compose at {here!r}")
            here = b
        return reduce(Word(first, here, tuple((e, 1 if s > 0 else -1) for e, s in letters)))

    def parse(self, text: str, start: str | None = None) -> Word:
        """Parse ``a + b - c`` (or ``0`` for an identity, which needs ``start``)."""
        toks = _TOKEN.findall(text.strip())
        if toks == ["0"]:
            if start is None:
                raise WordError("identity word needs an object")
            return identity(start)
        letters: list[Letter] = []
        sign = 1
        expect_name = True
        for tok in toks:
            if tok in "+-":
                sign = 1 if tok == "+" else -1
                expect_name = True
                continue
            if not expect_name:
                raise WordError(f"missing operator before {tok!r} in {text!r}")
            letters.append((tok, sign))
            sign = 1
            expect_name = False
        if expect_name and toks:
            raise WordError(f"dangling operator in {text!r}")
        return self.word(letters, start)

    def spanning_forest(self) -> dict[str, Word]:
        """Map each object to a tree word from its component root.

        Roots are the first object of each component in ``self.objects``;
        edges are scanned in sorted order so the result is deterministic.
        """
        adj: dict[str, list[tuple[str, int, str]]] = {p: [] for p in self.objects}
        for e in sorted(self.edges):
            s, t = self.edges[e]
            adj[s].append((e, 1, t))
            adj[t].append((e, -1, s))
        tree: dict[str, Word] = {}
        for root in self.objects:
            if root in tree:
                continue
            tree[root] = identity(root)
            queue = [root]
            while queue:
                p = queue.pop(0)
                for e, s, q in adj[p]:
                    if q not in tree:
                        tree[q] = compose(tree[p], self.gen(e, s))
                        queue.append(q)
        return tree

    def components(self) -> list[list[str]]:
        tree = self.spanning_forest()
        comps: dict[str, list[str]] = {}
        for p in self.objects:
            comps.setdefault(tree[p].start, []).append(p)
        return list(comps.values())
