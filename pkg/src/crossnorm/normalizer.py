"""Canonical forms for the fundamental groupoid of a presentation.

A normalizer picks, for every groupoid word ``w``, a representative
``canon(w)`` of its class modulo the normal closure of the relators (the
image of the second boundary).  Three strategies ship:

* :class:`FreeNormalizer`: no relations, ``canon`` is free reduction.
* :class:`SimplyConnectedNormalizer`: every component has trivial
  fundamental group; words collapse onto spanning-tree paths.
* :class:`PresentationNormalizer`: Tietze-eliminates generators, then either
  the reduced presentation is relator-free (free group, decidable) or the
  group is enumerated by coset enumeration under a state budget.  Anything
  else raises :class:`NormalizerCapacityError`.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .groupoid import Graph, Word, compose, identity, invert, reduce

GenWord = tuple[tuple[str, int], ...]

DEFAULT_BUDGET = 100_000


class NormalizerCapacityError(RuntimeError):
    """The word problem for this presentation is out of the strategy's reach."""


class Pi1Normalizer:
    name = "abstract"

    def canon(self, w: Word) -> Word:
        raise NotImplementedError

    def same(self, u: Word, v: Word) -> bool:
        return u.start == v.start and u.end == v.end and self.canon(u) == self.canon(v)


class FreeNormalizer(Pi1Normalizer):
    name = "free"

    def canon(self, w: Word) -> Word:
        return reduce(w)


class SimplyConnectedNormalizer(Pi1Normalizer):
    name = "simply-connected"

    def __init__(self, graph: Graph):
        self.tree = graph.spanning_forest()

    def canon(self, w: Word) -> Word:
        a, b = self.tree[w.start], self.tree[w.end]
        if a.start != b.start:
            raise ValueError(f"word {w} joins different components")
        return compose(invert(a), b)


def _free_reduce(word: Iterable[tuple[str, int]]) -> GenWord:
    out: list[tuple[str, int]] = []
    for g, s in word:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def _cyclic_reduce(word: GenWord) -> GenWord:
    w = list(word)
    while len(w) >= 2 and w[0] == (w[-1][0], -w[-1][1]):
        w = w[1:-1]
    return tuple(w)


def _inv(word: GenWord) -> GenWord:
    return tuple((g, -s) for g, s in reversed(word))


def _substitute(word: GenWord, g: str, repl: GenWord) -> GenWord:
    out: list[tuple[str, int]] = []
    for h, s in word:
        if h == g:
            out.extend(repl if s > 0 else _inv(repl))
        else:
            out.append((h, s))
    return _free_reduce(out)


def tietze(gens: Sequence[str], relators: Iterable[GenWord]):
    """Eliminate generators that occur exactly once in some relator.

    Returns ``(remaining_gens, relators, substitution)`` where
    ``substitution`` expresses each eliminated generator as a word in the
    remaining ones.  Shortest relators are used first to limit growth.
    """
    rels = [r for r in (_cyclic_reduce(_free_reduce(r)) for r in relators) if r]
    subst: dict[str, GenWord] = {}
    live = list(gens)
    while True:
        rels = sorted(set(rels), key=lambda r: (len(r), r))
        pick = None
        for r in rels:
            counts: dict[str, int] = {}
            for h, _ in r:
                counts[h] = counts.get(h, 0) + 1
            once = [h for h in sorted(counts) if counts[h] == 1]
            if once:
                pick = (r, once[0])
                break
        if pick is None:
            break
        r, g = pick
        k = next(i for i, (h, _) in enumerate(r) if h == g)
        u, s, v = r[:k], r[k][1], r[k + 1 :]
        # u g^s v = 1
        repl = _free_reduce(_inv(u) + _inv(v)) if s > 0 else _free_reduce(v + u)
        subst = {h: _substitute(w, g, repl) for h, w in subst.items()}
        subst[g] = repl
        live.remove(g)
        rels = [_cyclic_reduce(_substitute(x, g, repl)) for x in rels if x != r]
        rels = [x for x in rels if x]
    return live, rels, subst


class _Component:
    """Word problem for one connected component, as a group at the root."""

    def __init__(self, gens, relators, budget):
        self.gens, self.relators, self.subst = tietze(gens, relators)
        self.kind = "free" if not self.relators else "finite"
        if self.kind == "finite":
            self._enumerate(budget)

    def _enumerate(self, budget: int) -> None:
        from sympy.combinatorics.coset_table import coset_enumeration_r
        from sympy.combinatorics.fp_groups import FpGroup
        from sympy.combinatorics.free_groups import free_group

        F, *syms = free_group(",".join(f"g{i}" for i in range(len(self.gens))))
        index = {g: i for i, g in enumerate(self.gens)}

        def to_sym(word):
            out = F.identity
            for g, s in word:
                out = out * syms[index[g]] ** s
            return out

        group = FpGroup(F, [to_sym(r) for r in self.relators])
        try:
            table = coset_enumeration_r(group, [], max_cosets=budget)
        except ValueError as exc:
            raise NormalizerCapacityError(
                f"coset enumeration exceeded {budget} cosets for relators {self.relators}"
            ) from exc
        table.compress()
        table.standardize()
        self.table = [list(row) for row in table.table]
        self.columns = {}
        for col, a in enumerate(table.A):
            (i, s), = a.array_form
            self.columns[(self.gens[int(str(i)[1:])], 1 if s > 0 else -1)] = col
        rep: dict[int, GenWord] = {0: ()}
        queue = deque([0])
        order = sorted(self.columns.items(), key=lambda kv: kv[1])
        while queue:
            c = queue.popleft()
            for letter, col in order:
                d = self.table[c][col]
                if d not in rep:
                    rep[d] = rep[c] + (letter,)
                    queue.append(d)
        self.rep = rep

    @property
    def order(self) -> int | None:
        return len(self.table) if self.kind == "finite" else None

    def normal_form(self, word: GenWord) -> GenWord:
        for g, repl in self.subst.items():
            word = _substitute(word, g, repl)
        if self.kind == "free":
            return word
        c = 0
        for letter in word:
            c = self.table[c][self.columns[letter]]
        return self.rep[c]


class PresentationNormalizer(Pi1Normalizer):
    name = "presentation"

    def __init__(self, graph: Graph, relators: Iterable[Word], budget: int = DEFAULT_BUDGET):
        self.graph = graph
        self.tree = graph.spanning_forest()
        self.budget = budget
        # each non-tree edge is a generator of its component's vertex group
        self.loop_gen: dict[str, str | None] = {}
        comp_gens: dict[str, list[str]] = {self.tree[p].start: [] for p in graph.objects}
        for e in sorted(graph.edges):
            s, t = graph.edges[e]
            loop = compose(compose(self.tree[s], graph.gen(e)), invert(self.tree[t]))
            if loop.is_identity:
                self.loop_gen[e] = None
            else:
                self.loop_gen[e] = e
                comp_gens[self.tree[s].start].append(e)
        comp_rels: dict[str, list[GenWord]] = {root: [] for root in comp_gens}
        for r in relators:
            if r.start != r.end:
                raise ValueError(f"relator {r} is not a loop")
            comp_rels[self.tree[r.start].start].append(self._gen_word(r))
        self.components = {
            root: _Component(comp_gens[root], comp_rels[root], budget) for root in comp_gens
        }

    def _gen_word(self, w: Word) -> GenWord:
        return _free_reduce((e, s) for e, s in w.letters if self.loop_gen[e] is not None)

    def _edge_word(self, root: str, word: GenWord) -> Word:
        out = identity(root)
        for e, s in word:
            a, b = self.graph.edges[e]
            loop = compose(compose(self.tree[a], self.graph.gen(e)), invert(self.tree[b]))
            out = compose(out, loop if s > 0 else invert(loop))
        return out

    def group_element(self, w: Word) -> tuple[str, GenWord]:
        """Normal form of ``tree(start) + w - tree(end)`` at the root."""
        root = self.tree[w.start].start
        return root, self.components[root].normal_form(self._gen_word(w))

    def canon(self, w: Word) -> Word:
        root, nf = self.group_element(w)
        loop = self._edge_word(root, nf)
        return compose(compose(invert(self.tree[w.start]), loop), self.tree[w.end])

    def describe(self) -> list[str]:
        lines = []
        for root, comp in self.components.items():
            if comp.kind == "free":
                lines.append(f"component {root}: free of rank {len(comp.gens)}")
            else:
                lines.append(f"component {root}: finite of order {comp.order}")
        return lines


STRATEGIES = ("auto", "free", "simply-connected", "presentation")


def make_normalizer(
    strategy: str, graph: Graph, relators: Sequence[Word], budget: int = DEFAULT_BUDGET
) -> Pi1Normalizer:
    """Instantiate a strategy; ``auto`` picks free when there are no
    relators and the presentation strategy otherwise."""
    if strategy == "free":
        return FreeNormalizer()
    if strategy == "simply-connected":
        return SimplyConnectedNormalizer(graph)
    if strategy == "presentation":
        return PresentationNormalizer(graph, relators, budget)
    if strategy == "auto":
        if all(r.is_identity for r in relators):
            return FreeNormalizer()
        return PresentationNormalizer(graph, relators, budget)
    raise ValueError(f"unknown normalizer strategy {strategy!r}")
