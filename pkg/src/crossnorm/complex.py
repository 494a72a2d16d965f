"""Free crossed complexes of groupoids, truncated at a finite level."""
from __future__ import annotations

from typing import Iterable, Mapping

from . import elements as el
from .elements import Dim2, Element, ElementError, ModuleElement, dim_of
from .groupoid import Graph, Word, compose, identity, invert
from .normalizer import DEFAULT_BUDGET, Pi1Normalizer, make_normalizer


class ComplexError(ValueError):
    """Inconsistent basis or boundary data."""


class FreeCrossedComplex:
    """Free crossed complex on a graded basis.

    ``edges`` maps each dimension-1 generator to ``(source, target)``;
    ``cells`` maps each higher generator to ``(dim, target, boundary)``.
    Boundaries of dimension >= 3 (i.e. of generators of dimension >= 4) may
    be given with non-canonical operators; they are re-keyed once the
    normalizer exists.  Names must be unique across objects and generators.

    ``normalizer`` is a strategy name (see
    :func:`crossnorm.normalizer.make_normalizer`) or an instance.  Its
    validity for this complex is the caller's responsibility.
    """

    def __init__(
        self,
        objects: Iterable[str],
        edges: Mapping[str, tuple[str, str]],
        cells: Mapping[str, tuple[int, str, Element]],
        trunc_level: int,
        normalizer: str | Pi1Normalizer = "auto",
        budget: int = DEFAULT_BUDGET,
    ):
        self.graph = Graph(objects, edges)
        self.objects = self.graph.objects
        self.trunc_level = trunc_level
        self.budget = budget
        self._dim: dict[str, int] = {e: 1 for e in self.graph.edges}
        self._target: dict[str, str] = {e: t for e, (_, t) in self.graph.edges.items()}
        self._bdry: dict[str, Element] = {}
        seen = set(self.objects)
        for e in self.graph.edges:
            if e in seen:
                raise ComplexError(f"name {e!r} is used twice")
            seen.add(e)
        by_dim: dict[int, list[str]] = {}
        for g, (n, t, b) in cells.items():
            if g in seen:
                raise ComplexError(f"name {g!r} is used twice")
            if n < 2:
                raise ComplexError(f"cell {g!r} must have dimension >= 2")
            if n > trunc_level:
                raise ComplexError(f"cell {g!r} lies above truncation level {trunc_level}")
            if t not in self.graph.objects:
                raise ComplexError(f"cell {g!r} has unknown target {t!r}")
            seen.add(g)
            self._dim[g] = n
            self._target[g] = t
            by_dim.setdefault(n, []).append(g)
        self._basis = {0: tuple(self.objects), 1: tuple(self.graph.edges)}
        for n in range(2, trunc_level + 1):
            self._basis[n] = tuple(by_dim.get(n, ()))
        for g, (n, t, b) in cells.items():
            self._check_shape(b, n - 1, t, f"boundary of {g!r}")
            if n == 2 and b.start != b.end:
                raise ComplexError(f"boundary of {g!r} is not a loop")
            self._bdry[g] = b
        relators = [self._bdry[g] for g in self._basis.get(2, ())]
        if isinstance(normalizer, Pi1Normalizer):
            self.normalizer = normalizer
        else:
            self.normalizer = make_normalizer(normalizer, self.graph, relators, budget)
        for g, b in self._bdry.items():
            if isinstance(b, ModuleElement):
                self._bdry[g] = self.canonical(b)

    # -- basis -----------------------------------------------------------

    @property
    def strategy(self) -> str:
        return self.normalizer.name

    def basis(self, n: int) -> tuple[str, ...]:
        return self._basis.get(n, ())

    def generators(self) -> Iterable[str]:
        for n in range(1, self.trunc_level + 1):
            yield from self.basis(n)

    def has(self, g: str) -> bool:
        return g in self._dim

    def gen_dim(self, g: str) -> int:
        return self._dim[g]

    def target(self, g: str) -> str:
        return self._target[g]

    def source(self, e: str) -> str:
        return self.graph.source(e)

    def delta(self, g: str) -> Element:
        """Stored boundary of a generator of dimension >= 2."""
        return self._bdry[g]

    def gen(self, g: str) -> Element:
        n = self._dim[g]
        if n == 1:
            return self.graph.gen(g)
        return el.generator(n, g, self._target[g])

    def zero(self, n: int, p: str) -> Element:
        return el.zero(n, p)

    def _check_shape(self, e: Element, n: int, t: str, what: str) -> None:
        if dim_of(e) != n:
            raise ComplexError(f"{what}: expected dimension {n}, got {dim_of(e)}")
        if el.endpoint(e) != t:
            raise ComplexError(f"{what}: endpoint {el.endpoint(e)!r} != {t!r}")
        if n == 1:
            for x, _ in e.letters:
                if self._dim.get(x) != 1:
                    raise ComplexError(f"{what}: {x!r} is not an edge")
            return
        pairs = (
            [(g, w) for _, g, w in e.terms] if n == 2 else [k for k, _ in e.items]
        )
        for g, w in pairs:
            if self._dim.get(g) != n:
                raise ComplexError(f"{what}: {g!r} is not a generator of dimension {n}")
            if w.start != self._target[g]:
                raise ComplexError(f"{what}: operator on {g!r} must start at {self._target[g]!r}")

    def check(self, e: Element) -> Element:
        """Raise unless ``e`` is a well-formed element of this complex."""
        self._check_shape(e, dim_of(e), el.endpoint(e), "element")
        return e

    # -- arithmetic ------------------------------------------------------

    def canon(self, w: Word) -> Word:
        return self.normalizer.canon(w)

    def canonical(self, e: Element) -> Element:
        if isinstance(e, ModuleElement):
            return el.module(e.dim, e.endpoint, [(g, w, c) for (g, w), c in e.items], self.canon)
        return e

    def add(self, a: Element, b: Element) -> Element:
        return el.add(a, b, self.canon)

    def neg(self, a: Element) -> Element:
        return el.neg(a)

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, el.neg(b))

    def total(self, n: int, p: str, parts: Iterable[Element]) -> Element:
        return el.total(n, p, parts, self.canon)

    def act(self, a: Element, w: Word) -> Element:
        return el.act(a, w, self.canon)

    def boundary(self, e: Element) -> Element:
        n = dim_of(e)
        if n < 2:
            raise ElementError("boundary is defined in dimensions >= 2")
        if isinstance(e, Dim2):
            out = identity(e.endpoint)
            for s, g, w in e.terms:
                d = self._bdry[g]
                piece = compose(compose(invert(w), d if s > 0 else invert(d)), w)
                out = compose(out, piece)
            return out
        parts = []
        for (g, w), c in e.items:
            image = self.act(self._bdry[g], w)
            if n == 3:
                unit = image if c > 0 else el.neg(image)
                parts.extend([unit] * abs(c))
            else:
                parts.append(el.scale(image, c))
        return self.total(n - 1, e.endpoint, parts)

    def abelianize(self, a: Dim2) -> dict[tuple[str, Word], int]:
        acc: dict[tuple[str, Word], int] = {}
        for s, g, w in a.terms:
            k = (g, self.canon(w))
            acc[k] = acc.get(k, 0) + s
        return {k: v for k, v in acc.items() if v}

    def equal(self, a: Element, b: Element) -> bool:
        """Decide equality of two elements of the same dimension.

        Dimension 2 compares boundaries as reduced words together with
        abelianizations; this is exact because the dimension-1 groupoid is
        free.
        """
        n = dim_of(a)
        if n != dim_of(b):
            raise ElementError(f"cannot compare dimensions {n} and {dim_of(b)}")
        if n <= 1:
            return a == b
        if a.endpoint != b.endpoint:
            return False
        if n == 2:
            return self.boundary(a) == self.boundary(b) and self.abelianize(a) == self.abelianize(b)
        return self.canonical(a).items == self.canonical(b).items

    def is_trivial(self, a: Element) -> bool:
        n = dim_of(a)
        if n == 0:
            return True
        return self.equal(a, el.zero(n, el.endpoint(a)))

    # -- audits ----------------------------------------------------------

    def audit_dd(self) -> list[str]:
        """CC1 audit: boundaries of dim-2 generators are loops and
        ``dd`` vanishes on every generator of dimension >= 3."""
        bad = []
        for g in self.basis(2):
            d = self._bdry[g]
            if d.start != d.end:
                bad.append(f"{g}: s(d g) != t(d g)")
        for n in range(3, self.trunc_level + 1):
            for g in self.basis(n):
                dd = self.boundary(self._bdry[g])
                if not self.is_trivial(dd):
                    bad.append(f"{g}: dd = {el.format_element(dd)}")
        return bad

    def truncate(self, n: int) -> "FreeCrossedComplex":
        if n >= self.trunc_level:
            return self
        cells = {
            g: (self._dim[g], self._target[g], self._bdry[g])
            for g in self._bdry
            if self._dim[g] <= n
        }
        edges = self.graph.edges if n >= 1 else {}
        normalizer = self.normalizer if n >= 2 else "free"
        return FreeCrossedComplex(self.objects, edges, cells, n, normalizer, self.budget)

    def cells(self) -> dict[str, tuple[int, str, Element]]:
        return {g: (self._dim[g], self._target[g], self._bdry[g]) for g in self._bdry}

    def __repr__(self) -> str:
        sizes = ", ".join(str(len(self.basis(n))) for n in range(self.trunc_level + 1))
        return f"<FreeCrossedComplex basis sizes [{sizes}] normalizer={self.strategy}>"
