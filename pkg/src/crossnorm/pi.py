"""The unnormalised fundamental crossed complex of a simplicial set.

Generators are all simplices, degenerate ones included; boundaries follow
the Homotopy Addition Lemma with base point the last vertex.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import elements as el
from .complex import FreeCrossedComplex
from .elements import Element
from .groupoid import Graph, Word, compose, identity, invert
from .normalizer import DEFAULT_BUDGET
from .simplicial import SimplicialSet, validate


class InvalidSimplicialSet(ValueError):
    pass


def _edge(K: SimplicialSet, y: str, sign: int = 1) -> Word:
    s, t = K.face(1, y), K.face(0, y)
    return Word(s, t, ((y, 1),)) if sign > 0 else Word(t, s, ((y, -1),))


def hal_boundary(K: SimplicialSet, x: str) -> Element:
    """Boundary of the generator ``x`` (dimension >= 2) in the free crossed
    complex on ``K``."""
    n = K.dim(x)
    if n < 2:
        raise ValueError(f"{x!r} has dimension {n}; the HAL starts in dimension 2")
    d = lambda i: K.face(i, x)  # noqa: E731
    if n == 2:
        w = invert(_edge(K, d(1)))
        w = compose(w, _edge(K, d(2)))
        return compose(w, _edge(K, d(0)))
    base = K.last_vertex(x)
    u = _edge(K, K.iter_faces(x, n - 1))
    top = d(n)
    unit = identity(base)
    if n == 3:
        return el.dim2(
            base,
            [(1, top, u), (-1, d(0), unit), (-1, d(2), unit), (1, d(1), unit)],
        )
    terms = [(top, u, 1)] + [(d(i), unit, (-1) ** (n - i)) for i in range(n)]
    return el.module(n - 1, base, terms)


def fundamental_crossed_complex(
    K: SimplicialSet, normalizer: str = "auto", budget: int = DEFAULT_BUDGET, check: bool = True
) -> FreeCrossedComplex:
    """Free crossed complex on all simplices of ``K`` with HAL boundaries.

    ``auto`` picks the free normalizer when ``K`` has no 2-simplices and the
    presentation normalizer (Tietze elimination, then coset enumeration
    under ``budget``) otherwise.
    """
    if check:
        bad = validate(K)
        if bad:
            raise InvalidSimplicialSet(f"{len(bad)} simplicial identity violation(s), first: {bad[0]}")
    edges = {y: (K.face(1, y), K.face(0, y)) for y in (K.simplices[1] if K.trunc_level >= 1 else ())}
    cells = {}
    for n in range(2, K.trunc_level + 1):
        for x in K.simplices[n]:
            cells[x] = (n, K.last_vertex(x), hal_boundary(K, x))
    return FreeCrossedComplex(K.simplices[0], edges, cells, K.trunc_level, normalizer, budget)


@dataclass(frozen=True)
class Presentation:
    graph: Graph
    relators: tuple[Word, ...]

    def components(self) -> list[list[str]]:
        return self.graph.components()


def pi1_presentation(K: SimplicialSet) -> Presentation:
    """Generating graph ``K_1`` with one relator per 2-simplex."""
    edges = {y: (K.face(1, y), K.face(0, y)) for y in (K.simplices[1] if K.trunc_level >= 1 else ())}
    rels = tuple(hal_boundary(K, x) for x in (K.simplices[2] if K.trunc_level >= 2 else ()))
    return Presentation(Graph(K.simplices[0], edges), rels)
