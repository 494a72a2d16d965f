"""Graded elements of a free crossed complex.

* dimension 0: an object name (``str``)
* dimension 1: a reduced :class:`~crossnorm.groupoid.Word`
* dimension 2: :class:`Dim2`, a signed sequence of operator-decorated
  generators ``±g^w``, all operators ending at the element's endpoint
* dimension >= 3: :class:`ModuleElement`, a finite integer combination of
  pairs ``(g, w)``

Only adjacent ``+g^w - g^w`` pairs are cancelled in dimension 2; equality
beyond that is decided by :meth:`FreeCrossedComplex.equal`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .groupoid import Word, WordError, compose, format_word, identity

Term = tuple[int, str, Word]
Canon = Callable[[Word], Word]


class ElementError(ValueError):
    """Grade or endpoint mismatch between elements."""


@dataclass(frozen=True)
class Dim2:
    endpoint: str
    terms: tuple[Term, ...] = ()

    dim = 2

    @property
    def is_trivial_sequence(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return format_dim2(self)


@dataclass(frozen=True)
class ModuleElement:
    dim: int
    endpoint: str
    items: tuple[tuple[tuple[str, Word], int], ...] = ()

    def as_dict(self) -> dict[tuple[str, Word], int]:
        return dict(self.items)

    def __str__(self) -> str:
        return format_module(self)


Element = Union[str, Word, Dim2, ModuleElement]


def dim_of(e: Element) -> int:
    if isinstance(e, str):
        return 0
    if isinstance(e, Word):
        return 1
    return e.dim


def endpoint(e: Element) -> str:
    """The object an element lives over (target for words)."""
    if isinstance(e, str):
        return e
    if isinstance(e, Word):
        return e.end
    return e.endpoint


def _cancel(terms: Iterable[Term]) -> tuple[Term, ...]:
    out: list[Term] = []
    for t in terms:
        if out and out[-1][1:] == t[1:] and out[-1][0] == -t[0]:
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def dim2(endpoint: str, terms: Iterable[Term]) -> Dim2:
    terms = tuple(terms)
    for s, g, w in terms:
        if w.end != endpoint:
            raise ElementError(f"operator {w} of {g} does not end at {endpoint!r}")
    return Dim2(endpoint, _cancel(terms))


def module(dim: int, endpoint: str, terms: Iterable[tuple[str, Word, int]], canon: Canon | None = None) -> ModuleElement:
    acc: dict[tuple[str, Word], int] = {}
    for g, w, c in terms:
        if w.end != endpoint:
            raise ElementError(f"operator {w} of {g} does not end at {endpoint!r}")
        if canon is not None:
            w = canon(w)
        acc[(g, w)] = acc.get((g, w), 0) + c
    return ModuleElement(dim, endpoint, tuple(sorted((k, v) for k, v in acc.items() if v)))


def zero(dim: int, p: str) -> Element:
    if dim == 0:
        return p
    if dim == 1:
        return identity(p)
    if dim == 2:
        return Dim2(p)
    return ModuleElement(dim, p)


def generator(dim: int, g: str, t: str) -> Element:
    """A single basis element with unit operator."""
    if dim == 2:
        return Dim2(t, ((1, g, identity(t)),))
    return ModuleElement(dim, t, (((g, identity(t)), 1),))


def add(a: Element, b: Element, canon: Canon | None = None) -> Element:
    da, db = dim_of(a), dim_of(b)
    if da != db or da == 0:
        raise ElementError(f"cannot add elements of dimensions {da} and {db}")
    if da == 1:
        try:
            return compose(a, b)
        except WordError as exc:
            raise ElementError(str(exc)) from exc
    if a.endpoint != b.endpoint:
        raise ElementError(f"endpoints {a.endpoint!r} and {b.endpoint!r} differ")
    if da == 2:
        return Dim2(a.endpoint, _cancel(a.terms + b.terms))
    return module(
        da, a.endpoint, [(g, w, c) for (g, w), c in a.items + b.items], canon
    )


def neg(a: Element) -> Element:
    d = dim_of(a)
    if d == 0:
        raise ElementError("objects have no negative")
    if d == 1:
        return -a
    if d == 2:
        return Dim2(a.endpoint, tuple((-s, g, w) for s, g, w in reversed(a.terms)))
    return ModuleElement(d, a.endpoint, tuple((k, -c) for k, c in a.items))


def total(dim: int, p: str, parts: Iterable[Element], canon: Canon | None = None) -> Element:
    """Left-to-right sum of ``parts`` at object ``p``."""
    acc = zero(dim, p)
    for x in parts:
        acc = add(acc, x, canon)
    return acc


def scale(a: ModuleElement, n: int) -> ModuleElement:
    if n == 0:
        return ModuleElement(a.dim, a.endpoint)
    return ModuleElement(a.dim, a.endpoint, tuple((k, c * n) for k, c in a.items))


def act(a: Element, w: Word, canon: Canon | None = None) -> Element:
    """Right action ``a^w``; ``w`` must start at the endpoint of ``a``."""
    d = dim_of(a)
    if d < 2:
        raise ElementError("the action is defined in dimensions >= 2")
    if w.start != a.endpoint:
        raise ElementError(f"operator {w} does not start at {a.endpoint!r}")
    if d == 2:
        return Dim2(w.end, tuple((s, g, compose(u, w)) for s, g, u in a.terms))
    return module(d, w.end, [(g, compose(u, w), c) for (g, u), c in a.items], canon)


# --------------------------------------------------------------------------
# formatting


def _operator(g: str, w: Word) -> str:
    return g if w.is_identity else f"{g}^[{format_word(w)}]"


def format_dim2(a: Dim2) -> str:
    if not a.terms:
        return "0"
    parts = []
    for k, (s, g, w) in enumerate(a.terms):
        body = _operator(g, w)
        if s < 0:
            parts.append(f"- {body}")
        else:
            parts.append(body if k == 0 else f"+ {body}")
    return " ".join(parts)


def format_module(a: ModuleElement) -> str:
    if not a.items:
        return "0"
    parts = []
    for k, ((g, w), c) in enumerate(a.items):
        body = _operator(g, w)
        mag = abs(c)
        if mag != 1:
            body = f"{mag} {body}"
        if c < 0:
            parts.append(f"- {body}")
        else:
            parts.append(body if k == 0 else f"+ {body}")
    return " ".join(parts)


def format_element(e: Element) -> str:
    if isinstance(e, str):
        return e
    if isinstance(e, Word):
        return format_word(e)
    if isinstance(e, Dim2):
        return format_dim2(e)
    return format_module(e)
