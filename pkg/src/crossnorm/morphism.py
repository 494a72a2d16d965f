"""Morphisms of free crossed complexes, basis-map extensions and quotients."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import elements as el
from .complex import FreeCrossedComplex
from .elements import Dim2, Element, dim_of
from .groupoid import Word, compose, identity, invert


class MorphismError(ValueError):
    def __init__(self, violations: list["Condition"]):
        self.violations = violations
        lines = "\n  ".join(str(v) for v in violations[:20])
        more = f"\n  ... {len(violations) - 20} more" if len(violations) > 20 else ""
        super().__init__(f"{len(violations)} failed condition(s):\n  {lines}{more}")


@dataclass(frozen=True)
class Condition:
    generator: str
    rule: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.generator}: {self.rule}" + (f" ({self.detail})" if self.detail else "")


@dataclass(eq=False)
class Morphism:
    """A morphism given by its values on a free basis, through ``max_dim``."""

    source: FreeCrossedComplex
    target: FreeCrossedComplex
    objects: Mapping[str, str]
    values: Mapping[str, Element]
    max_dim: int = field(default=-1)

    def __post_init__(self):
        if self.max_dim < 0:
            self.max_dim = self.source.trunc_level

    def __call__(self, e: Element) -> Element:
        return apply_morphism(self, e)

    def word(self, w: Word) -> Word:
        out = identity(self.objects[w.start])
        for g, s in w.letters:
            v = self.values[g]
            out = compose(out, v if s > 0 else invert(v))
        return out


def apply_morphism(f: Morphism, e: Element) -> Element:
    """Extend ``f`` from the basis to an arbitrary element."""
    n = dim_of(e)
    if n > f.max_dim:
        raise ValueError(f"morphism is only defined through dimension {f.max_dim}")
    T = f.target
    if n == 0:
        return f.objects[e]
    if n == 1:
        return f.word(e)
    p = f.objects[e.endpoint]
    if isinstance(e, Dim2):
        parts = []
        for s, g, w in e.terms:
            v = T.act(f.values[g], f.word(w))
            parts.append(v if s > 0 else el.neg(v))
        return T.total(2, p, parts)
    parts = [el.scale(T.act(f.values[g], f.word(w)), c) for (g, w), c in e.items]
    return T.total(n, p, parts)


def check_morphism(
    source: FreeCrossedComplex,
    target: FreeCrossedComplex,
    objects: Mapping[str, str],
    values: Mapping[str, Element],
    max_dim: int | None = None,
) -> list[Condition]:
    """List the failed geometric conditions ``sfx = fsx``, ``tfx = ftx`` and
    ``dfx = fdx`` for a basis-value table."""
    top = source.trunc_level if max_dim is None else max_dim
    bad: list[Condition] = []
    for p in source.objects:
        if p not in objects or objects[p] not in target.objects:
            bad.append(Condition(p, "object value missing"))
    if bad:
        return bad
    f = Morphism(source, target, objects, values, top)
    for n in range(1, top + 1):
        for x in source.basis(n):
            if x not in values:
                bad.append(Condition(x, "value missing"))
                continue
            v = values[x]
            if dim_of(v) != n:
                bad.append(Condition(x, "dimension", f"value has dimension {dim_of(v)}"))
                continue
            try:
                target.check(v)
            except ValueError as exc:
                bad.append(Condition(x, "value is not an element of the target", str(exc)))
                continue
            if n == 1 and v.start != objects[source.source(x)]:
                bad.append(Condition(x, "sfx = fsx", f"{v.start} != {objects[source.source(x)]}"))
            if el.endpoint(v) != objects[source.target(x)]:
                bad.append(Condition(x, "tfx = ftx", f"{el.endpoint(v)} != {objects[source.target(x)]}"))
    if bad:
        return bad
    for n in range(2, top + 1):
        for x in source.basis(n):
            lhs = target.boundary(values[x])
            rhs = f(source.delta(x))
            if not target.equal(lhs, rhs):
                bad.append(
                    Condition(x, "dfx = fdx", f"{el.format_element(lhs)} vs {el.format_element(rhs)}")
                )
    return bad


def build_morphism(
    source: FreeCrossedComplex,
    target: FreeCrossedComplex,
    values: Mapping[str, Element],
    objects: Mapping[str, str] | None = None,
    max_dim: int | None = None,
) -> Morphism:
    """Validate a basis-value table and return the morphism it specifies.

    ``objects`` defaults to the identity on object names.  Raises
    :class:`MorphismError` listing every violated condition.
    """
    if objects is None:
        objects = {p: p for p in source.objects}
    bad = check_morphism(source, target, objects, values, max_dim)
    if bad:
        raise MorphismError(bad)
    top = source.trunc_level if max_dim is None else max_dim
    return Morphism(source, target, dict(objects), dict(values), top)


def identity_morphism(C: FreeCrossedComplex) -> Morphism:
    return Morphism(C, C, {p: p for p in C.objects}, {g: C.gen(g) for g in C.generators()})


def compose_morphisms(g: Morphism, f: Morphism) -> Morphism:
    """The composite ``g . f`` (apply ``f`` first)."""
    top = min(f.max_dim, g.max_dim)
    objects = {p: g.objects[q] for p, q in f.objects.items()}
    values = {
        x: g(f.values[x]) for x in f.source.generators() if f.source.gen_dim(x) <= top
    }
    return Morphism(f.source, g.target, objects, values, top)


# --------------------------------------------------------------------------
# derivations and operator morphisms


@dataclass(eq=False)
class Extension:
    """The extension of a basis map ``h`` (raising dimension by one) along a
    morphism ``f``: an ``f``-derivation on words and an operator morphism in
    dimensions >= 2.  ``values`` holds words for objects, dimension-2
    elements for edges, and so on."""

    source: FreeCrossedComplex
    target: FreeCrossedComplex
    f: Morphism
    values: Mapping[str, Element]

    def __call__(self, e: Element) -> Element:
        T, f = self.target, self.f
        n = dim_of(e)
        if n == 0:
            return self.values[e]
        if n == 1:
            return self._derivation(e)
        p = f.objects[e.endpoint]
        if isinstance(e, Dim2):
            parts = []
            for s, g, w in e.terms:
                v = T.act(self.values[g], f.word(w))
                parts.append(el.scale(v, s))
            return T.total(3, p, parts)
        parts = [el.scale(T.act(self.values[g], f.word(w)), c) for (g, w), c in e.items]
        return T.total(n + 1, p, parts)

    def letter(self, g: str, s: int) -> Dim2:
        v = self.values[g]
        if s > 0:
            return v
        # h(-g) = -(h g)^{f(-g)}
        return el.neg(self.target.act(v, invert(self.f.values[g])))

    def _derivation(self, w: Word) -> Dim2:
        T, f = self.target, self.f
        end = f.objects[w.end]
        suffix = identity(end)
        parts = []
        for g, s in reversed(w.letters):
            parts.append(T.act(self.letter(g, s), suffix))
            step = f.values[g] if s > 0 else invert(f.values[g])
            suffix = compose(step, suffix)
        return T.total(2, end, reversed(parts))


def extend_basis_map(
    source: FreeCrossedComplex,
    target: FreeCrossedComplex,
    f: Morphism,
    values: Mapping[str, Element],
) -> Extension:
    """Extend basis values to a derivation / operator morphism along ``f``.

    Each value must satisfy ``t h(x) = t f(x)``; violations raise
    ``ValueError``.
    """
    for x, v in values.items():
        fx = f.objects[x] if x in source.objects else f.objects[source.target(x)]
        if el.endpoint(v) != fx:
            raise ValueError(f"value at {x!r} ends at {el.endpoint(v)!r}, expected {fx!r}")
    return Extension(source, target, f, values)


# --------------------------------------------------------------------------
# quotients


class KillError(ValueError):
    """The killed set is not a normal structure."""


def _projector(C: FreeCrossedComplex, Q: FreeCrossedComplex | None, dead: set[str]):
    def word(w: Word) -> Word:
        out = identity(w.start)
        for g, s in w.letters:
            if g not in dead:
                out = compose(out, C.graph.gen(g, s))
        return out

    def proj(e: Element) -> Element:
        n = dim_of(e)
        if n == 0:
            return e
        if n == 1:
            return word(e)
        if isinstance(e, Dim2):
            return el.dim2(e.endpoint, [(s, g, word(w)) for s, g, w in e.terms if g not in dead])
        canon = Q.canon if Q is not None else None
        return el.module(
            n, e.endpoint, [(g, word(w), c) for (g, w), c in e.items if g not in dead], canon
        )

    return proj


def kill_basis(C: FreeCrossedComplex, killed: Iterable[str]) -> tuple[FreeCrossedComplex, Morphism]:
    """Quotient of ``C`` by the normal closure of a set of basis elements.

    Killed edges must be loops, and the boundary of every killed generator
    must become trivial once lower killed generators are deleted.  Returns
    the quotient (free on the survivors) and the projection morphism.
    """
    dead = set(killed)
    for g in dead:
        if not C.has(g):
            raise KillError(f"{g!r} is not a generator")
        if C.gen_dim(g) == 1 and C.source(g) != C.target(g):
            raise KillError(f"{g!r} is not a loop")
    raw = _projector(C, None, dead)
    edges = {e: C.graph.edges[e] for e in C.basis(1) if e not in dead}
    cells = {
        g: (n, t, raw(b)) for g, (n, t, b) in C.cells().items() if g not in dead
    }
    strategy = "simply-connected" if C.strategy == "simply-connected" else "auto"
    Q = FreeCrossedComplex(C.objects, edges, cells, C.trunc_level, strategy, C.budget)
    proj = _projector(C, Q, dead)
    for g in sorted(dead, key=lambda x: (C.gen_dim(x), x)):
        if C.gen_dim(g) < 2:
            continue
        image = proj(C.delta(g))
        if not Q.is_trivial(image):
            raise KillError(
                f"boundary of {g!r} does not collapse: {el.format_element(image)}"
            )
    values = {g: (el.zero(C.gen_dim(g), C.target(g)) if g in dead else Q.gen(g)) for g in C.generators()}
    p = build_morphism(C, Q, values)
    p.project = proj
    return Q, p
