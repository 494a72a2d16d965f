"""Cylinder and cone on a free crossed complex, and the algebraic simplex.

Generators of ``I (x) F`` are named ``0*r``, ``1*r`` and ``i*r``; the cone
collapses the ``1`` end to a vertex (default name ``v``).  Both
constructions treat the truncation level of ``F`` as its top dimension, so
the output is truncated one level higher.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import elements as el
from .complex import FreeCrossedComplex
from .elements import Dim2, Element, dim_of
from .groupoid import Word, identity, invert
from .morphism import Extension, Morphism, build_morphism, extend_basis_map


def _rename_word(w: Word, tag: str) -> Word:
    return Word(f"{tag}*{w.start}", f"{tag}*{w.end}", tuple((f"{tag}*{g}", s) for g, s in w.letters))


def _rename(e: Element, tag: str) -> Element:
    """Image of ``e`` under the end inclusion ``tag (x) -``."""
    n = dim_of(e)
    if n == 0:
        return f"{tag}*{e}"
    if n == 1:
        return _rename_word(e, tag)
    p = f"{tag}*{e.endpoint}"
    if isinstance(e, Dim2):
        return el.dim2(p, [(s, f"{tag}*{g}", _rename_word(w, tag)) for s, g, w in e.terms])
    return el.module(n, p, [(f"{tag}*{g}", _rename_word(w, tag), c) for (g, w), c in e.items])


def _end_morphism(F: FreeCrossedComplex, T: FreeCrossedComplex, tag: str) -> Morphism:
    values = {g: _rename(F.gen(g), tag) for g in F.generators()}
    objects = {p: f"{tag}*{p}" for p in F.objects}
    return build_morphism(F, T, values, objects, F.trunc_level)


# --------------------------------------------------------------------------
# cone


def _cone_iota(e: Element, vertex: str) -> Element:
    """``iota (x) e`` in the cone: additive and blind to operators."""
    n = dim_of(e)
    unit = identity(vertex)
    if n == 1:
        return el.dim2(vertex, [(s, f"i*{g}", unit) for g, s in e.letters])
    if isinstance(e, Dim2):
        return el.module(3, vertex, [(f"i*{g}", unit, s) for s, g, _ in e.terms])
    return el.module(n + 1, vertex, [(f"i*{g}", unit, c) for (g, _), c in e.items])


@dataclass(eq=False)
class Cone:
    complex: FreeCrossedComplex
    bottom: Morphism
    vertex: str
    iota: Extension = field(repr=False)


def cone(F: FreeCrossedComplex, vertex: str = "v") -> Cone:
    """Free crossed complex on ``v``, ``0*r`` and ``i*r`` for ``r`` in the
    basis of ``F``, with the cone boundary rules."""
    objects = [f"0*{p}" for p in F.objects] + [vertex]
    edges = {f"0*{e}": (f"0*{F.source(e)}", f"0*{F.target(e)}") for e in F.basis(1)}
    edges.update({f"i*{p}": (f"0*{p}", vertex) for p in F.objects})
    cells: dict[str, tuple[int, str, Element]] = {}
    for n in range(2, F.trunc_level + 1):
        for r in F.basis(n):
            cells[f"0*{r}"] = (n, f"0*{F.target(r)}", _rename(F.delta(r), "0"))
    for e in F.basis(1):
        s, t = F.source(e), F.target(e)
        w = invert(Word(f"0*{s}", vertex, ((f"i*{s}", 1),)))
        w = w + Word(f"0*{s}", f"0*{t}", ((f"0*{e}", 1),))
        w = w + Word(f"0*{t}", vertex, ((f"i*{t}", 1),))
        cells[f"i*{e}"] = (2, vertex, w)
    for n in range(2, F.trunc_level + 1):
        for r in F.basis(n):
            t = F.target(r)
            lift = el.act(_rename(F.gen(r), "0"), Word(f"0*{t}", vertex, ((f"i*{t}", 1),)))
            b = el.add(el.neg(_cone_iota(F.delta(r), vertex)), lift)
            cells[f"i*{r}"] = (n + 1, vertex, b)
    C = FreeCrossedComplex(objects, edges, cells, F.trunc_level + 1, "simply-connected", F.budget)
    bottom = _end_morphism(F, C, "0")
    apex = Morphism(F, C, {p: vertex for p in F.objects},
                    {g: el.zero(F.gen_dim(g), vertex) for g in F.generators()})
    values: dict[str, Element] = {p: C.gen(f"i*{p}") for p in F.objects}
    values.update({g: C.gen(f"i*{g}") for g in F.generators()})
    return Cone(C, bottom, vertex, extend_basis_map(F, C, apex, values))


# --------------------------------------------------------------------------
# cylinder


def _cyl_iota(F: FreeCrossedComplex, e: Element) -> Element:
    """``iota (x) e`` in the cylinder: a derivation along ``1 (x) -``."""
    n = dim_of(e)
    if n == 1:
        end = f"1*{e.end}"
        suffix = identity(end)
        parts = []
        for g, s in reversed(e.letters):
            top = _rename_word(F.graph.gen(g), "1")
            if s > 0:
                t = top.end
                piece = Dim2(t, ((1, f"i*{g}", identity(t)),))
                step = top
            else:
                # h(-g) = -(h g)^{-(1*g)}
                piece = Dim2(top.start, ((-1, f"i*{g}", invert(top)),))
                step = invert(top)
            parts.append(el.act(piece, suffix))
            suffix = step + suffix
        return el.total(2, end, reversed(parts))
    p = f"1*{e.endpoint}"
    if isinstance(e, Dim2):
        return el.module(3, p, [(f"i*{g}", _rename_word(w, "1"), s) for s, g, w in e.terms])
    return el.module(n + 1, p, [(f"i*{g}", _rename_word(w, "1"), c) for (g, w), c in e.items])


@dataclass(eq=False)
class Cylinder:
    complex: FreeCrossedComplex
    bottom: Morphism
    top: Morphism
    iota: Extension = field(repr=False)


def cylinder(F: FreeCrossedComplex) -> Cylinder:
    """``I (x) F``: free on ``0*r``, ``1*r`` and ``i*r``."""
    edge_ends = {}
    for e in F.basis(1):
        edge_ends[e] = (F.source(e), F.target(e))
    objects = [f"{a}*{p}" for a in "01" for p in F.objects]
    edges = {f"{a}*{e}": (f"{a}*{s}", f"{a}*{t}") for a in "01" for e, (s, t) in edge_ends.items()}
    edges.update({f"i*{p}": (f"0*{p}", f"1*{p}") for p in F.objects})
    cells: dict[str, tuple[int, str, Element]] = {}
    for a in "01":
        for n in range(2, F.trunc_level + 1):
            for r in F.basis(n):
                cells[f"{a}*{r}"] = (n, f"{a}*{F.target(r)}", _rename(F.delta(r), a))
    for e, (s, t) in edge_ends.items():
        w = invert(Word(f"1*{s}", f"1*{t}", ((f"1*{e}", 1),)))
        w = w + invert(Word(f"0*{s}", f"1*{s}", ((f"i*{s}", 1),)))
        w = w + Word(f"0*{s}", f"0*{t}", ((f"0*{e}", 1),))
        w = w + Word(f"0*{t}", f"1*{t}", ((f"i*{t}", 1),))
        cells[f"i*{e}"] = (2, f"1*{t}", w)
    for n in range(2, F.trunc_level + 1):
        for r in F.basis(n):
            t = F.target(r)
            lift = el.act(_rename(F.gen(r), "0"), Word(f"0*{t}", f"1*{t}", ((f"i*{t}", 1),)))
            b = el.neg(_cyl_iota(F, F.delta(r)))
            b = el.add(b, el.neg(_rename(F.gen(r), "1")))
            b = el.add(b, lift)
            cells[f"i*{r}"] = (n + 1, f"1*{t}", b)
    strategy = "simply-connected" if F.strategy == "simply-connected" else "auto"
    C = FreeCrossedComplex(objects, edges, cells, F.trunc_level + 1, strategy, F.budget)
    bottom = _end_morphism(F, C, "0")
    top = _end_morphism(F, C, "1")
    values: dict[str, Element] = {p: C.gen(f"i*{p}") for p in F.objects}
    values.update({g: C.gen(f"i*{g}") for g in F.generators()})
    return Cylinder(C, bottom, top, extend_basis_map(F, C, top, values))


# --------------------------------------------------------------------------
# algebraic simplex


def point(name: str = "v") -> FreeCrossedComplex:
    return FreeCrossedComplex([name], {}, {}, 0, "free")


@dataclass(eq=False)
class AlgebraicSimplex:
    n: int
    complex: FreeCrossedComplex
    top: str
    faces: tuple[str, ...]
    vertices: tuple[str, ...]
    u: str | None
    levels: tuple[Cone, ...] = field(repr=False, default=())


def _sigma(k: int) -> str:
    return "i*" * k + "v"


def _faces(k: int) -> list[str]:
    """Names of the faces of sigma^k inside aDelta^k."""
    if k == 0:
        return []
    if k == 1:
        return ["v", "0*v"]
    return [f"i*{f}" for f in _faces(k - 1)] + [f"0*{_sigma(k - 1)}"]


def _vertices(k: int) -> list[str]:
    if k == 0:
        return ["v"]
    return [f"0*{p}" for p in _vertices(k - 1)] + ["v"]


def algebraic_simplex(n: int) -> AlgebraicSimplex:
    """``aDelta^n``: the n-fold iterated cone on a point."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    F = point()
    levels = []
    for _ in range(n):
        c = cone(F)
        levels.append(c)
        F = c.complex
    verts = _vertices(n)
    u = f"i*{_vertices(n - 1)[-1]}" if n >= 1 else None
    return AlgebraicSimplex(n, F, _sigma(n), tuple(_faces(n)), tuple(verts), u, tuple(levels))


def hal_formula(A: AlgebraicSimplex) -> Element:
    """The HAL expression for the boundary of the top generator of ``A``."""
    C, d, n = A.complex, A.faces, A.n
    base = A.vertices[-1]
    unit = identity(base)
    if n == 2:
        g = C.graph.gen
        return -g(d[1]) + g(d[2]) + g(d[0])
    u = C.graph.gen(A.u)
    if n == 3:
        return el.dim2(base, [(1, d[3], u), (-1, d[0], unit), (-1, d[2], unit), (1, d[1], unit)])
    terms = [(d[n], u, 1)] + [(d[i], unit, (-1) ** (n - i)) for i in range(n)]
    return el.module(n - 1, base, terms, C.canon)


@dataclass
class HalCheck:
    n: int
    ok: bool
    computed: str
    formula: str
    inductive_ok: bool | None = None

    def __str__(self) -> str:
        status = "ok" if self.ok and self.inductive_ok is not False else "MISMATCH"
        line = f"n={self.n}: {status}  d(sigma) = {self.computed}"
        if not self.ok:
            line += f"\n    HAL formula: {self.formula}"
        return line


def hal_consistency_check(max_dim: int = 5) -> list[HalCheck]:
    """Compare the cone-computed boundary of ``sigma^n`` with the HAL, and
    check the inductive step formula, for ``2 <= n <= max_dim``."""
    if max_dim < 2:
        raise ValueError("max_dim must be at least 2")
    out = []
    for n in range(2, max_dim + 1):
        An = algebraic_simplex(n)
        C = An.complex
        computed = C.delta(An.top)
        formula = hal_formula(An)
        ok = C.equal(computed, formula)
        inductive = None
        if n >= 3:
            level = An.levels[-1]
            prev = algebraic_simplex(n - 1)
            lift = C.act(level.bottom(prev.complex.gen(prev.top)), C.graph.gen(An.u))
            rhs = C.sub(lift, level.iota(prev.complex.delta(prev.top)))
            inductive = C.equal(computed, rhs)
        out.append(HalCheck(n, ok, el.format_element(computed), el.format_element(formula), inductive))
    return out
