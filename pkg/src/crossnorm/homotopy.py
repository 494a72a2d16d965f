"""Homotopies of morphisms of free crossed complexes.

A homotopy ``(h, f)`` from ``C`` to ``D`` consists of a morphism ``f`` and
basis values ``h`` raising dimension by one, with ``h_0 p`` a word ending at
``f p`` and ``h x`` ending at ``f t x``.  Its initial morphism ``f^0`` is
derived from these data.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .complex import FreeCrossedComplex
from .elements import Element, dim_of
from .morphism import Extension, Morphism, build_morphism, extend_basis_map
from .tensor import cylinder


class HomotopyError(ValueError):
    pass


@dataclass(eq=False)
class Homotopy:
    source: FreeCrossedComplex
    target: FreeCrossedComplex
    f: Morphism
    h: Extension
    max_dim: int

    def __call__(self, e: Element) -> Element:
        return self.h(e)

    def initial_object(self, p: str) -> str:
        return self.h.values[p].start

    def initial_value(self, x: str) -> Element:
        """``f^0`` on a basis element or object."""
        C, D, f, h = self.source, self.target, self.f, self.h
        if x in C.objects:
            return self.initial_object(x)
        n = C.gen_dim(x)
        if n > self.max_dim:
            raise HomotopyError(f"{x!r} lies above dimension {self.max_dim}")
        if n == 1:
            w = h.values[C.source(x)] + f(C.gen(x))
            w = w + D.boundary(h(C.gen(x)))
            return w - h.values[C.target(x)]
        body = D.add(f(C.gen(x)), h(C.delta(x)))
        body = D.add(body, D.boundary(h(C.gen(x))))
        return D.act(body, -h.values[C.target(x)])


def build_homotopy(
    source: FreeCrossedComplex,
    target: FreeCrossedComplex,
    f: Morphism,
    values: Mapping[str, Element],
    max_dim: int | None = None,
) -> Homotopy:
    """Package basis values ``h`` over ``f``.

    ``max_dim`` bounds the dimensions on which ``f^0`` will be derived; it
    defaults to the largest ``n`` for which ``h_n`` lands inside the target's
    truncation.
    """
    top = min(source.trunc_level, target.trunc_level - 1, f.max_dim)
    if max_dim is not None:
        if max_dim > top:
            raise HomotopyError(f"homotopy values only exist through dimension {top}")
        top = max_dim
    for p in source.objects:
        if p not in values:
            raise HomotopyError(f"missing value at object {p!r}")
        if dim_of(values[p]) != 1:
            raise HomotopyError(f"value at object {p!r} must be a word")
    for n in range(1, top + 1):
        for x in source.basis(n):
            if x not in values:
                raise HomotopyError(f"missing value at {x!r}")
            if dim_of(values[x]) != n + 1:
                raise HomotopyError(f"value at {x!r} must have dimension {n + 1}")
            target.check(values[x])
    used = {k: v for k, v in values.items() if k in source.objects or source.gen_dim(k) <= top}
    try:
        h = extend_basis_map(source, target, f, used)
    except ValueError as exc:
        raise HomotopyError(str(exc)) from exc
    return Homotopy(source, target, f, h, top)


def derived_morphism(H: Homotopy) -> Morphism:
    """The initial morphism ``f^0``, validated against the geometric
    conditions through ``H.max_dim``."""
    C = H.source
    objects = {p: H.initial_object(p) for p in C.objects}
    values = {x: H.initial_value(x) for n in range(1, H.max_dim + 1) for x in C.basis(n)}
    return build_morphism(C, H.target, values, objects, H.max_dim)


def cylinder_morphism(H: Homotopy) -> Morphism:
    """The morphism ``I (x) C -> D`` sending ``0*x``, ``1*x``, ``i*x`` to
    ``f^0 x``, ``f x`` and ``h x``."""
    C, D = H.source, H.target
    f0 = derived_morphism(H)
    cyl = cylinder(C.truncate(H.max_dim)).complex
    objects = {}
    values: dict[str, Element] = {}
    for p in C.objects:
        objects[f"0*{p}"] = f0.objects[p]
        objects[f"1*{p}"] = H.f.objects[p]
        values[f"i*{p}"] = H.h.values[p]
    for n in range(1, H.max_dim + 1):
        for x in C.basis(n):
            values[f"0*{x}"] = f0.values[x]
            values[f"1*{x}"] = H.f.values[x]
            if n < H.max_dim:
                values[f"i*{x}"] = H.h.values[x]
    return build_morphism(cyl, D, values, objects, H.max_dim)
