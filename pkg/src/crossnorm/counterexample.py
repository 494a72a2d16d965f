"""A free subcomplex whose induced map is not injective.

``C(R)`` is free on one object ``p``, a loop ``x``, and ``a``, ``b`` in
dimension 2 with ``d a = x`` and ``d b = 0``.  ``C(S)`` is the subcomplex
on ``x`` and ``b`` alone.  In ``C(S)`` the operator ``x`` acts freely on
``b``; in ``C(R)`` it is a boundary, so it acts trivially and ``b^x = b``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import elements as el
from .complex import FreeCrossedComplex
from .groupoid import Word, identity
from .morphism import Morphism, build_morphism


@dataclass(eq=False)
class Counterexample:
    R: FreeCrossedComplex
    S: FreeCrossedComplex
    inclusion: Morphism

    def b_x(self, C: FreeCrossedComplex):
        return C.act(C.gen("b"), C.graph.gen("x"))

    @property
    def equal_in_R(self) -> bool:
        return self.R.equal(self.b_x(self.R), self.R.gen("b"))

    @property
    def equal_in_S(self) -> bool:
        return self.S.equal(self.b_x(self.S), self.S.gen("b"))

    @property
    def image_collapses(self) -> bool:
        i = self.inclusion
        return self.R.equal(i(self.b_x(self.S)), i(self.S.gen("b")))


def build(p: str = "p") -> Counterexample:
    x = Word(p, p, (("x", 1),))
    edges = {"x": (p, p)}
    R = FreeCrossedComplex([p], edges, {"a": (2, p, x), "b": (2, p, identity(p))}, 2)
    S = FreeCrossedComplex([p], edges, {"b": (2, p, identity(p))}, 2, "free")
    inc = build_morphism(S, R, {"x": x, "b": el.generator(2, "b", p)})
    return Counterexample(R, S, inc)
