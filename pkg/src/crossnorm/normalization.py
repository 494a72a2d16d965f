"""0-normalisation and full normalisation of the fundamental crossed complex.

Everything is computed on a truncated simplicial set ``K`` of level ``N``.
Degeneracies of ``N``-simplices are unavailable, so homotopies, ``psi``,
the stage morphisms ``phi^k`` and the section ``q`` are defined through
dimension ``N - 1``; the quotients themselves keep all ``N`` levels.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import elements as el
from .complex import FreeCrossedComplex
from .elements import Element, dim_of
from .groupoid import identity
from .homotopy import Homotopy, build_homotopy, cylinder_morphism, derived_morphism
from .morphism import (
    Extension,
    Morphism,
    MorphismError,
    build_morphism,
    compose_morphisms,
    identity_morphism,
    kill_basis,
)
from .pi import fundamental_crossed_complex
from .simplicial import SimplicialSet


class NormalizationError(ValueError):
    pass


@dataclass
class Check:
    """Outcome of one family of generator-level identities."""

    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, residue: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(residue)

    def __str__(self) -> str:
        status = "ok" if self.ok else f"FAILED ({len(self.failures)})"
        head = f"{self.name}: {status} [{self.checked} checked]"
        return "\n    ".join([head] + self.failures[:10])


def _compare(C: FreeCrossedComplex, check: Check, label: str, lhs: Element, rhs: Element) -> None:
    ok = C.equal(lhs, rhs)
    check.record(ok, f"{label}: {el.format_element(lhs)}  vs  {el.format_element(rhs)}")


def _require(checks: list[Check]) -> None:
    bad = [c for c in checks if not c.ok]
    if bad:
        raise NormalizationError("\n".join(str(c) for c in bad))


def _gen_or_zero(C: FreeCrossedComplex, name: str, n: int, p: str) -> Element:
    return C.gen(name) if C.has(name) else el.zero(n, p)


def _top(K: SimplicialSet) -> int:
    if K.trunc_level < 1:
        raise NormalizationError("normalisation needs truncation level at least 1")
    return K.trunc_level - 1


def epsilon_extension(
    K: SimplicialSet, C: FreeCrossedComplex, k: int, sign_by_dim: bool = False
) -> Extension:
    """Extension of ``eps_k`` over the identity of ``C`` (a quotient of the
    fundamental complex of ``K``).  ``eps_k y`` is read as trivial when
    ``k > dim y`` or when it has been killed.  With ``sign_by_dim`` the value
    on a dimension-``n`` generator carries the sign ``(-1)^(n+k)``."""
    top = _top(K)
    values: dict[str, Element] = {}
    for p in C.objects:
        values[p] = C.gen(K.degen(0, p)) if k == 0 and C.has(K.degen(0, p)) else identity(p)
    for n in range(1, top + 1):
        for x in C.basis(n):
            if k > n:
                values[x] = el.zero(n + 1, C.target(x))
                continue
            v = _gen_or_zero(C, K.degen(k, x), n + 1, C.target(x))
            values[x] = el.neg(v) if sign_by_dim and (n + k) % 2 else v
    return Extension(C, C, identity_morphism(C), values)


# --------------------------------------------------------------------------
# 0-normalisation


@dataclass(eq=False)
class ZeroNormalization:
    K: SimplicialSet
    upsilon: FreeCrossedComplex
    complex: FreeCrossedComplex
    p0: Morphism
    psi: Morphism
    psi_bar: Morphism
    homotopy: Homotopy
    killed: tuple[str, ...]
    checks: list[Check]


def e0_generators(K: SimplicialSet) -> list[str]:
    """Basis elements of the form ``eps_0 y``."""
    return sorted({z for i, _, z in K.degenerate_pairs() if i == 0}, key=lambda z: (K.dim(z), z))


def zero_normalize(
    K: SimplicialSet, upsilon: FreeCrossedComplex | None = None, strict: bool = True
) -> ZeroNormalization:
    """Build ``psi`` from the homotopy ``h_n = (-1)^n eps_0`` and the quotient
    by all ``eps_0``-generators, and verify the identities relating them."""
    C = upsilon if upsilon is not None else fundamental_crossed_complex(K)
    top = _top(K)
    h = epsilon_extension(K, C, 0, sign_by_dim=True)
    H = build_homotopy(C, C, identity_morphism(C), h.values, top)
    psi = derived_morphism(H)
    killed = e0_generators(K)
    Q, p0 = kill_basis(C, killed)
    checks = []

    closed = Check("psi closed form")
    for n in range(1, top + 1):
        for x in C.basis(n):
            t = C.target(x)
            if n == 1:
                rhs = C.gen(x) - C.gen(K.degen(0, K.face(0, x)))
            else:
                body = C.sub(C.gen(x), C.gen(K.degen(0, K.face(0, x))))
                rhs = C.act(body, -C.gen(K.degen(0, t)))
            _compare(C, closed, x, psi(C.gen(x)), rhs)
    checks.append(closed)

    kills = Check("psi kills eps_0 generators")
    for z in killed:
        if C.gen_dim(z) <= top:
            kills.record(C.is_trivial(psi(C.gen(z))), f"{z}: psi = {el.format_element(psi(C.gen(z)))}")
    checks.append(kills)

    checks.extend(zero_stage_residues(K, C))

    values = {x: psi(C.gen(x)) for n in range(1, top + 1) for x in Q.basis(n)}
    psi_bar = build_morphism(Q, C, values, {p: p for p in Q.objects}, top)

    section = Check("p0 psi_bar = 1")
    for n in range(1, top + 1):
        for x in Q.basis(n):
            _compare(Q, section, x, p0(psi_bar(Q.gen(x))), Q.gen(x))
    checks.append(section)

    factor = Check("psi = psi_bar p0")
    for n in range(1, top + 1):
        for x in C.basis(n):
            _compare(C, factor, x, psi(C.gen(x)), psi_bar(p0(C.gen(x))))
    checks.append(factor)

    if strict:
        _require(checks)
    return ZeroNormalization(K, C, Q, p0, psi, psi_bar, H, tuple(killed), checks)


def zero_stage_residues(K: SimplicialSet, C: FreeCrossedComplex) -> list[Check]:
    """The generator identities used to derive ``psi``, together with the
    derivation formula for ``h_1 delta_2`` and the vertex degeneracy
    ladder."""
    top = _top(K)
    e0 = epsilon_extension(K, C, 0)
    g = C.gen
    d = K.face
    eps0 = lambda y: g(K.degen(0, y))  # noqa: E731

    deriv = Check("derivation formula for h_1 delta_2")
    dim2 = Check("eps_0 residue in dimension 2")
    higher = Check("eps_0 residue in dimensions >= 3")
    if top >= 2:
        for x in C.basis(2):
            dx = C.delta(x)
            for k in (0, 1):
                hk = e0 if k == 0 else epsilon_extension(K, C, 1)
                e = lambda y: g(K.degen(k, y))  # noqa: E731
                rhs = C.add(C.neg(C.act(e(d(1, x)), dx)), C.act(e(d(2, x)), g(d(0, x))))
                rhs = C.add(rhs, e(d(0, x)))
                _compare(C, deriv, f"{x} (eps_{k})", hk(dx), rhs)
            # the first form, before centrality is used
            pieces = C.add(C.act(C.neg(eps0(d(1, x))), dx), C.act(eps0(d(2, x)), g(d(0, x))))
            _compare(C, dim2, f"{x} (delta_3 eps_0)", C.delta(K.degen(0, x)), pieces)
            _compare(C, dim2, x, C.add(C.neg(C.delta(K.degen(0, x))), e0(dx)), eps0(d(0, x)))
    for n in range(3, top + 1):
        for x in C.basis(n):
            lhs = C.sub(e0(C.delta(x)), C.delta(K.degen(0, x)))
            _compare(C, higher, x, lhs, el.scale(eps0(d(0, x)), (-1) ** n))
    ladder = Check("vertex degeneracy ladder")
    for v in K.simplices[0]:
        chain = [v]
        for n in range(1, K.trunc_level + 1):
            chain.append(K.degen(0, chain[-1]))
        if K.trunc_level >= 2:
            _compare(C, ladder, f"{v} n=2", C.delta(chain[2]), g(chain[1]))
        for n in range(3, K.trunc_level + 1):
            rhs = el.zero(n - 1, v) if n % 2 else g(chain[n - 1])
            _compare(C, ladder, f"{v} n={n}", C.delta(chain[n]), rhs)
    return [deriv, dim2, higher, ladder]


# --------------------------------------------------------------------------
# degeneracy filtration


@dataclass(frozen=True)
class DegeneracyFiltration:
    k: int
    generators: dict[int, tuple[str, ...]]

    def all(self) -> list[str]:
        return [x for n in sorted(self.generators) for x in self.generators[n]]

    def count(self, n: int) -> int:
        return len(self.generators.get(n, ()))


def degeneracy_generators(K: SimplicialSet, Q: FreeCrossedComplex, k: int | None = None) -> DegeneracyFiltration:
    """Generators ``eps_i y`` (``i <= k`` and ``i <= n - 1``) of ``D_k K``
    that survive in ``Q``; ``k=None`` gives the whole of ``DK``."""
    out: dict[int, set[str]] = {}
    for i, y, z in K.degenerate_pairs():
        if (k is None or i <= k) and Q.has(z):
            out.setdefault(K.dim(z), set()).add(z)
    return DegeneracyFiltration(
        -1 if k is None else k, {n: tuple(sorted(v)) for n, v in sorted(out.items())}
    )


class Membership:
    """Decides whether elements of ``Q`` lie in the subcomplex normally
    generated by a set of basis elements, by killing that set."""

    def __init__(self, Q: FreeCrossedComplex, gens):
        self.quotient, self.projection = kill_basis(Q, gens)

    def __contains__(self, e: Element) -> bool:
        if dim_of(e) < 1:
            return True
        return self.quotient.is_trivial(self.projection.project(e))


# --------------------------------------------------------------------------
# stages


@dataclass(eq=False)
class NormalizationStage:
    k: int
    complex: FreeCrossedComplex
    tau: Homotopy
    phi: Morphism
    checks: list[Check]


def phi_closed_form(K: SimplicialSet, Q: FreeCrossedComplex, k: int, x: str) -> Element:
    """``x + (-1)^(k+n-1) eps_k delta_n x + (-1)^(k+n) delta_(n+1) eps_k x``
    for a basis element ``x`` of dimension ``n >= k``, ``x`` otherwise."""
    n = Q.gen_dim(x)
    gx = Q.gen(x)
    if n < k:
        return gx
    ek = _gen_or_zero(Q, K.degen(k, x), n + 1, Q.target(x))
    d = Q.boundary(ek)
    if (k + n) % 2:
        d = Q.neg(d)
    if n == 1:
        return gx + d
    bar = epsilon_extension(K, Q, k)(Q.delta(x))
    if (k + n - 1) % 2:
        bar = Q.neg(bar)
    return Q.add(Q.add(gx, bar), d)


def phi_stage(K: SimplicialSet, Q: FreeCrossedComplex, k: int, strict: bool = True,
              audit_cylinder: bool = False) -> NormalizationStage:
    """The homotopy ``(tau^k, 1)`` on ``Q`` and its derived morphism ``phi^k``,
    checked against the closed formula."""
    top = _top(K)
    tau = epsilon_extension(K, Q, k, sign_by_dim=True)
    values = dict(tau.values)
    for n in range(1, min(k, top + 1)):
        for x in Q.basis(n):
            values[x] = el.zero(n + 1, Q.target(x))
    H = build_homotopy(Q, Q, identity_morphism(Q), values, top)
    phi = derived_morphism(H)
    checks = []
    agree = Check(f"phi^{k}: derived = closed form")
    fixed = Check(f"phi^{k} fixes dimensions < {k}")
    for n in range(1, top + 1):
        for x in Q.basis(n):
            _compare(Q, agree, x, phi(Q.gen(x)), phi_closed_form(K, Q, k, x))
            if n < k:
                _compare(Q, fixed, x, phi(Q.gen(x)), Q.gen(x))
    checks += [agree, fixed]
    if audit_cylinder:
        cyl = Check(f"tau^{k} as a cylinder morphism")
        try:
            cylinder_morphism(H)
            cyl.record(True, "")
        except MorphismError as exc:
            cyl.record(False, str(exc))
        checks.append(cyl)
    if strict:
        _require(checks)
    return NormalizationStage(k, Q, H, phi, checks)


def stage_monotonicity(K: SimplicialSet, stage: NormalizationStage, members: dict[int, Membership]) -> Check:
    """``phi^k D_j K`` inside ``D_j K`` for ``j < k`` and ``phi^k D_k K``
    inside ``D_(k-1) K`` (``D_(-1) K`` is trivial)."""
    Q, k, top = stage.complex, stage.k, _top(K)
    check = Check(f"phi^{k} filtration")
    for j in range(0, k + 1):
        gens = degeneracy_generators(K, Q, j)
        into = members.get(j if j < k else k - 1)
        for n in range(2, top + 1):
            for z in gens.generators.get(n, ()):
                image = stage.phi(Q.gen(z))
                ok = Q.is_trivial(image) if into is None else image in into
                check.record(ok, f"{z} (D_{j}): {el.format_element(image)}")
    return check


# --------------------------------------------------------------------------
# full normalisation


@dataclass(eq=False)
class FullNormalization:
    zero: ZeroNormalization
    stages: list[NormalizationStage]
    complex: FreeCrossedComplex
    p: Morphism
    q: Morphism
    p_d: Morphism
    q_d: Morphism
    checks: list[Check]

    @property
    def log(self) -> list[Check]:
        out = list(self.zero.checks)
        for s in self.stages:
            out.extend(s.checks)
        return out + self.checks

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.log)

    def phi(self, e: Element) -> Element:
        return compose_phi(self.stages, e)


def compose_phi(stages: list[NormalizationStage], e: Element) -> Element:
    """``phi^0 phi^1 ... phi^n`` on an element of dimension ``n``: the highest
    stage is applied first; stages above ``n`` act trivially."""
    n = dim_of(e)
    for s in reversed(stages[: n + 1]):
        e = s.phi(e)
    return e


def full_normalize(
    K: SimplicialSet,
    upsilon: FreeCrossedComplex | None = None,
    strict: bool = True,
    monotonicity: bool = True,
    audit_cylinder: bool = False,
) -> FullNormalization:
    """Normalise ``K``: 0-normalise, run the stages ``phi^k``, kill ``DK``.

    With ``strict`` a failed identity raises :class:`NormalizationError`;
    otherwise failures are carried in the log.
    """
    Z = zero_normalize(K, upsilon, strict)
    Q = Z.complex
    top = _top(K)
    stages = [phi_stage(K, Q, k, strict, audit_cylinder) for k in range(0, top + 1)]
    checks = []

    psi_stage = Check("phi^0 = psi on the 0-normalised complex")
    for n in range(1, top + 1):
        for x in Q.basis(n):
            _compare(Q, psi_stage, x, stages[0].phi(Q.gen(x)), Z.p0(Z.psi_bar(Q.gen(x))))
    checks.append(psi_stage)

    if monotonicity:
        members = {j: Membership(Q, degeneracy_generators(K, Q, j).all()) for j in range(0, top + 1)}
        for s in stages[1:]:
            checks.append(stage_monotonicity(K, s, members))

    DK = degeneracy_generators(K, Q)
    kills = Check("phi DK = 0")
    for z in DK.all():
        if Q.gen_dim(z) <= top:
            image = compose_phi(stages, Q.gen(z))
            kills.record(Q.is_trivial(image), f"{z}: {el.format_element(image)}")
    checks.append(kills)

    P, p_d = kill_basis(Q, DK.all())

    basis = Check("basis is the nondegenerate simplices")
    for n in range(0, K.trunc_level + 1):
        expected = sorted(y for y in K.simplices[n] if not K.is_degenerate(y))
        got = sorted(P.basis(n))
        basis.record(expected == got, f"dimension {n}: {got} vs {expected}")
    checks.append(basis)

    values = {x: compose_phi(stages, Q.gen(x)) for n in range(1, top + 1) for x in P.basis(n)}
    q_d = build_morphism(P, Q, values, {p: p for p in P.objects}, top)
    q = compose_morphisms(Z.psi_bar, q_d)
    p = compose_morphisms(p_d, Z.p0)

    section = Check("pq = 1")
    for n in range(1, top + 1):
        for x in P.basis(n):
            _compare(P, section, x, p(q(P.gen(x))), P.gen(x))
    checks.append(section)
    if strict:
        _require(checks)
    return FullNormalization(Z, stages, P, p, q, p_d, q_d, checks)


def normalized_complex(K: SimplicialSet, upsilon: FreeCrossedComplex | None = None) -> FreeCrossedComplex:
    """``Pi K`` as a quotient only, without running the homotopies."""
    C = upsilon if upsilon is not None else fundamental_crossed_complex(K)
    degenerate = [y for y in K.all_simplices() if K.is_degenerate(y)]
    Q, _ = kill_basis(C, degenerate)
    return Q


# --------------------------------------------------------------------------
# report


@dataclass
class NormalizationReport:
    checks: list[Check]
    homology: dict | None = None
    result: FullNormalization | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.checks)


def verify_normalization(K: SimplicialSet, homology: bool = True, audit_cylinder: bool = True) -> NormalizationReport:
    """Run the full normalisation without raising and collect every check,
    including agreement of homology between the unnormalised and the
    normalised complex."""
    F = full_normalize(K, strict=False, audit_cylinder=audit_cylinder)
    checks = list(F.log)
    data = None
    if homology:
        from .chains import homology as H

        top = _top(K)
        hu = H(F.zero.upsilon, top)
        hn = H(F.complex, top)
        agree = Check("homology agrees")
        agree.record(hu == hn, f"{[str(x) for x in hu]} vs {[str(x) for x in hn]}")
        checks.append(agree)
        data = {"unnormalised": [str(x) for x in hu], "normalised": [str(x) for x in hn]}
    return NormalizationReport(checks, data, F)
