"""Chain complexes over the fundamental groupoid, and integer homology.

A chain in degree ``n`` at object ``p`` is an integer combination of pairs
``(b, w)`` with ``b`` a basis element of degree ``n`` and ``w`` a canonical
word from the base object of ``b`` to ``p``.  In degree 0 the basis is the
set of objects; in degree 1 the base object of an edge is its target.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from .complex import FreeCrossedComplex
from .elements import Dim2, ModuleElement
from .groupoid import Graph, Word, identity

Chain = Counter  # Counter[(basis, Word)] -> int
Canon = Callable[[Word], Word]


def _clean(c: Counter) -> Counter:
    return Counter({k: v for k, v in c.items() if v})


def act_chain(c: Chain, w: Word, canon: Canon) -> Chain:
    out: Counter = Counter()
    for (b, u), k in c.items():
        out[(b, canon(u + w))] += k
    return _clean(out)


def fox_derivative(w: Word, graph: Graph, canon: Canon) -> Chain:
    """The universal derivation on a word: ``a(g) = (g, 1)``,
    ``a(-g) = -(g, -g)`` and ``a(u + v) = a(u)^v + a(v)``, operators taken
    in the fundamental groupoid."""
    out: Counter = Counter()
    suffix = identity(w.end)
    for g, s in reversed(w.letters):
        if s > 0:
            out[(g, canon(suffix))] += 1
        suffix = graph.gen(g, s) + suffix
        if s < 0:
            out[(g, canon(suffix))] -= 1
    return _clean(out)


@dataclass(eq=False)
class ChainComplexOverGroupoid:
    """The image of a free crossed complex under the chain functor."""

    source: FreeCrossedComplex
    bases: dict[int, tuple[str, ...]]
    boundaries: dict[int, dict[str, Chain]]

    @property
    def top(self) -> int:
        return max(self.bases)

    def canon(self, w: Word) -> Word:
        return self.source.canon(w)

    def base_object(self, n: int, b: str) -> str:
        return b if n == 0 else self.source.target(b)

    def boundary(self, n: int, c: Chain) -> Chain:
        out: Counter = Counter()
        for (b, w), k in c.items():
            for key, v in act_chain(self.boundaries[n][b], w, self.canon).items():
                out[key] += k * v
        return _clean(out)

    def generator(self, n: int, b: str) -> Chain:
        return Counter({(b, identity(self.base_object(n, b))): 1})

    def audit(self) -> list[str]:
        """``dd = 0`` on every generator and ``eps d_1 = 0``."""
        bad = []
        for e in self.bases.get(1, ()):
            if augmentation(self.boundaries[1][e]) != 0:
                bad.append(f"{e}: eps d1 != 0")
        for n in range(2, self.top + 1):
            for b in self.bases[n]:
                dd = self.boundary(n - 1, self.boundaries[n][b])
                if dd:
                    bad.append(f"{b}: dd = {format_chain(dd)}")
        return bad


def augmentation(c: Chain) -> int:
    return sum(c.values())


def _translate(e: Union[Dim2, ModuleElement], canon: Canon) -> Chain:
    out: Counter = Counter()
    if isinstance(e, Dim2):
        for s, g, w in e.terms:
            out[(g, canon(w))] += s
    else:
        for (g, w), c in e.items:
            out[(g, canon(w))] += c
    return _clean(out)


def nabla(C: FreeCrossedComplex) -> ChainComplexOverGroupoid:
    canon = C.canon
    bases = {n: tuple(C.basis(n)) for n in range(C.trunc_level + 1)}
    bd: dict[int, dict[str, Chain]] = {}
    if C.trunc_level >= 1:
        bd[1] = {}
        for e in bases[1]:
            s, t = C.source(e), C.target(e)
            c: Counter = Counter()
            c[(s, canon(C.graph.gen(e)))] += 1
            c[(t, identity(t))] -= 1
            bd[1][e] = _clean(c)
    if C.trunc_level >= 2:
        bd[2] = {r: fox_derivative(C.delta(r), C.graph, canon) for r in bases[2]}
    for n in range(3, C.trunc_level + 1):
        bd[n] = {g: _translate(C.delta(g), canon) for g in bases[n]}
    return ChainComplexOverGroupoid(C, bases, bd)


def format_chain(c: Chain) -> str:
    if not c:
        return "0"
    parts = []
    for k, ((b, w), v) in enumerate(sorted(c.items())):
        body = b if w.is_identity else f"{b}^[{w}]"
        if abs(v) != 1:
            body = f"{abs(v)} {body}"
        parts.append(("- " if v < 0 else ("+ " if k else "")) + body)
    return " ".join(parts)


# --------------------------------------------------------------------------
# integer matrices


@dataclass
class IntMatrix:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: list[list[int]] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = [[sum(self.entries[i][j] * other.entries[j][l] for j in range(k)) for l in range(n)] for i in range(m)]
        return IntMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)


@dataclass(eq=False)
class IntegerChainComplex:
    """``Z``-chains with labelled bases; ``matrices[n]`` maps degree ``n``
    to degree ``n - 1``."""

    bases: dict[int, tuple[str, ...]]
    matrices: dict[int, IntMatrix]

    @property
    def top(self) -> int:
        return max(self.bases)

    def matrix(self, n: int) -> IntMatrix:
        if n in self.matrices:
            return self.matrices[n]
        return IntMatrix(self.bases.get(n - 1, ()), self.bases.get(n, ()), [[0] * len(self.bases.get(n, ())) for _ in self.bases.get(n - 1, ())])


def augment(X: ChainComplexOverGroupoid) -> IntegerChainComplex:
    """Replace every operator by 1.  Degree-0 keys are read at their base
    object, so ``d_1 e`` becomes ``s e - t e``."""
    mats = {}
    for n in range(1, X.top + 1):
        rows, cols = X.bases[n - 1], X.bases[n]
        index = {b: i for i, b in enumerate(rows)}
        M = [[0] * len(cols) for _ in rows]
        for j, b in enumerate(cols):
            for (a, _), v in X.boundaries[n][b].items():
                M[index[a]][j] += v
        mats[n] = IntMatrix(rows, cols, M)
    return IntegerChainComplex(dict(X.bases), mats)


# --------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    D: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)


def _eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Union[IntMatrix, list[list[int]]]) -> SmithForm:
    """Exact Smith form ``D = U M V`` with unimodular ``U``, ``V`` and
    ``d_1 | d_2 | ...``.  Pivots are chosen of minimal absolute value."""
    A = [list(r) for r in (M.entries if isinstance(M, IntMatrix) else M)]
    m = len(A)
    n = len(A[0]) if m else (len(M.cols) if isinstance(M, IntMatrix) else 0)
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(src, dst, q):  # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for R in A:
            R[dst] += q * R[src]
        for R in V:
            R[dst] += q * R[src]

    t = 0
    while t < min(m, n):
        cands = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if not done:
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    factors = tuple(A[i][i] for i in range(min(m, n)) if A[i][i])
    return SmithForm(A, U, V, factors)


# --------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def integer_homology(X: IntegerChainComplex, max_degree: int) -> list[HomologyGroup]:
    if max_degree > X.top - 1:
        raise ValueError(f"degree {max_degree} needs boundaries from degree {max_degree + 1}; top is {X.top}")
    forms = {n: smith_normal_form(X.matrix(n)) for n in range(1, max_degree + 2)}
    out = []
    for n in range(max_degree + 1):
        rank_in = forms[n].rank if n >= 1 else 0
        out_form = forms[n + 1]
        free = len(X.bases.get(n, ())) - rank_in - out_form.rank
        out.append(HomologyGroup(free, tuple(d for d in out_form.factors if d > 1)))
    return out


def homology(C: Union[FreeCrossedComplex, IntegerChainComplex], max_degree: int | None = None) -> list[HomologyGroup]:
    """Integer homology in degrees ``0..max_degree`` (default: the highest
    degree whose outgoing boundaries are known)."""
    X = C if isinstance(C, IntegerChainComplex) else augment(nabla(C))
    if max_degree is None:
        max_degree = X.top - 1
    return integer_homology(X, max_degree)


def format_homology(groups: Iterable[HomologyGroup]) -> list[str]:
    return [str(g) for g in groups]
