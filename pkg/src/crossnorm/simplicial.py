"""Finite truncations of simplicial sets.

A :class:`SimplicialSet` stores every simplex up to its truncation level,
degenerate ones included, as named cells with explicit face and degeneracy
tables.  Names are unique across all dimensions, which keeps the text format
flat (``faces`` and ``degeneracies`` are keyed by name alone).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence


class ParseError(ValueError):
    """Malformed simplicial-set document."""


@dataclass(frozen=True)
class Violation:
    rule: str
    indices: tuple[int, ...]
    simplex: str

    def __str__(self) -> str:
        idx = ",".join(map(str, self.indices))
        return f"{self.rule} fails at ({idx}) on {self.simplex}"


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    trunc_level: int
    simplices: tuple[tuple[str, ...], ...]
    faces: Mapping[str, tuple[str, ...]]
    degeneracies: Mapping[str, tuple[str, ...] | None]
    nondegenerate: frozenset[str]
    dims: Mapping[str, int] = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return (
            self.trunc_level == other.trunc_level
            and self.simplices == other.simplices
            and dict(self.faces) == dict(other.faces)
            and dict(self.degeneracies) == dict(other.degeneracies)
            and self.nondegenerate == other.nondegenerate
        )

    def __hash__(self) -> int:
        return hash((self.trunc_level, self.simplices))

    def dim(self, x: str) -> int:
        return self.dims[x]

    def face(self, i: int, x: str) -> str:
        return self.faces[x][i]

    def degen(self, i: int, x: str) -> str:
        row = self.degeneracies[x]
        if row is None:
            raise KeyError(f"degeneracy of {x} lies above truncation level {self.trunc_level}")
        return row[i]

    def has_degen(self, x: str) -> bool:
        return self.degeneracies[x] is not None

    def is_degenerate(self, x: str) -> bool:
        return x not in self.nondegenerate

    def iter_faces(self, x: str, times: int, i: int = 0) -> str:
        """Apply the face ``d_i`` to ``x`` repeatedly."""
        for _ in range(times):
            x = self.faces[x][i]
        return x

    def last_vertex(self, x: str) -> str:
        return self.iter_faces(x, self.dims[x], 0)

    def all_simplices(self) -> Iterator[str]:
        for layer in self.simplices:
            yield from layer

    def degenerate_pairs(self) -> Iterator[tuple[int, str, str]]:
        """Yield ``(i, y, eps_i y)`` for every recorded degeneracy."""
        for layer in self.simplices:
            for y in layer:
                row = self.degeneracies[y]
                if row is not None:
                    for i, z in enumerate(row):
                        yield i, y, z

    def truncate(self, n: int) -> "SimplicialSet":
        if n < 0:
            raise ValueError("truncation level must be non-negative")
        if n >= self.trunc_level:
            return self
        layers = self.simplices[: n + 1]
        keep = {x for layer in layers for x in layer}
        degs = {
            x: (self.degeneracies[x] if self.dims[x] < n else None) for x in keep
        }
        return _make(
            n,
            layers,
            {x: self.faces[x] for x in keep},
            degs,
            frozenset(x for x in self.nondegenerate if x in keep),
        )


def _make(trunc, layers, faces, degs, nondeg) -> SimplicialSet:
    dims = {x: n for n, layer in enumerate(layers) for x in layer}
    return SimplicialSet(
        trunc_level=trunc,
        simplices=tuple(tuple(layer) for layer in layers),
        faces=dict(faces),
        degeneracies=dict(degs),
        nondegenerate=frozenset(nondeg),
        dims=dims,
    )


def from_tables(
    trunc_level: int,
    layers: Sequence[Sequence[str]],
    faces: Mapping[str, Sequence[str]],
    degeneracies: Mapping[str, Sequence[str] | None],
) -> SimplicialSet:
    """Assemble a simplicial set, deriving the nondegenerate set from the
    degeneracy table."""
    images = {z for row in degeneracies.values() if row is not None for z in row}
    nondeg = {x for layer in layers for x in layer if x not in images}
    return _make(
        trunc_level,
        layers,
        {x: tuple(v) for x, v in faces.items()},
        {x: (None if v is None else tuple(v)) for x, v in degeneracies.items()},
        nondeg,
    )


# --------------------------------------------------------------------------
# validation


def validate(K: SimplicialSet) -> list[Violation]:
    """Check every instance of the simplicial identities inside the truncation.

    Returns the list of violated instances; an empty list means ``K`` is a
    valid truncated simplicial set.
    """
    out: list[Violation] = []
    d, e = K.face, K.degen
    for x in K.all_simplices():
        n = K.dim(x)
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    if d(i, d(j, x)) != d(j - 1, d(i, x)):
                        out.append(Violation("d_i d_j = d_{j-1} d_i", (i, j), x))
        if not K.has_degen(x):
            continue
        for j in range(n + 1):
            z = e(j, x)
            if d(j, z) != x:
                out.append(Violation("d_j e_j = id", (j, j), x))
            if d(j + 1, z) != x:
                out.append(Violation("d_{j+1} e_j = id", (j + 1, j), x))
            for i in range(j):
                if d(i, z) != e(j - 1, d(i, x)):
                    out.append(Violation("d_i e_j = e_{j-1} d_i", (i, j), x))
            for i in range(j + 2, n + 2):
                if d(i, z) != e(j, d(i - 1, x)):
                    out.append(Violation("d_i e_j = e_j d_{i-1}", (i, j), x))
            if n + 2 <= K.trunc_level:
                for i in range(j + 1):
                    if e(i, z) != e(j + 1, e(i, x)):
                        out.append(Violation("e_i e_j = e_{j+1} e_i", (i, j), x))
    images = {z for _, _, z in K.degenerate_pairs()}
    for x in K.all_simplices():
        flagged = K.is_degenerate(x)
        if flagged != (x in images):
            out.append(Violation("degeneracy flag", (), x))
    return out


# --------------------------------------------------------------------------
# builders


def _seq_name(seq: Sequence[int], width: int) -> str:
    return "".join(map(str, seq)) if width <= 10 else ".".join(map(str, seq))


def _from_sequences(n: int, N: int, keep) -> SimplicialSet:
    """Sub-simplicial-set of Delta[n] spanned by the monotone sequences
    accepted by ``keep``."""
    layers = []
    for m in range(N + 1):
        layer = [
            s
            for s in itertools.combinations_with_replacement(range(n + 1), m + 1)
            if keep(s)
        ]
        layers.append(layer)
    name = {s: _seq_name(s, n + 1) for layer in layers for s in layer}
    faces = {}
    degs = {}
    for m, layer in enumerate(layers):
        for s in layer:
            faces[name[s]] = tuple(name[s[:i] + s[i + 1 :]] for i in range(m + 1)) if m else ()
            if m < N:
                degs[name[s]] = tuple(name[s[: i + 1] + s[i:]] for i in range(m + 1))
            else:
                degs[name[s]] = None
    return from_tables(N, [[name[s] for s in layer] for layer in layers], faces, degs)


def standard_simplex(n: int, N: int) -> SimplicialSet:
    """Delta[n] truncated at level ``N``; m-simplices are nondecreasing
    sequences of length m+1 in 0..n."""
    if n < 0 or N < 0:
        raise ValueError("standard_simplex needs non-negative arguments")
    if N < n:
        raise ValueError(f"truncation {N} is below the simplex dimension {n}")
    return _from_sequences(n, N, lambda s: True)


def boundary_simplex(n: int, N: int) -> SimplicialSet:
    """The boundary of Delta[n]: sequences missing at least one value."""
    if n < 1 or N < 0:
        raise ValueError("boundary_simplex needs n >= 1 and N >= 0")
    if N < n - 1:
        raise ValueError(f"truncation {N} is below {n - 1}")
    return _from_sequences(n, N, lambda s: len(set(s)) < n + 1)


def check_group(table: Sequence[Sequence[int]]) -> int:
    """Validate a multiplication table on 0..m-1; return the identity.

    Raises ``ValueError`` naming the first failed axiom instance.
    """
    m = len(table)
    if m == 0:
        raise ValueError("empty multiplication table")
    for a, row in enumerate(table):
        if len(row) != m or any(not (0 <= v < m) for v in row):
            raise ValueError(f"row {a} is not a map into 0..{m - 1}")
    for a, b, c in itertools.product(range(m), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ValueError(f"associativity fails at ({a}, {b}, {c})")
    ids = [u for u in range(m) if all(table[u][a] == a == table[a][u] for a in range(m))]
    if not ids:
        raise ValueError("no identity element")
    u = ids[0]
    for a in range(m):
        if not any(table[a][b] == u == table[b][a] for b in range(m)):
            raise ValueError(f"element {a} has no inverse")
    return u


def cyclic_table(m: int) -> list[list[int]]:
    return [[(a + b) % m for b in range(m)] for a in range(m)]


def _tuple_name(t: Sequence[int]) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def nerve_of_group(mult_table: Sequence[Sequence[int]], N: int) -> SimplicialSet:
    """Nerve of a finite group: n-simplices are n-tuples of elements.

    d_0 drops the first entry, d_n the last, and d_i (0 < i < n) multiplies
    entries i and i+1; e_i inserts the identity at position i.
    """
    if N < 0:
        raise ValueError("truncation level must be non-negative")
    u = check_group(mult_table)
    m = len(mult_table)
    mul = lambda a, b: mult_table[a][b]  # noqa: E731
    layers = [list(itertools.product(range(m), repeat=n)) for n in range(N + 1)]
    faces = {}
    degs = {}
    for n, layer in enumerate(layers):
        for t in layer:
            key = _tuple_name(t)
            if n == 0:
                faces[key] = ()
            else:
                fs = [t[1:]]
                for i in range(1, n):
                    fs.append(t[: i - 1] + (mul(t[i - 1], t[i]),) + t[i + 1 :])
                fs.append(t[:-1])
                faces[key] = tuple(_tuple_name(f) for f in fs)
            if n < N:
                degs[key] = tuple(_tuple_name(t[:i] + (u,) + t[i:]) for i in range(n + 1))
            else:
                degs[key] = None
    return from_tables(
        N, [[_tuple_name(t) for t in layer] for layer in layers], faces, degs
    )


# --------------------------------------------------------------------------
# text format


def dumps(K: SimplicialSet) -> str:
    doc = {
        "trunc_level": K.trunc_level,
        "simplices": {str(n): list(layer) for n, layer in enumerate(K.simplices)},
        "faces": {x: list(K.faces[x]) for x in K.all_simplices()},
        "degeneracies": {
            x: (None if K.degeneracies[x] is None else list(K.degeneracies[x]))
            for x in K.all_simplices()
        },
        "nondegenerate": [x for x in K.all_simplices() if x in K.nondegenerate],
    }
    return json.dumps(doc, indent=1) + "\n"


def loads(text: str) -> SimplicialSet:
    """Parse a simplicial-set document.

    Structural problems (missing fields, wrong arities, faces of the wrong
    dimension) raise :class:`ParseError`; simplicial identities are *not*
    checked here, see :func:`validate`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    for key in ("trunc_level", "simplices", "faces", "degeneracies", "nondegenerate"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    N = doc["trunc_level"]
    if not isinstance(N, int) or N < 0:
        raise ParseError("trunc_level: expected a non-negative integer")
    simp = doc["simplices"]
    layers = []
    for n in range(N + 1):
        layer = simp.get(str(n))
        if not isinstance(layer, list) or not all(isinstance(x, str) for x in layer):
            raise ParseError(f"simplices[{n}]: expected a list of names")
        layers.append(layer)
    extra = set(simp) - {str(n) for n in range(N + 1)}
    if extra:
        raise ParseError(f"simplices: dimensions {sorted(extra)} exceed trunc_level {N}")
    dims: dict[str, int] = {}
    for n, layer in enumerate(layers):
        for x in layer:
            if x in dims:
                raise ParseError(f"simplices[{n}]: duplicate name {x!r}")
            dims[x] = n
    faces, degs = {}, {}
    for x, n in dims.items():
        row = doc["faces"].get(x)
        want = n + 1 if n else 0
        if not isinstance(row, list):
            raise ParseError(f"faces[{x!r}]: missing")
        if len(row) != want:
            raise ParseError(f"faces[{x!r}]: missing face entry, expected {want} got {len(row)}")
        for i, y in enumerate(row):
            if dims.get(y) != n - 1:
                raise ParseError(f"faces[{x!r}][{i}]: {y!r} is not a simplex of dimension {n - 1}")
        faces[x] = tuple(row)
        if x not in doc["degeneracies"]:
            raise ParseError(f"degeneracies[{x!r}]: missing")
        row = doc["degeneracies"][x]
        if n == N:
            if row is not None:
                raise ParseError(f"degeneracies[{x!r}]: must be null at the truncation level")
            degs[x] = None
            continue
        if not isinstance(row, list) or len(row) != n + 1:
            raise ParseError(f"degeneracies[{x!r}]: expected {n + 1} entries")
        for i, y in enumerate(row):
            if dims.get(y) != n + 1:
                raise ParseError(f"degeneracies[{x!r}][{i}]: {y!r} is not a simplex of dimension {n + 1}")
        degs[x] = tuple(row)
    nondeg = doc["nondegenerate"]
    if not isinstance(nondeg, list) or any(y not in dims for y in nondeg):
        raise ParseError("nondegenerate: expected a list of known simplex names")
    return _make(N, layers, faces, degs, frozenset(nondeg))
