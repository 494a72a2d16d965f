"""Text codec for free crossed complexes and their elements.

A crossed-complex document is a JSON object::

    {
      "trunc_level": 3,
      "objects": ["0", "1"],
      "normalizer": "presentation",
      "basis": {
        "1": [{"name": "01", "source": "0", "target": "1"}],
        "2": [{"name": "a", "target": "1", "boundary": "- 01 + 01"}],
        "3": [{"name": "b", "target": "1", "boundary": "a^[01] - a"}]
      }
    }

Element expressions:

* dimension 1: ``e1 + e2 - e3``, or ``0`` for an identity;
* dimension 2: an ordered signed sequence ``g^[w] - h + k``;
* dimension >= 3: a weighted sum ``2 g^[w] - h``.

An operator ``^[w]`` may be omitted when ``w`` is an identity.  A token of
digits directly followed by a generator name is a coefficient.
"""
from __future__ import annotations

import json
import re
from typing import Any

from . import elements as el
from .complex import FreeCrossedComplex
from .elements import Element
from .groupoid import Graph, WordError
from .normalizer import DEFAULT_BUDGET, STRATEGIES


class DocumentError(ValueError):
    """Malformed crossed-complex document or element expression."""


_TOKEN = re.compile(r"\s*(\^\[|\]|[+-]|[^\s+\-\^\[\]]+)")


def _tokens(text: str) -> list[str]:
    text = text.strip()
    toks = _TOKEN.findall(text)
    if "".join(toks) != re.sub(r"\s+", "", text):
        raise DocumentError(f"cannot tokenize {text!r}")
    return toks


def parse_element(C_or_graph, text: str, n: int, endpoint: str, dims: dict[str, int] | None = None,
                  targets: dict[str, str] | None = None) -> Element:
    """Parse an expression of dimension ``n`` living over ``endpoint``.

    The first argument is a complex, or a graph together with explicit
    ``dims`` and ``targets`` tables (used while a document is loading).
    """
    if isinstance(C_or_graph, FreeCrossedComplex):
        C = C_or_graph
        graph = C.graph
        dim_of_gen = lambda g: C.gen_dim(g) if C.has(g) else None  # noqa: E731
        target_of = C.target
    else:
        graph = C_or_graph
        dim_of_gen = dims.get
        target_of = targets.__getitem__
    try:
        if n == 0:
            return text.strip()
        if n == 1:
            return graph.parse(text, endpoint)
        toks = _tokens(text)
        if toks == ["0"]:
            return el.zero(n, endpoint)
        terms = []
        k = 0
        while k < len(toks):
            sign = 1
            if toks[k] in "+-":
                sign = 1 if toks[k] == "+" else -1
                k += 1
            elif terms:
                raise DocumentError(f"missing sign before {toks[k]!r} in {text!r}")
            coeff = 1
            if k + 1 < len(toks) and toks[k].isdigit() and toks[k + 1] not in ("+", "-", "^[", "]"):
                if n == 2:
                    raise DocumentError(f"coefficients are not allowed in dimension 2: {text!r}")
                coeff = int(toks[k])
                k += 1
            if k >= len(toks) or toks[k] in ("+", "-", "^[", "]"):
                raise DocumentError(f"expected a generator name in {text!r}")
            g = toks[k]
            k += 1
            if dim_of_gen(g) != n:
                raise DocumentError(f"{g!r} is not a generator of dimension {n}")
            word_text = None
            if k < len(toks) and toks[k] == "^[":
                close = toks.index("]", k) if "]" in toks[k:] else -1
                if close < 0:
                    raise DocumentError(f"unclosed operator in {text!r}")
                word_text = " ".join(toks[k + 1:close])
                k = close + 1
            start = target_of(g)
            w = graph.parse(word_text, start) if word_text else graph.word((), start)
            if w.start != start:
                raise DocumentError(f"operator on {g!r} must start at {start!r}")
            if w.end != endpoint:
                raise DocumentError(f"operator on {g!r} ends at {w.end!r}, expected {endpoint!r}")
            terms.append((sign, g, w, coeff))
        if n == 2:
            return el.dim2(endpoint, [(s, g, w) for s, g, w, _ in terms])
        return el.module(n, endpoint, [(g, w, s * c) for s, g, w, c in terms])
    except (WordError, KeyError) as exc:
        raise DocumentError(f"{text!r}: {exc}") from exc


def format_element(e: Element) -> str:
    return el.format_element(e)


def to_document(C: FreeCrossedComplex) -> dict[str, Any]:
    basis: dict[str, list] = {}
    if C.trunc_level >= 1:
        basis["1"] = [
            {"name": e, "source": C.source(e), "target": C.target(e)} for e in C.basis(1)
        ]
    for n in range(2, C.trunc_level + 1):
        basis[str(n)] = [
            {"name": g, "target": C.target(g), "boundary": el.format_element(C.delta(g))}
            for g in C.basis(n)
        ]
    return {
        "trunc_level": C.trunc_level,
        "objects": list(C.objects),
        "normalizer": C.strategy,
        "basis": basis,
    }


def dumps(C: FreeCrossedComplex) -> str:
    return json.dumps(to_document(C), indent=1) + "\n"


def from_document(doc: Any, normalizer: str | None = None, budget: int = DEFAULT_BUDGET) -> FreeCrossedComplex:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("trunc_level", "objects", "basis"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    N = doc["trunc_level"]
    if not isinstance(N, int) or N < 0:
        raise DocumentError("trunc_level: expected a non-negative integer")
    objects = doc["objects"]
    if not isinstance(objects, list) or not all(isinstance(p, str) for p in objects):
        raise DocumentError("objects: expected a list of names")
    basis = doc["basis"]
    if not isinstance(basis, dict):
        raise DocumentError("basis: expected an object keyed by dimension")
    extra = set(basis) - {str(n) for n in range(1, N + 1)}
    if extra:
        raise DocumentError(f"basis: unexpected dimensions {sorted(extra)}")
    strategy = normalizer or doc.get("normalizer", "auto")
    if strategy not in STRATEGIES:
        raise DocumentError(f"normalizer: unknown strategy {strategy!r}")
    edges = {}
    for k, row in enumerate(basis.get("1", [])):
        try:
            edges[row["name"]] = (row["source"], row["target"])
        except (KeyError, TypeError) as exc:
            raise DocumentError(f"basis[1][{k}]: expected name, source and target") from exc
    try:
        graph = Graph(objects, edges)
    except (ValueError, KeyError) as exc:
        raise DocumentError(str(exc)) from exc
    dims = {e: 1 for e in edges}
    targets = {e: t for e, (_, t) in edges.items()}
    rows = []
    for n in range(2, N + 1):
        for k, row in enumerate(basis.get(str(n), [])):
            if not isinstance(row, dict) or not {"name", "target", "boundary"} <= set(row):
                raise DocumentError(f"basis[{n}][{k}]: expected name, target and boundary")
            if row["name"] in dims:
                raise DocumentError(f"basis[{n}][{k}]: duplicate name {row['name']!r}")
            dims[row["name"]] = n
            targets[row["name"]] = row["target"]
            rows.append((n, row))
    cells = {}
    for n, row in rows:
        where = f"boundary of {row['name']!r}"
        try:
            b = parse_element(graph, row["boundary"], n - 1, row["target"], dims, targets)
        except DocumentError as exc:
            raise DocumentError(f"{where}: {exc}") from exc
        cells[row["name"]] = (n, row["target"], b)
    try:
        return FreeCrossedComplex(objects, edges, cells, N, strategy, budget)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def loads(text: str, normalizer: str | None = None, budget: int = DEFAULT_BUDGET) -> FreeCrossedComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}: {exc.msg}") from exc
    return from_document(doc, normalizer, budget)


def is_complex_document(doc: Any) -> bool:
    return isinstance(doc, dict) and "basis" in doc and "objects" in doc

