"""Command line interface.

Document producers (``gen``, ``pi``, ``cone``, ``normalize`` without
``--report``) write only the document.  Report commands end with a JSON
summary block introduced by the line ``--- summary ---``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import simplicial, textformat
from .chains import homology, nabla
from .complex import FreeCrossedComplex
from .counterexample import build as build_counterexample
from .normalization import full_normalize, normalized_complex, verify_normalization
from .normalizer import DEFAULT_BUDGET, STRATEGIES, NormalizerCapacityError
from .pi import InvalidSimplicialSet, fundamental_crossed_complex
from .tensor import cone, hal_consistency_check


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _load(path: str) -> Any:
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: {exc.msg}") from exc


def _simplicial(doc: Any, trunc: int | None) -> simplicial.SimplicialSet:
    if textformat.is_complex_document(doc):
        raise InputError("expected a simplicial-set document, got a crossed complex")
    try:
        K = simplicial.loads(json.dumps(doc))
    except simplicial.ParseError as exc:
        raise InputError(str(exc)) from exc
    if trunc is not None:
        if trunc > K.trunc_level:
            raise InputError(f"--trunc {trunc} exceeds the document's level {K.trunc_level}")
        K = K.truncate(trunc)
    return K


def _complex(doc: Any, args) -> FreeCrossedComplex:
    """A crossed-complex document, or the fundamental complex of a
    simplicial-set document."""
    trunc = getattr(args, "trunc", None)
    strategy = getattr(args, "normalizer", None)
    budget = getattr(args, "budget", DEFAULT_BUDGET)
    if textformat.is_complex_document(doc):
        try:
            C = textformat.from_document(doc, strategy, budget)
        except textformat.DocumentError as exc:
            raise InputError(str(exc)) from exc
        if trunc is not None:
            if trunc > C.trunc_level:
                raise InputError(f"--trunc {trunc} exceeds the document's level {C.trunc_level}")
            C = C.truncate(trunc)
        return C
    K = _simplicial(doc, trunc)
    try:
        return fundamental_crossed_complex(K, strategy or "auto", budget)
    except InvalidSimplicialSet as exc:
        raise InputError(str(exc)) from exc


def _summary(out, command: str, checks: dict[str, bool], extra: dict | None = None) -> int:
    ok = all(checks.values())
    block = {"command": command, "ok": ok, "checks": checks}
    if extra:
        block.update(extra)
    print("--- summary ---", file=out)
    print(json.dumps(block, indent=1, sort_keys=True), file=out)
    return 0 if ok else 1


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(args, out) -> int:
    N = args.trunc if args.trunc is not None else args.N
    if args.kind == "nerve":
        if args.table:
            table = _load(args.table)
            try:
                simplicial.check_group(table)
            except ValueError as exc:
                raise InputError(str(exc)) from exc
        elif args.n is None:
            raise InputError("nerve needs a cyclic order m or --table")
        else:
            if args.n < 1:
                raise InputError("cyclic order must be at least 1")
            table = simplicial.cyclic_table(args.n)
        K = simplicial.nerve_of_group(table, 3 if N is None else N)
    else:
        if args.n is None or args.n < 0:
            raise InputError(f"{args.kind} needs a dimension n >= 0")
        if args.kind == "boundary" and args.n < 1:
            raise InputError("boundary needs n >= 1")
        N = args.n if N is None else N
        build = simplicial.standard_simplex if args.kind == "delta" else simplicial.boundary_simplex
        K = build(args.n, N)
    out.write(simplicial.dumps(K))
    return 0


def cmd_validate(args, out) -> int:
    K = _simplicial(_load(args.file), args.trunc)
    bad = simplicial.validate(K)
    for v in bad:
        print(v, file=out)
    sizes = [len(layer) for layer in K.simplices]
    print(f"simplices per dimension: {sizes}", file=out)
    print(f"{len(bad)} violation(s)", file=out)
    return _summary(out, "validate", {"simplicial identities": not bad}, {"violations": len(bad)})


def cmd_pi(args, out) -> int:
    C = _complex(_load(args.file), args)
    out.write(textformat.dumps(C))
    return 0


def cmd_check_dd(args, out) -> int:
    C = _complex(_load(args.file), args)
    bad = C.audit_dd()
    X = nabla(C)
    chain_bad = X.audit()
    for line in bad:
        print(f"crossed complex: {line}", file=out)
    for line in chain_bad:
        print(f"chain complex: {line}", file=out)
    sizes = [len(C.basis(n)) for n in range(C.trunc_level + 1)]
    print(f"basis sizes {sizes}, normalizer {C.strategy}", file=out)
    return _summary(
        out, "check-dd", {"dd = 0": not bad, "chain dd = 0": not chain_bad},
        {"basis_sizes": sizes, "normalizer": C.strategy},
    )


def cmd_hal_check(args, out) -> int:
    if args.max_dim < 2:
        raise InputError("--max-dim must be at least 2")
    results = hal_consistency_check(args.max_dim)
    checks = {}
    for r in results:
        print(r, file=out)
        checks[f"n={r.n} HAL"] = r.ok
        if r.inductive_ok is not None:
            checks[f"n={r.n} inductive step"] = r.inductive_ok
    return _summary(out, "hal-check", checks)


def cmd_cone(args, out) -> int:
    C = _complex(_load(args.file), args)
    out.write(textformat.dumps(cone(C, args.vertex).complex))
    return 0


def cmd_normalize(args, out) -> int:
    K = _simplicial(_load(args.file), args.trunc)
    if K.trunc_level < 1:
        raise InputError("normalisation needs truncation level at least 1")
    try:
        fundamental_crossed_complex(K)
    except InvalidSimplicialSet as exc:
        raise InputError(str(exc)) from exc
    if args.report:
        report = verify_normalization(K, homology=not args.no_homology)
        print(report, file=out)
        F = report.result
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(textformat.dumps(F.complex))
        sizes = [len(F.complex.basis(n)) for n in range(F.complex.trunc_level + 1)]
        extra = {"basis_sizes": sizes}
        if report.homology:
            extra["homology"] = report.homology
        return _summary(out, "normalize", {c.name: c.ok for c in report.checks}, extra)
    F = full_normalize(K, strict=False, monotonicity=False)
    text = textformat.dumps(F.complex)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if not F.ok:
        for c in F.log:
            if not c.ok:
                print(c, file=sys.stderr)
        return 1
    return 0


def cmd_homology(args, out) -> int:
    doc = _load(args.file)
    if textformat.is_complex_document(doc):
        C = _complex(doc, args)
    else:
        K = _simplicial(doc, args.trunc)
        C = fundamental_crossed_complex(K) if args.unnormalised else normalized_complex(K)
    top = C.trunc_level - 1
    d = top if args.max_degree is None else args.max_degree
    if d > top or d < 0:
        raise InputError(f"--max-degree must lie in 0..{top} (degree n needs boundaries from n + 1)")
    X = nabla(C)
    bad = X.audit()
    groups = homology(C, d)
    for n, g in enumerate(groups):
        print(f"H_{n} = {g}", file=out)
    return _summary(out, "homology", {"chain dd = 0": not bad}, {"homology": [str(g) for g in groups]})


def cmd_counterexample(args, out) -> int:
    ex = build_counterexample()
    print("C(R): one object p, loop x, d a = x, d b = 0", file=out)
    print("C(S): loop x, d b = 0 (free normalizer)", file=out)
    print(f"in C(R): b^x = b is {ex.equal_in_R}", file=out)
    print(f"in C(S): b^x = b is {ex.equal_in_S}", file=out)
    print(f"C(i)(b^x) = C(i)(b) is {ex.image_collapses}; C(i) is not injective", file=out)
    return _summary(
        out,
        "counterexample",
        {
            "b^x = b in C(R)": ex.equal_in_R,
            "b^x != b in C(S)": not ex.equal_in_S,
            "C(i) identifies b^x and b": ex.image_collapses,
        },
    )


# --------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, file: bool = True) -> None:
    if file:
        p.add_argument("file", nargs="?", default="-", help="input document (default: stdin)")
    p.add_argument("--trunc", type=int, metavar="N", help="truncate the input at level N")


def _normalizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--normalizer", choices=STRATEGIES, help="override the normalizer strategy")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="coset enumeration budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crossnorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a simplicial-set document")
    p.add_argument("kind", choices=["delta", "boundary", "nerve"])
    p.add_argument("n", type=int, nargs="?", help="dimension, or cyclic order for nerve")
    p.add_argument("N", type=int, nargs="?", help="truncation level")
    p.add_argument("--table", help="nerve: JSON multiplication table instead of a cyclic group")
    _common(p, file=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check the simplicial identities")
    _common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pi", help="emit the unnormalised fundamental crossed complex")
    _common(p)
    _normalizer_flags(p)
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("check-dd", help="audit dd = 0")
    _common(p)
    _normalizer_flags(p)
    p.set_defaults(func=cmd_check_dd)

    p = sub.add_parser("hal-check", help="derive the HAL from iterated cones")
    p.add_argument("--max-dim", type=int, default=5)
    _common(p, file=False)
    p.set_defaults(func=cmd_hal_check)

    p = sub.add_parser("cone", help="emit the cone on a crossed complex")
    _common(p)
    _normalizer_flags(p)
    p.add_argument("--vertex", default="v", help="name of the cone vertex")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("normalize", help="normalise the fundamental crossed complex")
    _common(p)
    p.add_argument("--report", action="store_true", help="print the stage log and checks")
    p.add_argument("--no-homology", action="store_true", help="skip the homology comparison in the report")
    p.add_argument("-o", "--output", help="write the normalised document here")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("homology", help="integer homology")
    _common(p)
    _normalizer_flags(p)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--unnormalised", action="store_true", help="use all simplices, degenerate included")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("counterexample", help="the non-injective inclusion of free complexes")
    _common(p, file=False)
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (InputError, NormalizerCapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
