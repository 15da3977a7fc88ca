"""Command-line front end.

Subcommands mirror the library one to one: ``check`` runs the exhaustive
verification battery, ``eval``/``map`` print values and actions,
``supp``/``modify``/``degree`` surface the support machinery, ``export``
dumps a tabulation.  Functors are addressed as ``zoo:<name>``, a ``.ffn``
presentation file, or a ``.json`` tabulation.

Exit codes: 0 all requested checks pass, 1 a checked property failed
(including a monomorphicity refusal), 2 input or validation error.
Nothing else, ever.  Structured reports are byte-stable unless --timing
adds elapsed seconds.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .finset import FiniteFunction, FiniteSet
from .presentation import ParseError, PresentationInstance, parse_presentation
from .tabulated import TabulatedError, as_instance, export_tabulated, load_tabulated
from .theory import (
    STANDARD_CHECKS,
    CheckReport,
    FunctorInstance,
    ModificationKind,
    MonomorphicityError,
    ProbeMismatchError,
    SizeBoundError,
    UnknownElementError,
    degree,
    modify,
    run_standard_checks,
    support,
)
from .zoo import zoo_instance, zoo_names

MAX_SIZE_CAP = 5
SLOW_SIZE = 5


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation of the check battery."""

    target: str
    max_size: int = 3
    checks: tuple[str, ...] = STANDARD_CHECKS
    structured: bool = False
    seed: int = 0
    modify: str | None = None
    timing: bool = False


def load_input(target: str) -> FunctorInstance:
    """Resolve zoo:<name>, <file>.ffn or <file>.json to an instance."""
    if target.startswith("zoo:"):
        name = target[len("zoo:"):]
        if name not in zoo_names():
            raise ValueError(f"unknown zoo functor {name!r}; available: "
                             f"{', '.join(zoo_names())}")
        return zoo_instance(name)
    path = Path(target)
    if not path.is_file():
        raise ValueError(f"no such input file: {target}")
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".ffn":
        return PresentationInstance(
            parse_presentation(text, default_name=path.stem))
    if path.suffix == ".json":
        return as_instance(load_tabulated(text), name=path.stem)
    raise ValueError(
        f"cannot tell the format of {target!r}: expected zoo:<name>, "
        f"a .ffn presentation, or a .json tabulation")


def _load_modified(target: str, mode: str | None) -> FunctorInstance:
    g = load_input(target)
    if mode is not None:
        g = modify(g, ModificationKind(mode))
    return g


def _checked_max_size(n: int, with_modification: bool) -> int:
    if n < 0:
        raise ValueError(f"--max-size must be non-negative, got {n}")
    if with_modification and n < 2:
        raise ValueError(
            "--max-size must be at least 2 when a modification is involved: "
            "the equalizer construction reads off the values at 1 and 2")
    if n > MAX_SIZE_CAP:
        raise ValueError(
            f"--max-size is capped at {MAX_SIZE_CAP}; exhaustive function "
            f"enumeration explodes beyond that")
    if n >= SLOW_SIZE:
        print(f"warning: --max-size {n} enumerates a very large number of "
              f"function pairs; expect a wait", file=sys.stderr)
    return n


def _report_payload(functor: str, config: RunConfig,
                    reports: list[CheckReport]) -> dict:
    checks = []
    for r in reports:
        entry: dict[str, object] = {
            "name": r.name,
            "verdict": "pass" if r.passed else "fail",
            "counterexamples": list(r.counterexamples),
        }
        if config.timing:
            entry["elapsed"] = round(r.elapsed, 6)
        checks.append(entry)
    return {"tool_version": __version__, "functor": functor,
            "max_size": config.max_size, "checks": checks}


def _print_text_report(functor: str, config: RunConfig,
                       reports: list[CheckReport]) -> None:
    print(f"checking {functor} at sizes <= {config.max_size}")
    for r in reports:
        timing = f"  [{r.elapsed:.3f}s]" if config.timing else ""
        print(f"  {r.name:<14} {'pass' if r.passed else 'FAIL'}{timing}")
        for c in r.counterexamples:
            print(f"      - {c}")
        if not r.passed and r.details:
            print(f"      ({r.details})")
    failed = sum(1 for r in reports if not r.passed)
    if failed:
        print(f"{failed} of {len(reports)} checks failed")
    else:
        print(f"all {len(reports)} checks passed")


def cmd_check(config: RunConfig) -> int:
    g = _load_modified(config.target, config.modify)
    skip = tuple(c for c in STANDARD_CHECKS if c not in config.checks)
    reports = run_standard_checks(g, config.max_size, seed=config.seed,
                                  skip=skip)
    if config.structured:
        print(json.dumps(_report_payload(g.name, config, reports),
                         indent=2, ensure_ascii=False))
    else:
        _print_text_report(g.name, config, reports)
    return 0 if all(r.passed for r in reports) else 1


def cmd_eval(target: str, size: int, mode: str | None = None) -> int:
    g = _load_modified(target, mode)
    names = g.elements(size)
    print(f"{g.name}({size}): {len(names)} element"
          f"{'' if len(names) == 1 else 's'}")
    for i, name in enumerate(names):
        print(f"  {i}: {name}")
    return 0


def cmd_map(target: str, dom: int, cod: int, table: tuple[int, ...],
            mode: str | None = None) -> int:
    g = _load_modified(target, mode)
    f = FiniteFunction(FiniteSet(dom), FiniteSet(cod), table)
    out = g.map(f)
    print(f"{g.name}({f!r}) = {out!r}")
    dom_names = g.elements(dom)
    cod_names = g.elements(cod)
    for i, v in enumerate(out.table):
        print(f"  {dom_names[i]} -> {cod_names[v]}")
    return 0


def _resolve_element(g: FunctorInstance, n: int, text: str) -> int:
    try:
        return g.element_index(n, text)
    except UnknownElementError:
        if text.isdigit() and int(text) < g.size(n):
            return int(text)
        raise


def cmd_supp(target: str, size: int, element: str, order: str = "asc",
             mode: str | None = None) -> int:
    g = _load_modified(target, mode)
    idx = _resolve_element(g, size, element)
    removal = range(size - 1, -1, -1) if order == "desc" else None
    print(repr(support(g, size, idx, order=removal).support))
    return 0


def cmd_modify(target: str, mode: str, max_size: int = 3) -> int:
    g = load_input(target)
    h = modify(g, ModificationKind(mode))
    sym = "∘" if mode == "min" else "°"
    names = h.elements(0)
    print(f"F{sym}∅ = {{{', '.join(names)}}}")
    for y in range(1, max_size + 1):
        table = h.map(FiniteFunction(FiniteSet(0), FiniteSet(y), ()))
        print(f"F{sym}(∅→{y}) = {table!r}")
    return 0


def cmd_degree(target: str, max_size: int = 3, mode: str | None = None) -> int:
    g = _load_modified(target, mode)
    print(repr(degree(g, max_size)))
    return 0


def cmd_export(target: str, max_size: int = 3, out: str | None = None,
               mode: str | None = None) -> int:
    g = _load_modified(target, mode)
    text = export_tabulated(g, max_size)
    if out is None:
        print(text)
    else:
        Path(out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {g.name} tabulated up to size {max_size} to {out}",
              file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# argparse wiring


def _parse_table(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(
            f"--fn expects a comma-separated table like '0,2,1', got {text!r}"
        ) from None


def _parse_skip(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    unknown = [s for s in names if s not in STANDARD_CHECKS]
    if unknown:
        raise ValueError(
            f"unknown check name(s) in --skip: {', '.join(unknown)}; "
            f"known: {', '.join(STANDARD_CHECKS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finfun",
        description="Check, evaluate and modify finitary set functors.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument(
        "target",
        help="zoo:<name>, a .ffn presentation file, or a .json tabulation")

    mod = argparse.ArgumentParser(add_help=False)
    mod.add_argument("--modify", choices=["min", "max"], default=None,
                     help="apply an empty-set modification first")

    p = sub.add_parser("check", parents=[target, mod],
                       help="run the exhaustive verification battery")
    p.add_argument("--max-size", type=int, default=3, metavar="N",
                   help="largest set size to enumerate (default 3, cap 5)")
    p.add_argument("--skip", default=None, metavar="CHECKS",
                   help=f"comma-separated checks to leave out "
                        f"({', '.join(STANDARD_CHECKS)})")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the shuffled support removal orders")
    p.add_argument("--json", action="store_true",
                   help="emit the structured report instead of text")
    p.add_argument("--timing", action="store_true",
                   help="include elapsed seconds (output no longer "
                        "byte-stable)")
    p.set_defaults(func=_run_check)

    p = sub.add_parser("eval", parents=[target, mod],
                       help="list the elements of F(n)")
    p.add_argument("--size", type=int, required=True, metavar="N")
    p.set_defaults(func=lambda a: cmd_eval(a.target, a.size, a.modify))

    p = sub.add_parser("map", parents=[target, mod],
                       help="apply F to one function")
    p.add_argument("--fn", required=True, metavar="TABLE",
                   help="comma-separated values, e.g. '0,2,1'; '' for the "
                        "empty function")
    p.add_argument("--dom", type=int, required=True, metavar="K")
    p.add_argument("--cod", type=int, required=True, metavar="M")
    p.set_defaults(func=lambda a: cmd_map(a.target, a.dom, a.cod,
                                          _parse_table(a.fn), a.modify))

    p = sub.add_parser("supp", parents=[target, mod],
                       help="support of one element of F(n)")
    p.add_argument("--size", type=int, required=True, metavar="N")
    p.add_argument("--element", required=True, metavar="TERM",
                   help="canonical term such as 'p(0,2)', or an index")
    p.add_argument("--order", choices=["asc", "desc"], default="asc",
                   help="removal order for the greedy pass")
    p.set_defaults(func=lambda a: cmd_supp(a.target, a.size, a.element,
                                           a.order, a.modify))

    p = sub.add_parser("modify", parents=[target],
                       help="print F°∅ or F∘∅ and the maps out of it")
    p.add_argument("--mode", choices=["min", "max"], required=True)
    p.add_argument("--max-size", type=int, default=3, metavar="N",
                   help="print the empty morphisms into F(1)..F(N)")
    p.set_defaults(func=lambda a: cmd_modify(
        a.target, a.mode, _checked_max_size(a.max_size, True)))

    p = sub.add_parser("degree", parents=[target, mod],
                       help="largest support size over the probed range")
    p.add_argument("--max-size", type=int, default=3, metavar="N",
                   help="probe elements of F(0)..F(N)")
    p.set_defaults(func=lambda a: cmd_degree(
        a.target, _checked_max_size(a.max_size, a.modify is not None),
        a.modify))

    p = sub.add_parser("export", parents=[target, mod],
                       help="write the functor as a tabulation")
    p.add_argument("--max-size", type=int, default=3, metavar="N")
    p.add_argument("--out", default=None, metavar="FILE",
                   help="output path (default: stdout)")
    p.set_defaults(func=lambda a: cmd_export(
        a.target, _checked_max_size(a.max_size, a.modify is not None),
        a.out, a.modify))

    return parser


def _run_check(args: argparse.Namespace) -> int:
    skip = _parse_skip(args.skip)
    config = RunConfig(
        target=args.target,
        max_size=_checked_max_size(args.max_size, args.modify is not None),
        checks=tuple(c for c in STANDARD_CHECKS if c not in skip),
        structured=args.json,
        seed=args.seed,
        modify=args.modify,
        timing=args.timing,
    )
    return cmd_check(config)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code in (0, None) else 2
    try:
        return args.func(args)
    except MonomorphicityError as err:
        print(f"property failure: {err}", file=sys.stderr)
        return 1
    except (ParseError, TabulatedError, SizeBoundError, UnknownElementError,
            ProbeMismatchError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
