"""Command-line front end.

Machine-readable JSON goes to stdout, diagnostics to stderr, and the
exit code tells scripts what happened: 0 success, 1 a verification or
certification failed, 2 bad input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .circuit import CircuitViolation, validate_circuit
from .circumference import (
    cycle_bound,
    is_4_connected,
    is_essentially_4_connected,
    long_cycle,
)
from .labkit import (
    FileFormatError,
    Instance,
    Query,
    ResourceCapError,
    brute_circumference,
    brute_tutte_path,
    generate,
    load_instance,
    save_instance,
    stacked_tightness,
    verify_certificate,
)
from .planar_core import EmbeddingError
from .tutte_path import CertifiedFailure, tutte_path

FORMAT = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3


@dataclass(frozen=True)
class CommandConfig:
    """One parsed invocation."""

    subcommand: str
    inputs: tuple = ()
    output: str | None = None
    caps: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)


class _InputError(ValueError):
    """Anything wrong with what the user handed us."""


def _emit(payload: dict, pretty: bool) -> None:
    indent = 2 if pretty else None
    sys.stdout.write(json.dumps(payload, indent=indent) + "\n")


def _note(message: str) -> None:
    sys.stderr.write(message + "\n")


def _parse_edge(text: str) -> tuple[int, int]:
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise _InputError(f"edge must be two vertex ids, got {text!r}")
    return int(parts[0]), int(parts[1])


def _load(path: str) -> Instance:
    try:
        return load_instance(path)
    except FileNotFoundError as exc:
        raise _InputError(str(exc)) from exc
    except FileFormatError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _query_from(args, instance: Instance) -> Query:
    if args.u is not None or args.v is not None or args.e is not None:
        if args.u is None or args.v is None or args.e is None:
            raise _InputError("--u, --v and --e must be given together")
        return Query(args.u, args.v, _parse_edge(args.e))
    if instance.query is None:
        raise _InputError("no query: give --u/--v/--e or bake one into the file")
    return instance.query


# -- subcommands -------------------------------------------------------


def _cmd_validate(args) -> int:
    instance = _load(args.file)
    emb = instance.emb
    g = emb.to_graph()
    report = {
        "format": FORMAT,
        "kind": "validation",
        "n": g.n,
        "edges": len(emb.edges),
        "circuit_graph": True,
        "violation": None,
        "essentially_4_connected": is_essentially_4_connected(g),
        "four_connected": is_4_connected(g),
    }
    try:
        cg = validate_circuit(emb)
        report["outer_cycle"] = list(cg.cycle)
    except CircuitViolation as exc:
        report["circuit_graph"] = False
        report["violation"] = f"{exc.code}: {exc.message}"
    _emit(report, args.pretty)
    return EXIT_OK if report["circuit_graph"] else EXIT_FAILED


def _cmd_tutte_path(args) -> int:
    instance = _load(args.file)
    query = _query_from(args, instance)
    emb = instance.emb.mirror() if args.flip else instance.emb
    try:
        cg = validate_circuit(emb)
    except CircuitViolation as exc:
        raise _InputError(f"not a circuit graph: {exc}") from exc
    try:
        cert = tutte_path(
            cg,
            query.u,
            query.v,
            query.e,
            debug=args.debug_assert,
            oracle_fallback=args.oracle_fallback,
        )
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    _emit(cert.to_json(), args.pretty)
    return EXIT_OK


def _cmd_cycle(args) -> int:
    instance = _load(args.file)
    try:
        report = long_cycle(instance.emb, debug=args.debug_assert)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    _emit(report.to_json(), args.pretty)
    return EXIT_OK


def _cmd_gen(args) -> int:
    try:
        if args.family == "stacked-tightness":
            if not args.base:
                raise _InputError("stacked-tightness needs --base")
            emb = stacked_tightness(generate(args.base, args.size))
            meta = {"family": args.family, "base": args.base}
        else:
            emb = generate(args.family, args.size)
            meta = {"family": args.family}
            if args.size is not None:
                meta["size"] = args.size
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    query = None
    if args.u is not None or args.v is not None or args.e is not None:
        if args.u is None or args.v is None or args.e is None:
            raise _InputError("--u, --v and --e must be given together")
        query = Query(args.u, args.v, _parse_edge(args.e))
    instance = Instance(emb, query, meta)
    if args.output:
        save_instance(args.output, instance)
        _note(f"wrote {args.output}")
    _emit(instance.to_json(), args.pretty)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    instance = _load(args.file)
    g = instance.emb.to_graph()
    if args.which == "circumference":
        length = brute_circumference(g, args.cap)
        _emit(
            {
                "format": FORMAT,
                "kind": "oracle-circumference",
                "n": g.n,
                "length": length,
            },
            args.pretty,
        )
        return EXIT_OK
    query = _query_from(args, instance)
    try:
        cg = validate_circuit(instance.emb)
    except CircuitViolation as exc:
        raise _InputError(f"not a circuit graph: {exc}") from exc
    try:
        path, beta = brute_tutte_path(cg, query.u, query.v, query.e, args.cap)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    _emit(
        {
            "format": FORMAT,
            "kind": "oracle-tutte",
            "query": query.to_json(),
            "path": list(path),
            "beta": beta,
        },
        args.pretty,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    instance = _load(args.file)
    try:
        payload = json.loads(Path(args.certificate).read_text())
    except FileNotFoundError as exc:
        raise _InputError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{args.certificate}: {exc}") from exc
    verdict = verify_certificate(instance.emb, payload)
    _emit(verdict.to_json(), args.pretty)
    return EXIT_OK if verdict.ok else EXIT_FAILED


def _bench_one(path: Path, debug: bool) -> dict:
    start = time.perf_counter()
    item: dict = {"file": path.name}
    try:
        instance = load_instance(path)
        g = instance.emb.to_graph()
        item["n"] = g.n
        if instance.query is not None:
            cg = validate_circuit(instance.emb)
            cert = tutte_path(
                cg, instance.query.u, instance.query.v, instance.query.e, debug=debug
            )
            verdict = verify_certificate(instance.emb, cert.to_json())
            item.update(
                kind="tutte-path",
                beta=cert.beta,
                bound=str(cert.bound),
                length=len(cert.path),
                verified=verdict.ok,
                ok=verdict.ok,
            )
        else:
            report = long_cycle(instance.emb, debug=debug)
            verdict = verify_certificate(instance.emb, report.to_json())
            item.update(
                kind="cycle",
                branch=report.branch,
                bound=report.bound,
                length=report.length,
                verified=verdict.ok,
                ok=verdict.ok and report.length >= report.bound,
            )
    except (ValueError, CertifiedFailure, ResourceCapError) as exc:
        item.update(ok=False, error=str(exc))
    item["seconds"] = round(time.perf_counter() - start, 4)
    return item


def _strip_timing(items: list[dict]) -> list[dict]:
    return [{k: v for k, v in item.items() if k != "seconds"} for item in items]


def _cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise _InputError(f"not a directory: {corpus}")
    files = sorted(p for p in corpus.glob("*.json") if p.name != "golden.json")
    if not files:
        raise _InputError(f"no instance files in {corpus}")
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        items = list(pool.map(lambda p: _bench_one(p, args.debug_assert), files))
    all_ok = all(item.get("ok") for item in items)
    payload = {"format": FORMAT, "kind": "bench", "ok": all_ok, "items": items}

    golden = corpus / "golden.json"
    if args.golden_regen:
        golden.write_text(json.dumps(_strip_timing(items), indent=2) + "\n")
        _note(f"regenerated {golden}")
    elif golden.exists():
        expected = json.loads(golden.read_text())
        drift = _strip_timing(items) != expected
        payload["golden_drift"] = drift
        if drift:
            all_ok = False
            payload["ok"] = False
            _note("bench results drifted from the golden file")

    if args.pretty:
        header = f"{'file':30} {'n':>4} {'bound':>7} {'len':>4} {'beta':>4} {'s':>8}"
        _note(header)
        for item in items:
            _note(
                f"{item.get('file', ''):30} {item.get('n', '-'):>4} "
                f"{str(item.get('bound', '-')):>7} {item.get('length', '-'):>4} "
                f"{str(item.get('beta', '-')):>4} {item.get('seconds', 0):>8.3f}"
            )
    _emit(payload, args.pretty)
    return EXIT_OK if all_ok else EXIT_FAILED


# -- argument plumbing -------------------------------------------------


def _add_query_flags(sub) -> None:
    sub.add_argument("--u", type=int, default=None, help="path start vertex")
    sub.add_argument("--v", type=int, default=None, help="path end vertex")
    sub.add_argument("--e", type=str, default=None, help="required edge, as 'a,b'")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuttepaths",
        description="Certified Tutte paths and long cycles in plane graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--pretty", action="store_true", help="indent JSON and add stderr tables"
    )
    common.add_argument(
        "--debug-assert",
        action="store_true",
        help="audit every recursion level, not just the final answer",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, **kw):
        return subs.add_parser(name, parents=[common], **kw)

    p = add("validate", help="diagnose a saved instance")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = add("tutte-path", help="certified path query")
    p.add_argument("file")
    _add_query_flags(p)
    p.add_argument(
        "--flip", action="store_true", help="mirror the drawing before solving"
    )
    p.add_argument(
        "--oracle-fallback",
        action="store_true",
        help="let tiny subproblems fall back to exhaustive search",
    )
    p.set_defaults(fn=_cmd_tutte_path)

    p = add("cycle", help="long cycle report")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_cycle)

    p = add("gen", help="write a corpus instance")
    p.add_argument("family")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--base", type=str, default=None, help="base family for stacking")
    p.add_argument("--output", type=str, default=None)
    _add_query_flags(p)
    p.set_defaults(fn=_cmd_gen)

    p = add("oracle", help="brute-force reference answers")
    p.add_argument("which", choices=("circumference", "tutte"))
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=None, help="vertex-count cap override")
    _add_query_flags(p)
    p.set_defaults(fn=_cmd_oracle)

    p = add("verify", help="re-check a certificate against its instance")
    p.add_argument("file")
    p.add_argument("certificate")
    p.set_defaults(fn=_cmd_verify)

    p = add("bench", help="run a corpus directory end to end")
    p.add_argument("corpus")
    p.add_argument("--jobs", type=int, default=4)
    p.add_argument(
        "--golden-regen",
        action="store_true",
        help="rewrite the corpus golden file instead of comparing",
    )
    p.set_defaults(fn=_cmd_bench)
    return parser


def config_from(args: argparse.Namespace) -> CommandConfig:
    known = vars(args)
    inputs = tuple(
        known[k] for k in ("file", "certificate", "corpus", "family") if k in known
    )
    return CommandConfig(
        subcommand=known.get("subcommand", ""),
        inputs=inputs,
        output=known.get("output"),
        caps={"cap": known["cap"]} if known.get("cap") is not None else {},
        flags={
            k: known[k]
            for k in ("pretty", "debug_assert", "flip", "oracle_fallback", "golden_regen")
            if k in known
        },
    )


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    config_from(args)
    try:
        return args.fn(args)
    except _InputError as exc:
        _note(f"input error: {exc}")
        return EXIT_INPUT
    except (FileFormatError, EmbeddingError, CircuitViolation) as exc:
        _note(f"input error: {exc}")
        return EXIT_INPUT
    except CertifiedFailure as exc:
        _note(f"certification failed: {exc}")
        return EXIT_FAILED
    except ResourceCapError as exc:
        _note(f"resource cap: {exc}")
        return EXIT_CAP


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
