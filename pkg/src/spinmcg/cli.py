"""Command line front end.

Verbs: basis, primitives, verify, map-eval, poincare, betti.  Exit code
0 on success or a verified target, 1 on a verification failure, 2 on
usage errors.  All output is deterministic for fixed arguments.  If
SPINMCG_CACHE_DIR is set, verification and Betti results are cached
there as JSON keyed by the arguments.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from .algebra import DEFAULT_MAX_DEGREE, HARD_MAX_DEGREE, get_model
from .betti import spin_betti
from .errors import EngineError
from .loops import primitive_basis
from .maps import TAIL_POLICIES, partial_on_generator, s1_transfer, theorem2_composite, transfer_iota_plus_c
from .spaces import SPACES
from .verify import TARGETS, run_target
from .words import generator_set

BETTI_CEILING = DEFAULT_MAX_DEGREE - 2


def hard_max_degree() -> int:
    """The hard degree cap; override with SPINMCG_MAX_DEGREE at your own risk."""
    try:
        return int(os.environ.get("SPINMCG_MAX_DEGREE", HARD_MAX_DEGREE))
    except ValueError:
        return HARD_MAX_DEGREE


def _cache_path(kind: str, key: dict) -> Path | None:
    root = os.environ.get("SPINMCG_CACHE_DIR")
    if not root:
        return None
    blob = json.dumps(key, sort_keys=True).encode()
    name = f"{kind}-{hashlib.sha256(blob).hexdigest()[:16]}.json"
    path = Path(root)
    path.mkdir(parents=True, exist_ok=True)
    return path / name


def _cached(kind: str, key: dict, compute):
    path = _cache_path(kind, key)
    if path is not None and path.exists():
        return json.loads(path.read_text())
    value = compute()
    if path is not None:
        path.write_text(json.dumps(value, sort_keys=True))
    return value


def _parse_word(text: str) -> tuple:
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad word {text!r}; expected e.g. '3,1'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinmcg",
        description="Exact mod-2 homology of free infinite loop spaces and "
        "the stable spin mapping class group Betti table.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, *, degree=False, max_degree=True, space=False, tail=False):
        if space:
            p.add_argument("--space", choices=SPACES, required=True)
        if degree:
            p.add_argument("--degree", type=int)
        if max_degree:
            p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
        if tail:
            p.add_argument("--tail", choices=TAIL_POLICIES, default="primitive")
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("basis", help="list polynomial generators")
    add_common(p, space=True)

    p = sub.add_parser("primitives", help="primitive dimensions and label basis")
    add_common(p, space=True, degree=True)
    p.add_argument("--reduced", action="store_true",
                   help="use the based model (no index-zero family)")

    p = sub.add_parser("verify", help="run a named verification target")
    p.add_argument("--target", required=True, choices=sorted(TARGETS) + ["all"])
    add_common(p, tail=True)

    p = sub.add_parser("map-eval", help="evaluate a named map on a generator")
    p.add_argument("--map", required=True,
                   choices=("partial", "iota-plus-c", "theorem2"))
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--word", type=_parse_word, default=())
    p.add_argument("--tail", choices=TAIL_POLICIES, default="primitive")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("poincare", help="graded dimensions of a model")
    add_common(p, space=True)

    p = sub.add_parser("betti", help="stable spin mapping class group Betti table")
    add_common(p, tail=True)
    return parser


def cmd_basis(args) -> int:
    if args.max_degree > hard_max_degree():
        print(f"max degree capped at {hard_max_degree()}", file=sys.stderr)
        return 2
    gens = generator_set(args.space, args.max_degree)
    if args.format == "csv":
        print("degree,generator")
        for g in gens:
            print(f"{g.degree},{g}")
    elif args.format == "json":
        for g in gens:
            print(json.dumps({"degree": g.degree, "generator": str(g)}, sort_keys=True))
    else:
        for g in gens:
            print(f"{g.degree:3d}  {g}")
    return 0


def cmd_primitives(args) -> int:
    if args.space != "rp-inf" and args.reduced:
        print("--reduced only applies to rp-inf", file=sys.stderr)
        return 2
    model = get_model(args.space, args.reduced if args.space == "rp-inf" else False)
    degrees = [args.degree] if args.degree else list(range(1, args.max_degree + 1))
    rows = []
    for n in degrees:
        dim = model.primitives(n).dim
        entry = {"degree": n, "dim": dim}
        if args.space == "rp-inf":
            labels = [str(l) for l, _ in primitive_basis(n, reduced=model.reduced)]
            entry["labels"] = labels
        rows.append(entry)
    if args.format == "csv":
        print("degree,dimension")
        for r in rows:
            print(f"{r['degree']},{r['dim']}")
    elif args.format == "json":
        for r in rows:
            print(json.dumps(r, sort_keys=True))
    else:
        for r in rows:
            labels = "  " + " ".join(r.get("labels", [])) if "labels" in r else ""
            print(f"{r['degree']:3d}  dim {r['dim']}{labels}")
    return 0


def _emit_verify(blob: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(blob, sort_keys=True))
        return
    status = "PASS" if blob["passed"] else "FAIL"
    print(f"[{status}] {blob['target']} (degrees <= {blob['max_degree']}): "
          f"{blob['pass_count']} checks passed, {blob['fail_count']} failed")
    for c in blob["checks"]:
        mark = "ok" if c["passed"] else "FAIL"
        detail = f"  {c['details']}" if c["details"] else ""
        print(f"  {mark:>4}  {c['name']}{detail}")
    for note in blob.get("notes", []):
        print(f"  note  {note}")


def cmd_verify(args) -> int:
    if args.max_degree > hard_max_degree():
        print(f"max degree capped at {hard_max_degree()}", file=sys.stderr)
        return 2
    targets = sorted(TARGETS) if args.target == "all" else [args.target]
    # results are buffered per target and emitted in a fixed order
    blobs = []
    for target in targets:
        key = {"target": target, "max_degree": args.max_degree, "tail": args.tail}
        blobs.append(
            _cached(
                "verify",
                key,
                lambda t=target: json.loads(
                    run_target(t, args.max_degree, args.tail).to_json()
                ),
            )
        )
    for blob in blobs:
        _emit_verify(blob, args.format)
    return 0 if all(b["passed"] for b in blobs) else 1


def cmd_map_eval(args) -> int:
    if args.map == "partial":
        value = partial_on_generator(args.index, args.tail)
        source = f"abar_{args.index}"
        if args.word:
            model = get_model("rp-inf")
            value = model.honest_q_word(args.word, value)
            ops = " ".join(f"Q^{s}" for s in args.word)
            source = f"{ops} abar_{args.index}"
    elif args.map == "iota-plus-c":
        if args.word:
            print("iota-plus-c takes no word", file=sys.stderr)
            return 2
        value = transfer_iota_plus_c(args.index)
        source = f"a_{args.index}"
    else:
        value = theorem2_composite(args.word, args.index)
        ops = " ".join(f"Q^{s}" for s in args.word)
        source = f"{ops} b_{args.index}".strip()
    if args.format == "json":
        print(json.dumps({"source": source, "value": str(value)}, sort_keys=True))
    else:
        print(f"{source} |-> {value}")
    return 0


def cmd_poincare(args) -> int:
    if args.max_degree > hard_max_degree():
        print(f"max degree capped at {hard_max_degree()}", file=sys.stderr)
        return 2
    model = get_model(args.space)
    rows = [(n, model.dim(n)) for n in range(args.max_degree + 1)]
    if args.format == "csv":
        print("degree,dimension")
        for n, d in rows:
            print(f"{n},{d}")
    elif args.format == "json":
        for n, d in rows:
            print(json.dumps({"degree": n, "dim": d}, sort_keys=True))
    else:
        for n, d in rows:
            print(f"{n:3d}  {d}")
    return 0


def cmd_betti(args) -> int:
    if args.max_degree > BETTI_CEILING:
        print(
            f"betti table is limited to degree {BETTI_CEILING} "
            f"(primitive data tops out at {DEFAULT_MAX_DEGREE})",
            file=sys.stderr,
        )
        return 2
    key = {"max_degree": args.max_degree, "tail": args.tail}

    def compute():
        table = spin_betti(args.max_degree, args.tail)
        return {
            "rows": [[d, v] for d, v in table.rows],
            "json_rows": table.to_json_rows(),
            "csv": table.to_csv(),
        }

    blob = _cached("betti", key, compute)
    if args.format == "csv":
        sys.stdout.write(blob["csv"])
    elif args.format == "json":
        for line in blob["json_rows"]:
            print(line)
    else:
        for d, v in blob["rows"]:
            print(f"{d:3d}  {v}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "basis": cmd_basis,
        "primitives": cmd_primitives,
        "verify": cmd_verify,
        "map-eval": cmd_map_eval,
        "poincare": cmd_poincare,
        "betti": cmd_betti,
    }
    try:
        return handlers[args.verb](args)
    except (ValueError, EngineError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
