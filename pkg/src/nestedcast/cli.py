"""Command-line entry point.

Subcommands:

* ``orders``      -- pairwise ordering table and Hasse edges of a channel file
* ``region``      -- a scheme's rate polygon for a fixed chain, or its union sweep
* ``classify``    -- capacity-class report (exit 10 when no class matches)
* ``verify-fme``  -- mechanical check of the split-rate projection identities
* ``oracle``      -- grid agreement of the closed-form region vs. split-rate feasibility

Exit codes: 0 success/claim, 2 parse or validation error, 3 scheme mismatch,
4 projection/oracle failure, 10 classification without a capacity claim.
Every command accepts ``--seed`` (default from NESTEDCAST_SEED).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .classify import capacity_report
from .config import SearchConfig
from .fme import verify_lemma2, verify_lemma3
from .optimize import union_region
from .ordering import ordering_graph
from .probkit import BroadcastSpec, MarkovChain, ValidationError, eval_mi_table
from .regions import (
    SchemeError,
    SchemeId,
    region_special,
    scheme_num_levels,
    split_feasible,
    thm2_contains_exact,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SCHEME = 3
EXIT_FME = 4
EXIT_NO_CLAIM = 10


class ParseFailure(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise ParseFailure(f"{path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseFailure(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e


def parse_channel_file(path: str) -> tuple[BroadcastSpec, dict]:
    """Channel files are JSON: input_size, receivers (name + matrix rows),
    private (names or 1-based indices), optional search-config overrides."""
    doc = _load_json(path)
    try:
        input_size = int(doc["input_size"])
        rx = doc["receivers"]
        names = [str(r.get("name", f"Y{i + 1}")) for i, r in enumerate(rx)]
        mats = [r["matrix"] for r in rx]
        priv_raw = doc["private"]
    except (KeyError, TypeError) as e:
        raise ParseFailure(f"{path}: missing or malformed field: {e}") from e
    priv = []
    for p in priv_raw:
        if isinstance(p, str):
            if p not in names:
                raise ParseFailure(f"{path}: unknown receiver name in private list: {p!r}")
            priv.append(names.index(p))
        else:
            i = int(p)
            if not 1 <= i <= len(names):
                raise ParseFailure(f"{path}: private index {i} out of 1..{len(names)}")
            priv.append(i - 1)
    try:
        bc = BroadcastSpec.of(mats, private=priv, names=names, renormalize=False)
    except ValidationError as e:
        raise ParseFailure(f"{path}: {e}") from e
    if bc.input_size != input_size:
        raise ParseFailure(
            f"{path}: input_size {input_size} does not match matrices ({bc.input_size} rows)"
        )
    return bc, doc.get("config", {})


def serialize_channel(bc: BroadcastSpec) -> dict:
    return {
        "input_size": bc.input_size,
        "receivers": [
            {"name": bc.names[i], "matrix": [list(map(float, row)) for row in bc.receivers[i].rows]}
            for i in range(bc.K)
        ],
        "private": list(bc.names[: bc.L]),
    }


def parse_chain_file(path: str) -> MarkovChain:
    """Chain files hold the level matrices in order: a 1-row matrix for the
    top pmf, then one kernel per transition (the last one into X)."""
    doc = _load_json(path)
    try:
        levels = doc["levels"]
        top = levels[0]
        if len(top) != 1:
            raise ParseFailure(f"{path}: first level must be a single-row matrix (the top pmf)")
        return MarkovChain.of(top[0], levels[1:])
    except ParseFailure:
        raise
    except (KeyError, TypeError, IndexError) as e:
        raise ParseFailure(f"{path}: malformed chain file: {e}") from e
    except ValidationError as e:
        raise ParseFailure(f"{path}: {e}") from e


def serialize_chain(chain: MarkovChain) -> dict:
    return {"levels": [[list(map(float, chain.top))]] + [[list(map(float, r)) for r in k] for k in chain.kernels]}


def _scheme_from_args(args) -> SchemeId:
    return SchemeId(kind=args.scheme, l=args.l, j=args.j, r=args.r)


def _cfg_from_args(args, overrides: dict | None = None) -> SearchConfig:
    cfg = SearchConfig(seed=args.seed)
    fields = {}
    for k, v in (overrides or {}).items():
        if hasattr(cfg, k):
            fields[k] = tuple(v) if isinstance(v, list) else v
    if getattr(args, "multistarts", None) is not None:
        fields["multistarts"] = args.multistarts
    if getattr(args, "iters", None) is not None:
        fields["ascent_iters"] = args.iters
    return cfg.with_(**fields) if fields else cfg


def cmd_orders(args) -> int:
    bc, overrides = parse_channel_file(args.file)
    cfg = _cfg_from_args(args, overrides)
    graph = ordering_graph(bc, cfg)
    print(graph.table_text())
    print()
    for line in graph.edge_lines():
        print(line)
    print()
    print(graph.to_dot())
    return EXIT_OK


def cmd_region(args) -> int:
    bc, overrides = parse_channel_file(args.file)
    cfg = _cfg_from_args(args, overrides)
    scheme = _scheme_from_args(args)
    if args.union:
        report = union_region(bc, scheme, cfg)
        print(report.to_text())
        print()
        print(report.csv())
        return EXIT_OK
    if not args.chain:
        raise SchemeError("either --chain or --union is required")
    chain = parse_chain_file(args.chain)
    need = scheme_num_levels(scheme, bc)
    if chain.num_aux != need:
        raise SchemeError(
            f"scheme {scheme.describe()} reads a {need}-level chain, file has {chain.num_aux}"
        )
    mi = eval_mi_table(chain, bc)
    poly = region_special(bc, mi, scheme)
    print(poly.to_text())
    if args.csv:
        print()
        print("R0,R1")
        for r0, r1 in poly.vertices:
            print(f"{float(r0):.9f},{float(r1):.9f}")
    return EXIT_OK


def cmd_classify(args) -> int:
    bc, overrides = parse_channel_file(args.file)
    cfg = _cfg_from_args(args, overrides)
    report = capacity_report(bc, cfg)
    print(report.to_text())
    return EXIT_OK if report.claims_capacity else EXIT_NO_CLAIM


def cmd_verify_fme(args) -> int:
    K, L = args.K, args.L
    if not 1 <= L < K:
        raise ParseFailure(f"need 1 <= L < K, got L={L}, K={K}")
    k = L + 1
    reports = []
    ls = [args.l] if args.l is not None else list(range(k, K))
    for l in ls:
        if not k <= l <= K - 1:
            raise ParseFailure(f"l must be in [L+1, K-1] = [{k}, {K - 1}]")
        reports.append(verify_lemma2(k, l, K, trials=args.trials, seed=args.seed))
    reports.append(verify_lemma3(k, K, trials=args.trials, seed=args.seed))
    ok = True
    for rep in reports:
        print(rep.text())
        ok = ok and rep.ok
    return EXIT_OK if ok else EXIT_FME


def cmd_oracle(args) -> int:
    bc, _ = parse_channel_file(args.file)
    chain = parse_chain_file(args.chain)
    if chain.num_aux != bc.K - bc.L:
        raise SchemeError(f"oracle needs a full {bc.K - bc.L}-level chain")
    step = Fraction(args.grid).limit_denominator(10**6)
    if not 0 < step <= Fraction(1, 10):
        raise ParseFailure("grid step must be in (0, 0.1]")
    mi = eval_mi_table(chain, bc)
    max_r0 = Fraction(min(mi.iu_y(bc.K - c, c) for c in bc.common_set))
    max_r1 = Fraction(min(mi.ix_y_given_u(0, s) for s in bc.private_set))
    disagree = 0
    interior_disagree = 0
    total = 0
    r0 = Fraction(0)
    while r0 <= max_r0 + step:
        r1 = Fraction(0)
        while r1 <= max_r1 + step:
            total += 1
            closed = thm2_contains_exact(bc, mi, r0, r1)
            lifted = split_feasible(bc, mi, r0, r1)
            if closed != lifted:
                disagree += 1
                if _is_interior_point(bc, mi, r0, r1, step):
                    interior_disagree += 1
            r1 += step
        r0 += step
    print(f"grid points: {total}")
    print(f"disagreements: {disagree}")
    print(f"interior disagreements: {interior_disagree}")
    return EXIT_OK if interior_disagree == 0 else EXIT_FME


def _is_interior_point(bc, mi, r0, r1, step) -> bool:
    """Farther than one grid step from the closed-form boundary (any
    neighbor at L-inf distance ``step`` classifies the same way)."""
    base = thm2_contains_exact(bc, mi, r0, r1)
    for d0 in (-step, Fraction(0), step):
        for d1 in (-step, Fraction(0), step):
            if thm2_contains_exact(bc, mi, max(Fraction(0), r0 + d0), max(Fraction(0), r1 + d1)) != base:
                return False
    return True


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nestedcast", description=__doc__)
    default_seed = int(os.environ.get("NESTEDCAST_SEED", SearchConfig().seed))
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--seed", type=int, default=default_seed)

    sp = sub.add_parser("orders", help="pairwise ordering table and Hasse edges")
    sp.add_argument("file")
    add_common(sp)
    sp.set_defaults(fn=cmd_orders)

    sp = sub.add_parser("region", help="rate polygon of a scheme")
    sp.add_argument("file")
    sp.add_argument("--scheme", required=True,
                    choices=["km2", "sup", "thm2", "cor1", "thm3", "cor2", "cor3", "jointdec"])
    sp.add_argument("--l", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--chain")
    sp.add_argument("--union", action="store_true")
    sp.add_argument("--csv", action="store_true", help="also print region vertices as CSV")
    sp.add_argument("--multistarts", type=int)
    sp.add_argument("--iters", type=int)
    add_common(sp)
    sp.set_defaults(fn=cmd_region)

    sp = sub.add_parser("classify", help="capacity-class report")
    sp.add_argument("file")
    sp.add_argument("--multistarts", type=int)
    sp.add_argument("--iters", type=int)
    add_common(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("verify-fme", help="verify the split-rate projection identities")
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--trials", type=int, default=100)
    add_common(sp)
    sp.set_defaults(fn=cmd_verify_fme)

    sp = sub.add_parser("oracle", help="closed-form vs split-rate-lift grid agreement")
    sp.add_argument("file")
    sp.add_argument("--chain", required=True)
    sp.add_argument("--grid", type=float, default=0.01)
    add_common(sp)
    sp.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SchemeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEME


if __name__ == "__main__":
    sys.exit(main())
