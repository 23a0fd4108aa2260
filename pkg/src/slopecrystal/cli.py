"""Command-line interface.

Exit codes: 0 success/true, 1 semantic false, 2 usage or input error,
3 refused precondition (non-aligned datum without ``--allow-nonaligned``).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import crystal
from .core import MultiPartition, content, multipartitions_up_to
from .crystal import NonAlignedError, generate, parallel_iso_check, weight_multiplicities
from .monomial import check_psi_isomorphism, constants_from_slope, psi, verify_psi_commutes
from .regularity import (
    ZeroEigenvalueError,
    attracting_dimension,
    hook_triples,
    illegal_triples,
)
from .slope import Mode, SlopeDatum, is_aligned

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int
    coloring: tuple[int, ...]
    slope: SlopeDatum
    max_boxes: int = 0
    fmt: str = "json"
    output: Optional[str] = None
    allow_nonaligned: bool = False


def _parse_coloring(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(tok) for tok in str(value).replace(",", " ").split())


def _parse_slope(value) -> SlopeDatum:
    if isinstance(value, str):
        text = value
        if not text.lstrip().startswith("{"):
            text = Path(text).read_text()
        value = json.loads(text)
    return SlopeDatum.from_dict(value)


def build_config(args: argparse.Namespace, slope_attr: str = "slope") -> RunConfig:
    """Merge the optional JSON config file with flags; flags win."""
    file_cfg: dict = {}
    if getattr(args, "config", None):
        try:
            file_cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc

    def pick(flag: str, key: str, default=None):
        value = getattr(args, flag, None)
        return file_cfg.get(key, default) if value is None else value

    try:
        n = pick("n", "n")
        coloring = pick("coloring", "coloring")
        slope = pick(slope_attr, "slope" if slope_attr == "slope" else slope_attr)
        if n is None or coloring is None or slope is None:
            raise ConfigError("n, coloring and slope are all required")
        cfg = RunConfig(
            n=int(n),
            coloring=_parse_coloring(coloring),
            slope=_parse_slope(slope),
            max_boxes=int(pick("max_boxes", "max_boxes", 0)),
            fmt=pick("format", "format", "json"),
            output=pick("output", "output"),
            allow_nonaligned=bool(getattr(args, "allow_nonaligned", False)
                                  or file_cfg.get("allow_nonaligned", False)),
        )
    except ConfigError:
        raise
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.n < 2:
        raise ConfigError("n must be at least 2")
    if len(cfg.coloring) != cfg.slope.ell:
        raise ConfigError(
            f"coloring has {len(cfg.coloring)} entries but the slope datum has "
            f"{cfg.slope.ell} components"
        )
    if any(not 0 <= c < cfg.n for c in cfg.coloring):
        raise ConfigError(f"coloring residues must lie in 0..{cfg.n - 1}")
    if cfg.max_boxes < 0:
        raise ConfigError("max-boxes must be non-negative")
    if cfg.fmt not in ("json", "dot", "text"):
        raise ConfigError(f"unknown format {cfg.fmt!r}")
    return cfg


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _report(command: str, status: str, witness=None, counts=None, output=None) -> None:
    report = {"command": command, "status": status, "witness": witness, "counts": counts or {}}
    _emit(json.dumps(report, sort_keys=True) + "\n", output)


def _perturbed(slope: SlopeDatum) -> SlopeDatum:
    # integral PLAIN data drive operators through the ROW tie-break
    return slope.with_mode(Mode.ROW) if slope.mode is Mode.PLAIN else slope


def cmd_generate(args) -> int:
    cfg = build_config(args)
    try:
        g = generate(_perturbed(cfg.slope), cfg.n, cfg.coloring, cfg.max_boxes,
                     allow_nonaligned=cfg.allow_nonaligned)
    except NonAlignedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    render = {"json": crystal.export_json, "dot": crystal.export_dot, "text": crystal.export_text}
    _emit(render[cfg.fmt](g), cfg.output)
    return EXIT_OK


def _load_mp(args) -> MultiPartition:
    if args.mp_json is not None:
        text = args.mp_json
    elif args.mp == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.mp).read_text()
    return MultiPartition.from_json(text)


def cmd_check_regular(args) -> int:
    try:
        mp = _load_mp(args)
        if args.n is None:
            args.n = mp.n
        if args.coloring is None:
            args.coloring = list(mp.coloring)
        cfg = build_config(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if (mp.n, mp.coloring) != (cfg.n, cfg.coloring):
        print("error: multi-partition does not match --n/--coloring", file=sys.stderr)
        return EXIT_USAGE
    if mp.ell != cfg.slope.ell:
        print("error: multi-partition and slope datum have different component counts",
              file=sys.stderr)
        return EXIT_USAGE
    xi = _perturbed(cfg.slope)
    illegal = illegal_triples(xi, mp)
    half_dim = len(hook_triples(mp))
    try:
        attracting = attracting_dimension(xi, mp)
    except ZeroEigenvalueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    regular = not illegal
    oracle_agrees = (attracting == half_dim) == regular and attracting == half_dim - len(illegal)
    _report(
        "check-regular",
        "regular" if regular else "not-regular",
        witness=[[list(t.b), t.k, t.k2] for t in illegal] or None,
        counts={
            "illegal_triples": len(illegal),
            "half_dimension": half_dim,
            "attracting_dimension": attracting,
            "oracle_agrees": oracle_agrees,
        },
        output=cfg.output,
    )
    if not oracle_agrees:
        print("error: tangent oracle disagrees with the illegal-triple test", file=sys.stderr)
        return EXIT_FALSE
    return EXIT_OK if regular else EXIT_FALSE


def cmd_apply(args) -> int:
    cfg = build_config(args)
    try:
        start = (MultiPartition.from_json(Path(args.start).read_text()) if args.start
                 else MultiPartition.empty(cfg.n, cfg.coloring))
        result = crystal.apply_word(_perturbed(cfg.slope), start, args.word)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(("0" if result is None else result.key) + "\n", cfg.output)
    return EXIT_OK


def cmd_iso(args) -> int:
    cfg1 = build_config(args, "slope")
    cfg2 = build_config(args, "slope_other")
    try:
        g1 = generate(_perturbed(cfg1.slope), cfg1.n, cfg1.coloring, cfg1.max_boxes,
                      allow_nonaligned=cfg1.allow_nonaligned)
        g2 = generate(_perturbed(cfg2.slope), cfg2.n, cfg2.coloring, cfg2.max_boxes,
                      allow_nonaligned=cfg2.allow_nonaligned)
    except NonAlignedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    witness = parallel_iso_check(g1, g2)
    same_weights = weight_multiplicities(g1) == weight_multiplicities(g2)
    ok = witness is None and same_weights
    _report(
        "iso",
        "isomorphic" if ok else "mismatch",
        witness=None if witness is None else witness.to_dict(),
        counts={"vertices": [len(g1), len(g2)], "edges": [len(g1.edges), len(g2.edges)],
                "same_weight_multiplicities": same_weights},
        output=cfg1.output,
    )
    return EXIT_OK if ok else EXIT_FALSE


def cmd_psi(args) -> int:
    cfg = build_config(args)
    if not cfg.slope.is_integral():
        print("error: psi needs an integral slope datum", file=sys.stderr)
        return EXIT_USAGE
    xi = cfg.slope.with_mode(Mode.ROW)
    try:
        g = generate(xi, cfg.n, cfg.coloring, cfg.max_boxes,
                     allow_nonaligned=cfg.allow_nonaligned)
    except NonAlignedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    c = constants_from_slope(xi, cfg.n)
    witness = verify_psi_commutes(xi, c, g)
    iso_problem = check_psi_isomorphism(xi, c, g)
    ok = witness is None and iso_problem is None
    _report(
        "psi",
        "commutes" if ok else "failure",
        witness=(witness.to_dict() if witness is not None else iso_problem),
        counts={"vertices": len(g), "edges": len(g.edges), "K": c.K,
                "psi_empty": psi(xi, g.root).to_dict()},
        output=cfg.output,
    )
    return EXIT_OK if ok else EXIT_FALSE


def cmd_verify(args) -> int:
    cfg = build_config(args)
    if args.size < 0:
        raise ConfigError("size must be non-negative")
    xi = _perturbed(cfg.slope)
    if not is_aligned(xi):
        print("error: verify needs an aligned datum", file=sys.stderr)
        return EXIT_REFUSED
    size = args.size
    g = generate(xi, cfg.n, cfg.coloring, size)
    generated = g.vertex_keys()
    regular, oracle_failures, checked = set(), [], 0
    for mp in multipartitions_up_to(cfg.n, cfg.coloring, size):
        checked += 1
        illegal = illegal_triples(xi, mp)
        if not illegal:
            regular.add(mp.key)
        half = len(hook_triples(mp))
        att = attracting_dimension(xi, mp)
        if att != half - len(illegal) or (att == half) != (not illegal):
            oracle_failures.append(mp.key)
    only_generated = sorted(generated - regular)
    only_regular = sorted(regular - generated)
    ok = not only_generated and not only_regular and not oracle_failures
    witness = None
    if not ok:
        witness = {"generated_not_regular": only_generated[:5],
                   "regular_not_generated": only_regular[:5],
                   "tangent_oracle_failures": oracle_failures[:5]}
    _report(
        "verify",
        "ok" if ok else "failure",
        witness=witness,
        counts={"multipartitions": checked, "regular": len(regular), "generated": len(generated),
                "weight_spaces": len({content(v) for v in g.vertices})},
        output=cfg.output,
    )
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopecrystal",
        description="Slope-datum crystals on colored multi-partitions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, boxes: bool = True) -> None:
        p.add_argument("--config", help="JSON config file; flags override its keys")
        p.add_argument("--n", type=int, help="modulus n >= 2")
        p.add_argument("--coloring", help="residues p(1..l), comma or space separated")
        p.add_argument("--slope", help="slope datum JSON (inline or a file path)")
        if boxes:
            p.add_argument("--max-boxes", type=int, dest="max_boxes")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--allow-nonaligned", action="store_true")

    p = sub.add_parser("generate", help="generate the crystal graph up to a box bound")
    common(p)
    p.add_argument("--format", choices=["json", "dot", "text"])
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check-regular", help="illegal triples and the tangent-weight cross-check")
    common(p, boxes=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--mp", help="multi-partition JSON file ('-' for stdin)")
    src.add_argument("--mp-json", help="multi-partition JSON given inline")
    p.set_defaults(func=cmd_check_regular)

    p = sub.add_parser("apply", help="apply a word of f<r>/e<r> operators")
    common(p, boxes=False)
    p.add_argument("--word", required=True, help="e.g. 'f0 f1 e1'; leftmost acts first")
    p.add_argument("--start", help="multi-partition JSON file to start from (default: empty)")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("iso", help="compare two realizations by simultaneous BFS")
    common(p)
    p.add_argument("--slope-other", dest="slope_other", help="second slope datum JSON")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("psi", help="verify that Psi commutes with the crystal operators")
    common(p)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("verify", help="exhaustive generated == regular check up to a size")
    common(p, boxes=False)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
