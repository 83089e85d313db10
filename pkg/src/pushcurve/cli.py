"""Command-line front end.

Subcommands ``group``, ``push`` and ``distance`` print one JSON report (sorted
keys, UTF-8, newline-terminated) and exit with 0 ok, 2 usage or validation
failure, 3 failed hypothesis, 4 resource cap, 5 oracle disagreement.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from . import geom
from .curves import CurveClass, exact_simple
from .geom import PrecisionExhausted
from .group import GroupWord, Kind, ResourceCapExceeded, build_group
from .pushing import (
    NoPathAtCap,
    NotFillingError,
    SearchExhausted,
    bfs_distance,
    build_level_frame,
    certify_path,
    exact_distance_remark,
    frame_report,
    level_of,
    lower_bound_theorem,
    make_push_map,
    orbit_vertex,
    select_base_vertex,
    upper_bound_walk,
    upper_chain,
)
from .regions import MismatchedHypothesis, VertexS, Witness, configuration, region_of

FIXTURE_WORD = "a1 a2 b1 b2"

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_CAPS, EXIT_DISAGREE = 0, 2, 3, 4, 5


@dataclass
class RunConfig:
    genus: int = 2
    kind: str = "closed"
    word: str = FIXTURE_WORD
    mode: str = "i1"
    m: int = 5
    lift_depth: int = 4
    order_depth: int = 2
    word_cap: int = 4
    bfs_cap: int = 3
    precision_bits: int = geom.PRECISION_CAP
    seed: int = 0

    def validate(self):
        for name in ("lift_depth", "order_depth", "word_cap", "bfs_cap"):
            if getattr(self, name) <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.precision_bits < geom.START_BITS:
            raise UsageError(f"--precision-bits must be at least {geom.START_BITS}")
        if self.genus < 2:
            raise UsageError("genus must be at least 2")


class UsageError(ValueError):
    pass


class Disagreement(RuntimeError):
    pass


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _parse_word(text: str) -> GroupWord:
    try:
        return GroupWord.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from e


# --- group ---------------------------------------------------------------------


def cmd_group(cfg: RunConfig) -> dict:
    grp = build_group(cfg.genus, Kind(cfg.kind))
    rel = GroupWord(grp.relator)

    @geom.escalating
    def check():
        m = grp.matrix(rel)
        if grp.kind is Kind.Closed:
            ok = geom.contains_identity(m)
            rel_kind = "identity" if ok else "not-identity"
        else:
            rel_kind = geom.classify(m).name
            ok = rel_kind == "Parabolic"
        gens = []
        for letter in sorted(grp.gens, key=lambda x: (abs(x), x < 0)):
            g = GroupWord((letter,))
            k = geom.classify(grp.matrix(g))
            gens.append({"letter": str(g), "kind": k.name})
        return ok, rel_kind, gens

    ok, rel_kind, gens = check()
    ok = ok and all(g["kind"] == "Hyperbolic" for g in gens)
    return {
        "operation": "group",
        "genus": cfg.genus,
        "kind": cfg.kind,
        "relator": str(rel),
        "relator_class": rel_kind,
        "generators": gens,
        "verdict": "pass" if ok else "fail",
        "precision_bits": geom.last_certified_bits(),
    }


# --- push ------------------------------------------------------------------------


def _setup(cfg: RunConfig):
    if cfg.kind != "closed":
        raise UsageError("push maps are built from words in the closed group")
    grp = build_group(cfg.genus, Kind.Closed)
    w = _parse_word(cfg.word)
    pm = make_push_map(w, grp, cap=cfg.word_cap)
    base = select_base_vertex(pm, cfg.mode, cap=cfg.word_cap)
    return grp, pm, base


def cmd_push(cfg: RunConfig, render_path: Optional[str] = None) -> dict:
    grp, pm, base = _setup(cfg)
    m = cfg.m
    if m == 0:
        raise UsageError("--m must be nonzero")
    push = pm if m > 0 else pm.inverse()
    mm = abs(m)
    frame = build_level_frame(push, base, mm)
    orbit = [orbit_vertex(push, base.vertex, j) for j in range(mm + 1)]
    levels = [{"j": j, **level_of(configuration(v.region, order_depth=cfg.order_depth), frame)}
              for j, v in enumerate(orbit)]
    report = {
        "operation": "push",
        "config": asdict(cfg),
        "push_word": str(pm.g),
        "filling": {"cap": pm.certificate.cap, "checked": len(pm.certificate.checked),
                    "bounded": pm.certificate.bounded},
        "base_curve": str(base.vertex.curve.root),
        "intersection": base.intersection,
        "frame": frame_report(frame).as_dict(),
        "levels": levels,
    }
    if base.intersection == 1:
        ex = exact_distance_remark(push, base, mm)
        report["exact_distance"] = ex.as_dict()
        report["upper_walk"] = upper_bound_walk(push, base).as_dict()
        if mm >= 3:
            cert = certify_path(orbit, push, frame)
            report["certificate"] = {"type": type(cert).__name__, **asdict(cert)}
        report["verdict"] = ex.verdict
    else:
        if mm >= 3:
            lb = lower_bound_theorem(pm, base, m)
            report["lower_bound"] = lb.as_dict()
            verdict = lb.verdict
        else:
            verdict = "pass"
        uc = upper_chain(push, base, mm)
        report["upper_chain"] = uc.as_dict()
        report["verdict"] = verdict if uc.ok else "fail"
    report["precision_bits"] = geom.last_certified_bits()
    if render_path:
        from .render import render_push

        svg = render_push(push, frame, [v.region for v in orbit], title=f"push {pm.g} m={m}")
        with open(render_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
        report["render"] = {"paths": svg.count("<path")}
    return report


# --- distance -----------------------------------------------------------------------


def parse_vertex(text: str, pm, grp) -> VertexS:
    """``CURVE@J``: region of CURVE containing g^J p; ``CURVE@O:WORD``: containing WORD.O."""
    if "@" not in text:
        raise UsageError(f"vertex {text!r} needs the form CURVE@J or CURVE@O:WORD")
    cw, where = text.split("@", 1)
    c = CurveClass(_parse_word(cw), grp)
    if not exact_simple(c):
        raise UsageError(f"{cw} is not simple")
    if where.startswith("O:"):
        wit = Witness(_parse_word(where[2:]), grp.basepoint_value, "O")
    else:
        try:
            j = int(where)
        except ValueError as e:
            raise UsageError(f"bad vertex location {where!r}") from e
        wit = pm.witness(j)
    return VertexS(region_of(c, wit))


def cmd_distance(cfg: RunConfig, v_text: Optional[str], w_text: Optional[str]) -> dict:
    grp, pm, base = _setup(cfg)
    if v_text is None:
        v = base.vertex
    else:
        v = parse_vertex(v_text, pm, grp)
    if w_text is None:
        w = orbit_vertex(pm, base.vertex, cfg.m)
    else:
        w = parse_vertex(w_text, pm, grp)
    extra = [pm.witness(j) for j in range(min(0, cfg.m), max(0, cfg.m) + 1)]
    report = {"operation": "distance", "config": asdict(cfg),
              "v": v.region.serialize(), "w": w.region.serialize()}
    try:
        res = bfs_distance(v, w, cap=cfg.bfs_cap, extra_witnesses=extra, max_depth=max(6, abs(cfg.m) + 2))
        report["bfs"] = {"distance": res.distance, "path": [x.region.serialize() for x in res.path],
                         "vertices": res.vertices, "curves": res.curves}
        report["verdict"] = "pass"
    except NoPathAtCap as e:
        report["bfs"] = {"distance": None, "reason": str(e)}
        report["verdict"] = f"unknown <= cap {cfg.bfs_cap}"
        res = None
    # theorem bounds when the pair is u0, u_m of the selected base vertex
    orbit_pair = v == base.vertex and w == orbit_vertex(pm, base.vertex, cfg.m)
    if orbit_pair and abs(cfg.m) >= 1:
        bounds = {}
        if base.intersection == 1:
            push = pm if cfg.m > 0 else pm.inverse()
            ex = exact_distance_remark(push, base, abs(cfg.m))
            if ex.ok:
                bounds = {"lower": abs(cfg.m), "upper": abs(cfg.m), "source": "exact-distance"}
        elif abs(cfg.m) >= 3:
            lb = lower_bound_theorem(pm, base, cfg.m)
            if lb.ok:
                bounds = {"lower": abs(cfg.m), "source": "lower-bound"}
        report["bounds"] = bounds
        if res is not None and bounds:
            if res.distance < bounds["lower"] or ("upper" in bounds and res.distance > bounds["upper"]):
                report["verdict"] = "disagreement"
                report["precision_bits"] = geom.last_certified_bits()
                raise Disagreement(dumps(report))
    report["precision_bits"] = geom.last_certified_bits()
    return report


# --- entry ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, default=2)
    common.add_argument("--kind", choices=["closed", "punctured"], default="closed")
    common.add_argument("--word", default=FIXTURE_WORD, help="push word, e.g. 'a1 a2 b1 b2'")
    common.add_argument("--mode", choices=["i1", "i2"], default="i1")
    common.add_argument("--m", type=int, default=5)
    common.add_argument("--lift-depth", type=int, default=4)
    common.add_argument("--order-depth", type=int, default=2)
    common.add_argument("--word-cap", type=int, default=4)
    common.add_argument("--bfs-cap", type=int, default=3)
    common.add_argument("--precision-bits", type=int, default=geom.PRECISION_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--render", metavar="PATH")
    common.add_argument("--json", metavar="PATH")
    p = argparse.ArgumentParser(prog="pushcurve", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="build and validate a surface group")
    sub.add_parser("push", parents=[common], help="push-map orbit, level frame and bounds")
    d = sub.add_parser("distance", parents=[common], help="bounded search distance between vertices")
    d.add_argument("--v", help="vertex CURVE@J or CURVE@O:WORD (default: base vertex)")
    d.add_argument("--w", help="vertex CURVE@J or CURVE@O:WORD (default: m-th orbit vertex)")
    return p


def _config(args) -> RunConfig:
    cfg = RunConfig(args.genus, args.kind, args.word, args.mode, args.m, args.lift_depth,
                    args.order_depth, args.word_cap, args.bfs_cap, args.precision_bits, args.seed)
    cfg.validate()
    return cfg


def _emit(report: dict, path: Optional[str]):
    text = dumps(report)
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        geom.set_precision_cap(cfg.precision_bits)
        if args.command == "group":
            report = cmd_group(cfg)
            _emit(report, args.json)
            return EXIT_OK if report["verdict"] == "pass" else EXIT_USAGE
        if args.command == "push":
            report = cmd_push(cfg, args.render)
            _emit(report, args.json)
            return EXIT_OK if report["verdict"] == "pass" else EXIT_HYPOTHESIS
        report = cmd_distance(cfg, args.v, args.w)
        _emit(report, args.json)
        return EXIT_OK
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NotFillingError, MismatchedHypothesis) as e:
        print(f"hypothesis failure: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (PrecisionExhausted, SearchExhausted, ResourceCapExceeded) as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAPS
    except Disagreement as e:
        sys.stdout.write(str(e))
        print("oracle disagreement", file=sys.stderr)
        return EXIT_DISAGREE
    finally:
        geom.set_precision_cap(geom.PRECISION_CAP)


if __name__ == "__main__":
    sys.exit(main())
