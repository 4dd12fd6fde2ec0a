"""Command-line entry point: ``sumdilates <command> [options]``.

Exit codes: 0 success, 1 computational refusal (cap, inconclusive, failed check), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__

CACHE_ENV = "SUMDILATES_CACHE"


class InputError(ValueError):
    pass


class Refusal(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _config(args) -> dict:
    cfg = _load_json(args.config) if getattr(args, "config", None) else {}
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    return cfg


def _pick(args, cfg: dict, name: str, default=None, cfg_name: str | None = None):
    val = getattr(args, name, None)
    if val is not None:
        return val
    return cfg.get(cfg_name or name, default)


def _int_list(text) -> list[int]:
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        return [int(x) for x in str(text).replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"expected a list of integers, got {text!r}") from exc


def _system(args, cfg):
    from .numfield import DilateSystem, default_basis

    field = _pick(args, cfg, "field")
    dilates = _pick(args, cfg, "dilate", cfg_name="dilates")
    if not field or not dilates:
        raise InputError("need --field and at least one --dilate")
    if isinstance(dilates, str):
        dilates = [dilates]
    sys_ = DilateSystem.parse(field, list(dilates))
    basis = default_basis(sys_.field, _pick(args, cfg, "basis"))
    return sys_, basis


def _emit(args, result: dict, table: Sequence[dict] | None = None, lines: Sequence[str] | None = None) -> None:
    out = sys.stdout
    for line in lines if lines is not None else _human(result):
        out.write(line + "\n")
    if getattr(args, "json", None):
        Path(args.json).write_text(_dump(result))
    if getattr(args, "csv", None) and table:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(table[0].keys()), lineterminator="\n")
        w.writeheader()
        for row in table:
            w.writerow(row)
        Path(args.csv).write_text(buf.getvalue())
    if getattr(args, "jsonl", None) and table:
        with open(args.jsonl, "a") as fh:
            for row in table:
                fh.write(json.dumps(row, sort_keys=True) + "\n")


def _human(result: dict) -> list[str]:
    width = max((len(k) for k in result), default=0)
    out = []
    for k in sorted(result):
        v = result[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, default=str)
            if len(v) > 200:
                v = v[:197] + "..."
        out.append(f"{k:<{width}}  {v}")
    return out


def _lattice_cols(lat) -> list[list[int]]:
    return [list(c) for c in lat.basis]


def _ideal_json(I) -> dict:
    return {"denominator": I.denominator, "lattice": _lattice_cols(I.lattice), "norm": str(I.norm())}


# ---------------------------------------------------------------------------
# commands


def cmd_hconst(args) -> int:
    from .dilate_const import h_constant

    cfg = _config(args)
    sys_, _ = _system(args, cfg)
    width = float(_pick(args, cfg, "width", 1e-10))
    key = hashlib.sha256(json.dumps([str(sys_.field), [str(x) for x in sys_.dilates], width]).encode()).hexdigest()[:24]
    cache_dir = os.environ.get(CACHE_ENV)
    cached = Path(cache_dir) / f"hconst-{key}.json" if cache_dir else None
    if cached is not None and cached.exists():
        result = json.loads(cached.read_text())
    else:
        res = h_constant(sys_, width)
        result = {"field": str(sys_.field), "dilates": [str(x) for x in sys_.dilates]}
        result.update(res.to_json())
        result["h_lo_exact"] = str(res.h.lo)
        result["h_hi_exact"] = str(res.h.hi)
        if cached is not None:
            cached.parent.mkdir(parents=True, exist_ok=True)
            cached.write_text(_dump(result))
    lines = [
        f"field        {result['field']}",
        f"dilates      {', '.join(result['dilates'])}",
        f"N(D)         {result['ideal_norm_factor']}",
        f"H in         [{result['h_lo']:.12f}, {result['h_hi']:.12f}]",
    ]
    if "h_exact" in result:
        lines.append(f"H exact      {result['h_exact']}")
    _emit(args, result, [result], lines)
    return 0


def _matrices(args, cfg) -> list:
    src = _pick(args, cfg, "mats", cfg_name="matrices")
    if src is None:
        raise InputError("need --mats (JSON file or inline JSON list of matrices)")
    if isinstance(src, str):
        data = json.loads(src) if src.lstrip().startswith("[") else _load_json(src)
    else:
        data = src
    if isinstance(data, dict):
        data = data.get("matrices")
    if not isinstance(data, list) or not data:
        raise InputError("matrices must be a non-empty list")
    return data


def cmd_analyze(args) -> int:
    from .matrix_analysis import MatrixFamily, analyze

    cfg = _config(args)
    fam = MatrixFamily.of(_matrices(args, cfg))
    rep = analyze(fam, float(_pick(args, cfg, "width", 1e-10)), args.seed)
    result = rep.to_json()
    _emit(args, result)
    return 0 if rep.irreducible.decision.value != "inconclusive" else 1


def _points(path: str, dim: int | None = None):
    from .sumset_engine import PointSet

    try:
        text = Path(path).read_text()
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    try:
        return PointSet.from_lines(text, dim)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_sumset(args) -> int:
    from .sumset_engine import linear_sumset

    cfg = _config(args)
    files = args.points or cfg.get("points_files") or []
    if isinstance(files, str):
        files = [files]
    if not files:
        raise InputError("need --points FILE (one integer vector per line)")
    sets = [_points(f) for f in files]
    if args.field or "field" in cfg:
        from .numfield import dilate_matrices

        sys_, basis = _system(args, cfg)
        _, mats = dilate_matrices(sys_, basis)
    else:
        mats = _matrices(args, cfg)
    if len(sets) == 1:
        sets = sets * len(mats)
    if len(sets) != len(mats):
        raise InputError("give one point file, or one per matrix")
    cap = int(_pick(args, cfg, "cap", 10**8))
    S = linear_sumset(sets, mats, cap)
    result = {"sizes": [len(s) for s in sets], "size_sum": len(S), "ratio": str(Fraction(len(S), len(sets[0]))), "ratio_float": len(S) / len(sets[0])}
    if args.out:
        Path(args.out).write_text(S.to_lines())
        result["out"] = args.out
    _emit(args, result, [{"size_a": len(sets[0]), "size_sum": len(S), "ratio": result["ratio_float"]}])
    return 0


def cmd_extremal(args) -> int:
    from .sumset_engine import ratio_experiment

    cfg = _config(args)
    sys_, basis = _system(args, cfg)
    schedule = _int_list(_pick(args, cfg, "schedule", "10,20,40"))
    cap = int(_pick(args, cfg, "cap", 10**8))
    rows = [r.to_json() for r in ratio_experiment(sys_, basis, schedule, cap=cap)]
    result = {"field": str(sys_.field), "dilates": [str(x) for x in sys_.dilates], "rows": rows}
    lines = [f"{'n':>5} {'|A|':>9} {'|sum|':>11} {'ratio':>12} {'H_lo':>12} {'margin':>7}"]
    for r in rows:
        lines.append(f"{r['n']:>5} {r['size_a']:>9} {r['size_sum']:>11} {r['ratio']:>12.6f} {r['h_lo']:>12.6f} {r['margin']:>7}")
    if args.out and rows:
        from .sumset_engine import extremal_set

        Path(args.out).write_text(extremal_set(sys_, basis, schedule[-1]).to_lines())
    _emit(args, result, rows, lines)
    return 0


def _periodic(cfg: dict, key_period="period", key_res="residues"):
    from .lattice_density import PeriodicSet

    if key_period not in cfg or key_res not in cfg:
        raise InputError(f"config needs '{key_period}' and '{key_res}'")
    return PeriodicSet.of(cfg[key_period], cfg[key_res])


def _flag(entries):
    from .exactalg.lattice import hnf
    from .lattice_density import Flag

    if not isinstance(entries, list) or not entries:
        raise InputError("flag must be a list of lattices (each an integer or a list of basis columns)")
    return Flag.of([hnf([[x]]) if isinstance(x, int) else hnf(x) for x in entries])


def cmd_ld(args) -> int:
    from .lattice_density import lattice_density, ld_contains, ld_witness

    cfg = _config(args)
    if not cfg:
        raise InputError("ld needs --config with period, residues and flag")
    A = _periodic(cfg)
    F = _flag(cfg.get("flag"))
    body = lattice_density(A, F)
    result = body.to_json()
    if "point" in cfg:
        pt = tuple(Fraction(str(x)) for x in cfg["point"])
        result["point"] = [str(x) for x in pt]
        result["contains"] = ld_contains(A, F, pt)
        if result["contains"] and F.k >= 2:
            result["witness"] = ld_witness(A, F, pt)
    _emit(args, result)
    return 0


def cmd_flags(args) -> int:
    from .lattice_density import flags_from_ideals

    cfg = _config(args)
    sys_, basis = _system(args, cfg)
    n = _int_list(_pick(args, cfg, "n"))
    if len(n) != sys_.k:
        raise InputError(f"--n needs {sys_.k} entries")
    fl = flags_from_ideals(sys_, basis, n)
    result = {
        "field": str(sys_.field),
        "dilates": [str(x) for x in sys_.dilates],
        "n": n,
        "F": [_lattice_cols(L) for L in fl.F.lattices],
        "G": [_lattice_cols(L) for L in fl.G.lattices],
        "a": [_ideal_json(I) for I in fl.a],
        "b": [_ideal_json(I) for I in fl.b],
        "c": [_ideal_json(I) for I in fl.c],
        "dilate_matrices": [list(map(list, m)) for m in fl.dilate_matrices],
    }
    _emit(args, result)
    return 0


def cmd_regularize(args) -> int:
    from .lattice_density import check_decomposition, flags_from_ideals, regular_decomposition

    cfg = _config(args)
    if args.points:
        pts = sorted(_points(args.points[0]).points)
    elif "points" in cfg:
        pts = [tuple(p) if isinstance(p, list) else (p,) for p in cfg["points"]]
    else:
        raise InputError("need points (config key 'points' or --points FILE)")
    sys_, basis = _system(args, cfg)
    N = int(_pick(args, cfg, "N", 0))
    M = int(_pick(args, cfg, "M", 2))
    delta = Fraction(str(_pick(args, cfg, "delta", "1/5")))
    level = int(cfg.get("l", 1))
    tail = _int_list(cfg.get("n_tail", []))
    if N <= 0:
        raise InputError("need N > 0")
    family = lambda nv: flags_from_ideals(sys_, basis, nv).F
    res = regular_decomposition(pts, N, family, M, delta, level, tail, r_max=cfg.get("r_max"))
    keep, regular = check_decomposition(res, pts, family, M, delta, level, tail)
    result = res.to_json()
    result.update({"size": len(pts), "retention_check": keep, "regularity_check": regular})
    _emit(args, result)
    return 0 if keep and regular else 1


def cmd_verify_cts(args) -> int:
    from .symmetrize import Block, EigenStructure, rasterize, verify_cts_bound

    cfg = _config(args)
    if "shape" not in cfg or "blocks" not in cfg:
        raise InputError("verify-cts needs a config with 'shape' and 'blocks'")
    h = Fraction(str(cfg.get("h", "1/64")))
    blocks = []
    for b in cfg["blocks"]:
        blocks.append(Block(int(b.get("dim", 1)), tuple(float(x) for x in b["scales"]), tuple(float(x) for x in b.get("angles", ()))))
    E = EigenStructure(tuple(blocks))
    A = rasterize(cfg["shape"], h)
    rep = verify_cts_bound(A, E)
    result = rep.to_json()
    result["verdict"] = "PASS" if rep.passed else "FAIL"
    if "expected" in cfg:
        result["relative_to_expected"] = rep.measured / float(cfg["expected"]) - 1
    _emit(args, result)
    return 0 if rep.passed else 1


def cmd_bench(args) -> int:
    from .numfield import DilateSystem, quadratic_basis
    from .sumset_engine import PointSet, extremal_set, field_sumset_coords, linear_sumset, naive_linear_sumset

    rows = []
    sys_ = DilateSystem.parse("t^2-2", ["t"])
    basis = quadratic_basis(2)
    for n in _int_list(args.schedule or "10,20,40,80"):
        t0 = time.perf_counter()
        pts = extremal_set(sys_, basis, n)
        t1 = time.perf_counter()
        size = field_sumset_coords(pts, sys_, basis)
        t2 = time.perf_counter()
        rows.append({"task": "extremal sqrt2", "n": n, "size_a": len(pts), "size_sum": size, "build_s": round(t1 - t0, 4), "sum_s": round(t2 - t1, 4)})
    A = PointSet.of([[x, y] for x in range(8) for y in range(8) if (x * y) % 7 != 3])
    mats = [[[1, 0], [0, 1]], [[0, 2], [1, 0]], [[3, 1], [1, -1]]]
    t0 = time.perf_counter()
    fast = linear_sumset([A] * 3, mats)
    t1 = time.perf_counter()
    slow = naive_linear_sumset([A] * 3, mats)
    t2 = time.perf_counter()
    rows.append({"task": "linear vs naive", "n": len(A), "size_a": len(A), "size_sum": len(fast), "build_s": round(t1 - t0, 4), "sum_s": round(t2 - t1, 4)})
    if fast.points != slow.points:
        raise Refusal("engine and naive sumset disagree")
    result = {"rows": rows}
    lines = [f"{r['task']:<16} n={r['n']:<6} |A|={r['size_a']:<7} |sum|={r['size_sum']:<9} t1={r['build_s']:<8} t2={r['sum_s']}" for r in rows]
    _emit(args, result, rows, lines)
    return 0


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    only = set(_int_list(args.only)) if args.only else None
    outcomes = run_all(only)
    lines = [o.line() for o in outcomes]
    result = {"criteria": [{"number": o.number, "title": o.title, "passed": o.passed, "details": o.details} for o in outcomes]}
    result["all_passed"] = all(o.passed for o in outcomes)
    lines.append("ALL PASS" if result["all_passed"] else "SOME FAILED")
    _emit(args, result, None, lines)
    return 0 if result["all_passed"] else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; command-line flags override its keys")
    common.add_argument("--json", metavar="PATH", help="write the full result as JSON")
    common.add_argument("--csv", metavar="PATH", help="write the result table as CSV")
    common.add_argument("--jsonl", metavar="PATH", help="append result rows as JSON lines")
    common.add_argument("--seed", type=int, default=20240601, help="seed for randomized procedures")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads (results do not depend on it)")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--field", help="defining polynomial in t, e.g. t^2-2 (use t for Q)")
    field.add_argument("--dilate", action="append", help="dilate as a polynomial in t; repeat for several")
    field.add_argument("--basis", action="append", help="integral basis element; repeat d times to override the default")

    p = argparse.ArgumentParser(prog="sumdilates", description="Sums of algebraic dilates: constants, sumsets, lattice densities.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hconst", parents=[common, field], help="certified sharp constant of a dilate system")
    s.add_argument("--width", type=float, help="target interval width (default 1e-10)")
    s.set_defaults(func=cmd_hconst)

    s = sub.add_parser("analyze", parents=[common], help="analyze an integer matrix family")
    s.add_argument("--mats", help="JSON file or inline JSON list of matrices (rows)")
    s.add_argument("--width", type=float)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sumset", parents=[common, field], help="exact linear sumset of point sets")
    s.add_argument("--points", action="append", help="point file, one integer vector per line; repeat per set")
    s.add_argument("--mats", help="JSON file or inline JSON list of matrices")
    s.add_argument("--cap", type=int)
    s.add_argument("--out", help="write the sumset points here")
    s.set_defaults(func=cmd_sumset)

    s = sub.add_parser("extremal", parents=[common, field], help="ratio table for the extremal sets")
    s.add_argument("--schedule", help="comma-separated n values (default 10,20,40)")
    s.add_argument("--cap", type=int)
    s.add_argument("--out", help="write the largest extremal set here")
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("ld", parents=[common], help="lattice density of a periodic set over a flag")
    s.set_defaults(func=cmd_ld)

    s = sub.add_parser("flags", parents=[common, field], help="ideal flag pair for an n-vector")
    s.add_argument("--n", help="comma-separated n-vector, one entry per dilate")
    s.set_defaults(func=cmd_flags)

    s = sub.add_parser("regularize", parents=[common, field], help="regular cube decomposition of a dense set")
    s.add_argument("--points", action="append", help="point file")
    s.add_argument("--N", type=int)
    s.add_argument("--M", type=int)
    s.add_argument("--delta")
    s.set_defaults(func=cmd_regularize)

    s = sub.add_parser("verify-cts", parents=[common], help="continuous bound on a voxel grid")
    s.set_defaults(func=cmd_verify_cts)

    s = sub.add_parser("bench", parents=[common], help="timing of the sumset engine")
    s.add_argument("--schedule", help="n values for the extremal benchmark")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    from .embeddings import EmbeddingError, PrecisionError
    from .exactalg.lattice import CapExceeded
    from .lattice_density import RegularityError, TilingError
    from .matrix_analysis import RefusalError
    from .numfield import FieldError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, FieldError, EmbeddingError, TilingError, KeyError, TypeError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (Refusal, RefusalError, CapExceeded, PrecisionError, RegularityError, MemoryError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
