"""Command line driver: boundedness, essential norm, witnesses, report files.

    lipwco --config op.json --json-out report.json --curves-dir curves/
    lipwco --dump-gtable 3

Exit status is 0 for any completed analysis (an "unbounded" verdict is a
result), 1 for configuration problems and 2 for evaluation failures.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from .criteria import OperatorSpec, UNBOUNDED, check_boundedness
from .disksup import DiskGrid, default_deltas
from .essnorm import (OperatorField, continuous_essnorm, discrete_essnorm,
                      witness_lower_bound)
from .expr import EvaluationError, from_json, poly
from .gcoeff import build_table
from .jets import JetError
from .oracle import defining_identity_check, fd_derivatives
from .weights import SpaceParam

log = logging.getLogger("lipwco")

ORACLE_TOL = 1e-6


class ConfigError(ValueError):
    pass


def _num(x):
    x = float(x)
    if math.isinf(x):
        return "inf"
    if math.isnan(x):
        return None
    return x


def load_config(path: str | None, overrides: argparse.Namespace | None = None) -> dict:
    cfg: dict = {}
    if path:
        try:
            cfg = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if overrides is not None:
        for key in ("alpha", "beta", "n_max"):
            val = getattr(overrides, key, None)
            if val is not None:
                cfg[key] = val
        if getattr(overrides, "grid_k", None) is not None:
            cfg.setdefault("grid", {})["K"] = overrides.grid_k
    for key in ("alpha", "beta", "g", "phi"):
        if key not in cfg:
            raise ConfigError(f"config is missing {key!r}")
    return cfg


def build_operator(cfg: dict) -> tuple[OperatorSpec, DiskGrid]:
    try:
        g = from_json(cfg["g"])
        phi = from_json(cfg["phi"])
        params = SpaceParam(float(cfg["alpha"]), float(cfg["beta"]))
        gcfg = cfg.get("grid", {})
        grid = DiskGrid(K=int(gcfg.get("K", 12)), angular_base=int(gcfg.get("angular_base", 64)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return OperatorSpec(g, phi, params, cfg.get("name", "")), grid


def run_oracles(op: OperatorSpec) -> dict:
    """Jets of g and phi against contour differences; the defining identity on random data."""
    rng = np.random.default_rng(20240101)
    pts = 0.6 * np.sqrt(rng.random(4)) * np.exp(2j * np.pi * rng.random(4))
    worst_fd = 0.0
    k = min(4, op.params.J + 1)
    for z in pts:
        for expr in (op.g, op.phi):
            ref = fd_derivatives(expr, z, k)
            got = expr.jet(complex(z), k).derivatives()
            worst_fd = max(worst_fd, float(np.max(np.abs(ref - got) / np.maximum(1.0, np.abs(ref)))))
    f = poly(rng.normal(size=9) + 1j * rng.normal(size=9))
    worst_id = max(defining_identity_check(op.g, op.phi, f, op.params.J, z) for z in pts)
    return {"jet_vs_contour": worst_fd, "defining_identity": worst_id,
            "ok": bool(worst_fd <= ORACLE_TOL and worst_id <= 1e-10)}


def _write_curves(directory: Path, grid: DiskGrid, bounded, ess) -> list[str]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    path = directory / "sup_levels.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r"] + [f"S_{j}" for j in range(len(bounded.S))])
        for i, r in enumerate(grid.radii):
            w.writerow([repr(float(r))] + [repr(float(s.per_level[i])) for s in bounded.S])
    written.append(path.name)
    if bounded.discrete:
        path = directory / "discrete_sequences.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n"] + [f"a_{s.j}" for s in bounded.discrete])
            for i, n in enumerate(bounded.discrete[0].ns):
                w.writerow([n] + [repr(float(s.values[i])) for s in bounded.discrete])
        written.append(path.name)
    if ess is not None and ess.curves:
        path = directory / "limsup_curves.csv"
        js = sorted(ess.curves)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["delta"] + [f"E_{j}" for j in js])
            for i, d in enumerate(ess.curves[js[0]].deltas):
                w.writerow([repr(float(d))] + [repr(float(ess.curves[j].values[i])) for j in js])
        written.append(path.name)
    return written


def analyze(cfg: dict, curves_dir: str | None = None, oracle: bool = False) -> dict:
    """Full pipeline for one configuration; returns the report as a JSON-ready dict."""
    op, grid = build_operator(cfg)
    try:
        op.validate(grid)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    p = op.params
    n_max = int(cfg.get("n_max", 256))
    deltas = np.asarray(cfg["deltas"], dtype=float) if "deltas" in cfg else default_deltas()
    report: dict = {"params": p.as_dict(), "warnings": []}
    if oracle:
        report["oracle"] = run_oracles(op)
        if not report["oracle"]["ok"]:
            report["warnings"].append("oracle disagreement; estimates not trusted")

    fld = OperatorField(op, grid)
    bounded = check_boundedness(op, grid, n_max, fld)
    report["boundedness"] = {
        "verdict": bounded.verdict,
        "continuous_verdict": bounded.continuous_verdict,
        "discrete_verdict": bounded.discrete_verdict,
        "S": [{"j": j, **s.as_dict()} for j, s in enumerate(bounded.S)],
        "membership": [{"j": j, "value": _num(s.value), "divergent": bool(s.divergent)}
                       for j, s in sorted(bounded.membership.items())],
        "discrete": [s.as_dict() for s in bounded.discrete],
        "crosscheck_ratios": {str(j): (None if r is None else float(r))
                              for j, r in sorted(bounded.crosscheck.items())},
    }
    report["warnings"].extend(bounded.flags)

    ess = None
    if bounded.verdict == UNBOUNDED and p.N <= p.J:
        report["essential_norm"] = {"refused": "essential norm undefined for unbounded operator"}
    else:
        if bounded.verdict != "bounded":
            report["warnings"].append(f"boundedness {bounded.verdict}; essential norm computed anyway")
        ess = continuous_essnorm(op, deltas, grid, None, fld)
        if p.N <= p.J:
            discrete_essnorm(op, n_max, 0.5, grid, bounded, fld, ess)
        report["essential_norm"] = {
            "compact": bool(ess.compact),
            "interval": [_num(ess.estimate_max), _num(ess.estimate_sum)],
            "discrete_estimate": _num(ess.discrete_estimate or 0.0),
            "per_j": {str(j): {"continuous": _num(ess.estimates[j]),
                               "discrete": _num(ess.discrete_per_j.get(j, 0.0)),
                               "curve": ess.curves[j].as_dict()}
                      for j in sorted(ess.estimates)},
            "notes": list(ess.notes),
            "curves_ref": [],
        }

    witnesses = []
    if cfg.get("witness_points") and ess is not None and p.N <= p.J:
        pts = [complex(*w) if isinstance(w, (list, tuple)) else complex(w)
               for w in cfg["witness_points"]]
        for j, vals in sorted(witness_lower_bound(op, pts, grid).items()):
            witnesses.append({"j": j, "running_max": [_num(v) for v in vals]})
    report["witnesses"] = witnesses

    if curves_dir:
        refs = _write_curves(Path(curves_dir), grid, bounded, ess)
        if "curves_ref" in report.get("essential_norm", {}):
            report["essential_norm"]["curves_ref"] = refs
    return report


def dump_gtable(J: int) -> str:
    table = build_table(J)
    return table.as_text() + "\n" + table.dumps()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lipwco", description=__doc__.split("\n")[0])
    ap.add_argument("--config", help="JSON operator configuration")
    ap.add_argument("--alpha", type=float, help="override target space index")
    ap.add_argument("--beta", type=float, help="override source space index")
    ap.add_argument("--dump-gtable", type=int, metavar="J", help="print the G-table for J and exit")
    ap.add_argument("--curves-dir", help="write per-level and limsup curves as CSV here")
    ap.add_argument("--oracle", action="store_true", help="run oracle cross-checks first")
    ap.add_argument("--n-max", dest="n_max", type=int)
    ap.add_argument("--grid-k", dest="grid_k", type=int)
    ap.add_argument("--json-out", help="report path (default: stdout)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.dump_gtable is not None:
        if args.dump_gtable < 0:
            log.error("J must be non-negative")
            return 1
        print(dump_gtable(args.dump_gtable))
        return 0
    try:
        cfg = load_config(args.config, args)
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        return 1
    return run(cfg, args.json_out, args.curves_dir, args.oracle)


def run(cfg: dict, json_out: str | None = None, curves_dir: str | None = None,
        oracle: bool = False) -> int:
    """Analyze one configuration and emit the report; returns the exit status."""
    try:
        report = analyze(cfg, curves_dir, oracle)
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        return 1
    except (EvaluationError, JetError, FloatingPointError) as exc:
        log.error("evaluation failed: %s", exc)
        return 2
    text = json.dumps(report, indent=2)
    if json_out:
        Path(json_out).write_text(text + "\n")
    else:
        print(text)
    if report.get("oracle") and not report["oracle"]["ok"]:
        return 2
    return 0

if __name__ == "__main__":
    sys.exit(main())
