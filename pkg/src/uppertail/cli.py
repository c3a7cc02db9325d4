"""Command-line front end: family stats, bound reports, tail estimation,
decomposition traces, verification suites, and resumable parameter sweeps.

Numbers are serialized with 17 significant digits so identical runs produce
byte-identical artifacts.  Exit codes: 0 success, 1 verification or runtime
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from .bounds import (
    et_bound,
    exact_mean,
    exponent_ap,
    exponent_appp,
    exponent_apt,
    exponent_hg,
    lb_cluster_bound,
    moment_report,
    theorem_c_bound,
)
from .decompose import CascadeParams, check_cascade_event, greedy_star_matching, mr_exact, xr_or_lower
from .estimate import (
    _planting_target,
    conditioned_tail,
    exact_tail,
    mc_tail,
    planted_tail,
)
from .families import FamilySpec, build, interval_witness
from .hypergraph import CapacityError, delta_j, induced_edge_count, max_degree, sample_vp
from .verify import SUITES, run_suites

__all__ = ["RunConfig", "main", "run"]

TAIL_COLUMNS = (
    "family", "n", "k", "p", "threshold", "method",
    "p_hat", "ci_low", "ci_high", "samples", "seed",
)
STOCHASTIC_METHODS = ("mc", "planted", "conditioned")


class UsageError(ValueError):
    pass


def _default_workers() -> int:
    env = os.environ.get("UPPERTAIL_WORKERS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"UPPERTAIL_WORKERS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    if value is None:
        return ""
    return str(value)


@dataclass(frozen=True)
class RunConfig:
    """Normalized arguments for one CLI invocation."""

    subcommand: str
    family: FamilySpec | None = None
    p_grid: tuple[float, ...] = ()
    t_grid: tuple[float, ...] = ()
    method: str = "exact"
    samples: int = 10_000
    seed: int | None = None
    workers: int = 1
    eps: float = 0.0
    alpha: float | None = None
    capacity: float = 1.0
    d: float = 1.0
    r: float | None = None
    beta: float | None = None
    gamma: float | None = None
    cascade_t: float | None = None
    suites: tuple[str, ...] = ()
    out_format: str = "csv"
    out_file: str = "-"

    def validate(self) -> None:
        needs_family = self.subcommand in ("family", "bounds", "tail", "decompose", "sweep")
        if needs_family and self.family is None:
            raise UsageError(f"{self.subcommand} requires --family and --n")
        if self.subcommand in ("bounds", "tail", "sweep"):
            if not self.p_grid:
                raise UsageError("a nonempty --p grid is required")
            if any(not 0.0 <= p <= 1.0 for p in self.p_grid):
                raise UsageError("every p must lie in [0, 1]")
        if self.subcommand in ("bounds", "tail", "sweep") and not self.t_grid:
            raise UsageError("a nonempty --t grid is required")
        if self.subcommand in ("tail", "sweep"):
            if self.method not in ("exact",) + STOCHASTIC_METHODS:
                raise UsageError(f"unknown method {self.method!r}")
            if self.method in STOCHASTIC_METHODS and self.seed is None:
                raise UsageError(f"method {self.method!r} requires --seed")
        if self.subcommand == "decompose":
            if self.r is None or self.r <= 0:
                raise UsageError("decompose requires --r > 0")
            if self.seed is None:
                raise UsageError("decompose requires --seed")
            cascade_flags = (self.beta, self.gamma, self.cascade_t)
            if any(f is not None for f in cascade_flags) and None in cascade_flags:
                raise UsageError("--beta, --gamma, and --t must be given together")
        if self.samples < 1:
            raise UsageError("--samples must be positive")
        if self.workers < 1:
            raise UsageError("--workers must be positive")
        if self.out_format not in ("csv", "json"):
            raise UsageError("--out must be csv or json")
        if self.subcommand == "verify":
            unknown = set(self.suites) - set(SUITES)
            if unknown:
                raise UsageError(f"unknown suites: {sorted(unknown)}")


def _emit(columns: tuple[str, ...], rows: list[dict], cfg: RunConfig, stream) -> None:
    if cfg.out_format == "json":
        for row in rows:
            stream.write(json.dumps(row, sort_keys=True, separators=(",", ":")))
            stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in columns])


def _family_row(spec: FamilySpec) -> dict:
    h = build(spec)
    return {
        "family": spec.kind,
        "n": spec.n,
        "k": h.k,
        "ell": spec.ell if spec.kind == "ell_sum" else None,
        "vertices": h.n,
        "edges": h.num_edges,
        "delta_1": max_degree(h),
        "delta_2": delta_j(h, 2),
    }


def _run_family(cfg: RunConfig, stream) -> int:
    columns = ("family", "n", "k", "ell", "vertices", "edges", "delta_1", "delta_2")
    _emit(columns, [_family_row(cfg.family)], cfg, stream)
    return 0


def _bounds_rows(cfg: RunConfig) -> list[dict]:
    spec = cfg.family
    h = build(spec)
    rows = []

    def add(p: float, t: float, tag: str, value: float, inputs: dict) -> None:
        rows.append(
            {
                "family": spec.kind,
                "n": spec.n,
                "k": h.k,
                "p": p,
                "t": t,
                "tag": tag,
                "value": value,
                "inputs": json.dumps(inputs, sort_keys=True, separators=(",", ":")),
            }
        )

    for p in cfg.p_grid:
        report = moment_report(h, p)
        mu, var, lam = report.mu, report.var, report.lam
        for t in cfg.t_grid:
            for form in ("phi", "quadratic", "ratio_log"):
                rep = theorem_c_bound(mu, cfg.capacity, t, form=form)
                add(p, t, rep.tag, rep.log_value, rep.inputs)
            x = math.ceil(mu + t)
            if x >= 1:
                for stirling in (False, True):
                    rep = et_bound(mu, cfg.capacity, x, stirling=stirling)
                    add(p, t, rep.tag, rep.log_value, rep.inputs)
            if p > 0:
                add(p, t, "exponent_appp", exponent_appp(mu, p), {"mu": mu, "p": p})
                if var > 0 and mu > 0:
                    eps = t / mu
                    add(p, t, "exponent_ap", exponent_ap(mu, var, p, eps),
                        {"mu": mu, "var": var, "p": p, "eps": eps})
                if var > 0:
                    add(p, t, "exponent_apt", exponent_apt(var, p, t),
                        {"var": var, "p": p, "t": t})
                if lam > 0:
                    for remark in (False, True):
                        tag = "exponent_hg_remark" if remark else "exponent_hg"
                        add(p, t, tag, exponent_hg(mu, lam, p, t, use_remark=remark),
                            {"mu": mu, "lam": lam, "p": p, "t": t})
                if mu + t >= 1.0:
                    rep = lb_cluster_bound(cfg.d, mu, t, p)
                    add(p, t, rep.tag, rep.log_value, rep.inputs)
    return rows


def _run_bounds(cfg: RunConfig, stream) -> int:
    columns = ("family", "n", "k", "p", "t", "tag", "value", "inputs")
    _emit(columns, _bounds_rows(cfg), cfg, stream)
    return 0


def _tail_estimate(cfg: RunConfig, h, p: float, t: float):
    mu = exact_mean(h, p)
    threshold = mu + t
    if cfg.method == "exact":
        return exact_tail(h, p, threshold, workers=cfg.workers)
    if cfg.method == "mc":
        return mc_tail(h, p, threshold, cfg.samples, seed=cfg.seed, workers=cfg.workers)
    if cfg.method == "planted":
        target, _ = _planting_target(mu, t, h.k, cfg.alpha)
        witness = interval_witness(cfg.family, float(target))
        if witness is None:
            raise UsageError(
                f"family {cfg.family.kind}({cfg.family.n}) cannot seat a witness for {target} edges"
            )
        return planted_tail(
            h, p, threshold, cfg.samples, seed=cfg.seed, witness=witness,
            workers=cfg.workers, alpha=cfg.alpha,
        )
    return conditioned_tail(
        h, p, threshold, cfg.samples, seed=cfg.seed, eps=cfg.eps, workers=cfg.workers
    )


def _tail_row(cfg: RunConfig, h, p: float, t: float) -> dict:
    est = _tail_estimate(cfg, h, p, t)
    return {
        "family": cfg.family.kind,
        "n": cfg.family.n,
        "k": h.k,
        "p": p,
        "threshold": est.threshold,
        "method": est.method,
        "p_hat": est.p_hat,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "samples": est.samples,
        "seed": cfg.seed,
    }


def _run_tail(cfg: RunConfig, stream) -> int:
    h = build(cfg.family)
    rows = [_tail_row(cfg, h, p, t) for p in cfg.p_grid for t in cfg.t_grid]
    _emit(TAIL_COLUMNS, rows, cfg, stream)
    return 0


def _run_decompose(cfg: RunConfig, stream) -> int:
    h = build(cfg.family)
    p = cfg.p_grid[0] if cfg.p_grid else 0.5
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for i in range(cfg.samples):
        s = sample_vp(h, p, rng)
        x = induced_edge_count(h, s)
        xr, xr_exact_flag = xr_or_lower(h, s, cfg.r)
        greedy = greedy_star_matching(h, s, cfg.r).size
        try:
            mr: Any = mr_exact(h, s, cfg.r)
        except CapacityError:
            mr = "budget"
        if cfg.beta is not None:
            params = CascadeParams(
                beta=cfg.beta, gamma=cfg.gamma, r=cfg.r, t=cfg.cascade_t, p=p
            )
            verdict = check_cascade_event(h, s, params).verdict
            cascade = "indeterminate" if verdict is None else _fmt(verdict)
        else:
            cascade = "na"
        rows.append(
            {
                "sample": i,
                "vertices": len(s),
                "x": x,
                "xr": xr,
                "xr_exact": xr_exact_flag,
                "greedy_mr": greedy,
                "mr": mr,
                "cascade": cascade,
            }
        )
    columns = ("sample", "vertices", "x", "xr", "xr_exact", "greedy_mr", "mr", "cascade")
    _emit(columns, rows, cfg, stream)
    return 0


def _run_verify(cfg: RunConfig, stream) -> int:
    results = run_suites(cfg.suites or None)
    for res in results:
        line = f"{res.suite}:{res.name}  {'PASS' if res.ok else 'FAIL'}"
        if res.detail:
            line += f"  ({res.detail})"
        stream.write(line + "\n")
    passed = sum(r.ok for r in results)
    stream.write(f"passed {passed}/{len(results)} checks\n")
    return 0 if passed == len(results) else 1


def _sweep_key(row: dict) -> tuple[str, ...]:
    return tuple(_fmt(row.get(c)) for c in ("family", "n", "k", "p", "t", "method", "samples", "seed"))


def _existing_sweep_keys(cfg: RunConfig) -> set[tuple[str, ...]]:
    keys: set[tuple[str, ...]] = set()
    if cfg.out_file == "-" or not os.path.exists(cfg.out_file):
        return keys
    with open(cfg.out_file, newline="", encoding="utf-8") as fh:
        if cfg.out_format == "json":
            for line in fh:
                line = line.strip()
                if line:
                    keys.add(_sweep_key(json.loads(line)))
        else:
            for row in csv.DictReader(fh):
                keys.add(_sweep_key(row))
    return keys


SWEEP_COLUMNS = TAIL_COLUMNS[:4] + ("t",) + TAIL_COLUMNS[4:] + ("status",)


def _run_sweep(cfg: RunConfig, stream) -> int:
    h = build(cfg.family)
    existing = _existing_sweep_keys(cfg)
    fresh_file = cfg.out_file != "-" and not os.path.exists(cfg.out_file)
    rows = []
    for p in cfg.p_grid:
        for t in cfg.t_grid:
            base = {
                "family": cfg.family.kind,
                "n": cfg.family.n,
                "k": h.k,
                "p": p,
                "t": t,
                "method": cfg.method,
                "samples": cfg.samples,
                "seed": cfg.seed,
            }
            if _sweep_key(base) in existing:
                continue
            try:
                est = _tail_estimate(cfg, h, p, t)
                base.update(
                    threshold=est.threshold, p_hat=est.p_hat,
                    ci_low=est.ci_low, ci_high=est.ci_high, status="ok",
                )
            except CapacityError as exc:
                base.update(threshold=None, p_hat=None, ci_low=None, ci_high=None,
                            status="budget")
            rows.append(base)

    if cfg.out_file == "-":
        _emit(SWEEP_COLUMNS, rows, cfg, stream)
        return 0
    with open(cfg.out_file, "a", newline="", encoding="utf-8") as fh:
        if cfg.out_format == "json":
            for row in rows:
                fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            if fresh_file:
                writer.writerow(SWEEP_COLUMNS)
            for row in rows:
                writer.writerow([_fmt(row.get(c)) for c in SWEEP_COLUMNS])
    stream.write(f"wrote {len(rows)} rows to {cfg.out_file}\n")
    return 0


def _grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc


def _add_family_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", choices=("ap", "schur", "ell_sum"), help="integer family kind")
    sub.add_argument("--n", type=int, help="ground-set size")
    sub.add_argument("--k", type=int, default=3, help="progression length (ap only)")
    sub.add_argument("--ell", type=int, default=1, help="multiplier for x + y = l*z")


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", choices=("csv", "json"), default="csv", help="output format")
    sub.add_argument("--out-file", default="-", help="output path; - for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uppertail",
        description="Upper-tail experiments for induced edge counts of random vertex subsets.",
    )
    parser.add_argument("--config", help="JSON file of flag defaults; explicit flags win")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    parser.subparsers = {}

    fam = sub.add_parser("family", help="one stats row for a family instance")
    _add_family_flags(fam)
    _add_output_flags(fam)

    bounds = sub.add_parser("bounds", help="bound reports over a (p, t) grid")
    _add_family_flags(bounds)
    _add_output_flags(bounds)
    bounds.add_argument("--p", type=_grid, default=(), help="comma-separated p grid")
    bounds.add_argument("--t", type=_grid, default=(), help="comma-separated t grid")
    bounds.add_argument("--capacity", type=float, default=1.0, help="capacity C")
    bounds.add_argument("--d", type=float, default=1.0, help="witness density D")

    tail = sub.add_parser("tail", help="tail estimates at threshold mu + t")
    _add_family_flags(tail)
    _add_output_flags(tail)
    tail.add_argument("--p", type=_grid, default=(), help="comma-separated p grid")
    tail.add_argument("--t", type=_grid, default=(), help="comma-separated t grid")
    tail.add_argument("--method", default="exact",
                      choices=("exact",) + STOCHASTIC_METHODS)
    tail.add_argument("--samples", type=int, default=10_000)
    tail.add_argument("--seed", type=int)
    tail.add_argument("--eps", type=float, default=0.0, help="conditioned-vertex surplus")
    tail.add_argument("--alpha", type=float, help="planting overlap parameter")
    tail.add_argument("--workers", type=int, default=0, help="0 = UPPERTAIL_WORKERS or cpu count")

    dec = sub.add_parser("decompose", help="per-sample decomposition rows")
    _add_family_flags(dec)
    _add_output_flags(dec)
    dec.add_argument("--p", type=_grid, default=(0.5,), help="sampling probability")
    dec.add_argument("--r", type=float, help="degree threshold r")
    dec.add_argument("--samples", type=int, default=10)
    dec.add_argument("--seed", type=int)
    dec.add_argument("--beta", type=float, help="cascade beta")
    dec.add_argument("--gamma", type=float, help="cascade gamma")
    dec.add_argument("--t", dest="cascade_t", type=float, help="cascade t")

    ver = sub.add_parser("verify", help="run named verification suites")
    ver.add_argument("suites", nargs="*", help=f"subset of {sorted(SUITES)}; default all")

    sweep = sub.add_parser("sweep", help="tail estimates over a (p, t) cross product")
    _add_family_flags(sweep)
    _add_output_flags(sweep)
    sweep.add_argument("--p", type=_grid, default=(), help="comma-separated p grid")
    sweep.add_argument("--t", type=_grid, default=(), help="comma-separated t grid")
    sweep.add_argument("--method", default="exact",
                       choices=("exact",) + STOCHASTIC_METHODS)
    sweep.add_argument("--samples", type=int, default=10_000)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--eps", type=float, default=0.0)
    sweep.add_argument("--alpha", type=float)
    sweep.add_argument("--workers", type=int, default=0)

    parser.subparsers = {
        "family": fam, "bounds": bounds, "tail": tail,
        "decompose": dec, "verify": ver, "sweep": sweep,
    }
    return parser


_CONFIG_KEYS = {
    "family", "n", "k", "ell", "p", "t", "method", "samples", "seed", "eps",
    "alpha", "workers", "capacity", "d", "r", "beta", "gamma", "cascade_t",
    "out", "out_file", "suites",
}


def _load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for key in ("p", "t"):
        if key in data and not isinstance(data[key], (list, tuple)):
            data[key] = [data[key]]
        if key in data:
            data[key] = tuple(float(v) for v in data[key])
    return data


def _apply_config(parser: argparse.ArgumentParser, overrides: dict) -> None:
    # Subparsers re-parse into a fresh namespace, so plain namespace seeding
    # gets clobbered; rewriting defaults survives that and keeps flag priority.
    targets = [parser] + list(parser.subparsers.values())
    for target in targets:
        known = {action.dest for action in target._actions}
        hits = {k: v for k, v in overrides.items() if k in known}
        if hits:
            target.set_defaults(**hits)


def _config_from_namespace(ns: argparse.Namespace) -> RunConfig:
    spec = None
    if getattr(ns, "family", None) is not None:
        if ns.n is None:
            raise UsageError("--family requires --n")
        spec = FamilySpec(ns.family, ns.n, k=ns.k, ell=ns.ell)
    workers = getattr(ns, "workers", 1) or _default_workers()
    return RunConfig(
        subcommand=ns.subcommand,
        family=spec,
        p_grid=tuple(getattr(ns, "p", ()) or ()),
        t_grid=tuple(getattr(ns, "t", ()) or ()),
        method=getattr(ns, "method", "exact"),
        samples=getattr(ns, "samples", 10_000),
        seed=getattr(ns, "seed", None),
        workers=workers,
        eps=getattr(ns, "eps", 0.0),
        alpha=getattr(ns, "alpha", None),
        capacity=getattr(ns, "capacity", 1.0),
        d=getattr(ns, "d", 1.0),
        r=getattr(ns, "r", None),
        beta=getattr(ns, "beta", None),
        gamma=getattr(ns, "gamma", None),
        cascade_t=getattr(ns, "cascade_t", None),
        suites=tuple(getattr(ns, "suites", ()) or ()),
        out_format=getattr(ns, "out", "csv"),
        out_file=getattr(ns, "out_file", "-"),
    )


_RUNNERS = {
    "family": _run_family,
    "bounds": _run_bounds,
    "tail": _run_tail,
    "decompose": _run_decompose,
    "verify": _run_verify,
    "sweep": _run_sweep,
}


def run(config: RunConfig, stream=None) -> int:
    """Execute one validated CLI invocation; returns the exit status."""
    config.validate()
    out = stream if stream is not None else sys.stdout
    return _RUNNERS[config.subcommand](config, out)


def main(argv: list[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if "--config" in args:
            at = args.index("--config")
            if at + 1 >= len(args):
                raise UsageError("--config needs a path")
            _apply_config(parser, _load_config(args[at + 1]))
            del args[at : at + 2]
        ns = parser.parse_args(args)
        config = _config_from_namespace(ns)
        return run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
