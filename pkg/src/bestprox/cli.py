"""Command-line front end.

Exit codes: 0 success, 1 invalid input or config, 2 nonconvergence,
3 hypothesis violation (T(A0) not inside B0, infeasible sets),
4 unsupported configuration.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

import numpy as np

from . import config as C
from .engine import ProximalMap, estimate_k, exact_contraction_constant, iterate, \
    verify_uniqueness
from .errors import BestProxError, ConfigError
from .metric import FiniteSpace
from .pairs import (enumerate_A0_finite, enumerate_B0_finite, in_A0, in_B0, pair_separation,
                    point_set_distance)
from .reporting import atomic_write, to_json, trace_csv
from .vi import AffineOperator, VIProblem, choose_lambda, solve_vi

log = logging.getLogger("bestprox")


def _jsonable(v):
    if isinstance(v, (np.integer, int)) and not isinstance(v, bool):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if np.isfinite(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def _load(args) -> dict:
    if not args.config:
        raise ConfigError("--config is required")
    cfg = C.load_config(args.config)
    solver = cfg.setdefault("solver", {})
    if args.seed is not None:
        solver["seed"] = args.seed
    if args.epsilon is not None:
        solver["epsilon"] = args.epsilon
    if args.max_iter is not None:
        solver["max_iterations"] = args.max_iter
    C.validate(cfg)
    return cfg


def _pair(cfg):
    C.require(cfg, "A", "B")
    space = C.build_space(cfg)
    A, B = C.build_set(cfg["A"], space), C.build_set(cfg["B"], space)
    return pair_separation(space, A, B, eps=C.solver_settings(cfg)["epsilon"])


def _map(cfg, pair):
    C.require(cfg, "map")
    m = cfg["map"]
    k = m.get("k")
    if "affine" in m:
        return ProximalMap.affine(pair, m["affine"]["M"], m["affine"]["t"], k)
    if "table" in m:
        return ProximalMap.table(pair, m["table"], k)
    raise ConfigError("bpp mode needs an affine or table map")


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(_jsonable(payload), indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _write_outputs(args, cfg, mode, trace, cert, t0, warnings, extra=None):
    out = args.out
    atomic_write(os.path.join(out, "trace.csv"), trace_csv(trace))
    atomic_write(os.path.join(out, "certificate.json"), to_json(_jsonable(cert)))
    report = {
        "input_digest": C.digest(cfg),
        "mode": mode,
        "seed": C.solver_settings(cfg)["seed"],
        "result": cert,
        "wall_time": time.perf_counter() - t0,
        "warnings": list(warnings),
        "config": cfg,
        **(extra or {}),
    }
    atomic_write(os.path.join(out, "report.json"), to_json(_jsonable(report)))


def _starts(cfg, default, sampler):
    s = C.solver_settings(cfg)
    starts = s.get("starts")
    if starts is None:
        return [default]
    if isinstance(starts, dict):
        return sampler(starts["random"], s["seed"])
    return [p if isinstance(p, int) else np.asarray(p, dtype=float) for p in starts]


def cmd_solve_bpp(args) -> int:
    t0 = time.perf_counter()
    cfg = _load(args)
    if cfg.get("mode", "bpp") != "bpp":
        raise ConfigError("solve-bpp needs mode 'bpp'")
    pair = _pair(cfg)
    pmap = _map(cfg, pair)
    crit = C.criterion(cfg)

    def sampler(n, seed):
        if pair.is_finite:
            a0 = enumerate_A0_finite(pair)
            rng = np.random.default_rng(seed)
            return [int(a0[i]) for i in rng.integers(0, len(a0), size=n)]
        pts = [p for p in pair.A.sample(20 * n, seed) if in_A0(pair, p)]
        return (pts or [pair.witness[0]])[:n]

    starts = _starts(cfg, pair.witness[0], sampler)
    trace, res = iterate(pmap, starts[0], crit)
    extra, warnings = {}, list(res.warnings)
    if len(starts) > 1:
        uq = verify_uniqueness(pmap, starts, crit)
        extra["uniqueness"] = {"unique": uq.unique, "spread": uq.spread, "starts": len(starts)}
        if not uq.unique:
            warnings.append(f"multi-start spread {uq.spread:.3g} exceeds 10 * eps_stop")
    cert = res.certificate()
    cert["separation"] = pair.separation
    _write_outputs(args, cfg, "bpp", trace, cert, t0, warnings, extra)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(args, cert, [f"best proximity point: {_jsonable(res.point)}",
                       f"d(A,B) = {pair.separation!r}, final gap = {res.final_gap:.3g}, "
                       f"iterations = {res.iterations}"])
    return 0


def _vi_problem(cfg):
    C.require(cfg, "K", "map")
    if "vi" not in cfg["map"]:
        raise ConfigError("solve-vi needs a 'vi' map")
    space = C.build_space(cfg)
    if isinstance(space, FiniteSpace):
        raise ConfigError("variational inequalities need a Euclidean space")
    K = C.build_set(cfg["K"], space)
    op = cfg["map"]["vi"]["operator"]["affine"]
    S = AffineOperator(op["M"], op["b"], op.get("L"), op.get("eta"))
    lam = cfg["map"]["vi"].get("lambda", "auto")
    return VIProblem(K, S, lam)


def cmd_solve_vi(args) -> int:
    t0 = time.perf_counter()
    cfg = _load(args)
    if cfg.get("mode", "vi") != "vi":
        raise ConfigError("solve-vi needs mode 'vi'")
    prob = _vi_problem(cfg)
    if prob.lam == "auto":
        lam, k = choose_lambda(prob.S)
        log.info("auto lambda = %r, predicted k = %r", lam, k)
        print(f"lambda = {lam!r} (auto), predicted k = {k!r}", file=sys.stderr)
    s = C.solver_settings(cfg)
    crit = C.criterion(cfg)
    u0 = prob.K.project(np.zeros(prob.K.dim)).point
    starts = _starts(cfg, u0, lambda n, seed: prob.K.sample(n, seed))
    res = solve_vi(prob, starts[0], crit, eps=s["epsilon"])
    extra, warnings = {}, list(res.warnings)
    if len(starts) > 1:
        outs = [solve_vi(prob, u, crit, eps=s["epsilon"]).u for u in starts]
        spread = max(float(np.linalg.norm(a - b)) for a in outs for b in outs)
        extra["uniqueness"] = {"unique": spread <= 10 * crit.eps_stop, "spread": spread,
                               "starts": len(starts)}
    cert = res.certificate()
    _write_outputs(args, cfg, "vi", res.trace, cert, t0, warnings, extra)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(args, cert, [f"solution: {_jsonable(res.u)}",
                       f"lambda = {res.lam!r}, natural residual = {res.natural_residual:.3g}, "
                       f"iterations = {res.iterations}"])
    return 0


def cmd_dist(args) -> int:
    cfg = _load(args)
    pair = _pair(cfg)
    a, b = pair.witness
    payload = {"separation": pair.separation, "witness": [a, b], "method": pair.method}
    _emit(args, payload, [f"d(A,B) = {pair.separation!r}",
                          f"witness a = {_jsonable(a)}, b = {_jsonable(b)} ({pair.method})"])
    return 0


def _point(args, cfg, space):
    if args.point is not None:
        vals = [float(v) for v in args.point.split(",")]
        if isinstance(space, FiniteSpace):
            return int(vals[0])
        return np.array(vals)
    C.require(cfg, "point")
    p = cfg["point"]
    return p if isinstance(p, int) else np.asarray(p, dtype=float)


def cmd_check_pair(args) -> int:
    cfg = _load(args)
    pair = _pair(cfg)
    payload = {"separation": pair.separation, "witness": list(pair.witness)}
    lines = [f"d(A,B) = {pair.separation!r}"]
    if pair.is_finite:
        a0, b0 = enumerate_A0_finite(pair), enumerate_B0_finite(pair)
        payload.update(A0=a0, B0=b0)
        lines += [f"A0 = {a0}", f"B0 = {b0}"]
    if args.point is not None or "point" in cfg:
        x = _point(args, cfg, pair.space)
        va, vb = in_A0(pair, x), in_B0(pair, x)
        payload.update(point=x, in_A0=va, in_B0=vb)
        lines += [f"point {_jsonable(x)}: in A0 = {va}, in B0 = {vb}"]
    _emit(args, payload, lines)
    return 0


def cmd_project(args) -> int:
    cfg = _load(args)
    space = C.build_space(cfg)
    key = "K" if "K" in cfg else "A"
    C.require(cfg, key)
    S = C.build_set(cfg[key], space)
    x = _point(args, cfg, space)
    d, p = point_set_distance(space, x, S)
    payload = {"point": p, "distance": d}
    _emit(args, payload, [f"projection: {_jsonable(p)}", f"distance: {d!r}"])
    return 0


def cmd_check_contraction(args) -> int:
    cfg = _load(args)
    pair = _pair(cfg)
    pmap = _map(cfg, pair)
    s = C.solver_settings(cfg)
    est = estimate_k(pmap, s["samples"], s["seed"])
    payload = {"k_hat": est.k_hat, "admissible": est.admissible, "samples": est.sample_count,
               "worst_pair": list(est.worst_pair) if est.worst_pair else None,
               "exhaustive": est.exhaustive}
    lines = [f"k-hat = {est.k_hat!r} over {est.sample_count} A0 points "
             f"({'exhaustive' if est.exhaustive else 'sampled; a lower bound'})",
             f"admissible: {est.admissible}"]
    if est.worst_pair:
        lines.append(f"worst pair: {_jsonable(list(est.worst_pair))}")
    if pair.is_finite:
        kx = exact_contraction_constant(pmap)
        payload["k_exact"] = float(kx)
        lines.append(f"exact constant over all of A: {float(kx)!r}")
    _emit(args, payload, lines)
    return 0


COMMANDS = {
    "solve-bpp": (cmd_solve_bpp, "iterate to the best proximity point and write reports"),
    "solve-vi": (cmd_solve_vi, "solve a variational inequality by projected iteration"),
    "dist": (cmd_dist, "print d(A,B) and a witness pair"),
    "check-pair": (cmd_check_pair, "A0/B0 membership and enumeration"),
    "project": (cmd_project, "project a point onto a set"),
    "check-contraction": (cmd_check_contraction, "estimate the proximal contraction constant"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bestprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", metavar="PATH")
        p.add_argument("--out", metavar="DIR", default=".")
        p.add_argument("--seed", type=int)
        p.add_argument("--json", action="store_true")
        p.add_argument("--epsilon", type=float)
        p.add_argument("--max-iter", type=int, dest="max_iter")
        p.add_argument("--point", help="comma-separated coordinates (or an index)")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except BestProxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        it = getattr(exc, "iterate", None)
        if it is not None:
            print(f"  at iteration {it}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
