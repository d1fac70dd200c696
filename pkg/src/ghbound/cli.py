"""Command-line harness.

Subcommands:
  bounds            evaluate lower-bound reports for one or two subset files
  circle-sweep      sample circle pairs, compare pair bound vs exact GH vs Hausdorff
  ratio             build and verify the small-ratio family
  homology          Betti numbers of a complex (given, or built from a subset)
  gh-exact          exact GH distance between two metric-space/subset files
  fillrad-estimate  estimate the filling radius from a VR death-scale sweep
  lemma-check       executable checks of the correspondence/projection lemmas

Exit codes: 0 success, 1 input error, 2 assertion failure (a mathematical
guarantee the run was supposed to witness did not hold).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import serialize
from .bounds import (circle_bound, circle_bound_pair, convexity_bound,
                     convexity_bound_pair, fillrad_bound, fillrad_bound_pair,
                     jung_bound_pair)
from .complexes import (build_cech_circle, build_cech_witness, build_vr,
                        check_contiguous, check_simplicial, compose_maps,
                        inclusion_map, induced_vr_map, subset_projection_map)
from .gh import distortion, gh_exact
from .homology import betti_numbers, fundamental_class_survives
from .manifolds import (CIRCLE, EUCLIDEAN, FLAT_TORUS, AmbientManifold,
                        FiniteSubset, circle, covering_radius_circle,
                        covering_radius_witness, cross_distances,
                        hausdorff_subsets)
from .ratio import as_subsets, build_instance, verify_instance
from .sampling import SplitMix64, equispaced_circle, grid_points, uniform_points

SANDWICH_TOL = 1e-9


class CheckFailed(Exception):
    """A guarantee the command was asked to witness failed (exit code 2)."""


def _write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj, path: str | None) -> None:
    _write_text(serialize.write_json(obj, None), path)


def _default_witness_per_axis(dim: int) -> int:
    return max(2, min(64, int(round(4096 ** (1.0 / dim)))))


def _dh_to_manifold(subset: FiniteSubset, witness_per_axis: int | None) -> float:
    m = subset.manifold
    if m.kind == CIRCLE:
        return covering_radius_circle(subset)
    if m.kind == FLAT_TORUS:
        per_axis = witness_per_axis or _default_witness_per_axis(m.dim)
        return covering_radius_witness(subset, grid_points(m, per_axis))
    raise ValueError("d_H(X, M) is only finite for compact manifolds; "
                     "supply --inputs for abstract evaluations")


def _applicable(manifold: AmbientManifold) -> list[str]:
    names = ["convexity"]
    if manifold.kind == CIRCLE:
        names.append("circle")
    if manifold.fill_rad is not None:
        names.append("fillrad")
    names.append("jung")
    return names


def _evaluate(name: str, pair: bool, dh_xm: float, dh_ym: float,
              manifold_like: dict) -> dict:
    rho = manifold_like.get("rho", math.inf)
    kappa = manifold_like.get("kappa", 0.0)
    n = manifold_like.get("n", 1)
    fill_rad = manifold_like.get("fill_rad")
    circumference = manifold_like.get("circumference")
    if name == "convexity":
        report = (convexity_bound_pair(dh_xm, rho, dh_ym) if pair
                  else convexity_bound(dh_xm, rho))
    elif name == "circle":
        if circumference is None:
            raise ValueError("circle bound needs a circle manifold")
        report = (circle_bound_pair(dh_xm, dh_ym, circumference) if pair
                  else circle_bound(dh_xm, circumference))
    elif name == "fillrad":
        if fill_rad is None:
            raise ValueError("missing geometry constant fill_rad")
        report = (fillrad_bound_pair(dh_xm, rho, fill_rad, dh_ym) if pair
                  else fillrad_bound(dh_xm, rho, fill_rad))
    elif name == "jung":
        report = jung_bound_pair(dh_xm, rho, kappa, n, dh_ym if pair else 0.0)
    else:
        raise ValueError(f"unknown bound name {name!r}")
    return serialize.bound_report_to_dict(report)


def cmd_bounds(args) -> int:
    if args.inputs:
        raw = serialize.read_json(args.inputs)
        dh_xm = float(raw["dh_xm"])
        dh_ym = float(raw.get("dh_ym", 0.0))
        pair = "dh_ym" in raw
        manifold_like = {k: raw[k] for k in
                         ("rho", "kappa", "n", "fill_rad", "circumference") if k in raw}
        requested = args.theorems.split(",") if args.theorems else ["convexity", "jung"]
    else:
        if not args.x:
            raise ValueError("bounds needs --x (a subset JSON) or --inputs")
        sub_x = serialize.subset_from_dict(serialize.read_json(args.x))
        m = sub_x.manifold
        dh_xm = _dh_to_manifold(sub_x, args.witness_grid)
        pair = args.y is not None
        dh_ym = 0.0
        if pair:
            sub_y = serialize.subset_from_dict(serialize.read_json(args.y))
            if sub_y.manifold != m:
                raise ValueError("X and Y must live on the same manifold")
            dh_ym = _dh_to_manifold(sub_y, args.witness_grid)
        manifold_like = {"rho": m.rho, "kappa": m.kappa, "n": m.dim,
                         "fill_rad": m.fill_rad}
        if m.kind == CIRCLE:
            manifold_like["circumference"] = m.params[0]
        requested = args.theorems.split(",") if args.theorems else _applicable(m)
    reports = [_evaluate(name.strip(), pair, dh_xm, dh_ym, manifold_like)
               for name in requested]
    inputs = {"dh_xm": dh_xm, **manifold_like}
    if pair:
        inputs["dh_ym"] = dh_ym
    _emit_json({"inputs": inputs, "reports": reports}, args.out)
    return 0


@dataclass
class SweepConfig:
    manifold: AmbientManifold
    sampler: dict
    pairs: list[tuple[int, int]]
    count: int | None
    scale_grid: tuple[float, float, int] | None
    max_dim: int
    node_budget: int
    out: str | None


def _parse_config(d: dict, need_pairs: bool = False, need_grid: bool = False) -> SweepConfig:
    manifold = (serialize.manifold_from_dict(d["manifold"]) if "manifold" in d
                else circle())
    sampler = d.get("sampler", {"kind": "equispaced"})
    if isinstance(sampler, str):
        sampler = {"kind": sampler}
    if sampler.get("kind") not in ("equispaced", "uniform", "file"):
        raise ValueError("sampler kind must be equispaced, uniform, or file")
    if sampler["kind"] == "uniform" and "seed" not in sampler:
        raise ValueError("uniform sampler needs a seed")
    pairs = [(int(a), int(b)) for a, b in d.get("pairs", [])]
    if need_pairs and not pairs:
        raise ValueError("config needs a non-empty 'pairs' list")
    grid = None
    if "scale_grid" in d:
        g = d["scale_grid"]
        grid = (float(g["start"]), float(g["stop"]), int(g["steps"]))
        if not (grid[0] > 0 and grid[1] > grid[0] and grid[2] >= 2):
            raise ValueError("scale grid must be strictly increasing")
    if need_grid and grid is None:
        raise ValueError("config needs 'scale_grid' with start/stop/steps")
    count = int(d["count"]) if "count" in d else None
    max_dim = int(d.get("max_dim", manifold.dim + 1))
    return SweepConfig(manifold, sampler, pairs, count, grid,
                       max_dim, int(d.get("node_budget", 10_000_000)),
                       d.get("out"))


def _sample(cfg: SweepConfig, row: int, side: int, size: int,
            master: SplitMix64 | None) -> FiniteSubset:
    kind = cfg.sampler["kind"]
    if kind == "equispaced":
        phase = float(cfg.sampler.get("phase_y" if side else "phase_x", 0.0))
        return equispaced_circle(cfg.manifold, size, phase)
    if kind == "uniform":
        child = master.child(2 * row + side)
        return uniform_points(cfg.manifold, size, child.next_u64())
    paths = cfg.sampler["y" if side else "x"]
    return serialize.subset_from_dict(serialize.read_json(paths[row]))


def cmd_circle_sweep(args) -> int:
    cfg = _parse_config(serialize.read_json(args.config), need_pairs=True)
    if cfg.manifold.kind != CIRCLE:
        raise ValueError("circle-sweep needs a circle manifold")
    circumference = cfg.manifold.params[0]
    budget = args.budget or cfg.node_budget
    seed = args.seed if args.seed is not None else cfg.sampler.get("seed", 0)
    master = SplitMix64(seed)
    rows = []
    for i, (nx, ny) in enumerate(cfg.pairs):
        sub_x = _sample(cfg, i, 0, nx, master)
        sub_y = _sample(cfg, i, 1, ny, master)
        dh_x = covering_radius_circle(sub_x)
        dh_y = covering_radius_circle(sub_y)
        bound = circle_bound_pair(dh_x, dh_y, circumference).lower_bound
        result = gh_exact(sub_x.to_metric_space(), sub_y.to_metric_space(), budget)
        dh_xy = hausdorff_subsets(sub_x, sub_y)
        rows.append((i, nx, ny, dh_x, dh_y, bound, result.value, dh_xy,
                     result.nodes_explored, result.proven_optimal))
        if bound > result.value + SANDWICH_TOL:
            raise CheckFailed(f"row {i}: pair bound {bound} exceeds GH {result.value}")
        if result.proven_optimal and result.value > dh_xy + SANDWICH_TOL:
            raise CheckFailed(f"row {i}: GH {result.value} exceeds Hausdorff {dh_xy}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "n_x", "n_y", "dh_x_circle", "dh_y_circle",
                     "pair_bound", "gh_exact", "dh_xy", "nodes", "proven_optimal"])
    writer.writerows([list(r) for r in rows])
    _write_text(buf.getvalue(), args.out or cfg.out)
    return 0


def cmd_ratio(args) -> int:
    sizes = [int(s) for s in args.n.split(",")]
    out = []
    for n in sizes:
        instance = build_instance(n)
        try:
            report = verify_instance(instance)
        except ValueError as exc:
            raise CheckFailed(f"n={n}: {exc}") from exc
        entry = serialize.ratio_report_to_dict(report)
        if n <= args.crosscheck_max:
            sub, full = as_subsets(instance)
            result = gh_exact(sub.to_metric_space(), full.to_metric_space(),
                              args.budget or 10_000_000)
            entry["gh_exact"] = result.value
            entry["gh_exact_proven"] = result.proven_optimal
            if result.proven_optimal and result.value > report.gh_upper + SANDWICH_TOL:
                raise CheckFailed(f"n={n}: exact GH exceeds the isometry upper bound")
        out.append(entry)
    _emit_json({"instances": out}, args.out)
    return 0


def _complex_from_args(args):
    if args.complex:
        return serialize.complex_from_dict(serialize.read_json(args.complex))
    if not args.subset or args.scale is None:
        raise ValueError("homology needs --complex, or --subset with --scale")
    subset = serialize.subset_from_dict(serialize.read_json(args.subset))
    m = subset.manifold
    max_dim = args.max_dim if args.max_dim is not None else m.dim + 1
    space = subset.to_metric_space()
    if not args.cech:
        return build_vr(space, args.scale, max_dim)
    if m.kind == CIRCLE:
        return build_cech_circle(space, args.scale, max_dim, m.params[0])
    if m.kind == EUCLIDEAN:
        raise ValueError("ambient Cech complexes need a compact manifold "
                         "(witness grids are built on circle or torus)")
    per_axis = args.witness_grid or _default_witness_per_axis(m.dim)
    witnesses = grid_points(m, per_axis)
    cross = cross_distances(m, witnesses.points, subset.points)
    return build_cech_witness(cross, args.scale, max_dim)


def cmd_homology(args) -> int:
    cx = _complex_from_args(args)
    up_to = args.up_to if args.up_to is not None else cx.max_dim - 1
    betti = betti_numbers(cx, up_to)
    _emit_json({"scale": cx.scale, "max_dim": cx.max_dim,
                "simplex_counts": cx.simplex_counts(),
                "betti": list(betti.values)}, args.out)
    return 0


def cmd_gh_exact(args) -> int:
    space_x = serialize.load_space(serialize.read_json(args.x))
    space_y = serialize.load_space(serialize.read_json(args.y))
    result = gh_exact(space_x, space_y, args.budget or 10_000_000)
    _emit_json(serialize.gh_result_to_dict(result), args.out)
    return 0


def cmd_fillrad_estimate(args) -> int:
    cfg = _parse_config(serialize.read_json(args.config), need_grid=True)
    m = cfg.manifold
    n = m.dim
    if cfg.max_dim < n + 1:
        raise ValueError(f"max_dim must be at least {n + 1} to compute beta_{n}")
    if cfg.count is None:
        raise ValueError("config needs 'count' (sample size)")
    seed = args.seed if args.seed is not None else cfg.sampler.get("seed", 0)
    if cfg.sampler["kind"] == "equispaced":
        sample = (equispaced_circle(m, cfg.count) if m.kind == CIRCLE
                  else grid_points(m, cfg.count))
    elif cfg.sampler["kind"] == "uniform":
        sample = uniform_points(m, cfg.count, seed)
    else:
        sample = serialize.subset_from_dict(serialize.read_json(cfg.sampler["x"][0]))
    space = sample.to_metric_space()
    start, stop, steps = cfg.scale_grid
    grid = np.linspace(start, stop, steps)
    base = build_vr(space, float(grid[0]), cfg.max_dim)
    base_betti = betti_numbers(base, n)
    if base_betti[n] != 1:
        raise ValueError(f"sample too sparse: base complex has beta_{n} = "
                         f"{base_betti[n]}, expected 1")
    scales, betti_rows, survives = [], [], []
    for s in grid:
        cx = build_vr(space, float(s), cfg.max_dim)
        scales.append(float(s))
        betti_rows.append(list(betti_numbers(cx, n).values))
        survives.append(fundamental_class_survives(base, cx, n))
    alive = [s for s, ok in zip(scales, survives) if ok]
    censored = bool(survives[-1])
    death = None if (censored or not alive) else max(alive)
    _emit_json({"sample_size": sample.size, "scales": scales,
                "betti": betti_rows, "survives": survives,
                "death_scale": death, "censored": censored,
                "estimate": None if death is None else death / 2.0},
               args.out or cfg.out)
    return 0


def _lemma_trial(trial: int, master: SplitMix64, budget: int) -> dict:
    rng = master.child(trial)
    ambient = circle()
    nx = 2 + rng.next_below(5)
    ny = 2 + rng.next_below(5)
    eps = 0.05 + rng.next_float() * 1.45
    sub_x = uniform_points(ambient, nx, rng.next_u64())
    sub_y = uniform_points(ambient, ny, rng.next_u64())
    space_x = sub_x.to_metric_space()
    space_y = sub_y.to_metric_space()

    result = gh_exact(space_x, space_y, budget)
    corr = result.correspondence
    r = distortion(corr, space_x, space_y) + 1e-6

    source_y = build_vr(space_y, eps, ny - 1)
    h_map = induced_vr_map(corr, space_x, space_y, source_y, r, max_dim=nx - 1)
    g_map = induced_vr_map(corr.transpose(), space_y, space_x, h_map.target, r,
                           max_dim=ny - 1)
    roundtrip = compose_maps(g_map, h_map)
    inclusion = inclusion_map(source_y, g_map.target)
    checks = {
        "induced_simplicial_out": check_simplicial(h_map),
        "induced_simplicial_back": check_simplicial(g_map),
        "roundtrip_contiguous": check_contiguous(roundtrip, inclusion),
    }

    merged = np.vstack([sub_y.points, sub_x.points])
    space_z = FiniteSubset(ambient, merged).to_metric_space()
    idx = list(range(ny))
    gap = float(space_z.dist[:, idx].min(axis=1).max())
    r2 = 2.0 * gap + 0.01
    source_z = build_vr(space_z, eps, space_z.size - 1)
    f_map = subset_projection_map(space_z, idx, source_z, r2,
                                  max_dim=space_z.size - 1)
    big_z = build_vr(space_z, r2 + eps, space_z.size - 1)
    into_z = compose_maps(inclusion_map(f_map.target, big_z, idx), f_map)
    checks.update({
        "projection_simplicial": check_simplicial(f_map),
        "projection_contiguous": check_contiguous(into_z, inclusion_map(source_z, big_z)),
    })
    return checks


def cmd_lemma_check(args) -> int:
    master = SplitMix64(args.seed if args.seed is not None else 0)
    budget = args.budget or 10_000_000
    totals: dict[str, int] = {}
    for t in range(args.trials):
        for name, ok in _lemma_trial(t, master, budget).items():
            totals[name] = totals.get(name, 0) + int(ok)
    all_passed = all(v == args.trials for v in totals.values())
    _emit_json({"trials": args.trials, "passes": totals,
                "all_passed": all_passed}, args.out)
    if not all_passed:
        raise CheckFailed(f"lemma checks failed: {totals} out of {args.trials}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghbound",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate lower-bound reports")
    p.add_argument("--x", help="subset JSON for X")
    p.add_argument("--y", help="subset JSON for Y (enables pair bounds)")
    p.add_argument("--inputs", help="raw inputs JSON (dh_xm, rho, ...)")
    p.add_argument("--theorems", help="comma list: convexity,circle,fillrad,jung")
    p.add_argument("--witness-grid", type=int, help="witness points per axis")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("circle-sweep", help="pair bound vs exact GH vs Hausdorff")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_circle_sweep)

    p = sub.add_parser("ratio", help="build and verify the small-ratio family")
    p.add_argument("--n", default="2,3,4,9,100", help="comma list of sizes")
    p.add_argument("--crosscheck-max", type=int, default=5,
                   help="run gh_exact for n up to this size")
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("homology", help="Betti numbers of one complex")
    p.add_argument("--complex", help="complex JSON")
    p.add_argument("--subset", help="subset JSON (builds a VR complex)")
    p.add_argument("--scale", type=float)
    p.add_argument("--cech", action="store_true",
                   help="ambient Cech instead of VR (circle exact, torus witnessed)")
    p.add_argument("--witness-grid", type=int)
    p.add_argument("--max-dim", type=int)
    p.add_argument("--up-to", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("gh-exact", help="exact GH between two spaces")
    p.add_argument("--x", required=True, help="metric-space or subset JSON")
    p.add_argument("--y", required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gh_exact)

    p = sub.add_parser("fillrad-estimate", help="filling radius via death scale")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fillrad_estimate)

    p = sub.add_parser("lemma-check", help="executable lemma validations")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemma_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad flags; that is input error
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
