"""Command-line front end.  Every subcommand prints one JSON report; exact
rationals are written as "p/q" strings.  Exit codes: 0 ok, 1 failed
validation, 2 usage error."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .config import RunConfig
from .core import InvalidInput, PreconditionViolation, UnsupportedInstance, Vec, scalar_to_str

SUBCOMMANDS = ("bch", "ls-algebra", "gauge-flow", "transfer", "dupont-verify", "counterexample",
               "rectify", "mc-model", "solve-ode", "solve-fp", "deform", "check-linfty", "acceptance")


class ValidationFailure(Exception):
    def __init__(self, report):
        super().__init__("validation failed")
        self.report = report


def jsonable(obj):
    if isinstance(obj, Fraction):
        return scalar_to_str(obj)
    if isinstance(obj, Vec):
        return [[jsonable(k), scalar_to_str(c)] for k, c in obj.sorted_items()]
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return obj


def _tensor_terms(t) -> list:
    return [["".join(map(str, w)) or "1", scalar_to_str(c)] for w, c in t.sorted_terms()]


# ---------------------------------------------------------------- subcommands


def cmd_bch(cfg: RunConfig):
    from .freelie import FreeAlg, bch, is_primitive

    alg = FreeAlg.of({"l": 0, "m": 0}, cfg.cap)
    z = bch(alg.gen("l"), alg.gen("m"))
    by_weight = {}
    for w, c in z.sorted_terms():
        by_weight.setdefault(len(w), []).append(["".join(w), scalar_to_str(c)])
    return {"cap": cfg.cap, "bch": _tensor_terms(z), "by_weight": by_weight, "primitive": is_primitive(z)}


def cmd_ls_algebra(cfg: RunConfig):
    from .freelie import lawrence_sullivan

    alg, d = lawrence_sullivan(cfg.cap)
    report = {"cap": cfg.cap, "d": {g: _tensor_terms(d(alg.gen(g))) for g, _ in alg.gens},
              "d_squared_zero": d.square_vanishes()}
    if not report["d_squared_zero"]:
        raise ValidationFailure(report)
    return report


def cmd_gauge_flow(cfg: RunConfig):
    from .linfty import gauge_flow, mc_residual, random_fixture, random_gauge, random_mc

    A = random_fixture(cfg.seed, cfg.arity_cap, cfg.cap)
    x0 = random_mc(A, cfg.seed + 1)
    lam = random_gauge(A, cfg.seed + 2)
    x1 = gauge_flow(A, lam, x0, cfg.degree_cap)
    res = mc_residual(A, x1)
    report = {"seed": cfg.seed, "x0": x0, "lambda": lam, "x1": x1, "residual": res}
    if res:
        raise ValidationFailure(report)
    return report


def cmd_transfer(cfg: RunConfig):
    from .acceptance import an_transfer
    from .htt import check_ainfty

    n = int(cfg.extra.get("n") or 2)
    if n < 2:
        raise InvalidInput("--n ≥ 2")
    C, small, icomps, m, i = an_transfer(n, cfg.arity_cap)
    from itertools import product

    ops, comps = [], []
    for k in range(1, cfg.arity_cap + 1):
        for combo in product(C.small_basis, repeat=k):
            v = Vec(m[k](*combo))
            if v:
                ops.append({"n": k, "inputs": list(combo), "output": v})
            w = Vec(i[k](*combo))
            if w:
                comps.append({"n": k, "inputs": list(combo), "output": w})
    rel = check_ainfty(small, cfg.arity_cap)
    report = {"algebra": f"A^{n}", "operations": ops, "i_infinity": comps, "relations": rel}
    if not rel.ok:
        raise ValidationFailure(report)
    return report


def cmd_dupont_verify(cfg: RunConfig):
    from .dupont import verify_contraction

    n = int(cfg.extra.get("n") or 2)
    if not 1 <= n <= 3:
        raise InvalidInput("--n between 1 and 3")
    rep = verify_contraction(n, cfg.degree_cap)
    if not rep.ok:
        raise ValidationFailure(rep)
    return rep


def cmd_counterexample(cfg: RunConfig):
    from .acceptance import _poly
    from .convolution import counterexample_run

    first, second = counterexample_run(4)
    report = {"first": _poly(first), "second": _poly(second)}
    report["pass"] = report == {"first": "-x^3", "second": "0"}
    if not report["pass"]:
        raise ValidationFailure(report)
    return report


def cmd_rectify(cfg: RunConfig):
    from .linfty import strict_lie_fixture
    from .mcspace import LevelModel, random_mc_cell, random_mc_path, rect_report

    M = LevelModel(strict_lie_fixture(cfg.seed, cfg.cap, (0,)), 1)
    val = M.validate(seed=cfg.seed)
    if not val.ok:
        raise ValidationFailure({"validation": val})
    cells = [random_mc_cell(M, cfg.seed + j) for j in range(2)]
    paths = [random_mc_path(M, cfg.seed + 50 + j) for j in range(2)]
    rep = rect_report(M, cells, paths)
    report = {"seed": cfg.seed, "validation": val, "rect": rep,
              "rectified_path": M.rect(paths[0])}
    if not rep.ok:
        raise ValidationFailure(report)
    return report


def cmd_mc_model(cfg: RunConfig):
    from .mcspace import build_mc0, build_mc1, build_mcinf0, build_mcinf1

    level = int(cfg.extra.get("level") or 1)
    kind = cfg.extra.get("kind") or "lie"
    if level not in (0, 1) or kind not in ("lie", "inf"):
        raise InvalidInput("--level 0|1, --kind lie|inf")
    if kind == "lie":
        alg, d = (build_mc0 if level == 0 else build_mc1)(cfg.cap)
        return {"level": level, "kind": kind,
                "d": {g: _tensor_terms(d(alg.gen(g))) for g, _ in alg.gens},
                "d_squared_zero": d.square_vanishes()}
    if level == 0:
        A = build_mcinf0(cfg.cap)
        gens, report = ["a"], {"d_squared_zero": not A.d_squared(["a"])}
    else:
        A, rep = build_mcinf1(min(cfg.cap, 5))
        gens, report = ["a0", "a1", "lam"], rep.to_json()
    report.update({"level": level, "kind": kind,
                   "d": {g: [[repr(k), scalar_to_str(c)] for k, c in A.ell(1, A.gen(g)).sorted_items()]
                         for g in gens}})
    if not (report.get("ok", True) and report["d_squared_zero"]):
        raise ValidationFailure(report)
    return report


def cmd_solve_ode(cfg: RunConfig):
    from .linfty import gauge_ode, random_fixture, random_gauge, random_mc
    from .solvers import ode_residual, solve_ode_recursive, solve_ode_trees

    A = random_fixture(cfg.seed, cfg.arity_cap, cfg.cap)
    ode = gauge_ode(A, random_gauge(A, cfg.seed + 2), random_mc(A, cfg.seed + 1), cfg.degree_cap)
    rec = solve_ode_recursive(ode)
    trees = solve_ode_trees(ode)
    res = ode_residual(ode, rec)
    report = {"seed": cfg.seed, "coefficients": rec, "trees_agree": rec == trees,
              "residual_zero": not any(res)}
    if not (report["trees_agree"] and report["residual_zero"]):
        raise ValidationFailure(report)
    return report


def cmd_solve_fp(cfg: RunConfig):
    from .mcspace import _mcinf1_skeleton, dlam_fixed_point, dlam_tree_sum

    cap = min(cfg.cap, 5)
    A = _mcinf1_skeleton(cap, strict=False)
    pic = dlam_fixed_point(A, "picard")
    gr = dlam_fixed_point(A, "graded")
    ts = dlam_tree_sum(A)
    report = {"cap": cap, "dlam": [[repr(k), scalar_to_str(c)] for k, c in pic.sorted_items()],
              "schedules_agree": pic == gr, "tree_sum_agrees": pic == ts}
    if not (report["schedules_agree"] and report["tree_sum_agrees"]):
        raise ValidationFailure(report)
    return report


def cmd_deform(cfg: RunConfig):
    from . import deformation as df

    path = cfg.extra.get("algebra")
    obj = json.loads(Path(path).read_text()) if path else None
    m = df.algebra_from_json(obj) if obj else df.dual_numbers()
    check = cfg.extra.get("check") or "mc"
    if check == "mc":
        ok = df.is_mc_associative(m)
        report = {"check": "mc", "associative": ok,
                  "half_bracket": df.gerstenhaber(m, m).scale(Fraction(1, 2))}
        if cfg.extra.get("hochschild"):
            report["HH2_dim"] = df.hochschild_dimension(m, 2) if ok else None
        return report
    if check == "cocycle":
        if not obj or "deformation" not in obj:
            raise InvalidInput("--check cocycle needs a 'deformation' entry in the algebra file")
        f = df.cochain_from_json(m.ids, 2, obj["deformation"])
        ok = df.infinitesimal_deformation_check(m, f)
        report = {"check": "cocycle", "cocycle": ok}
        if not ok:
            raise ValidationFailure(report)
        return report
    raise InvalidInput("--check mc|cocycle")


def cmd_check_linfty(cfg: RunConfig):
    from .core import GradedSpace
    from .linfty import SLInfty, check_relations, random_fixture

    path = cfg.extra.get("input")
    if path:
        obj = json.loads(Path(path).read_text())
        space = GradedSpace.from_json(obj)
        tables = {}
        for e in obj["brackets"]:
            from .core import scalar
            tables.setdefault(e["n"], {})[tuple(e["inputs"])] = Vec(
                {k: scalar(c) for k, c in e["output"]})
        A = SLInfty.from_tables(space, tables, weight_cap=obj.get("weight_cap"))
    else:
        A = random_fixture(cfg.seed, cfg.arity_cap, cfg.cap)
    rep = check_relations(A, min(cfg.arity_cap + 1, A.arity_cap + 1))
    report = {"relations": rep}
    if not rep.ok:
        raise ValidationFailure(report)
    return report


def cmd_acceptance(cfg: RunConfig):
    from .acceptance import run_all

    only = cfg.extra.get("only")
    numbers = [int(x) for x in only.split(",")] if only else None
    results = run_all(numbers)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = {"results": [r.to_json() for r in results], "all_pass": all(r.ok for r in results)}
    if not report["all_pass"]:
        raise ValidationFailure(report)
    return report


COMMANDS = {name: globals()["cmd_" + name.replace("-", "_")] for name in SUBCOMMANDS}


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcmodels", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--cap", type=int, default=3)
        s.add_argument("--arity-cap", type=int, default=3)
        s.add_argument("--degree-cap", type=int, default=6)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--out", default=None, help="'json' or a file path; stdout by default")
        if name in ("transfer", "dupont-verify"):
            s.add_argument("--n", type=int, default=None)
        if name == "mc-model":
            s.add_argument("--level", type=int, default=1)
            s.add_argument("--kind", choices=("lie", "inf"), default="lie")
        if name == "deform":
            s.add_argument("--algebra", default=None)
            s.add_argument("--check", choices=("mc", "cocycle"), default="mc")
            s.add_argument("--hochschild", action="store_true")
        if name == "check-linfty":
            s.add_argument("--input", default=None)
        if name == "acceptance":
            s.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return p


def run(argv=None) -> tuple[int, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    common = {"cap", "arity_cap", "degree_cap", "seed", "out", "subcommand"}
    extra = {k: v for k, v in vars(args).items() if k not in common}
    try:
        cfg = RunConfig(args.subcommand, args.cap, args.arity_cap, args.degree_cap, args.seed,
                        args.out, extra)
    except InvalidInput as e:
        parser.error(str(e))
    try:
        report, code = COMMANDS[cfg.subcommand](cfg), 0
    except ValidationFailure as e:
        report, code = e.report, 1
    except (InvalidInput, PreconditionViolation, UnsupportedInstance) as e:
        report, code = {"error": type(e).__name__, "message": str(e)}, 1
    report = {"subcommand": cfg.subcommand, "config": cfg.to_json(), "report": report, "ok": code == 0}
    return code, jsonable(report)


def main(argv=None) -> int:
    code, report = run(argv)
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    out = report["config"]["out"]
    if out and out not in ("json", "-"):
        Path(out).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
