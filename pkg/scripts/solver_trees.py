"""Tree-sum against coefficient recursion on seeded gauge flows: counts the
weighted planar trees that survive pruning and times both solvers."""
import argparse
import time

from mcmodels.linfty import gauge_ode, random_fixture, random_gauge, random_mc
from mcmodels.solvers import _valued_trees, solve_ode_recursive, solve_ode_trees
from mcmodels.trees import enumerate_wptrees


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--degree-cap", type=int, default=6)
    ap.add_argument("--weight-cap", type=int, default=4)
    args = ap.parse_args()
    for seed in range(args.seeds):
        A = random_fixture(seed, 3, args.weight_cap)
        ode = gauge_ode(A, random_gauge(A, seed + 11), random_mc(A, seed + 7), args.degree_cap)
        allowed = {(n, k + 1) for n, k in ode.ops}
        total = len(enumerate_wptrees(args.degree_cap, allowed))
        alive = len(_valued_trees(ode, args.degree_cap))
        t0 = time.perf_counter()
        rec = solve_ode_recursive(ode)
        t1 = time.perf_counter()
        trees = solve_ode_trees(ode)
        t2 = time.perf_counter()
        print(f"seed {seed}: trees {alive}/{total} nonzero, recursion {t1 - t0:.2f}s, "
              f"tree sum {t2 - t1:.2f}s, agree {rec == trees}")


if __name__ == "__main__":
    main()
