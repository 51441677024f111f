"""Transferred A∞ operations on H(Aⁿ) and on the Whitney forms C_1, printed
as tables of nonzero values."""
import argparse
from itertools import product

from mcmodels.acceptance import an_transfer
from mcmodels.core import Vec, scalar_to_str
from mcmodels.dupont import transfer_cn_structure


def show(name, ops, basis, arity_cap):
    print(f"== {name}")
    for k in range(1, arity_cap + 1):
        for combo in product(basis, repeat=k):
            v = Vec(ops[k](*combo)) if k in ops else Vec()
            if v:
                rhs = " + ".join(f"{scalar_to_str(c)} {key}" for key, c in v.sorted_items())
                print(f"  m_{k}{combo} = {rhs}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--arity-cap", type=int, default=4)
    args = ap.parse_args()
    C, small, icomps, m, i = an_transfer(args.n, args.arity_cap)
    show(f"H(A^{args.n})", m, list(C.small_basis), args.arity_cap)
    show(f"i_inf on H(A^{args.n})", i, list(C.small_basis), args.arity_cap)
    _, m1, C1 = transfer_cn_structure(1, args.arity_cap)
    show("C_1", m1, list(C1.small_basis), min(args.arity_cap, 3))


if __name__ == "__main__":
    main()
