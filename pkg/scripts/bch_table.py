"""Print BCH(λ, μ) by weight in right-normed Lie monomials and time the
primitivity check."""
import argparse
import time

from mcmodels.core import scalar_to_str
from mcmodels.freelie import FreeAlg, bch, free_nilpotent_lie, is_primitive


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cap", type=int, default=5)
    args = ap.parse_args()
    alg = FreeAlg.of({"l": 0, "m": 0}, args.cap)
    z = bch(alg.gen("l"), alg.gen("m"))
    _, _, _, coords = free_nilpotent_lie({"l": 0, "m": 0}, args.cap, with_coords=True)
    for k in range(1, args.cap + 1):
        part = coords(z.weight_part(k))
        terms = ", ".join(f"{scalar_to_str(c)} {b}" for b, c in part.sorted_items())
        print(f"weight {k}: {terms or '0'}")
    t = time.perf_counter()
    ok = is_primitive(z)
    print(f"primitive: {ok} ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
