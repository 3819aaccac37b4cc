"""Float scan for the earliest PST candidate time of the half/quarter-class PST graphs, circulant and higher rank.

Heuristic only: the exact verdict at pi/2 is printed next to the first grid hit.
"""

import argparse
import math

from pst_lab.abelian import GroupSpec
from pst_lab.analysis import find_pst_quarter, scan_pst_float
from pst_lab.constructions import corollary_graphs, default_family_choice, enumerate_divisor_family, theorem3e_graphs


def cases(max_n: int):
    for n in range(4, max_n + 1, 4):
        # the circulant PST graphs need n not in D; n = 4 has no such member
        member = next((m for m in enumerate_divisor_family(n) if not m.has_loops), None)
        if member is None:
            continue
        half, quarter = corollary_graphs(n, member.D)
        yield f"ICG_{n} + n/2", half
        yield f"ICG_{n} + n/4", quarter
    for moduli in [(4, 2), (4, 3), (8, 2), (8, 3), (12, 2), (4, 2, 2)]:
        if math.prod(moduli) <= max_n:
            half, quarter = theorem3e_graphs(GroupSpec(moduli), 1, default_family_choice(moduli[0]))
            yield f"{moduli} half", half
            yield f"{moduli} quarter", quarter


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=48)
    ap.add_argument("--step", type=float, default=math.pi / 1200)
    ap.add_argument("--tol", type=float, default=1e-6)
    args = ap.parse_args()

    print(f"{'graph':22s} {'first hit t':>12s} {'t/(pi/2)':>9s}  exact at pi/2")
    for name, g in cases(args.max_n):
        hits = scan_pst_float(g, t_min=args.step, t_max=math.pi / 2 + args.step / 2, step=args.step, tol=args.tol)
        exact = find_pst_quarter(g, 1)
        exact_str = ", ".join(f"0 -> {g.group.format(p.shift)} phase {p.phase}" for p in exact) or "none"
        if hits:
            t = hits[0].t
            print(f"{name:22s} {t:12.6f} {t / (math.pi / 2):9.4f}  {exact_str}")
        else:
            print(f"{name:22s} {'-':>12s} {'-':>9s}  {exact_str}")


if __name__ == "__main__":
    main()
