"""Time the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from lagrange_weyl import kernels
from lagrange_weyl.groups import parse_group_spec
from lagrange_weyl.phase_space import PhaseSpace, standard_multiplier
from lagrange_weyl.weyl import schrodinger_rep


def workloads():
    for spec in ("3", "2x2", "6", "2x4"):
        G = parse_group_spec(spec)
        m = standard_multiplier(G)
        xi = m.xi
        add = xi.add_table
        sigma = np.ascontiguousarray(m.sigma_table)
        mask = np.zeros(xi.order, dtype=np.uint8)
        gens = np.array([1, xi.order // 2 + 1], dtype=np.int64)
        rep = schrodinger_rep(PhaseSpace.standard(G))
        M = rep.modulus
        rows = np.ascontiguousarray(np.stack([U.rows for U in rep.matrices]))
        phases = np.ascontiguousarray(np.stack([U.over(M) for U in rep.matrices]))
        table = np.ascontiguousarray(m.lifted(M))
        yield spec, "cocycle_defects", lambda k: k.cocycle_defects(add, m.table, m.modulus)
        yield spec, "closure_mask", lambda k: k.closure_mask(add, mask, gens)
        yield spec, "annihilator_mask", lambda k: k.annihilator_mask(sigma, mask)
        yield spec, "projective_defects", lambda k: k.projective_defects(rows, phases, add, table, M)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    impls = kernels.implementations()
    names = list(impls)
    print(f"{'group':>6} {'kernel':<20}" + "".join(f"{n:>12}" for n in names) +
          ("     speedup" if len(names) == 2 else ""))
    for spec, name, fn in workloads():
        times = []
        for n in names:
            impl = impls[n]
            number = 1
            while timeit.timeit(lambda: fn(impl), number=number) < 0.05 and number < 10_000:
                number *= 4
            best = min(timeit.repeat(lambda: fn(impl), number=number, repeat=args.repeat)) / number
            times.append(best)
        row = f"{spec:>6} {name:<20}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
