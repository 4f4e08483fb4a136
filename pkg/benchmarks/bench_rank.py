"""Compare the compiled rank kernel with the pure-Python fallback.

    python3 benchmarks/bench_rank.py [--repeat N]

Two workloads: random dense matrices over several primes, and the
matrices the package actually reduces (linearized differentials of the
knot family, coboundary maps of the surface presentations).
"""

import argparse
import random
import timeit

from cedga._ext import _rank_py
from cedga.dga import linear_part
from cedga.lambda_family import KnotParams, normalized_dga
from cedga import surface

try:
    from cedga._ext import _rank as _compiled
except ImportError:  # extension not built
    _compiled = None


def random_matrix(rng, m, n, p, rank_cap=None):
    if rank_cap is None:
        return [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
    L = [[rng.randrange(p) for _ in range(rank_cap)] for _ in range(m)]
    R = [[rng.randrange(p) for _ in range(n)] for _ in range(rank_cap)]
    return [[sum(a * b for a, b in zip(row, col)) % p for col in zip(*R)] for row in L]


def family_matrices():
    out = []
    for p in (2, 4, 8, 16):
        c = linear_part(normalized_dga(KnotParams(p, p, p + 1, p + 1), 2))
        out += [A for A in c.matrices.values() if A and A[0]]
    for g in (5, 10, 20):
        C = surface.build_C(g)
        for k in (0, 1):
            M = surface._d_matrix(C, k)
            if M and M[0]:
                out.append(M)
    return out


def bench(fn, cases, repeat):
    return min(timeit.repeat(lambda: [fn(M, p) for M, p in cases], number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    workloads = {}
    for p in (2, 3, 2**31 - 1):
        for size in (40, 120, 300):
            M = random_matrix(rng, size, size, p, rank_cap=size * 2 // 3)
            workloads[f"random {size}x{size} mod {p}"] = [(M, p)]
    workloads["family + surface matrices mod 2"] = [(M, 2) for M in family_matrices()]

    print(f"{'workload':40} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, cases in workloads.items():
        r_py = [_rank_py.rank_mod_p(M, p) for M, p in cases]
        t_py = bench(_rank_py.rank_mod_p, cases, args.repeat)
        if _compiled is None:
            print(f"{name:40} {t_py:10.4f} {'n/a':>10} {'':>8}")
            continue
        r_c = [_compiled.rank_mod_p(M, p) for M, p in cases]
        assert r_c == r_py, name
        t_c = bench(_compiled.rank_mod_p, cases, args.repeat)
        print(f"{name:40} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
