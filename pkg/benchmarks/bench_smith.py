"""Time the compiled Smith normal form kernel against the pure-Python one.

    python3 benchmarks/bench_smith.py [--repeat N] [--seed S]

Each workload is run through both backends and the diagonals are compared.
"full" computes U and V as well as the diagonal; "diag" skips them.  When
an entry outgrows int64 the compiled backend reruns the matrix in
Python, and the "fallback" column counts those matrices.
"""

from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from crossmod.grouprings import fox_boundaries, zq_matrix_to_int64
from crossmod.linalg import BACKEND, smith_normal_form
from crossmod.presentations import CORPUS, enumerate_presentation


def random_matrices(rng: random.Random, count: int, size: int, bound: int) -> list[np.ndarray]:
    return [np.array([[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)], dtype=np.int64)
            for _ in range(count)]


def fox_matrices(names: list[str]):
    out = []
    for name in names:
        p, Q, wm = enumerate_presentation(CORPUS[name])
        d2, d1 = fox_boundaries(p, Q, wm)
        out.append(zq_matrix_to_int64(d2))
    return out


def run(workload, backend: str, full: bool = True) -> list[tuple[int, ...]]:
    return [tuple(smith_normal_form(A, want_u=full, want_v=full, backend=backend).diagonal) for A in workload]


def fallbacks(workload, full: bool) -> int:
    return sum(smith_normal_form(A, want_u=full, want_v=full).backend == "python" for A in workload)


def best_time(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if BACKEND != "compiled":
        raise SystemExit("compiled backend unavailable (not built, or CROSSMOD_PURE_PYTHON is set)")
    rng = random.Random(args.seed)
    workloads = {
        "500 random 8x8, entries in [-9, 9]": random_matrices(rng, 500, 8, 9),
        "50 random 20x20, entries in [-9, 9]": random_matrices(rng, 50, 20, 9),
        "cover d2 for S3, Q8, D4, A4": fox_matrices(["S3", "Q8", "D4", "A4"]),
    }
    print(f"{'workload':38s} {'mode':>4s} {'compiled':>9s} {'python':>9s} {'speedup':>8s} {'fallback':>9s}")
    for name, work in workloads.items():
        if run(work, "c") != run(work, "python"):
            raise SystemExit(f"backends disagree on {name}")
        for full in (True, False):
            tc = best_time(lambda: run(work, "c", full), args.repeat)
            tp = best_time(lambda: run(work, "python", full), args.repeat)
            fb = f"{fallbacks(work, full)}/{len(work)}"
            print(f"{name:38s} {'full' if full else 'diag':>4s} {tc:9.4f} {tp:9.4f} {tp / tc:7.1f}x {fb:>9s}")


if __name__ == "__main__":
    main()
