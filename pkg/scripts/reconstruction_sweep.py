"""Rebuild rank (2,2) variety polynomials from their invariants and compare.

Reports the error distribution of the reconstruction against the
determinant expansion, and how it degrades as |det A| shrinks.

    python3 scripts/reconstruction_sweep.py --count 5000
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from distvar.moduli import invariants, reconstruct_Q
from distvar.numerics import haar_unitary
from distvar.transfer import BlockUnitary
from distvar.variety import variety_poly


@dataclass(frozen=True)
class SweepConfig:
    count: int = 1000
    first_seed: int = 0
    det_floor: float = 1e-8


def run(cfg: SweepConfig):
    dets, errs = [], []
    start = time.perf_counter()
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.count):
        U = BlockUnitary(2, 2, haar_unitary(4, seed))
        inv = invariants(U)
        if abs(inv.detA) <= cfg.det_floor:
            continue
        dets.append(abs(inv.detA))
        errs.append(reconstruct_Q(inv).deviation(variety_poly(U)))
    elapsed = time.perf_counter() - start
    dets, errs = np.array(dets), np.array(errs)
    print(f"{len(errs)} unitaries in {elapsed:.2f}s")
    print(f"relative error: median {np.median(errs):.2e}, 99th pct {np.quantile(errs, 0.99):.2e}, max {errs.max():.2e}")
    edges = [0, 1e-3, 1e-2, 1e-1, 1.0]
    for lo, hi in zip(edges, edges[1:]):
        sel = (dets > lo) & (dets <= hi)
        if sel.any():
            print(f"|det A| in ({lo:g}, {hi:g}]: n={sel.sum():5d}  max error {errs[sel].max():.2e}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=SweepConfig.count)
    p.add_argument("--first-seed", type=int, default=SweepConfig.first_seed)
    a = p.parse_args()
    run(SweepConfig(count=a.count, first_seed=a.first_seed))


if __name__ == "__main__":
    main()
