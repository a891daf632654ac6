"""How far sheets sit inside the circle when sampled just inside the boundary.

For each seed, prints the worst boundary deviation at several sampling radii
next to the largest eigenvalue modulus of the D block. Large deviations at a
radius slightly below 1 track D eigenvalues close to the unit circle.

    python3 scripts/boundary_sweep.py --seeds 200 --samples 64
"""

import argparse
from dataclasses import dataclass

import numpy as np

from distvar.numerics import haar_unitary
from distvar.transfer import BlockUnitary
from distvar.variety import is_distinguished


@dataclass(frozen=True)
class SweepConfig:
    seeds: int = 200
    samples: int = 64
    m: int = 2
    n: int = 2
    radii: tuple = (1 - 1e-4, 1 - 1e-6, 1 - 1e-8, 1.0)
    show: int = 10


def worst_deviation(U, samples, radius):
    return max(c.worst_residual for c in is_distinguished(U, samples, np.inf, radius=radius).checks)


def run(cfg: SweepConfig):
    rows = []
    for seed in range(cfg.seeds):
        U = BlockUnitary(cfg.m, cfg.n, haar_unitary(cfg.m + cfg.n, seed))
        spectral = float(np.max(np.abs(np.linalg.eigvals(U.D))))
        rows.append((seed, spectral, [worst_deviation(U, cfg.samples, r) for r in cfg.radii]))
    rows.sort(key=lambda r: -r[2][1] if len(r[2]) > 1 else -r[2][0])
    header = "seed  max|eig D|  " + "  ".join(f"r=1-{1 - r:.0e}" if r < 1 else "r=1      " for r in cfg.radii)
    print(header)
    for seed, spectral, devs in rows[: cfg.show]:
        print(f"{seed:4d}  {spectral:.6f}    " + "  ".join(f"{d:.3e}" for d in devs))
    for i, r in enumerate(cfg.radii):
        print(f"radius {r!r}: worst {max(row[2][i] for row in rows):.3e} over {len(rows)} seeds")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=SweepConfig.seeds)
    p.add_argument("--samples", type=int, default=SweepConfig.samples)
    p.add_argument("--show", type=int, default=SweepConfig.show)
    a = p.parse_args()
    run(SweepConfig(seeds=a.seeds, samples=a.samples, show=a.show))


if __name__ == "__main__":
    main()
