"""How often does the randomized search find a stable point near an unstable commuting tuple?

Compares three input families: diagonal tuples with a bad I, single Jordan
towers with I killed by B_0, and non-cyclic tuples (repeated joint
eigenvalue), where no stable datum with the same B exists and only
deformations of B could help.
"""

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from hilbadhm.adhm import AdhmDatum, is_commuting, is_stable, stabilize_search
from hilbadhm.corpus import diagonal_datum, jordan_tower_datum
from hilbadhm.exactalg import Matrix


@dataclass
class ProbeConfig:
    n: int = 3
    max_c: int = 6
    samples: int = 30
    trials: int = 40
    radius: str = "1"
    seed: int = 0


def repeated_point_datum(n, c, rng):
    """Two copies of one point plus distinct others: C[B] is not cyclic on V."""
    pts = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(c - 1)]
    pts = [pts[0]] + pts
    B = tuple(Matrix.diag([p[i] for p in pts]) for i in range(n))
    return AdhmDatum(B, Matrix.column([1] * c))


FAMILIES = {
    "diagonal": diagonal_datum,
    "jordan_tower": jordan_tower_datum,
    "repeated_point": repeated_point_datum,
}


def run(cfg: ProbeConfig) -> dict:
    rng = random.Random(cfg.seed)
    out = {}
    for name, make in FAMILIES.items():
        found = kept = bad = 0
        t0 = time.perf_counter()
        for k in range(cfg.samples):
            c = rng.randint(2, cfg.max_c)
            x = make(cfg.n, c, rng)
            y = stabilize_search(x, cfg.trials, cfg.seed + k, Fraction(cfg.radius))
            if y is None:
                continue
            if is_commuting(y)[0] and is_stable(y):
                found += 1
                kept += y.B == x.B
            else:
                bad += 1
        out[name] = {"found": found, "same_B": kept, "false_positives": bad,
                     "samples": cfg.samples, "seconds": round(time.perf_counter() - t0, 2)}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, v in asdict(ProbeConfig()).items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(v), default=v)
    cfg = ProbeConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg), "results": run(cfg)}, indent=2))


if __name__ == "__main__":
    main()
