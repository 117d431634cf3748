"""Time the ideal -> datum -> ideal round trip and both Hilbert-Chow paths by colength."""

import argparse
import random
import time
from collections import defaultdict
from dataclasses import dataclass

from hilbadhm.adhm import act, datum_to_ideal, ideal_to_datum
from hilbadhm.corpus import monomial_ideal_corpus, random_invertible
from hilbadhm.cycle import cycles_agree, hilbert_chow_approx, hilbert_chow_exact
from hilbadhm.poly import groebner


@dataclass
class TimingConfig:
    n: int = 3
    max_colength: int = 7
    order: str = "grevlex"
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=TimingConfig.n)
    ap.add_argument("--max-colength", type=int, default=TimingConfig.max_colength)
    ap.add_argument("--order", default=TimingConfig.order)
    ap.add_argument("--seed", type=int, default=TimingConfig.seed)
    cfg = TimingConfig(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    stats = defaultdict(lambda: [0, 0.0, 0.0, 0.0, 0])
    for gens in monomial_ideal_corpus(cfg.n, cfg.max_colength):
        t0 = time.perf_counter()
        j = groebner(gens, cfg.order)
        x = ideal_to_datum(j)
        assert datum_to_ideal(x, cfg.order).reduced_gb == j.reduced_gb
        t1 = time.perf_counter()
        y = act(random_invertible(x.c, rng), x)
        exact = hilbert_chow_exact(y)
        t2 = time.perf_counter()
        approx = hilbert_chow_approx(y, 1e-8, seed=cfg.seed)
        t3 = time.perf_counter()
        row = stats[x.c]
        row[0] += 1
        row[1] += t1 - t0
        row[2] += t2 - t1
        row[3] += t3 - t2
        row[4] += cycles_agree(exact, approx, 1e-8)
    print(f"n={cfg.n} order={cfg.order} seed={cfg.seed}")
    print(f"{'c':>3} {'ideals':>7} {'roundtrip ms':>13} {'exact HC ms':>12} {'approx HC ms':>13} {'agree':>6}")
    for c in sorted(stats):
        k, a, b, d, ok = stats[c]
        print(f"{c:>3} {k:>7} {1e3 * a / k:>13.2f} {1e3 * b / k:>12.2f} {1e3 * d / k:>13.2f} {ok:>6}")


if __name__ == "__main__":
    main()
