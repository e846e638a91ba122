"""Wall-clock sweep of the bounded-color and exact-weight solvers on seeded instances.

    python3 scripts/scaling.py --n 20 40 --k 1 2 3 4 --seeds 3

Observational only: the numbers say how this implementation behaves on one
machine, not anything about asymptotic bounds.
"""

import argparse
import csv
import sys
import time
from dataclasses import asdict, dataclass

from fptiso.bounded_color import BoundedColorInstance, color_exact_cnf_ga
from fptiso.exact_weight import exact_cnf_hga
from fptiso.instances import generate
from fptiso.oracle import automorphism_group


@dataclass(frozen=True)
class SweepConfig:
    ns: tuple[int, ...] = (20, 40)
    ks: tuple[int, ...] = (1, 2, 3, 4)
    seeds: int = 3
    b: int = 3
    p: float = 0.3
    solvers: tuple[str, ...] = ("bounded-color", "exact-weight")


@dataclass
class Row:
    solver: str
    n: int
    k: int
    seed: int
    aut_order: int
    sat: bool
    seconds: float


def run_one(solver, x, k):
    if solver == "bounded-color":
        return color_exact_cnf_ga(BoundedColorInstance.from_colors(x, k))
    return exact_cnf_hga(x, k)


def sweep(cfg: SweepConfig):
    for n in cfg.ns:
        for seed in range(cfg.seeds):
            x = generate("bounded", n, seed, b=cfg.b, p=cfg.p, symmetric=True).x
            order = automorphism_group(x).order()
            for solver in cfg.solvers:
                for k in cfg.ks:
                    start = time.perf_counter()
                    sigma = run_one(solver, x, k)
                    yield Row(solver, n, k, seed, order, sigma is not None, time.perf_counter() - start)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=list(SweepConfig.ns))
    ap.add_argument("--k", type=int, nargs="+", default=list(SweepConfig.ks))
    ap.add_argument("--seeds", type=int, default=SweepConfig.seeds)
    ap.add_argument("--p", type=float, default=SweepConfig.p)
    ap.add_argument("--solver", choices=SweepConfig.solvers, nargs="+", default=list(SweepConfig.solvers))
    ap.add_argument("-o", help="CSV output (default stdout)")
    args = ap.parse_args(argv)
    cfg = SweepConfig(tuple(args.n), tuple(args.k), args.seeds, p=args.p, solvers=tuple(args.solver))
    out = open(args.o, "w", newline="") if args.o else sys.stdout
    writer = csv.DictWriter(out, fieldnames=list(Row.__dataclass_fields__))
    writer.writeheader()
    for row in sweep(cfg):
        d = asdict(row)
        d["seconds"] = f"{row.seconds:.4f}"
        writer.writerow(d)
        out.flush()
    if args.o:
        out.close()


if __name__ == "__main__":
    main()
