"""Command-line front end.

    fptiso solve exact-weight --k 2 -i c4.json
    fptiso solve colga --k 3 -i c4_blue.json
    fptiso verify exact-weight -i c4.json --k 2 -w witness.json
    fptiso gen redblue --n 8 --seed 3 -o rb.json

Exit codes: 0 SAT (or valid witness), 1 UNSAT (or invalid witness),
2 bad input, 3 timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import signal
import sys
from pathlib import Path
from typing import Sequence

from . import oracle
from .bounded_color import BoundedColorInstance, color_exact_cnf_ga
from .cnf import CnfFormula, satisfies
from .cnf_iso import cnf_hgi
from .colga import ColGaInstance, colga
from .complexity import exact_complexity_iso
from .exact_weight import exact_cnf_hga, exact_cnf_hgi
from .hypergraph import InstanceError, is_isomorphism
from .instances import KINDS, InstanceFile, dumps, generate, load, load_formula
from .perm import Permutation

SAT, UNSAT, BAD_INPUT, TIMEOUT = 0, 1, 2, 3
MODES = ("bounded-color", "exact-weight", "cnf-iso", "exact-complexity", "colga")


class _Timeout(Exception):
    pass


def _on_alarm(signum, frame):
    raise _Timeout()


def _param(args, inst: InstanceFile, name: str) -> int:
    val = getattr(args, name)
    if val is None:
        val = inst.params.get(name)
    if val is None:
        raise InstanceError(f"--{name} is required for this mode")
    if val < 0:
        raise InstanceError(f"--{name} must be non-negative")
    return val


def _formula(args, inst: InstanceFile) -> CnfFormula:
    f = load_formula(args.f) if args.f else (inst.formula or CnfFormula.true())
    f.check_range(inst.x.n)
    return f


def _second(args, first: InstanceFile) -> InstanceFile:
    if args.j is None:
        return first
    other = load(args.j)
    if other.x.n != first.x.n:
        raise InstanceError(f"instances have {first.x.n} and {other.x.n} vertices")
    return other


def _colga_instance(inst: InstanceFile, k: int) -> ColGaInstance:
    n = inst.x.n
    red = set(inst.red or ())
    blue = set(inst.blue) if inst.blue is not None else set(range(n)) - red
    if inst.red is None:
        red = set(range(n)) - blue
    return ColGaInstance.of(inst.x, red, blue, k)


def _solve(args) -> Permutation | None:
    inst = load(args.i)
    x = inst.x
    brute = args.oracle
    limit = oracle.BRUTE_LIMIT
    mode = args.mode
    if mode == "bounded-color":
        k = _param(args, inst, "k")
        f = _formula(args, inst)
        bc = BoundedColorInstance.from_colors(x, k, f, args.bound)
        if brute:
            return oracle.brute_color_exact_cnf_ga(x, bc.classes, k, f, limit)
        return color_exact_cnf_ga(bc, args.threads)
    if mode == "exact-weight":
        k = _param(args, inst, "k")
        f = _formula(args, inst)
        y = _second(args, inst).x
        if brute:
            return oracle.brute_exact_cnf_iso(x, y, k, f, limit)
        if args.j is None:
            return exact_cnf_hga(x, k, f, args.d, args.threads)
        return exact_cnf_hgi(x, y, k, f, args.d, args.threads)
    if mode == "cnf-iso":
        f = _formula(args, inst)
        y = _second(args, inst).x
        return oracle.brute_cnf_iso(x, y, f, limit) if brute else cnf_hgi(x, y, f)
    if mode == "exact-complexity":
        t = _param(args, inst, "t")
        y = _second(args, inst).x
        return oracle.brute_exact_complexity_iso(x, y, t, limit) if brute else exact_complexity_iso(x, y, t, args.d)
    k = _param(args, inst, "k")
    cg = _colga_instance(inst, k)
    return oracle.brute_colga(x, cg.red, cg.blue, k, limit) if brute else colga(cg)


def check_witness(args, perm: Permutation) -> bool:
    inst = load(args.i)
    x = inst.x
    if perm.n != x.n:
        return False
    y = _second(args, inst).x if args.mode in ("exact-weight", "cnf-iso", "exact-complexity") else x
    if not is_isomorphism(perm, x, y):
        return False
    mode = args.mode
    if mode == "bounded-color":
        return perm.weight() == _param(args, inst, "k") and satisfies(perm, _formula(args, inst))
    if mode == "exact-weight":
        return perm.weight() == _param(args, inst, "k") and satisfies(perm, _formula(args, inst))
    if mode == "cnf-iso":
        return satisfies(perm, _formula(args, inst))
    if mode == "exact-complexity":
        return perm.complexity() == _param(args, inst, "t")
    cg = _colga_instance(inst, _param(args, inst, "k"))
    return cg.blue_weight(perm) == cg.k


def _read_witness(path: str) -> Permutation:
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        if data.get("status") != "SAT" or "perm" not in data:
            raise InstanceError("witness file carries no permutation")
        data = data["perm"]
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise InstanceError("witness must be a list of images")
    return Permutation(data)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fptiso", description="Constrained (hyper)graph isomorphism solvers.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, witness=False):
        p.add_argument("mode", choices=MODES)
        p.add_argument("-i", required=True, help="instance JSON")
        p.add_argument("-j", help="second instance for isomorphism modes")
        p.add_argument("-f", help="formula JSON (list of clauses, or an object with 'formula')")
        p.add_argument("--k", type=int)
        p.add_argument("--t", type=int)
        p.add_argument("--d", type=int, help="hyperedge size bound to enforce")
        if witness:
            p.add_argument("-w", required=True, help="witness JSON")

    sp = sub.add_parser("solve", help="run a solver")
    common(sp)
    sp.add_argument("--bound", type=int, help="color class size bound (bounded-color)")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--timeout", type=float, help="seconds; exit 3 when exceeded")
    sp.add_argument("--oracle", action="store_true", help="use the brute-force backend")

    vp = sub.add_parser("verify", help="check a witness")
    common(vp, witness=True)

    gp = sub.add_parser("gen", help="generate a random instance")
    gp.add_argument("kind", choices=KINDS)
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--p", type=float, default=0.4)
    gp.add_argument("--b", type=int, default=3)
    gp.add_argument("--d", type=int, default=3)
    gp.add_argument("--colors", type=int, default=1)
    gp.add_argument("--clauses", type=int, default=2)
    gp.add_argument("--symmetric", action="store_true", help="bounded: close edges under a hidden class-cycling permutation")
    gp.add_argument("-o", help="output file (default stdout)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "gen":
            inst = generate(
                args.kind, args.n, args.seed,
                p=args.p, b=args.b, d=args.d, colors=args.colors, clauses=args.clauses, symmetric=args.symmetric,
            )
            text = dumps(inst)
            if args.o:
                Path(args.o).write_text(text)
            else:
                sys.stdout.write(text)
            return SAT
        if args.command == "verify":
            ok = check_witness(args, _read_witness(args.w))
            print(json.dumps({"valid": ok}))
            return SAT if ok else UNSAT
        if args.threads < 1:
            raise InstanceError("--threads must be at least 1")
        if args.timeout is not None:
            signal.signal(signal.SIGALRM, _on_alarm)
            signal.setitimer(signal.ITIMER_REAL, args.timeout)
        try:
            perm = _solve(args)
        finally:
            if args.timeout is not None:
                signal.setitimer(signal.ITIMER_REAL, 0)
    except _Timeout:
        print(json.dumps({"status": "TIMEOUT"}))
        return TIMEOUT
    except (InstanceError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"fptiso: error: {e}", file=sys.stderr)
        return BAD_INPUT
    if perm is None:
        print(json.dumps({"status": "UNSAT"}))
        return UNSAT
    print(json.dumps({"status": "SAT", "perm": list(perm.images)}))
    return SAT


if __name__ == "__main__":
    sys.exit(main())
