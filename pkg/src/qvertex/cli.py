"""Command-line front end.

Every command prints JSON lines (``--json``, the default) or aligned text
(``--human``).  Exit status: 0 all checks passed, 1 a check failed,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import gcd
from typing import Iterable, List, Optional, TextIO

from .fock import FockSpace, apply_operator, parse_operator, parse_state, render_label
from .rootdata import (
    InvalidRootDatum,
    RootDatum,
    build_root_datum,
    det_closed_form,
    detq_nonvanishing,
    qcartan_det,
)

THREADS_ENV = "QVERTEX_THREADS"


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------------------

class Emitter:
    def __init__(self, stream: TextIO, human: bool):
        self.stream = stream
        self.human = human

    def emit(self, record: dict) -> None:
        if self.human:
            width = max((len(k) for k in record), default=0)
            for k in sorted(record):
                v = record[k]
                text = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
                self.stream.write(f"{k.ljust(width)}  {text}\n")
            self.stream.write("\n")
        else:
            self.stream.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def warn(msg: str) -> None:
    sys.stderr.write(f"warning: {msg}\n")


# -- config -----------------------------------------------------------------------------

def _datum(args) -> RootDatum:
    if args.type is None or args.rank is None:
        raise UsageError("--type and --rank are required")
    try:
        return build_root_datum(args.type.upper(), args.rank)
    except InvalidRootDatum as exc:
        raise UsageError(str(exc)) from exc


def _check_l(args, datum: RootDatum, required: bool = False) -> int:
    l = args.l or 0
    if l < 0:
        raise UsageError("--l must be non-negative")
    if required and l == 0:
        raise UsageError("--l is required (a positive root-of-unity order)")
    if l and gcd(l, datum.coxeter) != 1:
        warn(f"gcd(l={l}, N={datum.coxeter}) = {gcd(l, datum.coxeter)} != 1; "
             "the coprimality hypothesis fails, expect singular results")
    return l


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}")


# -- commands ------------------------------------------------------------------------------

def cmd_rootdata(args, out: Emitter) -> int:
    datum = _datum(args)
    l = _check_l(args, datum)
    det = qcartan_det(datum)
    rec = datum.summary()
    rec["det_matches_closed_form"] = det == det_closed_form(datum)
    out.emit(rec)
    ok = rec["det_matches_closed_form"]
    if l:
        rep = detq_nonvanishing(datum, l, 2 * l)
        out.emit({"nonvanishing": rep.as_dict()})
        ok = ok and (not rep.coprime or not rep.zeros)
    return 0 if ok else 1


def cmd_act(args, out: Emitter) -> int:
    datum = _datum(args)
    space = FockSpace(datum)
    try:
        if args.state:
            label = parse_state(args.state, datum.rank)
            v = space.basis_vector(*label)
        else:
            v = space.vacuum()
        ops = [parse_operator(t) for t in (args.op or [])]
        input_text = render_label(next(iter(v.terms)))
        for op in ops:
            v = apply_operator(space, op, v)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for label, c in v.items():
        w = space.weight(label)
        out.emit({"state": render_label(label), "coeff": str(c), "eta": list(w.eta),
                  "energy": w.energy, "k_exponents": w.k_exponents(datum)})
    out.emit({"command": "act", "type": datum.name, "input": input_text,
              "ops": list(args.op or []), "lattice": v.is_lattice(), "num_terms": len(v)})
    return 0


def cmd_character(args, out: Emitter) -> int:
    datum = _datum(args)
    space = FockSpace(datum)
    depth = args.depth if args.depth is not None else 4
    char = space.character(depth)
    for w in sorted(char, key=lambda w: (w.energy, w.eta)):
        out.emit({"eta": list(w.eta), "energy": w.energy, "multiplicity": char[w]})
    out.emit({"type": datum.name, "depth": depth, "dimensions_by_energy": space.dimensions_by_energy(depth)})
    return 0


def _verify(args, out: Emitter) -> int:
    from . import verify as V

    suite = args.suite
    ok = True
    if suite in ("id", "rfact"):
        rs = [args.r] if args.r else (range(1, 6) if suite == "id" else range(2, 5))
        for r in rs:
            res = V.verify_antisymmetrization(r) if suite == "id" else V.verify_rfact(r)
            out.emit(res.as_dict())
            ok = ok and res.passed
        return 0 if ok else 1
    datum = _datum(args)
    depth = args.depth if args.depth is not None else 2
    if suite == "drinfeld":
        rep = V.verify_drinfeld(datum, depth, rmax=args.rmax or 3, smax=args.smax)
        for line in rep.lines():
            out.emit(line)
        return 0 if rep.passed else 1
    if suite == "lattice":
        rep = V.verify_lattice(datum, depth, nmax=args.smax, rmax=args.rmax or 3)
        out.emit(rep.as_dict())
        return 0 if rep.passed else 1
    if suite == "product":
        checks = V.product_formula_sweep(datum, depth, args.rmax or 2, args.smax)
        bad = [c for c in checks if not c.passed]
        out.emit({"suite": "product", "case": f"{datum.name} depth={depth}", "checks": len(checks),
                  "failures": len(bad), "status": "fail" if bad else "pass",
                  "witness": [c.as_dict() for c in bad[:3]]})
        return 1 if bad else 0
    if suite == "r1":
        rep = V.verify_single_steps(datum, box=args.box)
        out.emit({"suite": "r1", "case": f"{datum.name} box={args.box}", "checks": rep.checks,
                  "failures": len(rep.failures), "status": "pass" if rep.passed else "fail",
                  "witness": rep.failures[:3]})
        return 0 if rep.passed else 1
    if suite == "det":
        det = qcartan_det(datum)
        ok = det == det_closed_form(datum)
        out.emit({"suite": "det", "case": datum.name, "det": str(det), "status": "pass" if ok else "fail"})
        return 0 if ok else 1
    if suite == "character":
        space = FockSpace(datum)
        got = {(w.eta, w.energy): m for w, m in space.character(depth).items()}
        want = V.character_oracle(datum, depth)
        ok = got == want
        out.emit({"suite": "character", "case": f"{datum.name} depth={depth}", "weights": len(want),
                  "status": "pass" if ok else "fail"})
        return 0 if ok else 1
    raise UsageError(f"unknown suite {suite!r}")


def _rootofunity(args, out: Emitter) -> int:
    from . import rootsofunity as R

    datum = _datum(args)
    l = _check_l(args, datum, required=args.mode != "kernel")
    depth = args.depth if args.depth is not None else 3
    mode = args.mode
    if mode == "irreducible":
        rep = R.irreducibility_report(datum, l, depth)
        out.emit(rep)
        ok = rep["dual_basis_ok"] and not rep["singular_found"] and not any(rep["kernel_dims"])
        return 0 if ok else 1
    if mode == "kernel":
        dims = R.heisenberg_kernel(datum, l, depth)
        out.emit({"type": datum.family, "rank": datum.rank, "l": l, "depth": depth, "kernel_dims": dims})
        return 0 if not any(dims) else 1
    if mode == "dual":
        kmax = args.k or depth
        status = 0
        for k in range(1, kmax + 1):
            for i in datum.nodes:
                try:
                    out.emit(R.dual_heisenberg(datum, i, k, l).as_dict())
                except R.CoprimalityViolation as exc:
                    out.emit({"i": i + 1, "k": k, "l": l, "error": "coprimality violated",
                              "det": str(exc.det), "message": str(exc)})
                    status = 1
        return status
    if mode == "det":
        rep = detq_nonvanishing(datum, l, 2 * l)
        out.emit(rep.as_dict())
        return 0 if not rep.zeros else 1
    raise UsageError(f"unknown mode {mode!r}")


# -- parser ----------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--type", choices=["A", "D", "E", "a", "d", "e"])
    p.add_argument("--rank", type=int)
    p.add_argument("--l", type=int, default=None, help="root-of-unity order; 0 or absent = generic q")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--rmax", type=int, default=None)
    p.add_argument("--out", default=None, help="write output to this file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="human", action="store_false", default=False)
    mode.add_argument("--human", dest="human", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qvertex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("rootdata", parents=[common], help="root datum summary and det[A]")

    act = sub.add_parser("act", parents=[common], help="apply operators to a basis state")
    act.add_argument("--state", default=None, help='e.g. "{1:[2,1]} @ eta=[1,0]" (default: vacuum)')
    act.add_argument("--op", action="append", help='e.g. "x+ i=1 n=-1"; repeatable, applied in order')

    sub.add_parser("character", parents=[common], help="weight multiplicities up to --depth")

    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=["id", "rfact", "drinfeld", "lattice", "product", "r1", "det", "character"])
    ver.add_argument("--r", type=int, default=None)
    ver.add_argument("--smax", type=int, default=2, help="bound on vertex-operator modes")
    ver.add_argument("--box", type=int, default=2, help="coordinate box for the r1 suite")

    rou = sub.add_parser("rootofunity", parents=[common], help="specialisation at a root of unity")
    rou.add_argument("mode", choices=["irreducible", "kernel", "dual", "det"])
    rou.add_argument("--k", type=int, default=None, help="largest level for the dual elements")
    return parser


COMMANDS = {
    "rootdata": cmd_rootdata,
    "act": cmd_act,
    "character": cmd_character,
    "verify": _verify,
    "rootofunity": _rootofunity,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    stream = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        _threads()
        return COMMANDS[args.command](args, Emitter(stream, args.human))
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    finally:
        if args.out:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())
