"""Command line front end.

Verbs: `verify` runs the full check battery for one pair, `scan` sweeps all
pairs up to a bound, `fsu` prints a fundamental system of units for a field
given by its radicands, `classnum` prints the class number data of one
quadratic field.  Exit code 0 means every check passed, 1 means some check
failed or a claim was falsified, 2 means the invocation was malformed.
"""

import argparse
import json
import sys

from .errors import Falsified
from .field import FieldBasis
from .forms import class_number_imaginary, class_number_real, is_fundamental_discriminant
from .quadratic import classify_pair
from .report import (
    _fsu_to_dict,
    report_emit,
    scan,
    verify_pair,
)
from .units import azizi_extend, fsu_biquadratic, fsu_quadratic, unit_index, wada_fsu


def _cmd_verify(args) -> int:
    rep = verify_pair(args.p, args.q)
    sys.stdout.buffer.write(report_emit(rep, "json" if args.json else "text"))
    return 0 if rep.passed else 1


def _cmd_scan(args) -> int:
    _, summary = scan(args.max, jobs=args.jobs, cache_dir=args.cache, out=sys.stdout)
    return 0 if not summary.failures else 1


def _build_fsu(radicands, cm):
    rads = sorted(set(radicands))
    if -1 in rads:
        rads.remove(-1)
        cm = True
    if any(r < 2 for r in rads):
        raise ValueError("radicands must be squarefree integers > 1, optionally with -1")
    if len(rads) == 1:
        fsu = fsu_quadratic(rads[0])
    elif len(rads) == 2:
        fsu = fsu_biquadratic(rads[0], rads[1])
    elif len(rads) == 3:
        if 2 not in rads:
            raise ValueError("degree-8 fields must include radicand 2")
        odd = [r for r in rads if r != 2]
        p = next((r for r in odd if r % 8 == 5), None)
        q = next((r for r in odd if r % 8 == 3), None)
        if p is None or q is None:
            raise ValueError("degree-8 fields need one radicand = 5 and one = 3 (mod 8)")
        cond = classify_pair(p, q)
        field = FieldBasis((2, p, q))
        fsu = wada_fsu(field, [fsu_biquadratic(2, d, cond) for d in (p, q, p * q)])
    else:
        raise ValueError("supported fields have 1 to 3 real radicands")
    if cm:
        fsu = azizi_extend(fsu, FieldBasis(fsu.field.generators + (-1,)))
    return fsu


def _cmd_fsu(args) -> int:
    try:
        radicands = [int(x) for x in args.radicands.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse radicand list {args.radicands!r}")
    fsu = _build_fsu(radicands, args.cm)
    out = _fsu_to_dict(fsu)
    out["unit_index"] = unit_index(fsu)
    print(json.dumps(out, separators=(",", ":")))
    return 0


def _cmd_classnum(args) -> int:
    D = args.disc
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    if D < 0:
        rep = class_number_imaginary(D)
        radicand = None
    else:
        radicand = D if D % 4 == 1 else D // 4
        rep = class_number_real(radicand)
    print(json.dumps({
        "discriminant": D,
        "radicand": radicand,
        "h": rep.h,
        "h2": rep.h2,
        "two_rank": rep.two_rank,
        "group_structure": list(rep.group_structure) if rep.group_structure else None,
    }, separators=(",", ":")))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mqunits",
        description="exact verification of unit groups and 2-class numbers "
                    "of multiquadratic fields built from primes p = 5, q = 3 (mod 8)",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="run all checks for one pair (p, q)")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--json", action="store_true", help="emit one report JSON line")
    v.set_defaults(run=_cmd_verify)

    s = sub.add_parser("scan", help="verify every pair with both primes <= max")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--cache", default=None, help="directory of reusable pair reports")
    s.set_defaults(run=_cmd_scan)

    f = sub.add_parser("fsu", help="fundamental system of units of one field")
    f.add_argument("--radicands", required=True, help="comma-separated, e.g. 2,5,11")
    f.add_argument("--cm", action="store_true", help="adjoin i and extend the system")
    f.set_defaults(run=_cmd_fsu)

    c = sub.add_parser("classnum", help="class number of one quadratic field")
    c.add_argument("--disc", type=int, required=True, help="fundamental discriminant")
    c.set_defaults(run=_cmd_classnum)

    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except Falsified as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")


if __name__ == "__main__":
    raise SystemExit(main())
