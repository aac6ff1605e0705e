"""Command-line front end.

Every subcommand reads/writes the bit-exact JSON formats from
:mod:`commcert.serialize` and exits 0 on success, 2 when a verification
fails, and 1 on malformed or unsupported input.  Errors are reported on
standard error as ``{"error": {"code": ..., "message": ...}}``.  Batch
inputs fan out over a worker pool and results keep input order, so output
is deterministic; ``--seed`` fixes all randomized inputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import mdecomp, serialize
from . import z23 as dimension_drop
from .cert import verify
from .errors import (
    CommCertError,
    CounterexampleFound,
    IdentityFailed,
    SpecFormatError,
    UnknownStructure,
)
from .explore import brute_report, parse_finite_ring
from .freealg import identity_suite
from .matrices import DirectSum, DirectSumSpace, Matrix, MatrixSpace, ScalarSpace
from .rewrite import unit_witness_for, xi3_decompose, xi_upper_bounds
from .rings import Scalar
from .witness import witness_triple

_VERIFY_FAIL_ERRORS = (IdentityFailed, CounterexampleFound)


def _emit(args, payload: dict) -> None:
    text = serialize.pretty(payload) + "\n"
    out = getattr(args, "out", None)
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fail(code: str, message: str) -> None:
    sys.stderr.write(serialize.pretty({"error": {"code": code, "message": message}}) + "\n")


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise SpecFormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path} is not valid JSON: {exc}") from exc


def _require_in_space(element, space) -> None:
    if isinstance(space, MatrixSpace):
        ok = (
            isinstance(element, Matrix)
            and element.ring == space.ring
            and element.n == space.n
        )
    elif isinstance(space, DirectSumSpace):
        ok = (
            isinstance(element, DirectSum)
            and len(element.parts) == len(space.parts)
            and all(
                p.ring == sp.ring and p.n == sp.n
                for p, sp in zip(element.parts, space.parts)
            )
        )
    elif isinstance(space, ScalarSpace):
        ok = isinstance(element, Scalar) and element.ring == space.ring
    else:
        ok = False
    if not ok:
        raise SpecFormatError(f"element does not live in {space.label()}")


def _gather_inputs(args, space, parse_one):
    """Elements from --element/--matrix files, or --random N seeded draws."""
    files = list(getattr(args, "inputs", None) or [])
    count = getattr(args, "random", None)
    if files and count:
        raise SpecFormatError("give input files or --random, not both")
    if files:
        return [parse_one(_load_json(path)) for path in files]
    if count:
        if space is None:
            raise SpecFormatError("--random is not available here")
        rng = random.Random(args.seed)
        return [space.random(rng) for _ in range(count)]
    raise SpecFormatError("no input: pass a file (or -) or --random N")


def _fan_out(jobs, worker):
    """Apply `worker` to each job on a pool; results keep submission order."""
    if len(jobs) == 1:
        return [worker(jobs[0])]
    with ThreadPoolExecutor(max_workers=min(8, len(jobs))) as pool:
        return list(pool.map(worker, jobs))


def _checked_cert_json(cert, check: bool, to_json):
    if check:
        result = verify(cert)
        if not result:
            return None, result.reason
    return to_json(cert), None


def _emit_certs(args, payloads) -> int:
    if len(payloads) == 1:
        _emit(args, payloads[0])
    else:
        _emit(args, {"results": payloads})
    return 0


# -- subcommand handlers ------------------------------------------------------------


def _cmd_decompose(args) -> int:
    space = serialize.parse_space(args.ring)

    def parse_one(obj):
        el = serialize.element_from_json(obj)
        _require_in_space(el, space)
        return el

    if isinstance(space, ScalarSpace) and space.ring.kind != "Quat":
        raise UnknownStructure(
            "decomposition needs a matrix ring, a sum of matrix rings, or Quat"
        )
    elements = _gather_inputs(args, space, parse_one)

    def worker(el):
        if isinstance(space, MatrixSpace):
            cert = mdecomp.decompose(el)
        elif isinstance(space, DirectSumSpace):
            cert = mdecomp.decompose_direct_sum(el)
        else:
            cert = mdecomp.quaternion_decompose(el)
        return _checked_cert_json(cert, args.check, serialize.cert_to_json)

    results = _fan_out(elements, worker)
    for payload, reason in results:
        if payload is None:
            _fail("VerificationFailed", reason)
            return 2
    return _emit_certs(args, [p for p, _ in results])


def _cmd_verify(args) -> int:
    obj = _load_json(args.certificate)
    ring = obj.get("ring") if isinstance(obj, dict) else None
    if isinstance(ring, dict) and ring.get("kind") == "Z23":
        cert = serialize.z23_cert_from_json(obj)
    else:
        cert = serialize.cert_from_json(obj)
    result = verify(cert)
    payload = {
        "valid": bool(result),
        "pair_terms": cert.pair_count(),
        "single_terms": cert.single_count(),
        "provenance": cert.provenance,
    }
    if not result:
        payload["reason"] = result.reason
    _emit(args, payload)
    return 0 if result else 2


def _cmd_witness(args) -> int:
    triple = witness_triple(args.n)
    triple.validate()
    pair = lambda w: {  # noqa: E731 - tiny local shaping helper
        "p": serialize.matrix_to_json(w.p),
        "q": serialize.matrix_to_json(w.q),
        "value": serialize.matrix_to_json(w.value),
    }
    _emit(
        args,
        {
            "n": triple.n,
            "u": pair(triple.u),
            "v": pair(triple.v),
            "w": pair(triple.w),
            "bracket_uv": serialize.matrix_to_json(triple.bracket_uv),
            "inverse": serialize.matrix_to_json(triple.s),
            "checks": {
                "brackets_recompute": True,
                "bracket_det_is_unit": True,
                "v_absorbed_by_w": True,
                "inverse_exact": True,
            },
        },
    )
    return 0


def _cmd_xi3(args) -> int:
    space = serialize.parse_space(args.ring)
    witness = unit_witness_for(space)

    def parse_one(obj):
        el = serialize.element_from_json(obj)
        _require_in_space(el, space)
        return el

    elements = _gather_inputs(args, space, parse_one)

    def worker(el):
        cert = xi3_decompose(el, witness)
        return _checked_cert_json(cert, args.check, serialize.cert_to_json)

    results = _fan_out(elements, worker)
    for payload, reason in results:
        if payload is None:
            _fail("VerificationFailed", reason)
            return 2
    return _emit_certs(args, [p for p, _ in results])


def _cmd_bound(args) -> int:
    rules = xi_upper_bounds(args.ring)
    _emit(
        args,
        {
            "ring": args.ring,
            "best": rules[0].bound,
            "bounds": [
                {
                    "bound": r.bound,
                    "constructive": r.constructive,
                    "rule": r.rule,
                    "detail": r.detail,
                }
                for r in rules
            ],
        },
    )
    return 0


def _cmd_brute(args) -> int:
    ring = parse_finite_ring(args.ring)
    _emit(args, brute_report(ring, cap=args.xi_cap))
    return 0


def _cmd_z23(args) -> int:
    if args.z23_command == "verify-unit":
        report = dimension_drop.unit_identity_report()
        ok = (
            all(report["exact"].values())
            and all(report["pairs"].values())
            and report["max_grid_residual"] <= 1e-12
        )
        payload = dict(report)
        payload["valid"] = ok
        _emit(args, payload)
        return 0 if ok else 2

    # xi6
    def parse_one(obj):
        return serialize.z23_from_json(obj)

    rng = random.Random(args.seed)
    files = list(args.inputs or [])
    if files and args.random:
        raise SpecFormatError("give input files or --random, not both")
    if files:
        elements = [parse_one(_load_json(p)) for p in files]
    elif args.random:
        elements = [dimension_drop.random_admissible(rng) for _ in range(args.random)]
    else:
        raise SpecFormatError("no input: pass a file (or -) or --random N")

    def worker(el):
        cert = dimension_drop.decompose(el)
        return _checked_cert_json(cert, args.check, serialize.z23_cert_to_json)

    results = _fan_out(elements, worker)
    for payload, reason in results:
        if payload is None:
            _fail("VerificationFailed", reason)
            return 2
    return _emit_certs(args, [p for p, _ in results])


def _cmd_identities(args) -> int:
    checks = identity_suite(raise_on_failure=False)
    if args.json:
        _emit(
            args,
            {
                "checks": [
                    {
                        "name": c.name,
                        "passed": c.passed,
                        "expanded_terms": c.expanded_terms,
                        "rules": list(c.rules),
                    }
                    for c in checks
                ],
                "all_passed": all(c.passed for c in checks),
            },
        )
    else:
        width = max(len(c.name) for c in checks)
        lines = [f"{'identity'.ljust(width)}  result  expanded terms"]
        for c in checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"{c.name.ljust(width)}  {status:6}  {c.expanded_terms}")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0 if all(c.passed for c in checks) else 2


def _cmd_report(args) -> int:
    from .report import write_report

    manifest = write_report(args.out_dir, seed=args.seed)
    _emit(args, manifest)
    return 0


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commcert",
        description=(
            "Construct and verify sum-of-products-of-commutators certificates "
            "in matrix rings, quaternions, and the dimension-drop algebra."
        ),
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="seed for all randomized inputs"
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--out", default=None, help="write result JSON here instead of stdout")
        return p

    p = add("decompose", _cmd_decompose, "write a target as at most two pair products")
    p.add_argument("--ring", required=True, help='e.g. "M3(Z)", "M2(Z)+M3(Z)", "Quat"')
    p.add_argument(
        "--matrix", dest="inputs", action="append", metavar="FILE",
        help="element JSON (repeatable; - for stdin)",
    )
    p.add_argument("--random", type=int, metavar="N", help="decompose N seeded random elements")
    p.add_argument("--check", action="store_true", help="verify the certificate before emitting")

    p = add("verify", _cmd_verify, "re-check a certificate from its JSON file")
    p.add_argument("--certificate", required=True, metavar="FILE")

    p = add("witness", _cmd_witness, "inverse-commutator witness triple in M_n(Z)")
    p.add_argument("--n", type=int, required=True, help="matrix size, at least 2")

    p = add("xi3", _cmd_xi3, "three-term certificates from a unit-bracket witness")
    p.add_argument("--ring", required=True, help='e.g. "M5(Q)", "M2(Z)+M3(Z)"')
    p.add_argument(
        "--witness", choices=["auto"], default="auto",
        help="witness source (auto: built-in shift construction)",
    )
    p.add_argument(
        "--element", dest="inputs", action="append", metavar="FILE",
        help="element JSON (repeatable; - for stdin)",
    )
    p.add_argument("--random", type=int, metavar="N", help="decompose N seeded random elements")
    p.add_argument("--check", action="store_true", help="verify the certificate before emitting")

    p = add("bound", _cmd_bound, "upper bounds for the invariant from structure alone")
    p.add_argument("--ring", required=True, help='structure spec, e.g. "M2(Z)+M3(Z)"')

    p = add("brute", _cmd_brute, "exhaustive saturation over a small finite ring")
    p.add_argument(
        "--ring", required=True,
        help='e.g. "M2(F2)", "U3(Z4)", "Z6", or tables:FILE',
    )
    p.add_argument("--xi-cap", type=int, default=16, dest="xi_cap",
                   help="give up after this many summands")

    p = add("z23", _cmd_z23, "dimension-drop algebra certificates")
    zsub = p.add_subparsers(dest="z23_command", metavar="SUBCOMMAND", required=True)
    zv = zsub.add_parser("verify-unit", help="check the two-bracket expansion of 1")
    zv.set_defaults(handler=_cmd_z23)
    zv.add_argument("--out", default=None, help="write result JSON here instead of stdout")
    zx = zsub.add_parser("xi6", help="six-term certificates for admissible elements")
    zx.set_defaults(handler=_cmd_z23)
    zx.add_argument("--out", default=None, help="write result JSON here instead of stdout")
    zx.add_argument(
        "--element", dest="inputs", action="append", metavar="FILE",
        help="element JSON (repeatable; - for stdin)",
    )
    zx.add_argument("--random", type=int, metavar="N",
                    help="decompose N seeded random admissible elements")
    zx.add_argument("--check", action="store_true", help="verify before emitting")

    p = add("identities", _cmd_identities, "expand the free-algebra identity suite")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = add("report", _cmd_report, "render CSV tables and figures for key checks")
    p.add_argument("--out-dir", default="commcert-report", dest="out_dir",
                   help="directory for CSV and PNG output")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = getattr(args, "handler", None)
    if handler is None:
        parser.print_help(sys.stderr)
        return 1
    try:
        return handler(args)
    except _VERIFY_FAIL_ERRORS as exc:
        _fail(type(exc).__name__, str(exc))
        return 2
    except CommCertError as exc:
        _fail(type(exc).__name__, str(exc))
        return 1
    except OSError as exc:
        _fail("IOError", str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
