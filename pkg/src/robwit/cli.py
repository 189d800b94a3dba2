"""Command-line front end: build witnesses, certify families, emit tables.

Subcommands: ``build`` (serialize a Choi witness), ``certify`` (run the
eight-check suite, exit 0 only if everything passes), ``curve`` (isotropic
detection curve as CSV) and ``spectrum`` (computed vs expected Choi
eigenvalues).  Exit codes: 0 all good, 1 a certification check failed,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import certify, maps, states, witnesses

DEFAULT_SEED = 42


def matrix_to_payload(m: np.ndarray) -> dict:
    """JSON form of a dense complex matrix: {d, rows} with [re, im] entries."""
    m = np.asarray(m, dtype=complex)
    return {
        "d": int(m.shape[0]),
        "rows": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def matrix_from_payload(obj: dict) -> np.ndarray:
    d = int(obj["d"])
    rows = obj["rows"]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ValueError(f"matrix payload claims d={d} but rows disagree")
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def load_matrix_file(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as handle:
        return matrix_from_payload(json.load(handle))


def resolve_u(spec: str, n: int) -> np.ndarray:
    if spec == "canonical":
        return maps.canonical_u0(n)
    if spec.startswith("seed:"):
        return maps.random_antisymmetric_unitary(n, int(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        u = load_matrix_file(spec.split(":", 1)[1])
        if u.shape != (2 * n, 2 * n):
            raise ValueError(f"U from file has shape {u.shape}, expected {(2 * n, 2 * n)}")
        if not maps.is_antisymmetric_contraction(u):
            raise ValueError("U from file fails the antisymmetric-contraction invariants")
        return u
    raise ValueError(f"unrecognized U spec {spec!r}; use canonical, seed:<int> or file:<path>")


def resolve_v(spec: str, d: int, name: str) -> np.ndarray:
    if spec.startswith("seed:"):
        return maps.random_unitary(d, int(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        v = load_matrix_file(spec.split(":", 1)[1])
        if v.shape != (d, d):
            raise ValueError(f"{name} from file has shape {v.shape}, expected {(d, d)}")
        defect = float(np.max(np.abs(v.conj().T @ v - np.eye(d))))
        if defect > 1e-12:
            raise ValueError(f"{name} from file is not unitary (defect {defect:.3e})")
        return v
    raise ValueError(f"unrecognized {name} spec {spec!r}; use seed:<int> or file:<path>")


def parse_tolerances(entries: list[str] | None) -> dict[str, float]:
    overrides: dict[str, float] = {}
    for entry in entries or []:
        if "=" not in entry:
            raise ValueError(f"--tol expects <check>=<value>, got {entry!r}")
        name, raw = entry.split("=", 1)
        if name not in certify.SUITE_CHECKS:
            raise ValueError(f"unknown check {name!r}; valid: {', '.join(certify.SUITE_CHECKS)}")
        overrides[name] = float(raw)
    return overrides


def emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def csv_table(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{x:.17g}" if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def build_witness(args) -> witnesses.Witness:
    u = resolve_u(args.u, args.n)
    if (args.v1 is None) != (args.v2 is None):
        raise ValueError("--v1 and --v2 must be supplied together")
    if args.v1 is not None:
        d = 4 * args.n
        v1 = resolve_v(args.v1, d, "V1")
        v2 = resolve_v(args.v2, d, "V2")
        return witnesses.choi(maps.conjugated_phi(args.n, u, v1, v2))
    return witnesses.choi(maps.phi_u(args.n, u))


def cmd_build(args) -> int:
    w = build_witness(args)
    if args.output == "json":
        payload = {"family": w.source.family, "n": args.n, "u": args.u}
        if args.v1 is not None:
            payload["v1"] = args.v1
            payload["v2"] = args.v2
        payload.update(matrix_to_payload(w.matrix))
        emit(json.dumps(payload, indent=2, sort_keys=True), args.out_path)
    elif args.output == "text":
        lines = [
            f"family: {w.source.family}",
            f"n: {args.n}",
            f"system: C^{w.d} (x) C^{w.d}, Choi matrix {w.d ** 2} x {w.d ** 2}",
            f"trace: {np.trace(w.matrix).real:.12g}",
            f"min eigenvalue: {np.linalg.eigvalsh(w.matrix)[0]:.12g}",
        ]
        emit("\n".join(lines) + "\n", args.out_path)
    else:
        raise ValueError(f"build supports json or text output, not {args.output!r}")
    return 0


def cmd_certify(args) -> int:
    u = resolve_u(args.u, args.n)
    v1 = v2 = None
    if (args.v1 is None) != (args.v2 is None):
        raise ValueError("--v1 and --v2 must be supplied together")
    if args.v1 is not None:
        d = 4 * args.n
        v1 = resolve_v(args.v1, d, "V1")
        v2 = resolve_v(args.v2, d, "V2")
    reports = certify.run_full_suite(args.n, u, v1, v2, seed=args.seed,
                                     tolerances=parse_tolerances(args.tol))
    all_pass = all(r.passed for r in reports)
    verdict = "pass" if all_pass else "fail"

    if args.output == "json":
        payload = {
            "family": "ConjugatedPhiU" if v1 is not None else "PhiU4N",
            "n": args.n,
            "d": 4 * args.n,
            "seed": args.seed,
            "checks": [r.to_dict() for r in reports],
            "verdict": verdict,
        }
        emit(json.dumps(payload, indent=2, sort_keys=True), args.out_path)
    elif args.output == "text":
        lines = [str(r) for r in reports]
        passed = sum(r.passed for r in reports)
        lines.append(f"verdict: {verdict} ({passed}/{len(reports)} checks passed)")
        emit("\n".join(lines) + "\n", args.out_path)
    else:
        raise ValueError(f"certify supports json or text output, not {args.output!r}")
    return 0 if all_pass else 1


def cmd_curve(args) -> int:
    w = build_witness(args)
    grid = np.linspace(0.0, 1.0, args.points)
    rows = []
    for lam in grid:
        closed = certify.isotropic_detection_value(args.n, float(lam))
        numeric = certify.detect(w, states.isotropic_state(4 * args.n, float(lam)))
        rows.append([float(lam), closed, numeric, abs(closed - numeric)])
    if args.output == "csv":
        emit(csv_table(["lambda", "closed_form", "numeric", "abs_difference"], rows), args.out_path)
    elif args.output == "text":
        lines = [f"lambda={r[0]:.4f} closed={r[1]:+.12f} numeric={r[2]:+.12f} diff={r[3]:.2e}" for r in rows]
        emit("\n".join(lines) + "\n", args.out_path)
    else:
        raise ValueError(f"curve supports csv or text output, not {args.output!r}")
    return 0


def cmd_spectrum(args) -> int:
    w = build_witness(args)
    computed = np.linalg.eigvalsh(w.matrix)
    expected = witnesses.expected_spectrum_sorted(args.n)
    rows = [
        [i, float(c), float(e), abs(float(c) - float(e))]
        for i, (c, e) in enumerate(zip(computed, expected))
    ]
    if args.output == "csv":
        emit(csv_table(["index", "computed", "expected", "abs_difference"], rows), args.out_path)
    elif args.output == "text":
        lines = [f"{i:4d}  computed={c:+.12f}  expected={e:+.12f}  diff={d:.2e}" for i, c, e, d in rows]
        emit("\n".join(lines) + "\n", args.out_path)
    else:
        raise ValueError(f"spectrum supports csv or text output, not {args.output!r}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robwit",
        description="Generalized Robertson maps, their entanglement witnesses, and certification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output_default, output_help):
        p.add_argument("--n", type=int, required=True, help="family size parameter N (dimension 4N)")
        p.add_argument("--u", type=str, default="canonical",
                       help="U spec: canonical, seed:<int> or file:<path>")
        p.add_argument("--v1", type=str, default=None, help="optional V1 spec: seed:<int> or file:<path>")
        p.add_argument("--v2", type=str, default=None, help="optional V2 spec: seed:<int> or file:<path>")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="global seed for randomized checks")
        p.add_argument("--output", type=str, default=output_default, help=output_help)
        p.add_argument("--out-path", type=str, default=None, help="write output to this file instead of stdout")

    build_cmd = sub.add_parser("build", help="construct a witness and serialize it")
    common(build_cmd, "json", "output format: json or text")
    build_cmd.set_defaults(func=cmd_build)

    certify_cmd = sub.add_parser("certify", help="run the full certification suite")
    common(certify_cmd, "text", "output format: text or json")
    certify_cmd.add_argument("--tol", action="append", default=None, metavar="CHECK=VALUE",
                             help="override one check tolerance, repeatable")
    certify_cmd.set_defaults(func=cmd_certify)

    curve_cmd = sub.add_parser("curve", help="isotropic detection curve, closed form vs numeric")
    common(curve_cmd, "csv", "output format: csv or text")
    curve_cmd.add_argument("--points", type=int, default=11, help="number of lambda grid points on [0, 1]")
    curve_cmd.set_defaults(func=cmd_curve)

    spectrum_cmd = sub.add_parser("spectrum", help="computed vs expected Choi eigenvalues")
    common(spectrum_cmd, "csv", "output format: csv or text")
    spectrum_cmd.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.error("--n must be a positive integer")
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
