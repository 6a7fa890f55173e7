"""shioda-lab command line.

Exit codes: 0 everything verified, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .checks import cyclic_closed_forms, dgj_check
from .family import (
    FAMILY_INDICES,
    PencilError,
    builtin_family,
    cyclic_family,
    format_factorization,
    load_matrix,
    validate,
)
from .linalg import LinalgError
from .maps import F_A_t, format_poly
from .report import FLAG_NAMES, analyze

log = logging.getLogger("shioda_lab")

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2

FLAG_NOTES = {
    "order_identity": "♯Γ_d = ♯Γ_A·♯H_A",
    "shioda_pullback": "φ*F_A,t = F_dI,t",
    "mirror_equations": "q*(z0^n - z1...zn) = 0, q*(Σz - ntz0) = F_A,t",
    "composition": "q∘φ = [(m,...,m); d·I]",
    "invariant_form_uniqueness": "only (m-1,...,m-1) is Γ_d-invariant",
    "quotient_generators": "z_i are H_A-invariant, z0^n = z1...zn",
}


def _setup_logging():
    level = os.environ.get("SHIODA_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(message)s")


def _source(args):
    chosen = [x is not None for x in (args.family, args.cyclic, args.file)]
    if sum(chosen) != 1:
        raise PencilError("give exactly one of --family, --cyclic, --file")
    if args.family is not None:
        return builtin_family(args.family), f"family {args.family}"
    if args.cyclic is not None:
        return cyclic_family(args.cyclic), f"cyclic n={args.cyclic}"
    return load_matrix(args.file), str(args.file)


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _analysis(args):
    A, name = _source(args)
    log.info("analyzing %s", name)
    return analyze(validate(A, require_balanced=True, name=name))


def cmd_analyze(args) -> int:
    report = _analysis(args)
    text = report.to_json() if args.format == "json" else report.to_text()
    _emit(text, args.out)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_verify(args) -> int:
    report = _analysis(args)
    lines = []
    for flag in FLAG_NAMES:
        ok = report.flags[flag]
        lines.append(f"{flag}: {'ok' if ok else 'FAILED'} ({FLAG_NOTES[flag]})")
    if args.format == "json":
        _emit(json.dumps({"flags": report.flags, "ok": report.ok}, indent=2) + "\n", args.out)
    else:
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.ok else EXIT_FAILED


def table_rows() -> list[dict]:
    rows = []
    for i in FAMILY_INDICES:
        p = validate(builtin_family(i), name=f"family {i}")
        rows.append(
            {
                "family": i,
                "F_A_t": format_poly(F_A_t(p)),
                "d": str(p.d),
                "d_factored": format_factorization(p.d),
            }
        )
    return rows


def cmd_table(args) -> int:
    rows = table_rows()
    if args.format == "json":
        _emit(json.dumps(rows, indent=2, ensure_ascii=False) + "\n", args.out)
    else:
        _emit("".join(f"{r['family']}  {r['F_A_t']}  |  {r['d_factored']}\n" for r in rows), args.out)
    return EXIT_OK


def cmd_dgj_check(args) -> int:
    lines: list[str] = []
    ok = dgj_check(log=lines.append)
    lines.append("dgj-check: ok" if ok else "dgj-check: FAILED")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_cyclic(args) -> int:
    ns = [args.cyclic] if args.cyclic is not None else [3, 4, 5, 6]
    results = [cyclic_closed_forms(n) for n in ns]
    ok = all(r["det_ok"] and r["B_ok"] and r["shift_ok"] for r in results)
    if args.format == "json":
        _emit(json.dumps(results, indent=2) + "\n", args.out)
    else:
        out = []
        for r in results:
            out.append(
                f"n={r['n']}: det(A) = {r['detA']} (closed form {r['det_closed']}), "
                f"d = {r['d']}, m = {r['m']}, q = {tuple(r['q'])}, shift = {r['shift'][0]}, "
                f"{'ok' if r['det_ok'] and r['B_ok'] and r['shift_ok'] else 'FAILED'}"
            )
        _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=int, choices=FAMILY_INDICES)
    common.add_argument("--cyclic", type=int, metavar="N")
    common.add_argument("--file", type=Path)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", type=Path)

    parser = argparse.ArgumentParser(
        prog="shioda-lab",
        description="Shioda maps, mirror quotients and their symmetry groups, in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, helptext in (
        ("analyze", cmd_analyze, "full report for one matrix"),
        ("verify", cmd_verify, "run every verification flag for one matrix"),
        ("table", cmd_table, "the six symmetric quintic families and their d"),
        ("dgj-check", cmd_dgj_check, "the order-41 automorphism of the second family"),
        ("cyclic", cmd_cyclic, "closed forms for the cyclic family (default n = 3..6)"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PencilError, LinalgError) as exc:
        print(f"shioda-lab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
