"""Command-line front end.

Subcommands: ``verify`` (full consistency run for one instance), ``ricci``,
``soliton``, ``spectrum``, ``sweep`` (tabulate a parameter grid), and
``einstein`` (numeric ambient checks).  Exit codes: 0 all checks pass, 1 a
mathematical check failed, 2 usage or parameter error.  Exact strings are
authoritative; decimal columns are 12-significant-digit approximations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import family, hypersurface
from .coord_engine import (
    assemble_metric,
    einstein_residual,
    induced_consistency,
    off_center_points,
    p_rho_point,
)
from .lie_core import check_jacobi, verify_splitting
from .metric_lie import (
    ricci_endomorphism_koszul,
    soliton_check_direct,
    soliton_check_lauret,
)
from .scalars import rational

__all__ = ["RunConfig", "main"]

DEFAULT_MAX_N = 8
EINSTEIN_MAX_N = 4


@dataclass
class RunConfig:
    command: str
    n: int
    rho: Fraction
    c: Fraction
    rho_grid: list | None = None
    c_grid: list | None = None
    format: str = "text"
    output: str | None = None


def _approx(x) -> str:
    return f"{float(x):.12g}"


def _exact(x) -> str:
    return "" if x is None else str(x)


def _max_n() -> int:
    return int(os.environ.get("SOLV_MAX_N", DEFAULT_MAX_N))


# ---------------------------------------------------------------------------
# per-instance computations
# ---------------------------------------------------------------------------


def _three_way_ricci(p: family.FamilyParams):
    """Koszul, closed-form, and coordinate-route Ricci endomorphisms."""
    M = family.metric_algebra(p)
    koszul = ricci_endomorphism_koszul(M)
    expected = family.expected_ric_matrix(p)
    emb = family.build_embedding(p)
    coords = hypersurface.ricci_endomorphism_coords(p)
    conjugated = emb.conjugate_to_family(coords)
    return koszul, expected, conjugated


def _soliton_pair(p: family.FamilyParams):
    M = family.metric_algebra(p)
    direct = soliton_check_direct(M)
    checklist = soliton_check_lauret(M, family.family_splitting(p.n))
    return direct, checklist


def _delta_multiple(p: family.FamilyParams, D):
    """Coefficient k with D = k * delta, or None."""
    if D is None:
        return None
    delta = family.build_delta(p.n)
    candidates = [
        (D.data[i][j] / delta.data[i][j])
        for i in range(D.rows)
        for j in range(D.cols)
        if delta.data[i][j]
    ]
    if not candidates:
        return None
    k = candidates[0]
    return k if D == delta.scale(k) else None


def verify_report(p: family.FamilyParams) -> dict:
    L = family.build_lie_algebra(p.n)
    jacobi_ok, _ = check_jacobi(L)
    split = family.family_splitting(p.n)
    split_report = verify_splitting(L, split, family.build_gram(p))
    koszul, expected, conjugated = _three_way_ricci(p)
    ricci_ok = koszul == expected and koszul == conjugated
    trace_ok = hypersurface.trace_identity_check(p)
    direct, checklist = _soliton_pair(p)
    agree = direct.is_soliton == checklist.is_soliton
    status = family.classify_status(p.n, direct.is_soliton)
    predicted = family.predicted_status(p.n, p.c)
    checks_ok = (
        jacobi_ok and split_report.ok and ricci_ok and trace_ok and agree
    )
    return {
        "params": {"n": p.n, "rho": str(p.rho), "c": str(p.c)},
        "checks": {
            "jacobi": jacobi_ok,
            "splitting": {
                "n_is_ideal": split_report.n_is_ideal,
                "n_is_nilpotent": split_report.n_is_nilpotent,
                "n_contains_derived": split_report.n_contains_derived,
                "a_is_abelian": split_report.a_is_abelian,
                "a_orthogonal_to_n": split_report.a_orthogonal_to_n,
            },
            "ricci_three_way": ricci_ok,
            "trace_identity": trace_ok,
            "checkers_agree": agree,
        },
        "soliton_direct": direct.to_jsonable(),
        "soliton_checklist": checklist.to_jsonable(),
        "status": status,
        "predicted_status": predicted,
        "status_matches_prediction": status == predicted,
        "lambda": None if direct.lambda_ is None else str(direct.lambda_),
        "delta_multiple": _exact(_delta_multiple(p, direct.D)) or None,
        "ok": bool(checks_ok and status == predicted),
    }


def spectrum_report(p: family.FamilyParams) -> dict:
    forms = family.expected_closed_forms(p)
    shape = hypersurface.shape_operator(p)
    return {
        "params": {"n": p.n, "rho": str(p.rho), "c": str(p.c)},
        "sigma": [_exact(s) or None for s in shape.sigma],
        "sigma_approx": [None if s is None else _approx(s) for s in shape.sigma],
        "sigma_multiplicities": list(shape.multiplicities),
        "trace_shape": _exact(shape.trace),
        "trace_shape_approx": _approx(shape.trace),
        "r": [_exact(r) or None for r in forms.r],
        "r_approx": [None if r is None else _approx(r) for r in forms.r],
        "r_multiplicities": list(forms.sigma_multiplicities),
        "note": "decimal fields are 12-digit approximations; exact strings are authoritative",
    }


def ricci_report(p: family.FamilyParams) -> dict:
    koszul, expected, conjugated = _three_way_ricci(p)
    r1, r2, r3, r4 = hypersurface.principal_ricci(p)
    return {
        "params": {"n": p.n, "rho": str(p.rho), "c": str(p.c)},
        "ricci_endomorphism": koszul.to_strings(),
        "agreement": {
            "koszul_vs_closed_form": koszul == expected,
            "koszul_vs_coordinates": koszul == conjugated,
        },
        "principal_curvatures": [str(r) for r in (r1, r2, r3, r4)],
        "trace_identity": hypersurface.trace_identity_check(p),
    }


def soliton_report(p: family.FamilyParams) -> dict:
    direct, checklist = _soliton_pair(p)
    status = family.classify_status(p.n, direct.is_soliton)
    return {
        "params": {"n": p.n, "rho": str(p.rho), "c": str(p.c)},
        "direct": direct.to_jsonable(),
        "checklist": checklist.to_jsonable(),
        "status": status,
        "delta_multiple": _exact(_delta_multiple(p, direct.D)) or None,
    }


def sweep_rows(n: int, rho_grid: list, c_grid: list) -> list:
    rows = []
    for rho in rho_grid:
        for c in c_grid:
            p = family.FamilyParams(n, rho, c)
            forms = family.expected_closed_forms(p)
            shape = hypersurface.shape_operator(p)
            direct, _ = _soliton_pair(p)
            status = family.classify_status(n, direct.is_soliton)
            row = {
                "n": n,
                "rho": str(rho),
                "c": str(c),
                "status": status,
                "lambda": _exact(direct.lambda_),
            }
            for i, s in enumerate(shape.sigma, start=1):
                row[f"sigma{i}"] = _exact(s)
                row[f"sigma{i}_approx"] = "" if s is None else _approx(s)
            for i, r in enumerate(forms.r, start=1):
                row[f"r{i}"] = _exact(r)
                row[f"r{i}_approx"] = "" if r is None else _approx(r)
            row["trace_shape"] = _exact(shape.trace)
            rows.append(row)
    return rows


def einstein_report(p: family.FamilyParams) -> dict:
    M = assemble_metric(p.n, float(p.c))
    points = [("p_rho", p_rho_point(p.n, float(p.rho)))]
    for i, pt in enumerate(off_center_points(p.n)):
        points.append((f"offcenter{i}", pt))
    residuals = {name: einstein_residual(M, pt) for name, pt in points}
    induced = induced_consistency(M, p)
    worst = max(residuals.values())
    return {
        "params": {"n": p.n, "rho": str(p.rho), "c": str(p.c)},
        "einstein_constant": -2 * (p.n + 2),
        "residuals": {k: f"{v:.6e}" for k, v in residuals.items()},
        "max_residual": f"{worst:.6e}",
        "induced_gram_error": f"{induced.gram_max_error:.6e}",
        "induced_eigenvalue_error": f"{induced.eigenvalue_max_error:.6e}",
        "ok": bool(worst < 1e-6 and induced.ok()),
        "_residual_rows": [
            {"point": name, "residual": f"{val:.12e}"} for name, val in residuals.items()
        ],
    }


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _render_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _is_matrix(value) -> bool:
    return (
        isinstance(value, list)
        and value
        and all(isinstance(row, list) for row in value)
    )


def _render_text(payload, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            if key.startswith("_"):
                continue
            if _is_matrix(value):
                lines.append(f"{pad}{key}:")
                for row in value:
                    lines.append("  " * (indent + 1) + "[" + ", ".join(map(str, row)) + "]")
            elif isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                lines.append(_render_text(value, indent))
            else:
                lines.append(f"{pad}- {value}")
    else:
        lines.append(f"{pad}{payload}")
    return "\n".join(line for line in lines if line)


def _render_csv(rows: list) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\r\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solvsoliton",
        description="Exact curvature and Ricci-soliton certification for the "
        "one-loop deformed solvable family.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, grid=False):
        sp.add_argument("--n", type=int, required=True, help="rank parameter n >= 1")
        if grid:
            sp.add_argument("--rho", default="1", help="rational, e.g. 5/2 (ignored with --rho-grid)")
            sp.add_argument("--c", default="0", help="rational >= 0 (ignored with --c-grid)")
            sp.add_argument("--rho-grid", default=None, help="comma-separated rationals")
            sp.add_argument("--c-grid", default=None, help="comma-separated rationals")
        else:
            sp.add_argument("--rho", required=True, help="rational, e.g. 5/2")
            sp.add_argument("--c", required=True, help="rational >= 0")
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--output", default=None, help="write the report to a file")

    for name in ("verify", "ricci", "soliton", "spectrum", "einstein"):
        common(sub.add_parser(name))
    common(sub.add_parser("sweep"), grid=True)
    return parser


def _parse_config(argv) -> RunConfig:
    args = _build_parser().parse_args(argv)

    def grid(text):
        return [rational(part) for part in text.split(",")] if text else None

    return RunConfig(
        command=args.command,
        n=args.n,
        rho=rational(args.rho),
        c=rational(args.c),
        rho_grid=grid(getattr(args, "rho_grid", None)),
        c_grid=grid(getattr(args, "c_grid", None)),
        format=args.format,
        output=args.output,
    )


def main(argv=None) -> int:
    try:
        cfg = _parse_config(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:  # argparse usage error
        return int(exc.code or 0)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2

    try:
        if cfg.n < 1 or cfg.rho <= 0 or cfg.c < 0:
            raise ValueError("need n >= 1, rho > 0, c >= 0")
        if cfg.command == "einstein":
            if cfg.n > EINSTEIN_MAX_N:
                print(
                    f"einstein check refused: n={cfg.n} exceeds the cost guard "
                    f"(max {EINSTEIN_MAX_N})",
                    file=sys.stderr,
                )
                return 2
        elif cfg.n > _max_n():
            print(
                f"n={cfg.n} exceeds SOLV_MAX_N={_max_n()} for the exact path",
                file=sys.stderr,
            )
            return 2
        p = family.FamilyParams(cfg.n, cfg.rho, cfg.c)
    except ValueError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2

    if cfg.command == "verify":
        report = verify_report(p)
        ok = report["ok"]
    elif cfg.command == "ricci":
        report = ricci_report(p)
        ok = all(report["agreement"].values()) and report["trace_identity"]
    elif cfg.command == "soliton":
        report = soliton_report(p)
        ok = True
    elif cfg.command == "spectrum":
        report = spectrum_report(p)
        ok = True
    elif cfg.command == "einstein":
        report = einstein_report(p)
        ok = report["ok"]
    elif cfg.command == "sweep":
        rho_grid = cfg.rho_grid or [cfg.rho]
        c_grid = cfg.c_grid or [cfg.c]
        rows = sweep_rows(cfg.n, rho_grid, c_grid)
        if cfg.format == "csv":
            _emit(_render_csv(rows), cfg.output)
        elif cfg.format == "json":
            _emit(_render_json(rows), cfg.output)
        else:
            _emit("\n\n".join(_render_text(row) for row in rows), cfg.output)
        return 0
    else:  # pragma: no cover - argparse restricts the choices
        return 2

    if cfg.command == "einstein" and cfg.format == "csv":
        _emit(_render_csv(report["_residual_rows"]), cfg.output)
    elif cfg.format == "json":
        _emit(_render_json(report), cfg.output)
    elif cfg.format == "csv":
        flat = {
            k: v for k, v in report.items() if not isinstance(v, (dict, list))
        }
        _emit(_render_csv([flat]), cfg.output)
    else:
        _emit(_render_text(report), cfg.output)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
