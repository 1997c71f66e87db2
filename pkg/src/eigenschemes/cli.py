"""Command-line front end.

Each subcommand builds the same request model the HTTP service accepts,
calls the shared handler in process, and prints the response as JSON
(default) or a short text rendering.  Exit code 0 means success, 1 means
the mathematics came back negative (a failed test, a violation, an
indeterminate evaluation), 2 means the input was malformed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .service import handlers, schemas

_OK, _NEGATIVE, _MALFORMED = 0, 1, 2


def _read_payload(path: str | None) -> dict:
    raw = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    doc = json.loads(raw)
    if not isinstance(doc, dict):
        raise ValueError("top-level JSON payload must be an object")
    return doc


def _emit(doc: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _coord_text(c) -> str:
    if isinstance(c, str):
        return c
    if isinstance(c, list):
        return f"{c[0]:.10g}{c[1]:+.10g}i"
    return str(c)


def _point_text(p: list) -> str:
    return "(" + " : ".join(_coord_text(c) for c in p) + ")"


def _tensor_lines(t: dict) -> list[str]:
    label = "f" if t["kind"] == "symmetric" else "g"
    if t["kind"] == "symmetric":
        return [f"f = {t['forms'][0]}"]
    return [f"{label}_{k} = {form}" for k, form in enumerate(t["forms"])]


def _cmd_count(args) -> tuple[dict, int, list[str]]:
    req = schemas.CountRequest(n=args.n, d=args.d, include_bound=args.bound)
    resp = handlers.count(req)
    doc = resp.model_dump(exclude_none=True)
    lines = [f"w({args.n},{args.d}) = {resp.w}"]
    if resp.dimension_bound is not None:
        lines.append(f"dimension bound = {resp.dimension_bound}")
    return doc, _OK, lines


def _cmd_generators(args) -> tuple[dict, int, list[str]]:
    req = schemas.GeneratorsRequest(tensor=_read_payload(args.input))
    resp = handlers.generators(req)
    doc = resp.model_dump()
    lines = [
        f"f_{i}{j} = {form}" for (i, j), form in zip(resp.pairs, resp.forms)
    ]
    return doc, _OK, lines


def _cmd_check_equations(args) -> tuple[dict, int, list[str]]:
    payload = _read_payload(args.input)
    req = schemas.CheckEquationsRequest(
        **payload, search=args.search, symmetric=args.symmetric
    )
    resp = handlers.equations(req)
    doc = resp.model_dump(exclude_none=True)
    positive = resp.recovered is not None or (
        resp.basis_change is not None and resp.basis_change.found
    )
    lines = [f"koszul: {resp.koszul}", f"derham: {resp.derham}"]
    if resp.recovered is not None:
        lines.append(f"recovered ({resp.recovered.kind}):")
        lines.extend("  " + s for s in _tensor_lines(resp.recovered.model_dump()))
    elif resp.basis_change is not None:
        lines.append(f"basis change found: {resp.basis_change.found}")
    return doc, _OK if positive else _NEGATIVE, lines


def _cmd_fit_points(args) -> tuple[dict, int, list[str]]:
    payload = _read_payload(args.input)
    req = schemas.FitPointsRequest(
        points=payload.get("points", []), d=args.degree, symmetric=args.symmetric
    )
    resp = handlers.fit_points(req)
    doc = resp.model_dump(exclude_none=True)
    lines = [
        f"found: {resp.found} (kernel {resp.kernel_dim}, trivial {resp.trivial_dim})"
    ]
    if resp.witness is not None:
        lines.append(f"witness ({resp.witness.kind}):")
        lines.extend("  " + s for s in _tensor_lines(resp.witness.model_dump()))
    return doc, _OK if resp.found else _NEGATIVE, lines


def _cmd_hilbert(args) -> tuple[dict, int, list[str]]:
    if args.random:
        if args.n is None or args.d is None:
            raise ValueError("--random needs --n and --d")
        req = schemas.HilbertRequest(
            random=schemas.RandomTensorSpec(
                n=args.n, d=args.d, seed=args.seed, symmetric=args.symmetric
            ),
            window=args.window,
        )
    else:
        req = schemas.HilbertRequest(
            tensor=_read_payload(args.input), window=args.window
        )
    resp = handlers.hilbert(req)
    doc = resp.model_dump()
    lines = ["  e  predicted  actual  agree"]
    for row in resp.rows:
        lines.append(
            f"{row.e:>3}  {row.predicted:>9}  {row.actual:>6}  {str(row.agree).lower()}"
        )
    lines.append(
        f"zero-dimensional: {resp.zero_dimensional}"
        + (f", degree {resp.degree}" if resp.degree is not None else "")
    )
    return doc, _OK if resp.all_agree else _NEGATIVE, lines


def _cmd_betti(args) -> tuple[dict, int, list[str]]:
    req = schemas.BettiRequest(n=args.n, d=args.d)
    resp = handlers.betti(req)
    return resp.model_dump(), _OK, list(resp.rendered)


def _point_list_lines(resp: schemas.PointListResponse) -> list[str]:
    lines = [f"{resp.count} points (expected {resp.expected})"]
    for p, res, status in zip(resp.points, resp.residuals, resp.statuses):
        tail = f"  [{status}]" if res is None else f"  [{status}, residual {res:.2e}]"
        lines.append(_point_text(p) + tail)
    for failure in resp.chart_failures:
        lines.append(f"chart failure: {failure}")
    return lines


def _cmd_solve(args) -> tuple[dict, int, list[str]]:
    req = schemas.SolveRequest(tensor=_read_payload(args.input), tol=args.tol)
    resp = handlers.solve(req)
    doc = resp.model_dump(exclude_none=True)
    if resp.error is not None:
        return doc, _NEGATIVE, [f"error: {resp.error}"]
    return doc, _OK, _point_list_lines(resp)


def _cmd_fermat(args) -> tuple[dict, int, list[str]]:
    req = schemas.FermatRequest(n=args.n, d=args.d)
    resp = handlers.fermat(req)
    return resp.model_dump(exclude_none=True), _OK, _point_list_lines(resp)


def _cmd_geometry(args) -> tuple[dict, int, list[str]]:
    payload = _read_payload(args.input)
    req = schemas.GeometryRequest(
        points=payload.get("points", []), d=args.degree, tol=args.tol
    )
    resp = handlers.geometry(req)
    doc = resp.model_dump()
    lines = [
        f"collinear violations: {len(resp.collinear_violations)}",
        f"sharp lines: {len(resp.sharp_lines)}",
        f"curve candidates: {len(resp.curve_candidates)}",
        f"status: {resp.status}",
    ]
    for v in resp.collinear_violations:
        lines.append(f"  violation: points {v['points']}")
    for w in resp.sharp_lines:
        lines.append(f"  sharp line: points {w['points']}")
    for c in resp.curve_candidates:
        lines.append(
            f"  degree-{c['k']} candidate through {c['points']}"
            f" (irreducibility {c['irreducibility']})"
        )
    negative = bool(resp.collinear_violations or resp.curve_candidates)
    return doc, _NEGATIVE if negative else _OK, lines


def _cmd_laguerre(args) -> tuple[dict, int, list[str]]:
    payload = _read_payload(args.input)
    req = schemas.LaguerreRequest(
        tensor=payload.get("tensor"), point=payload.get("point", []), tol=args.tol
    )
    resp = handlers.laguerre_map(req)
    doc = resp.model_dump(exclude_none=True)
    if resp.error is not None:
        return doc, _NEGATIVE, [f"error: {resp.error}"]
    lines = [
        "plucker coordinates: "
        + ", ".join(
            f"p_{i}{j} = {_coord_text(c)}"
            for (i, j), c in zip(resp.pairs, resp.coords)
        ),
        f"wedge-map rank: {resp.rank} (line expects {resp.expected_rank})",
        f"point on fiber line: {resp.point_on_line}",
        f"image on fiber line: {resp.image_on_line}",
    ]
    code = _OK if resp.rank == resp.expected_rank else _NEGATIVE
    return doc, code, lines


def _parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument(
        "--format", choices=("json", "text"), default="json", help="output format"
    )
    inp = argparse.ArgumentParser(add_help=False)
    inp.add_argument(
        "--input", default=None, help="JSON payload path (default: standard input)"
    )
    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance")

    p = argparse.ArgumentParser(
        prog="eigenschemes",
        description="Eigenschemes of partially symmetric tensors: exact toolkit.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[fmt], help="eigenpoint count w(n,d)")
    c.add_argument("n", type=int)
    c.add_argument("d", type=int)
    c.add_argument(
        "--bound", action="store_true", help="include the eigenvariety dimension bound"
    )

    sub.add_parser(
        "generators", parents=[fmt, inp], help="2x2 minors of a tensor"
    )

    ce = sub.add_parser(
        "check-equations",
        parents=[fmt, inp],
        help="test forms for being determinantal equations",
    )
    ce.add_argument(
        "--no-search",
        dest="search",
        action="store_false",
        help="skip the change-of-basis search on failure",
    )
    ce.add_argument(
        "--symmetric",
        action="store_true",
        help="require the gradient (symmetric) conditions in the search",
    )

    fp = sub.add_parser(
        "fit-points", parents=[fmt, inp], help="tensors having given eigenpoints"
    )
    fp.add_argument("--degree", type=int, required=True, help="tensor order d")
    fp.add_argument("--symmetric", action="store_true")

    h = sub.add_parser(
        "hilbert", parents=[fmt, inp], help="predicted vs actual Hilbert function"
    )
    h.add_argument("--random", action="store_true", help="sample a random tensor")
    h.add_argument("--n", type=int, default=None)
    h.add_argument("--d", type=int, default=None)
    h.add_argument("--seed", type=int, default=None)
    h.add_argument("--symmetric", action="store_true")
    h.add_argument("--window", type=int, default=None, help="top comparison degree")

    b = sub.add_parser("betti", parents=[fmt], help="predicted resolution table")
    b.add_argument("n", type=int)
    b.add_argument("d", type=int)

    sub.add_parser(
        "solve", parents=[fmt, inp, tol], help="enumerate eigenpoints (n = 1, 2)"
    )

    fe = sub.add_parser(
        "fermat", parents=[fmt], help="eigenpoints of the power-sum form"
    )
    fe.add_argument("n", type=int)
    fe.add_argument("d", type=int)

    g = sub.add_parser(
        "geometry", parents=[fmt, inp, tol], help="configuration checks on points"
    )
    g.add_argument("--degree", type=int, required=True, help="tensor order d")

    sub.add_parser(
        "laguerre", parents=[fmt, inp, tol], help="line through a point and its image"
    )
    return p


_COMMANDS = {
    "count": _cmd_count,
    "generators": _cmd_generators,
    "check-equations": _cmd_check_equations,
    "fit-points": _cmd_fit_points,
    "hilbert": _cmd_hilbert,
    "betti": _cmd_betti,
    "solve": _cmd_solve,
    "fermat": _cmd_fermat,
    "geometry": _cmd_geometry,
    "laguerre": _cmd_laguerre,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "hilbert" and args.random and args.seed is None:
        print(json.dumps({"error": "--random requires --seed"}))
        return _MALFORMED
    try:
        doc, code, lines = _COMMANDS[args.command](args)
    except (ValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc)}))
        return _MALFORMED
    _emit(doc, args.format, lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
