"""Command-line front end.

Input files are JSON with ``"format": 1``.  Rationals are written as strings
("21/4") so no precision is lost.  See the README for the schema.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction

from sympy import Matrix, Rational

from .algebraic import AlgebraicNumber, General, RootOfRational, RootOfUnity, equals_one
from .isolation import Rectangle
from .lattice import classify_number, get_basis
from .polynomial import IntPolynomial, factor_rational_poly, squarefree_part
from .search import BoundStrategy, Inconclusive

FORMAT = 1


class InputError(Exception):
    pass


def _frac(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: rationals must be strings or integers, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {x!r}") from exc


def _poly(coeffs, where: str) -> IntPolynomial:
    if not isinstance(coeffs, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
        raise InputError(f"{where}: polynomial must be a list of integers (ascending degree)")
    p = IntPolynomial(coeffs)
    if p.degree < 1:
        raise InputError(f"{where}: polynomial must have positive degree")
    return p


def parse_number(entry, k: int) -> AlgebraicNumber:
    where = f"entry {k}"
    if not isinstance(entry, dict):
        raise InputError(f"{where}: expected an object")
    if "rational" in entry:
        q = _frac(entry["rational"], where)
        if q == 0:
            raise InputError(f"{where}: zero is not allowed")
        return AlgebraicNumber.from_rational(q)
    if "minpoly" in entry:
        p = _poly(entry["minpoly"], where)
        rect = entry.get("rect")
        if not isinstance(rect, list) or len(rect) != 4:
            raise InputError(f"{where}: rect must be [re_lo, re_hi, im_lo, im_hi]")
        try:
            r = Rectangle(*(_frac(c, where) for c in rect))
            return AlgebraicNumber.validated(p, r)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
    if "root_of" in entry:
        p = _poly(entry["root_of"], where).primitive()
        idx = entry.get("index")
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise InputError(f"{where}: index must be a 1-based integer")
        fs = factor_rational_poly(p)
        if len(fs) != 1 or fs[0][1] != 1:
            listing = ", ".join(str(f) for f, _ in fs)
            raise InputError(f"{where}: {p} is reducible; factors: {listing}")
        if p.coeffs[0] == 0:
            raise InputError(f"{where}: zero is not allowed")
        try:
            return AlgebraicNumber.from_root_index(p, idx - 1)
        except IndexError as exc:
            raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}: expected one of 'rational', 'minpoly', 'root_of'")


def _load(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict) or data.get("format") != FORMAT:
        raise InputError(f'{path}: expected an object with "format": {FORMAT}')
    return data


def _rect_json(r: Rectangle) -> list[str]:
    return [str(r.re_lo), str(r.re_hi), str(r.im_lo), str(r.im_hi)]


def _number_json(a: AlgebraicNumber) -> dict:
    z = a.approx()
    return {
        "minpoly": list(a.minpoly.coeffs),
        "rect": _rect_json(a.rect),
        "approx": [float(f"{z.real:.12g}"), float(f"{z.imag:.12g}")],
    }


def _class_json(c) -> dict:
    if isinstance(c, RootOfUnity):
        return {"kind": "RootOfUnity", "order": c.order}
    if isinstance(c, RootOfRational):
        return {"kind": "RootOfRational", "rorder": c.rorder, "rvalue": str(c.rvalue)}
    assert isinstance(c, General)
    return {"kind": "General", "rexp": c.rexp, "reduced_minpoly": list(c.reduced_minpoly.coeffs)}


def build_report(xs, strategy: BoundStrategy) -> dict:
    report = {
        "format": FORMAT,
        "numbers": [_number_json(x) for x in xs],
        "classifications": [_class_json(classify_number(x)) for x in xs],
    }
    try:
        basis, indep = get_basis(xs, strategy)
    except Inconclusive as exc:
        report.update(status="Inconclusive", reason=str(exc))
        return report
    for v in basis.vectors:
        if not equals_one(xs, v):  # pragma: no cover - guarded inside get_basis too
            raise AssertionError(f"basis vector {v} failed verification")
    report.update(
        status="Complete",
        basis=[list(v) for v in basis.vectors],
        basis_hnf=[list(v) for v in basis.canonical_hnf],
        independent_indices=[i + 1 for i in indep],
        rank=len(basis.vectors),
    )
    return report


def _strategy(args, options: dict) -> BoundStrategy:
    mode = args.bound_mode or options.get("bound_mode", "certified")
    max_box = args.max_box if args.max_box is not None else options.get("max_box", 64)
    try:
        return BoundStrategy(mode=mode, max_box=int(max_box))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def cmd_basis(args) -> dict:
    data = _load(args.input)
    nums = data.get("numbers")
    if not isinstance(nums, list):
        raise InputError('"numbers" must be a list')
    xs = [parse_number(e, k + 1) for k, e in enumerate(nums)]
    return build_report(xs, _strategy(args, data.get("options", {})))


def eigenvalues(A: Matrix):
    """Distinct eigenvalues of a rational matrix, factor by factor in isolation order,
    together with the characteristic polynomial scaled to integer coefficients."""
    cp = [Fraction(int(Rational(c).p), int(Rational(c).q)) for c in A.charpoly().all_coeffs()]
    p = IntPolynomial.from_fractions(list(reversed(cp)))
    if p.coeffs[0] == 0:
        raise InputError("matrix is singular (zero eigenvalue)")
    out = []
    for f, _ in factor_rational_poly(p):
        out.extend(AlgebraicNumber.roots_of(f))
    return out, p


def parse_matrix(data) -> Matrix:
    rows = data.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError('"matrix" must be a non-empty list of rows')
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("matrix must be square")
    vals = [[_frac(c, f"row {i + 1}") for c in r] for i, r in enumerate(rows)]
    return Matrix([[Rational(x.numerator, x.denominator) for x in r] for r in vals])


def cmd_eigenlattice(args) -> dict:
    data = _load(args.input)
    A = parse_matrix(data)
    evs, cp = eigenvalues(A)
    # diagonalizable iff the squarefree part of the characteristic polynomial kills A
    sq = squarefree_part(cp)
    acc = Matrix.zeros(*A.shape)
    for c in reversed(sq.coeffs):
        acc = acc * A + c * Matrix.eye(A.shape[0])
    if not acc.is_zero_matrix:
        raise InputError("matrix is not diagonalizable")
    report = build_report(evs, _strategy(args, data.get("options", {})))
    report["characteristic_polynomial"] = list(cp.coeffs)
    report["eigenvalues"] = report.pop("numbers")
    return report


_FLAT = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def dumps(report: dict) -> str:
    """Indented JSON with scalar lists kept on one line."""
    text = json.dumps(report, indent=2)
    return _FLAT.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text) + "\n"


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exlat", description="Exponent lattices of algebraic numbers.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("basis", "basis of the exponent lattice of the numbers in a JSON file"),
        ("eigenlattice", "exponent lattice of the eigenvalues of a rational matrix"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("input")
        sp.add_argument("--bound-mode", choices=["certified", "heuristic"], default=None)
        sp.add_argument("--max-box", type=int, default=None)
        sp.add_argument("--output", default=None)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        report = cmd_basis(args) if args.command == "basis" else cmd_eigenlattice(args)
    except InputError as exc:
        print(f"exlat: error: {exc}", file=sys.stderr)
        return 1
    text = dumps(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["status"] == "Complete" else 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
