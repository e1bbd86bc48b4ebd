"""Command-line front end.

Every run prints one report: a configuration header (everything needed to
reproduce the run) followed by the result, or by a structured error.
Exit codes: 0 success, 1 domain error, 2 malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from functools import lru_cache
from importlib import resources

import jsonschema

from . import __version__
from .algebra import FFElem, FieldSpec, ZpApprox, UnramElem
from .asw import LocalStandardForm, eval_form, in_wp_image, reduce_global_p1, reduce_local
from .cft import (
    LocalUnit,
    ValuationProfile,
    classical_symbol,
    conductor_exponent,
    conductor_via_symbol,
    ramification_break,
    symbol_at_T,
    symbol_residue,
    symbol_sum,
)
from .errors import InputError, ZpTowerError
from .oracle import SUITES, run_suites
from .tower import (
    RamificationProfile,
    TowerDatum,
    frobenius_at,
    genus_sequence,
    l_degree,
    l_degree_linear,
    nc_nu,
    profile_from_datum,
    stability_classify,
)
from .witt import CharPRing, WittVec

SCHEMA_VERSION = "1"
PRECISION_ENV = "ZPTOWER_PRECISION"
COMMANDS = ("reduce", "symbol", "conductor", "breaks", "genus", "stability", "ldegree", "frobenius", "oracle")


@lru_cache(maxsize=None)
def schema_document() -> dict:
    text = resources.files("zptower").joinpath("schemas/zptower.schema.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def _validator(name):
    doc = schema_document()
    schema = {"$schema": doc["$schema"], "$defs": doc["$defs"], "$ref": f"#/$defs/{name}"}
    return jsonschema.Draft202012Validator(schema)


def _pointer(path):
    return "".join(f"/{p}" for p in path)


def validate(obj, name: str, file: str | None = None):
    """Raise InputError at the most specific failing location, if any."""
    errors = list(_validator(name).iter_errors(obj))
    if not errors:
        return
    err = max(errors, key=lambda e: (len(e.absolute_path), -len(str(e.message))))
    # descend into anyOf/allOf branches for a sharper pointer
    while err.context:
        err = max(err.context, key=lambda e: len(e.absolute_path))
    path = list(err.absolute_path)
    if "propertyNames" in err.absolute_schema_path and isinstance(err.instance, str):
        path.append(err.instance)
    elif err.validator == "required":
        missing = [k for k in err.validator_value if isinstance(err.instance, dict) and k not in err.instance]
        if missing:
            path.append(missing[0])
    exc = InputError(err.message, _pointer(path))
    exc.file = file
    raise exc


class Report:
    def __init__(self, config):
        self.config = config
        self.result = None
        self.rows = None
        self.warnings = []
        self.error = None

    def to_json(self):
        out = {"config": self.config}
        if self.error is not None:
            out["error"] = self.error
        else:
            out["result"] = self.result
        if self.warnings:
            out["warnings"] = self.warnings
        return out


# --------------------------------------------------------------------------------
# input helpers


def _read(path, name):
    obj = _load_json(path)
    validate(obj, name, path)
    return obj


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except FileNotFoundError:
        raise _file_error(InputError(f"no such file: {path}"), path) from None
    except json.JSONDecodeError as exc:
        raise _file_error(InputError(f"invalid JSON: {exc}"), path) from None
    return obj


def _file_error(exc, path):
    exc.file = path
    return exc


def _parse(path, fn):
    """Run a literal parser, tagging its errors with the file name."""
    try:
        return fn()
    except InputError as exc:
        exc.file = getattr(exc, "file", None) or path
        raise
    except ZpTowerError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise _file_error(InputError(f"cannot parse: {exc}"), path) from exc


def _field(obj, ptr="/field"):
    try:
        return FieldSpec.from_json(obj)
    except InputError as exc:
        raise InputError(str(exc), ptr + exc.pointer) from exc


def _resolve(args, n_default):
    n = args.n if args.n is not None else n_default
    N = args.precision
    if N is None:
        env = os.environ.get(PRECISION_ENV)
        if env:
            try:
                N = int(env)
            except ValueError:
                raise InputError(f"{PRECISION_ENV}={env!r} is not an integer", "") from None
    if N is None:
        N = n
    if n is None or n < 1:
        raise InputError("n must be >= 1", "/n")
    if N < n:
        raise InputError(f"precision {N} is below n={n}", "/precision")
    return n, N


def _need(path, available, N):
    if available < N:
        raise _file_error(InputError(f"data known to precision {available}, {N} requested", "/precision"), path)


# --------------------------------------------------------------------------------
# commands


def cmd_reduce(args, rep):
    obj = _read(args.input, "wittInput")
    spec = _parse(args.input, lambda: _field(obj["field"]))
    kind = obj["ring"]
    ring = CharPRing(spec, kind, args.series_precision)
    x = _parse(args.input, lambda: WittVec.from_json(ring, obj))
    n, N = _resolve(args, x.N)
    rep.config["n"], rep.config["precision"] = n, N
    _need(args.input, x.N, N)
    x = x.truncate(n)
    if kind == "series":
        sf = reduce_local(x)
        res = {"kind": "local", "form": sf.to_json(), "pole_order": sf.pole_order()}
        if args.check:
            ok, _ = in_wp_image(x - eval_form(sf))
            res["remainder_in_image"] = ok
        rep.rows = [{"i": i, "coefficient": json.dumps(v.to_json())} for i, v in sf.terms.items()]
        rep.rows.insert(0, {"i": 0, "coefficient": json.dumps(sf.c.digits)})
    else:
        gf = reduce_global_p1(x, n)
        res = {"kind": "global", "form": gf.to_json()}
        rep.rows = [
            {"place": json.dumps(pl["at"]), "i": int(i), "coefficient": json.dumps(v)}
            for pl in res["form"]["places"]
            for i, v in pl["coeffs"].items()
        ]
    rep.result = res


def _load_form(path):
    obj = _read(path, "form")
    return _parse(path, lambda: LocalStandardForm.from_json(obj, _field(obj["field"])))


def _form_at(sf, path, args):
    n, N = _resolve(args, sf.N)
    _need(path, sf.N, N)
    return n, N


def cmd_symbol(args, rep):
    sf = _load_form(args.form)
    n, N = _form_at(sf, args.form, args)
    rep.config["n"], rep.config["precision"] = n, N
    uobj = _read(args.unit, "unit")
    y = _parse(args.unit, lambda: LocalUnit.from_json(sf.spec, uobj, N))
    residue = symbol_residue(sf, y, n)
    fac = y.factorization(sf.pole_order(), n - 1)
    total = symbol_sum(sf, fac, n)
    res = {"n": n, "modulus": sf.spec.p**n, "residue": residue, "sum": total, "agreement": residue == total}
    if n == 1:
        res["classical"] = classical_symbol(sf, y)
    res["at_T"] = symbol_at_T(sf, n)
    rep.result = res


def cmd_conductor(args, rep):
    sf = _load_form(args.form)
    n, N = _form_at(sf, args.form, args)
    rep.config["n"], rep.config["precision"] = n, N
    vp = ValuationProfile.of(sf)
    levels = []
    for m in range(1, n + 1):
        row = {"n": m, "u": conductor_exponent(vp, m)}
        if args.brute:
            row["via_symbol"] = conductor_via_symbol(sf, m, args.i_bound)
            row["agreement"] = row["via_symbol"] == row["u"]
        levels.append(row)
    rep.result = {"valuations": {str(i): v for i, v in vp.vals.items()}, "levels": levels}
    rep.rows = levels


def cmd_breaks(args, rep):
    sf = _load_form(args.form)
    n, N = _form_at(sf, args.form, args)
    rep.config["n"], rep.config["precision"] = n, N
    vp = ValuationProfile.of(sf)
    rows = []
    for r in range(0, args.rmax + 1):
        b = ramification_break(vp, r)
        rows.append({"r": r, "raw": b.raw, "clamped": b.clamped, "termwise": b.termwise})
    rep.result = {"valuations": {str(i): v for i, v in vp.vals.items()}, "breaks": rows}
    rep.rows = rows


def _load_tower(path, args, n_default):
    """Tower datum or ramification profile -> (profile, extra result fields)."""
    obj = _load_json(path)
    if isinstance(obj, dict) and "field" in obj:
        validate(obj, "towerDatum", path)
        datum = _parse(path, lambda: TowerDatum.from_json(obj))
        n, N = _resolve(args, n_default if n_default is not None else datum.N)
        _need(path, datum.N, N)
        if N < datum.N:
            datum = _truncate_datum(datum, N)
        info = nc_nu(datum)
        prof = profile_from_datum(datum)
        extra = {"n_c": info.n_c, "n_u": info.n_u, "constant": info.constant}
        return prof, n, N, extra
    validate(obj, "profile", path)
    prof = _parse(path, lambda: RamificationProfile.from_json(obj))
    default = n_default if n_default is not None else (prof.horizon() or 4)
    n, N = _resolve(args, default)
    return prof, n, N, {"n_c": prof.n_c, "n_u": prof.n_u}


def _truncate_datum(d, N):
    places = {x: {i: UnramElem(d.spec, N, v.c) for i, v in t.items()} for x, t in d.places.items()}
    return TowerDatum(d.spec, N, ZpApprox(d.spec.p, N, d.c.value), places)


def cmd_genus(args, rep):
    args.n = args.nmax if args.nmax is not None else args.n
    prof, n, N, extra = _load_tower(args.input, args, None)
    rep.config["n"], rep.config["precision"] = n, N
    report = genus_sequence(prof, n, classify=args.classify)
    res = dict(extra)
    res.update(report.to_json())
    rep.result = res
    rows = []
    for lv in report.levels:
        row = {"n": lv.n, "g": lv.g, "conductor_degree": lv.conductor_degree, "bound": "" if lv.bound is None else str(lv.bound)}
        for label, u in lv.u.items():
            row[f"u_{label}"] = u
        rows.append(row)
    rep.rows = rows


def cmd_stability(args, rep):
    prof, n, N, extra = _load_tower(args.input, args, args.horizon)
    rep.config["n"], rep.config["precision"] = n, N
    verdict = stability_classify(prof, args.horizon)
    res = dict(extra)
    res["verdict"] = verdict.to_json()
    rep.result = res


def cmd_ldegree(args, rep):
    m = args.m_chi if args.m_chi is not None else args.n
    if m is None:
        raise InputError("--m-chi is required", "/m_chi")
    args.n = m
    prof, n, N, extra = _load_tower(args.input, args, m)
    rep.config["n"], rep.config["precision"] = n, N
    res = dict(extra)
    res.update({"m_chi": m, "degree": l_degree(prof, m), "linear_form": l_degree_linear(prof, m)})
    rep.result = res


def cmd_frobenius(args, rep):
    obj = _read(args.input, "frobeniusInput")
    spec = _parse(args.input, lambda: _field(obj["field"]))
    a = _parse(args.input, lambda: WittVec.from_json(CharPRing(spec, "ratfunc"), obj))
    pt = obj["point"]
    big = _parse(args.input, lambda: _field(pt["field"], "/point/field")) if "field" in pt else spec
    if big.p != spec.p:
        raise _file_error(InputError("point field has a different characteristic", "/point/field/p"), args.input)
    z = _parse(args.input, lambda: _point_value(big, pt["value"]))
    n, N = _resolve(args, a.N)
    rep.config["n"], rep.config["precision"] = n, N
    _need(args.input, a.N, N)
    rep.result = {"n": n, "modulus": spec.p**n, "point": z.to_json(), "frobenius": frobenius_at(a, z, n)}


def _point_value(spec, v):
    try:
        return FFElem.from_json(spec, v)
    except InputError as exc:
        raise InputError(str(exc), "/point/value" + exc.pointer) from exc


def cmd_oracle(args, rep):
    rep.config["n"], rep.config["precision"] = None, None
    only = args.suite or None
    results = run_suites(args.seed, args.scale, only)
    failed = [r.name for r in results if not r.passed]
    rep.result = {"scale": args.scale, "suites": [r.to_json() for r in results], "passed": not failed, "failed": failed}
    rep.rows = [r.to_json() for r in results]
    return 1 if failed else 0


HANDLERS = {
    "reduce": cmd_reduce,
    "symbol": cmd_symbol,
    "conductor": cmd_conductor,
    "breaks": cmd_breaks,
    "genus": cmd_genus,
    "stability": cmd_stability,
    "ldegree": cmd_ldegree,
    "frobenius": cmd_frobenius,
    "oracle": cmd_oracle,
}


# --------------------------------------------------------------------------------
# output


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}{k}."))
        return out
    if isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
        out = []
        for k, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}{k}."))
        return out
    return [{"key": prefix[:-1], "value": json.dumps(obj) if isinstance(obj, (list, type(None))) else obj}]


def _rows(rep):
    return rep.rows if rep.rows is not None else _flatten(rep.result)


def _columns(rows):
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    return cols


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def render(rep: Report, fmt: str) -> str:
    if fmt == "json" or rep.error is not None:
        return json.dumps(rep.to_json(), indent=2) + "\n"
    header = "# config " + json.dumps(rep.config, separators=(",", ":")) + "\n"
    for w in rep.warnings:
        header += "# warning " + w + "\n"
    rows = _rows(rep)
    cols = _columns(rows)
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(cols)
        for r in rows:
            wr.writerow([_cell(r.get(c)) for c in cols])
        return header + buf.getvalue()
    cells = [cols] + [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(cols))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return header + "\n".join(lines) + "\n"


# --------------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="level n (results mod p^n)")
    common.add_argument("--precision", type=int, help=f"working precision N >= n (default: ${PRECISION_ENV}, else n)")
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="zptower", description="Exact computations for Z_p-towers of function fields.")
    parser.add_argument("--version", action="version", version=f"zptower {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="standard form of a Witt vector")
    p.add_argument("--input", required=True)
    p.add_argument("--series-precision", type=int, help="cap on the T-adic precision of lifted series")
    p.add_argument("--check", action="store_true", help="verify the remainder lies in the image of F - 1")

    p = sub.add_parser("symbol", parents=[common], help="local symbol [x, y) by both formulas")
    p.add_argument("--form", required=True)
    p.add_argument("--unit", required=True)

    p = sub.add_parser("conductor", parents=[common], help="conductor exponents u_1..u_n")
    p.add_argument("--form", required=True)
    p.add_argument("--brute", action="store_true", help="also compute each u_m by brute-force pairing")
    p.add_argument("--i-bound", type=int)

    p = sub.add_parser("breaks", parents=[common], help="upper ramification breaks b_0..b_rmax")
    p.add_argument("--form", required=True)
    p.add_argument("--rmax", type=int, default=10)

    p = sub.add_parser("genus", parents=[common], help="genus sequence g_1..g_nmax")
    p.add_argument("--input", required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--classify", action="store_true", help="attach the stability verdict")

    p = sub.add_parser("stability", parents=[common], help="genus-stability classification")
    p.add_argument("--input", required=True)
    p.add_argument("--horizon", type=int)

    p = sub.add_parser("ldegree", parents=[common], help="degree of the L-function of a character")
    p.add_argument("--input", required=True)
    p.add_argument("--m-chi", type=int)

    p = sub.add_parser("frobenius", parents=[common], help="Frobenius at a point, as an element of Z/p^n")
    p.add_argument("--input", required=True)

    p = sub.add_parser("oracle", parents=[common], help="run the self-test suites")
    p.add_argument("--scale", type=int, default=10, help="random cases per suite configuration")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    return parser


def _config(args):
    inputs = {k: getattr(args, k) for k in ("input", "form", "unit") if getattr(args, k, None) is not None}
    cfg = {
        "command": args.command,
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "precision": args.precision,
        "n": args.n,
        "seed": args.seed,
        "format": args.format,
        "inputs": inputs,
    }
    for k in ("nmax", "rmax", "horizon", "m_chi", "scale", "series_precision", "i_bound"):
        if getattr(args, k, None) is not None:
            cfg[k] = getattr(args, k)
    for k in ("brute", "check", "classify"):
        if getattr(args, k, False):
            cfg[k] = True
    return cfg


def _error(exc):
    return {
        "type": type(exc).__name__,
        "message": str(exc),
        "pointer": getattr(exc, "pointer", None),
        "file": getattr(exc, "file", None),
    }


def run(argv, out) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(_config(args))
    code = 0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            code = HANDLERS[args.command](args, rep) or 0
        except InputError as exc:
            rep.error, code = _error(exc), 2
        except ZpTowerError as exc:
            rep.error, code = _error(exc), 1
    rep.warnings = [str(w.message) for w in caught]
    out.write(render(rep, args.format))
    return code


def main(argv=None) -> int:
    return run(argv, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
