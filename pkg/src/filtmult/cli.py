"""Command-line front end.

Every command reads one JSON file (``--input``) and writes a report in a
fixed key order, so identical inputs give byte-identical output.  Exit
codes: 0 success, 2 bad input, 3 failed precondition, 4 undecided within
the configured caps.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import divisorial as dv
from .convex import brunn_minkowski_check
from .errors import FiltmultError, SchemaError
from .io import (
    envelope_from_json,
    filtration_from_json,
    filtration_to_json,
    load,
    polytope_from_json,
    scalar_in,
    tensor_from_json,
)
from .monomial import Closure, gamma
from .multiplicity import (
    HomogeneousForm,
    default_schedule,
    form_from_mixed,
    from_values,
    minkowski_equality_test,
    minkowski_report,
    mixed_multiplicities,
    multiplicity_limit,
    trsk_check,
)
from .numeric import Approx, QuadExt, format_scalar, to_float
from .okounkov import delta_body, default_cut, multiplicity_via_volume


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    schedule: tuple[int, ...] | None
    m_max: int
    n_max: int
    r_max: int
    q_cap: int
    fmt: str
    digits: int
    extra: dict


# -- rendering -------------------------------------------------------------


def _plain(v, digits: int):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (Fraction, QuadExt, Approx, float)):
        return format_scalar(v, digits)
    if isinstance(v, int):
        return v
    if isinstance(v, HomogeneousForm):
        return v.format(digits=digits)
    if isinstance(v, dict):
        return {str(k): _plain(x, digits) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x, digits) for x in v]
    return str(v)


def _text(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "(" + ", ".join(_text(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text(x)}" for k, x in v.items()) + "}"
    return str(v)


def render(report: list[tuple[str, Any]], fmt: str, digits: int) -> str:
    rows = [(k, _plain(v, digits)) for k, v in report]
    if fmt == "json":
        return json.dumps(dict(rows), indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in rows:
            w.writerow([k, _text(v)])
        return buf.getvalue()
    out = []
    for k, v in rows:
        block = all(isinstance(x, (list, dict)) for x in v) if isinstance(v, list) else False
        if isinstance(v, list) and v and all(isinstance(x, str) and ": " in x for x in v):
            block = True
        if block and v:
            out.append(f"{k}:")
            out.extend(f"  {_text(x)}" for x in v)
        else:
            out.append(f"{k}: {_text(v)}")
    return "\n".join(out) + "\n"


# -- inputs ---------------------------------------------------------------------


def _data(cfg: RunConfig) -> dict:
    if cfg.input is None:
        raise SchemaError(f"{cfg.command} needs --input")
    obj = load(cfg.input)
    if not isinstance(obj, dict):
        raise SchemaError("the input must be a JSON object")
    return obj


def _one(obj: dict):
    if "filtration" in obj:
        return filtration_from_json(obj["filtration"])
    if "kind" in obj:
        return filtration_from_json(obj)
    raise SchemaError("expected a 'filtration' object")


def _pair(obj: dict):
    fs = obj.get("filtrations")
    if not isinstance(fs, list) or len(fs) != 2:
        raise SchemaError("expected 'filtrations': a list of two filtrations")
    return filtration_from_json(fs[0]), filtration_from_json(fs[1])


def _divisorial_data(obj: dict):
    if obj.get("builtin"):
        return dv.builtin_example()
    if "tensor" not in obj or "envelope" not in obj:
        raise SchemaError("expected 'builtin': true or both 'tensor' and 'envelope'")
    return tensor_from_json(obj["tensor"]), envelope_from_json(obj["envelope"])


def _vector(v) -> tuple:
    if not isinstance(v, list):
        raise SchemaError(f"expected a coefficient list, got {v!r}")
    return tuple(scalar_in(x) for x in v)


# -- commands -----------------------------------------------------------------


def _estimate_rows(prefix: str, est) -> list:
    if est.exact:
        return [(prefix, est.value)]
    return [(prefix, Approx(to_float(est.value), 0.0)), (f"{prefix} lower", Approx(to_float(est.lower), 0.0)),
            (f"{prefix} upper", Approx(to_float(est.upper), 0.0))]


def cmd_mult(cfg: RunConfig) -> list:
    f = _one(_data(cfg))
    rows: list = [("filtration", json.dumps(filtration_to_json(f), sort_keys=True)), ("dim", f.dim)]
    sched = cfg.schedule or default_schedule(f.dim)
    est = multiplicity_limit(f, sched, exact=False)
    if f.exact_body:
        vol = multiplicity_via_volume(f)
        rows += [("volume route", vol), ("volume exact", True)]
    else:
        vol = multiplicity_via_volume(f, m_max=cfg.m_max, method="levels")
        rows += [("volume route", vol), ("volume exact", False)]
    rows.append(("schedule", list(sched)))
    rows += _estimate_rows("limit estimate", est)
    rows.append(("agree", to_float(est.lower) - 1e-12 <= to_float(vol) <= to_float(est.upper) + 1e-12))
    return rows


def cmd_mixed(cfg: RunConfig) -> list:
    obj = _data(cfg)
    if "filtrations" in obj:
        f1, f2 = _pair(obj)
        e = mixed_multiplicities(f1, f2, cfg.schedule, exact=not obj.get("estimate", False))
        rows = [("model", "monomial"), ("exact", e.exact), ("e", list(e.values))]
        if not e.exact:
            rows.append(("brackets", [Approx(b, 0.0) for b in e.brackets]))
        rows.append(("P(n1,n2)", form_from_mixed(e)))
        return rows
    t, env = _divisorial_data(obj)
    divs = obj.get("divisors", [[1, 0], [0, 1]])
    if not isinstance(divs, list) or len(divs) != 2:
        raise SchemaError("expected 'divisors': two coefficient lists")
    d1, d2 = _vector(divs[0]), _vector(divs[1])
    rows = [("model", "divisorial"), ("D1", list(d1)), ("D2", list(d2)),
            ("e", list(dv.mixed_values(t, env, d1, d2))),
            ("mixed polynomial", dv.mixed_polynomial(t, env, d1, d2))]
    for p in dv.multiplicity_polynomial(t, env, d1, d2):
        rows.append((f"f on {p.region}", f"{_ray(p.ray_lo)} .. {_ray(p.ray_hi)}: {p.form.format()}"))
    return rows


def _ray(r) -> str:
    return "(" + ", ".join(format_scalar(x) for x in r) + ")"


def _report_rows(rep) -> list:
    return [
        ("e", list(rep.e.values)),
        ("e_i^2 <= e_(i-1) e_(i+1)", list(rep.log_concave)),
        ("e_i e_(d-i) <= e_0 e_d", list(rep.symmetric)),
        ("e_i^d <= e_0^(d-i) e_d^i", list(rep.power)),
        ("e(IJ)", rep.product_multiplicity),
        ("e(IJ)^(1/d) <= e_0^(1/d) + e_d^(1/d)", rep.minkowski),
        ("numeric", rep.numeric),
        ("xi", rep.xi),
        ("form", rep.form),
    ]


def cmd_minkowski(cfg: RunConfig) -> list:
    obj = _data(cfg)
    if "e" in obj:
        return _report_rows(minkowski_report(from_values([scalar_in(x) for x in obj["e"]])))
    f1, f2 = _pair(obj)
    v = minkowski_equality_test(f1, f2, cfg.schedule, exact=not obj.get("estimate", False), m_max=cfg.m_max)
    rows = [("verdict", v.verdict)] + _report_rows(v.report)
    if v.homothety is not None:
        rows.append(("bodies homothetic", v.homothety.homothetic))
    if v.gammas is not None:
        rows.append(("gamma ratios", [{"mu": list(r.weights), "gamma1": r.gamma1, "gamma2": r.gamma2,
                                       "agrees": r.agrees} for r in v.gammas.rows]))
    return rows


def cmd_trsk(cfg: RunConfig) -> list:
    f1, f2 = _pair(_data(cfg))
    r = trsk_check(f1, f2, cfg.schedule, n_max=cfg.n_max, q_cap=cfg.q_cap, r_max=cfg.r_max)
    return [("verdict", r.verdict), ("a", r.a), ("b", r.b), ("xi", r.xi),
            ("closure levels checked", r.levels_checked)]


def cmd_gamma(cfg: RunConfig) -> list:
    obj = _data(cfg)
    if "filtration" in obj or "kind" in obj:
        f = _one(obj)
        vals = obj.get("valuations") or [cfg.extra.get("weights") or [1] * f.dim]
        rows = []
        for w in vals:
            g = gamma(f, tuple(w), cfg.m_max)
            rows.append({"mu": list(w), "gamma": g.value, "exact": g.exact, "upper": g.upper})
        return [("gamma", rows)]
    t, env = _divisorial_data(obj)
    divs = obj.get("divisors") or [obj.get("divisor")]
    rows = []
    for d in divs:
        x = _vector(d)
        rows.append({"D": list(x), "region": dv.region_of(env, x), "gamma": list(dv.gamma_eval(env, x))})
    return [("gamma", rows)]


def cmd_body(cfg: RunConfig) -> list:
    obj = _data(cfg)
    f = _one(obj)
    c = cfg.extra.get("c")
    c = scalar_in(c) if c is not None else (scalar_in(obj["c"]) if "c" in obj else None)
    if c is None:
        c = default_cut(f)
    tb = delta_body(f, c, cfg.m_max)
    return [("dim", f.dim), ("verts", [list(v) for v in tb.body.vertices]), ("c", tb.c),
            ("m_max", tb.m_max if not tb.exact else None), ("exact", tb.exact),
            ("volume", tb.body.volume()), ("multiplicity", tb.c ** f.dim - math.factorial(f.dim) * tb.body.volume())]


def cmd_closure(cfg: RunConfig) -> list:
    obj = _data(cfg)
    f = _one(obj)
    lv = cfg.extra.get("level")
    levels = [lv] if lv else list(range(1, cfg.m_max + 1))
    cl = Closure(f, cfg.r_max)
    rows = [("r_max", cfg.r_max), ("exact", cl.exact)]
    for n in levels:
        rows.append((f"level {n}", [list(g) for g in cl.level(n).gens]))
    return rows


def cmd_bm(cfg: RunConfig) -> list:
    obj = _data(cfg)
    if "K" not in obj or "L" not in obj:
        raise SchemaError("expected polytopes 'K' and 'L'")
    k, l = polytope_from_json(obj["K"]), polytope_from_json(obj["L"])
    t = cfg.extra.get("t")
    t = scalar_in(t if t is not None else obj.get("t", "1/2"))
    r = brunn_minkowski_check(k, l, t)
    verdict = "equality" if r.equality else "strict" if r.strict else "violated"
    return [("t", t), ("lhs", r.lhs), ("rhs", r.rhs), ("verdict", verdict), ("exact", r.exact)]


# -- the two-curve example -------------------------------------------------------


def _linear(row) -> str:
    return HomogeneousForm(1, 2, {(1, 0): row[0], (0, 1): row[1]}).format()


REPRESENTATIVES = {"region 1": [(2, 1), (3, 1)], "region 2": [(1, 2), (2, 3)], "region 3": [(1, 3), (2, 7)]}


def example_c7_rows() -> list:
    t, env = dv.builtin_example()
    rows: list = [("tensor", [f"({'.'.join(t.labels[i] for i in k)}) = {format_scalar(v)}"
                              for k, v in sorted(t.entries.items())])]
    rows.append(("multiplicity f(n1, n2) of D = n1 E1 + n2 E2", [
        f"{p.region}: {_ray(p.ray_lo)} .. {_ray(p.ray_hi)}: {p.form.format()}"
        for p in dv.multiplicity_polynomial(t, env, (1, 0), (0, 1))]))
    rows.append(("gamma maps", [f"{c.name}: gamma_E1 = {_linear(c.gamma[0])}, gamma_E2 = {_linear(c.gamma[1])}"
                                for c in env.cones]))
    samples = [(2, 1), (1, 1), (1, 2), (5, 12), (1, 3), (0, 1)]
    rows.append(("gamma samples", [f"D = {_ray(s)}: {dv.region_of(env, s)}: gamma = {_ray(dv.gamma_eval(env, s))}"
                                   for s in samples]))
    rows.append(("mixed polynomial of (E1, E2)", dv.mixed_polynomial(t, env, (1, 0), (0, 1)).format()))
    rows.append(("mixed multiplicities of (E1, E2)", "(" + ", ".join(
        format_scalar(x) for x in dv.mixed_values(t, env, (1, 0), (0, 1))) + ")"))
    names = list(REPRESENTATIVES)
    matrix = []
    for a in names:
        for b in names:
            d1, d2 = REPRESENTATIVES[a][0], REPRESENTATIVES[b][1]
            v = dv.equality_classifier(env, t, d1, d2)
            matrix.append(f"{a} x {b}: D1 = {_ray(d1)}, D2 = {_ray(d2)}: {v.verdict} (rule: {v.expected})")
    d1 = REPRESENTATIVES["region 2"][0]
    d2 = tuple(2 * x for x in d1)
    v = dv.equality_classifier(env, t, d1, d2)
    matrix.append(f"region 2 x region 2: D1 = {_ray(d1)}, D2 = {_ray(d2)}: {v.verdict} (rule: {v.expected})")
    rows.append(("equality classification", matrix))
    a, b = dv.find_rescaling(env, t, (1, 3), (2, 6))
    rows.append(("rescaling for D1 = (1, 3), D2 = (2, 6)", f"a = {a}, b = {b}"))
    return rows


def cmd_example_c7(cfg: RunConfig) -> list:
    return example_c7_rows()


COMMANDS = {
    "mult": cmd_mult,
    "mixed": cmd_mixed,
    "minkowski": cmd_minkowski,
    "trsk": cmd_trsk,
    "gamma": cmd_gamma,
    "body": cmd_body,
    "closure": cmd_closure,
    "bm": cmd_bm,
    "example-c7": cmd_example_c7,
}


def _schedule(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad schedule {text!r}") from exc
    if len(vals) < 2 or any(v < 1 for v in vals) or any(a >= b for a, b in zip(vals, vals[1:])):
        raise argparse.ArgumentTypeError("a schedule needs at least two strictly increasing positive levels")
    return vals


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("caps must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="filtmult", description="Multiplicities and mixed multiplicities of filtrations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", help="JSON input file")
    p.add_argument("--schedule", type=_schedule, help="comma-separated levels, e.g. 25,50,100")
    p.add_argument("--m-max", type=_positive, default=10)
    p.add_argument("--n-max", type=_positive, default=50)
    p.add_argument("--r-max", type=_positive, default=2)
    p.add_argument("--q-cap", type=_positive, default=1000)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--digits", type=_positive, default=12)
    p.add_argument("--t", help="Brunn-Minkowski parameter (bm)")
    p.add_argument("--c", help="truncation level (body)")
    p.add_argument("--weights", help="comma-separated valuation weights (gamma)")
    p.add_argument("--level", type=_positive, help="single closure level (closure)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        extra = {"t": args.t, "c": args.c, "level": args.level,
                 "weights": [int(x) for x in args.weights.split(",")] if args.weights else None}
        cfg = RunConfig(args.command, args.input, args.schedule, args.m_max, args.n_max, args.r_max,
                        args.q_cap, args.format, args.digits, extra)
        rows = COMMANDS[cfg.command](cfg)
    except FiltmultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(rows, cfg.fmt, cfg.digits))
    return 0


if __name__ == "__main__":
    sys.exit(main())
