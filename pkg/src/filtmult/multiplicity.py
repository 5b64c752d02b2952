"""Limit multiplicities, mixed multiplicities and the Minkowski diagnostics."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .convex import solve
from .errors import DimensionMismatch, IllConditioned, NotNested, PrecisionExhausted, RationalityUndecided, ZeroVolume
from .monomial import Closure, Filtration, Product, Rescale, WeightValuation, gamma
from .numeric import (
    Approx,
    Scalar,
    approximate_above,
    approximate_below,
    as_scalar,
    format_scalar,
    is_exact,
    nth_root,
    rational_dth_root,
    sign,
    sqrt_rational,
    to_float,
    to_mpf,
)
from .okounkov import multiplicity_via_volume, pair_homothety_check

DEFAULT_SCHEDULES = {1: (25, 50, 100, 200, 400), 2: (25, 50, 100, 200, 400), 3: (10, 20, 40, 80)}


def worker_count() -> int:
    """Thread cap from ``FILTMULT_THREADS`` (default: up to 4)."""
    raw = os.environ.get("FILTMULT_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, min(4, os.cpu_count() or 1))


def default_schedule(dim: int) -> tuple[int, ...]:
    return DEFAULT_SCHEDULES.get(dim, (6, 12, 24))


def _check_schedule(schedule: Sequence[int]) -> tuple[int, ...]:
    sched = tuple(int(m) for m in schedule)
    if len(sched) < 2 or any(m < 1 for m in sched) or any(a >= b for a, b in zip(sched, sched[1:])):
        raise ValueError("a schedule needs at least two strictly increasing positive levels")
    return sched


# -- single filtrations ------------------------------------------------------


@dataclass(frozen=True)
class LimitEstimate:
    """A multiplicity with a bracket ``[lower, upper]``.

    Exact results have ``lower == value == upper`` and ``exact`` set.
    ``samples`` holds the raw ratios ``d! l(R/I_m) / m^d`` along the schedule.
    """

    value: Scalar
    lower: Scalar
    upper: Scalar
    exact: bool
    samples: tuple[tuple[int, Fraction], ...] = ()

    @property
    def halfwidth(self) -> float:
        return (to_float(self.upper) - to_float(self.lower)) / 2

    def scalar(self) -> Scalar:
        if self.exact:
            return self.value
        return Approx(to_float(self.value), max(self.halfwidth, 1e-12))

    def scaled(self, c: Fraction) -> "LimitEstimate":
        return LimitEstimate(self.value * c, self.lower * c, self.upper * c, self.exact,
                             tuple((m, s * c) for m, s in self.samples))

    def overlaps(self, other: "LimitEstimate") -> bool:
        if self.exact and other.exact:
            return sign(as_scalar(self.value) - as_scalar(other.value)) == 0
        return to_float(self.lower) <= to_float(other.upper) + 1e-12 and \
            to_float(other.lower) <= to_float(self.upper) + 1e-12


def _exact_estimate(value: Scalar) -> LimitEstimate:
    return LimitEstimate(value, value, value, True)


def multiplicity_limit(f: Filtration, schedule: Sequence[int] | None = None, exact: bool = True,
                       window: int = 16) -> LimitEstimate:
    """``e(f) = d! lim l(R/I_m) / m^d``.

    With ``exact`` and a structurally known body the value comes from the
    body volume.  Otherwise ratios ``s_m`` along the schedule are combined
    as ``(m1 s_m1 - m0 s_m0) / (m1 - m0)``, which cancels a smooth ``1/m``
    error.  When levels are rounded from irrational data the remainder
    oscillates, so the last step is repeated for ``window`` neighbouring
    pairs ``(m, 2m)``: their range gives the bracket, widened by the drift
    of the window mean since the previous scale.
    """
    if exact and f.exact_body:
        return _exact_estimate(multiplicity_via_volume(f))
    sched = _check_schedule(schedule or default_schedule(f.dim))
    d = f.dim
    fact = math.factorial(d)

    def ratio(m: int) -> Fraction:
        return Fraction(fact * f.colength(m), m**d)

    def extrapolate(m0: int, m1: int) -> Fraction:
        return (m1 * ratio(m1) - m0 * ratio(m0)) / (m1 - m0)

    samples = tuple((m, ratio(m)) for m in sched)
    top = sched[-1]
    width = max(1, min(window, top // 8))

    def block(mid: int) -> list[Fraction]:
        return [extrapolate(m, 2 * m) for m in range(max(1, mid - width + 1), mid + 1)]

    near, prev = block(top // 2), block(top // 4)
    lo, hi = min(near), max(near)
    value = (lo + hi) / 2
    drift = abs(sum(near) / len(near) - sum(prev) / len(prev))
    half = (hi - lo) / 2 + drift + Fraction(1, 10**12)
    return LimitEstimate(value, max(Fraction(0), value - half), value + half, False, samples)


def mixed_function(filtrations: Sequence[Filtration], n: Sequence[int],
                   schedule: Sequence[int] | None = None, exact: bool = True) -> LimitEstimate:
    """``lim l(R / prod_j I(j)_{m n_j}) / m^d``."""
    if len(filtrations) != len(n):
        raise ValueError("one weight per filtration")
    parts = [Rescale(f, k) for f, k in zip(filtrations, n) if k]
    if not parts:
        raise ValueError("at least one weight must be positive")
    g = parts[0] if len(parts) == 1 else Product(*parts)
    return multiplicity_limit(g, schedule, exact).scaled(Fraction(1, math.factorial(g.dim)))


# -- mixed multiplicities ---------------------------------------------------


@dataclass(frozen=True)
class MixedMultiplicities:
    d: int
    values: tuple[Scalar, ...]
    brackets: tuple[float, ...]
    exact: bool
    nodes: tuple[tuple[tuple[int, int], LimitEstimate], ...] = field(default=(), repr=False)

    @property
    def e0(self) -> Scalar:
        return self.values[0]

    @property
    def ed(self) -> Scalar:
        return self.values[-1]

    def interval(self, i: int) -> tuple[float, float]:
        v = to_float(self.values[i])
        return v - self.brackets[i], v + self.brackets[i]


def _node_row(d: int, n1: int, n2: int) -> list[Fraction]:
    return [Fraction(n1 ** (d - i) * n2**i, math.factorial(d - i) * math.factorial(i)) for i in range(d + 1)]


def _estimate_nodes(d: int) -> list[tuple[int, int]]:
    nodes = [(1, 0), (0, 1)]
    for tot in range(2, d + 1):
        nodes.extend((a, tot - a) for a in range(1, tot) if math.gcd(a, tot - a) == 1)
    return nodes


def mixed_multiplicities(f1: Filtration, f2: Filtration, schedule: Sequence[int] | None = None,
                         exact: bool = True) -> MixedMultiplicities:
    """Solve for ``e_0..e_d`` from ``P(n1, n2) = sum e_i n1^{d-i} n2^i / ((d-i)! i!)``."""
    if f1.dim != f2.dim:
        raise DimensionMismatch("filtrations live in different dimensions")
    d = f1.dim
    use_exact = exact and f1.exact_body and f2.exact_body
    nodes = [(d - k, k) for k in range(d + 1)] if use_exact else _estimate_nodes(d)

    def run(node):
        return mixed_function((f1, f2), node, schedule, exact=use_exact)

    with ThreadPoolExecutor(max_workers=min(worker_count(), len(nodes))) as pool:
        ests = list(pool.map(run, nodes))
    evidence = tuple(zip(nodes, ests))
    if use_exact:
        rows = [_node_row(d, *nd) for nd in nodes]
        vals = solve(rows, [e.value for e in ests])
        return MixedMultiplicities(d, tuple(vals), (0.0,) * (d + 1), True, evidence)
    a = np.array([[float(x) for x in _node_row(d, *nd)] for nd in nodes])
    p = np.array([to_float(e.value) for e in ests])
    h = np.array([e.halfwidth for e in ests])
    pinv = np.linalg.pinv(a)
    sol = pinv @ p
    br = np.abs(pinv) @ h
    scale_ = max(1.0, float(np.max(np.abs(sol))))
    for i, b in enumerate(br):
        if b > 0.5 * scale_:
            worst = int(np.argmax(np.abs(pinv[i]) * h))
            raise IllConditioned(f"bracket for e_{i} is {b:.3g}; widest contribution from node {nodes[worst]}")
    vals = tuple(Approx(float(v), max(float(b), 1e-12)) for v, b in zip(sol, br))
    return MixedMultiplicities(d, vals, tuple(float(b) for b in br), False, evidence)


def from_values(values: Sequence, brackets: Sequence[float] | None = None) -> MixedMultiplicities:
    """Wrap a plain list ``e_0..e_d``."""
    vals = tuple(as_scalar(v) for v in values)
    br = tuple(brackets) if brackets is not None else (0.0,) * len(vals)
    return MixedMultiplicities(len(vals) - 1, vals, br, all(b == 0 for b in br) and all(is_exact(v) for v in vals))


# -- homogeneous forms -----------------------------------------------------


@dataclass(frozen=True)
class HomogeneousForm:
    """``sum_alpha c_alpha n^alpha`` in ``nvars`` variables."""

    degree: int
    nvars: int
    coeffs: Mapping[tuple[int, ...], Scalar]

    def __call__(self, *n) -> Scalar:
        total = Fraction(0)
        for alpha, c in self.coeffs.items():
            term = c
            for x, k in zip(n, alpha):
                term = term * Fraction(x) ** k
            total = total + term
        return total

    def coefficient(self, alpha: Sequence[int]) -> Scalar:
        return self.coeffs.get(tuple(alpha), Fraction(0))

    def terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return sorted(((a, c) for a, c in self.coeffs.items() if sign(c) != 0), reverse=True)

    def format(self, names: Sequence[str] | None = None, digits: int = 12) -> str:
        names = names or [f"n{i + 1}" for i in range(self.nvars)]
        out = ""
        for alpha, c in self.terms():
            mono = "*".join(f"{x}^{k}" if k > 1 else x for x, k in zip(names, alpha) if k)
            neg = isinstance(c, Fraction) and c < 0
            txt = format_scalar(-c if neg else c, digits)
            if " " in txt:
                txt = f"({txt})"
            term = mono if txt == "1" and mono else f"{txt}*{mono}" if mono else txt
            if not out:
                out = f"-{term}" if neg else term
            else:
                out += f" - {term}" if neg else f" + {term}"
        return out or "0"

    def __str__(self):
        return self.format()


def form_from_mixed(e: MixedMultiplicities) -> HomogeneousForm:
    d = e.d
    return HomogeneousForm(d, 2, {(d - i, i): e.values[i] * Fraction(1, math.factorial(d - i) * math.factorial(i))
                                  for i in range(d + 1)})


# -- Minkowski inequalities --------------------------------------------------

HOLDS, EQUALITY, VIOLATED = "holds", "equality", "violated"


def _compare(lhs, rhs, lhs_iv=None, rhs_iv=None) -> str:
    """Verdict for ``lhs <= rhs``: exact sign when possible, otherwise intervals."""
    if lhs_iv is None and is_exact(lhs) and is_exact(rhs):
        s = sign(as_scalar(rhs) - as_scalar(lhs))
        return HOLDS if s > 0 else EQUALITY if s == 0 else VIOLATED
    lo_l, hi_l = lhs_iv if lhs_iv else (to_float(lhs),) * 2
    lo_r, hi_r = rhs_iv if rhs_iv else (to_float(rhs),) * 2
    slack = 1e-9 * max(1.0, abs(hi_r))
    if hi_l < lo_r - slack:
        return HOLDS
    if lo_l > hi_r + slack:
        return VIOLATED
    return EQUALITY


def _iv_pow(iv, k):
    lo, hi = max(iv[0], 0.0), max(iv[1], 0.0)
    return lo**k, hi**k


def _iv_mul(a, b):
    return max(a[0], 0.0) * max(b[0], 0.0), max(a[1], 0.0) * max(b[1], 0.0)


@dataclass(frozen=True)
class MinkowskiReport:
    """Verdicts for the four inequalities.

    ``log_concave[i]`` compares ``e_i^2`` with ``e_{i-1} e_{i+1}``,
    ``symmetric[i]`` compares ``e_i e_{d-i}`` with ``e_0 e_d``, ``power[i]``
    compares ``e_i^d`` with ``e_0^{d-i} e_d^i`` and ``minkowski`` compares
    ``e(IJ)^{1/d}`` with ``e_0^{1/d} + e_d^{1/d}``.
    """

    e: MixedMultiplicities
    log_concave: tuple[str, ...]
    symmetric: tuple[str, ...]
    power: tuple[str, ...]
    minkowski: str
    product_multiplicity: Scalar
    equality: bool
    consistent: bool
    xi: Scalar | None
    form: HomogeneousForm | None
    numeric: bool

    def overall(self, verdicts: Sequence[str]) -> str:
        if VIOLATED in verdicts:
            return VIOLATED
        return EQUALITY if all(v == EQUALITY for v in verdicts) else HOLDS


def _minkowski_exact(e0: Scalar, ed: Scalar, total: Scalar, d: int) -> str | None:
    if not all(isinstance(x, Fraction) for x in (e0, ed)) or not is_exact(total):
        return None
    if e0 <= 0 or ed <= 0:
        s = sign(as_scalar(e0 + ed) - total) if d == 1 else None
        return None if s is None else HOLDS if s > 0 else EQUALITY if s == 0 else VIOLATED
    r = rational_dth_root(ed, e0, d)
    if r is not None:
        s = sign((1 + r) ** d * e0 - total)
    elif d == 2:
        s = sign(e0 + ed + 2 * sqrt_rational(e0 * ed) - total)
    else:
        return None
    return HOLDS if s > 0 else EQUALITY if s == 0 else VIOLATED


def minkowski_report(e: MixedMultiplicities) -> MinkowskiReport:
    d = e.d
    vals = e.values
    exact = e.exact
    ivs = [e.interval(i) for i in range(d + 1)]

    def cmp(lhs_fn, rhs_fn, iv_l, iv_r):
        if exact:
            return _compare(lhs_fn(), rhs_fn())
        return _compare(None, None, iv_l, iv_r)

    lc = tuple(cmp(lambda i=i: vals[i] ** 2, lambda i=i: vals[i - 1] * vals[i + 1],
                   _iv_pow(ivs[i], 2) if not exact else None,
                   _iv_mul(ivs[i - 1], ivs[i + 1]) if not exact else None) for i in range(1, d))
    sym = tuple(cmp(lambda i=i: vals[i] * vals[d - i], lambda: vals[0] * vals[d],
                    _iv_mul(ivs[i], ivs[d - i]) if not exact else None,
                    _iv_mul(ivs[0], ivs[d]) if not exact else None) for i in range(1, d))
    pw = tuple(cmp(lambda i=i: vals[i] ** d, lambda i=i: vals[0] ** (d - i) * vals[d] ** i,
                   _iv_pow(ivs[i], d) if not exact else None,
                   _iv_mul(_iv_pow(ivs[0], d - i), _iv_pow(ivs[d], i)) if not exact else None)
               for i in range(1, d))
    total = sum((math.comb(d, i) * vals[i] for i in range(d + 1)), Fraction(0))
    numeric = not exact
    mk = _minkowski_exact(vals[0], vals[d], total, d) if exact else None
    if mk is None:
        numeric = True
        lo = sum(math.comb(d, i) * max(ivs[i][0], 0.0) for i in range(d + 1))
        hi = sum(math.comb(d, i) * ivs[i][1] for i in range(d + 1))
        r_lo = (max(ivs[0][0], 0.0) ** (1 / d) + max(ivs[d][0], 0.0) ** (1 / d)) ** d
        r_hi = (max(ivs[0][1], 0.0) ** (1 / d) + max(ivs[d][1], 0.0) ** (1 / d)) ** d
        if exact:
            rhs = (to_mpf(vals[0]) ** (to_mpf(1) / d) + to_mpf(vals[d]) ** (to_mpf(1) / d)) ** d
            lo = hi = float(to_mpf(total))
            r_lo = r_hi = float(rhs)
        mk = _compare(None, None, (lo, hi), (r_lo, r_hi))
    eq_power = all(v == EQUALITY for v in pw)
    equality = mk == EQUALITY
    consistent = eq_power == equality
    xi = form = None
    positive = sign(as_scalar(vals[0])) > 0 if exact else ivs[0][0] > 0
    if positive:
        ratio = vals[d] / vals[0] if exact else Approx(to_float(vals[d]) / to_float(vals[0]), 1e-9)
        xi = nth_root(ratio, d)
        if equality:
            form = form_from_mixed(e)
    return MinkowskiReport(e, lc, sym, pw, mk, total, equality, consistent, xi, form, numeric)


# -- γ ratios ----------------------------------------------------------------


@dataclass(frozen=True)
class GammaRow:
    weights: tuple[int, ...]
    gamma1: Scalar
    gamma2: Scalar
    agrees: bool


@dataclass(frozen=True)
class GammaRatioReport:
    xi: Scalar
    rows: tuple[GammaRow, ...]

    @property
    def all_agree(self) -> bool:
        return all(r.agrees for r in self.rows)


def gamma_ratio_check(f1: Filtration, f2: Filtration, valuations: Sequence, e0, ed,
                      m_max: int = 20) -> GammaRatioReport:
    """Compare ``γ_μ(f2) / γ_μ(f1)`` with ``(e_d / e_0)^{1/d}`` for each ``μ``."""
    e0, ed = as_scalar(e0), as_scalar(ed)
    if sign(e0) <= 0 or sign(ed) <= 0:
        raise ZeroVolume("both pure multiplicities must be positive")
    d = f1.dim
    xi = nth_root(ed / e0, d)
    rows = []
    for mu in valuations:
        mu = mu if isinstance(mu, WeightValuation) else WeightValuation(tuple(mu))
        g1, g2 = gamma(f1, mu, m_max), gamma(f2, mu, m_max)
        lhs, rhs = g2.value, xi * g1.value
        if g1.exact and g2.exact and is_exact(lhs) and is_exact(rhs):
            try:
                ok = sign(as_scalar(lhs) - as_scalar(rhs)) == 0
            except TypeError:
                ok = abs(to_float(lhs) - to_float(rhs)) <= 1e-9 * max(1.0, abs(to_float(rhs)))
        else:
            slack = to_float(g2.upper - g2.value) + to_float(xi) * to_float(g1.upper - g1.value)
            ok = abs(to_float(lhs) - to_float(rhs)) <= slack + 1e-9 * max(1.0, abs(to_float(rhs)))
        rows.append(GammaRow(mu.weights, g1.value, g2.value, ok))
    return GammaRatioReport(xi, tuple(rows))


# -- combined verdicts ---------------------------------------------------------


@dataclass(frozen=True)
class MinkowskiVerdict:
    verdict: str
    report: MinkowskiReport
    homothety: object | None
    gammas: GammaRatioReport | None

    @property
    def xi(self):
        return self.report.xi


def _default_valuations(d: int) -> list[WeightValuation]:
    out = [WeightValuation((1,) * d)]
    for i in range(d):
        w = [1] * d
        w[i] = 2
        out.append(WeightValuation(tuple(w)))
    out.append(WeightValuation(tuple(range(2, d + 2))))
    return out


def minkowski_equality_test(f1: Filtration, f2: Filtration, schedule: Sequence[int] | None = None,
                            exact: bool = True, valuations: Sequence | None = None,
                            m_max: int = 20) -> MinkowskiVerdict:
    """EQUALITY, STRICT or DISCREPANCY, with the supporting evidence.

    An equality verdict from the numbers is cross-checked against body
    homothety and γ ratios; any disagreement is reported, not smoothed over.
    """
    e = mixed_multiplicities(f1, f2, schedule, exact)
    if e.exact and (sign(as_scalar(e.e0)) <= 0 or sign(as_scalar(e.ed)) <= 0):
        raise ZeroVolume("both pure multiplicities must be positive")
    rep = minkowski_report(e)
    if not rep.equality:
        verdict = "STRICT" if rep.consistent and rep.minkowski != VIOLATED else "DISCREPANCY"
        return MinkowskiVerdict(verdict, rep, None, None)
    hom = None
    if f1.exact_body and f2.exact_body:
        hom = pair_homothety_check(f1, f2, e.e0, e.ed)
    vals = valuations if valuations is not None else _default_valuations(f1.dim)
    gam = gamma_ratio_check(f1, f2, vals, e.e0, e.ed, m_max)
    ok = rep.consistent and gam.all_agree and (hom is None or hom.homothetic)
    return MinkowskiVerdict("EQUALITY" if ok else "DISCREPANCY", rep, hom, gam)


@dataclass(frozen=True)
class ReesVerdict:
    verdict: str
    e_small: LimitEstimate
    e_big: LimitEstimate
    first_difference: int | None


def _check_nested(small: Filtration, big: Filtration, m_max: int) -> None:
    for n in range(1, m_max + 1):
        if not small.level(n) <= big.level(n):
            raise NotNested(f"level {n} of the smaller filtration is not contained in the larger one")


def rees_equality_check(f_small: Filtration, f_big: Filtration, m_max: int = 10, r_max: int = 2,
                        schedule: Sequence[int] | None = None) -> ReesVerdict:
    """Compare multiplicities and integral closures of nested filtrations."""
    _check_nested(f_small, f_big, m_max)
    es, eb = multiplicity_limit(f_small, schedule), multiplicity_limit(f_big, schedule)
    cs, cb = Closure(f_small, r_max), Closure(f_big, r_max)
    first = next((n for n in range(1, m_max + 1) if cs.level(n) != cb.level(n)), None)
    same_e = es.overlaps(eb)
    if same_e and first is None:
        verdict = "EQUAL_BOTH"
    elif same_e:
        verdict = "EQUAL_MULT_ONLY_UNEXPECTED"
    elif first is None:
        verdict = "EQUAL_CLOSURE_ONLY_UNEXPECTED"
    else:
        verdict = "DISTINCT"
    return ReesVerdict(verdict, es, eb, first)


@dataclass(frozen=True)
class TrskResult:
    verdict: str
    a: int | None
    b: int | None
    xi: Scalar | None
    levels_checked: int
    minkowski: MinkowskiVerdict


def _closures_agree(f1: Filtration, f2: Filtration, a: int, b: int, n_max: int, r_max: int) -> bool:
    c1, c2 = Closure(Rescale(f1, a), r_max), Closure(Rescale(f2, b), r_max)
    return all(c1.level(n) == c2.level(n) for n in range(1, n_max + 1))


def trsk_check(f1: Filtration, f2: Filtration, schedule: Sequence[int] | None = None, n_max: int = 50,
               q_cap: int = 1000, r_max: int = 2, exact: bool = True) -> TrskResult:
    """Find ``a, b`` with equal closures of ``I(1)_{an}`` and ``I(2)_{bn}`` when equality holds."""
    mk = minkowski_equality_test(f1, f2, schedule, exact)
    if mk.verdict == "STRICT":
        return TrskResult("STRICT", None, None, mk.xi, 0, mk)
    e = mk.report.e
    d = f1.dim
    xi = mk.xi
    candidates: list[tuple[int, int]] = []
    if e.exact and all(isinstance(v, Fraction) for v in (e.e0, e.ed)):
        r = rational_dth_root(e.ed, e.e0, d)
        if r is not None:
            candidates.append((r.numerator, r.denominator))
    if not candidates:
        alpha = Fraction(1, 2)
        while True:
            found = False
            for fn in (approximate_below, approximate_above):
                try:
                    p, q = fn(xi, alpha)
                except (PrecisionExhausted, ValueError):
                    continue
                if q <= q_cap:
                    found = True
                    if (p, q) not in candidates:
                        candidates.append((p, q))
            if not found or alpha < Fraction(1, 4 * q_cap * q_cap):
                break
            alpha /= 2
    for p, q in candidates:
        if _closures_agree(f1, f2, p, q, n_max, r_max):
            return TrskResult("EQUALITY", p, q, xi, n_max, mk)
    raise RationalityUndecided(
        f"equality verdict but no ratio with denominator <= {q_cap} has matching closures up to level {n_max}")


@dataclass(frozen=True)
class RigidityVerdict:
    verdict: str
    e_f: LimitEstimate
    e_d: LimitEstimate
    counterexample_level: int | None


def equal_mult_rigidity_check(f: Filtration, div: Filtration, m_max: int = 10) -> RigidityVerdict:
    """If ``I(nD) ⊆ I_n`` and the multiplicities agree the levels must coincide."""
    _check_nested(div, f, m_max)
    ef, ed = multiplicity_limit(f), multiplicity_limit(div)
    if not ef.overlaps(ed):
        return RigidityVerdict("DIFFERENT_MULTIPLICITY", ef, ed, None)
    bad = next((n for n in range(1, m_max + 1) if f.level(n) != div.level(n)), None)
    return RigidityVerdict("EQUAL" if bad is None else "FALSIFIED", ef, ed, bad)
