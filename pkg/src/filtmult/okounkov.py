"""Value semigroups, truncated limiting bodies and volume multiplicities.

With the identity valuation on exponent vectors, the semigroup of a
filtration at level ``m`` is the set of exponents of ``I_m``, and the
limiting body ``Δ`` is the closure of ``∪ (1/m) Γ_m``.  Truncating by
``sum(x) <= c`` gives a polytope whose volume, subtracted from that of the
simplex, recovers the multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .convex import Polytope, UpperHull, minkowski_sum, scale
from .errors import NoStabilization, NotPrimary, TruncationTooLow, ZeroVolume
from .monomial import ExponentVector, Filtration, Product, Rescale
from .numeric import QuadExt, Scalar, as_scalar, is_exact, nth_root, sign, to_float


@dataclass(frozen=True)
class SemigroupLevel:
    m: int
    points: tuple[ExponentVector, ...]


def _simplex_points(dim: int, cap: int) -> np.ndarray:
    grid = np.indices((cap + 1,) * dim).reshape(dim, -1).T
    pts = grid[grid.sum(axis=1) <= cap]
    return pts[np.lexsort(pts.T[::-1])]


def semigroup_level(f: Filtration, m: int, cap: int) -> SemigroupLevel:
    """Exponents of ``level(m)`` with total degree at most ``cap``."""
    if m < 1:
        raise ValueError("semigroup levels start at m = 1")
    pts = _simplex_points(f.dim, cap)
    keep = pts[f.level(m).contains_many(pts)]
    return SemigroupLevel(m, tuple(tuple(int(x) for x in p) for p in keep))


@dataclass(frozen=True)
class TruncatedBody:
    body: Polytope
    c: Scalar
    m_max: int | None
    exact: bool


def _check_cut(hull: UpperHull, c) -> None:
    worst = max(hull.intercepts())
    if sign(as_scalar(c) - worst) < 0:
        raise TruncationTooLow(f"truncation level {c} is below the axis intercept {worst}")


def _level_hull(f: Filtration, m_max: int) -> UpperHull:
    pts = []
    for m in range(1, m_max + 1):
        pts.extend(tuple(Fraction(int(x), m) for x in g) for g in f.level(m).array())
    return UpperHull(f.dim, pts)


def delta_body(f: Filtration, c, m_max: int | None = None, method: str = "auto") -> TruncatedBody:
    """``Δ(f) ∩ {sum(x) <= c}``.

    ``method="auto"`` builds the body from the filtration's structure
    (exact); ``method="levels"`` uses the hull of the sampled levels up to
    ``m_max``, which grows monotonically towards the exact body.
    """
    c = as_scalar(c)
    if method == "levels" or not f.exact_body:
        if m_max is None:
            raise ValueError("the level-hull route needs m_max")
        hull = _level_hull(f, m_max)
        _check_cut(hull, c)
        return TruncatedBody(hull.truncate(c), c, m_max, False)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    hull = f.delta()
    _check_cut(hull, c)
    return TruncatedBody(hull.truncate(c), c, m_max, True)


@dataclass(frozen=True)
class TruncationLevel:
    """Empirical stabilization level with its proof status.

    ``value`` is the least integer that worked for every probed level;
    ``proved`` is a bound valid for all levels when the filtration's kind
    supplies one, and ``certified`` says whether ``value`` reaches it.
    """

    value: int
    certified: bool
    proved: int | None
    m_probe: int


def truncation_lambda(f: Filtration, m_probe: int = 10) -> TruncationLevel:
    """Least ``λ`` such that every ``v`` with ``sum(v) >= λ m`` lies in level ``m``."""
    lam = 0
    for m in range(1, m_probe + 1):
        try:
            top = f.level(m).max_standard_degree()
        except NotPrimary as exc:
            raise NoStabilization(f"level {m} is not primary") from exc
        lam = max(lam, -(-(top + 1) // m))
    proved = None
    if f.as_adic() is not None:
        proved = f.level(1).max_standard_degree() + 1
    else:
        div = f.as_divisorial()
        if div is not None:
            proved = math.ceil(max((a / min(mu.weights) for mu, a in div.terms), default=Fraction(0)))
    certified = proved is not None and lam >= proved
    return TruncationLevel(max(lam, proved) if certified else lam, certified, proved, m_probe)


def default_cut(f: Filtration) -> Scalar:
    """Smallest integer above every axis intercept of the body."""
    return Fraction(max(1, math.ceil(max(f.delta().intercepts()))))


def multiplicity_via_volume(f: Filtration, c=None, m_max: int | None = None, method: str = "auto") -> Scalar:
    """``d! (Vol(Δ_c(R)) - Vol(Δ_c(f)))``."""
    if c is None:
        c = default_cut(f) if method == "auto" and f.exact_body else None
        if c is None:
            c = Fraction(max(1, math.ceil(max(_level_hull(f, m_max).intercepts()))))
    tb = delta_body(f, c, m_max, method)
    d = f.dim
    return tb.c**d - math.factorial(d) * tb.body.volume()


# -- pair bodies ----------------------------------------------------------


def _exactify(x) -> tuple[Scalar, bool]:
    if is_exact(x):
        return as_scalar(x), True
    return Fraction(to_float(x)).limit_denominator(10**12), False


def pair_filtration(f1: Filtration, f2: Filtration, n1: int, n2: int) -> Filtration:
    """The filtration ``{I(1)_{i n1} I(2)_{i n2}}``."""
    parts = [Rescale(f, n) for f, n in ((f1, n1), (f2, n2)) if n]
    if not parts:
        raise ValueError("at least one of n1, n2 must be positive")
    return parts[0] if len(parts) == 1 else Product(*parts)


def pair_body(f1: Filtration, f2: Filtration, n1: int, n2: int,
              phi: tuple | None = None, m_max: int | None = None) -> TruncatedBody:
    """Truncated body of the pair filtration cut at ``(α1 n1 + α2 n2) φ``.

    ``phi = (α1, α2, φ)``; by default ``α = (1, 1)`` and ``φ`` is the
    larger of the two stabilization levels.
    """
    lam = max(truncation_lambda(f1).value, truncation_lambda(f2).value)
    if phi is None:
        phi = (Fraction(1), Fraction(1), Fraction(lam))
    a1, ok1 = _exactify(phi[0])
    a2, ok2 = _exactify(phi[1])
    ph, ok3 = _exactify(phi[2])
    if sign(a1) <= 0 or sign(a2) <= 0:
        raise ZeroVolume("pair weights must be positive")
    if sign(ph * min(a1, a2) - lam) < 0:
        raise TruncationTooLow(f"φ = {ph} is below λ / min(α) with λ = {lam}")
    cut = (a1 * n1 + a2 * n2) * ph
    g = pair_filtration(f1, f2, n1, n2)
    tb = delta_body(g, cut, m_max)
    return TruncatedBody(tb.body, cut, m_max, tb.exact and ok1 and ok2 and ok3)


@dataclass(frozen=True)
class SuperadditivityReport:
    holds: bool
    equal: bool


def pair_superadditivity_check(f1: Filtration, f2: Filtration, n1: int, n2: int,
                               phi: tuple | None = None) -> SuperadditivityReport:
    """Check ``n1 Δ(1,0) + n2 Δ(0,1) ⊆ Δ(n1, n2)`` on the truncated bodies."""
    b10 = pair_body(f1, f2, 1, 0, phi).body
    b01 = pair_body(f1, f2, 0, 1, phi).body
    whole = pair_body(f1, f2, n1, n2, phi).body
    lhs = minkowski_sum(scale(b10, n1), scale(b01, n2))
    holds = all(whole.contains(v) for v in lhs.vertices)
    return SuperadditivityReport(holds, holds and lhs == whole)


@dataclass(frozen=True)
class PairHomothetyReport:
    homothetic: bool
    deviation: float
    numeric: bool
    body1: Polytope
    body2: Polytope


def _hausdorff_vertices(p: Polytope, q: Polytope) -> float:
    fp = [tuple(to_float(x) for x in v) for v in p.vertices]
    fq = [tuple(to_float(x) for x in v) for v in q.vertices]
    if not fp or not fq:
        return math.inf

    def one_way(a, b):
        return max(min(math.dist(u, v) for v in b) for u in a)

    return max(one_way(fp, fq), one_way(fq, fp))


def pair_homothety_check(f1: Filtration, f2: Filtration, e0, ed, phi=None, tol: float = 1e-9) -> PairHomothetyReport:
    """Compare ``ed^{1/d} Δ_Φ(1,0)`` with ``e0^{1/d} Δ_Φ(0,1)`` for ``Φ = (e0^{1/d}, ed^{1/d}, φ)``."""
    if sign(as_scalar(e0)) <= 0 or sign(as_scalar(ed)) <= 0:
        raise ZeroVolume("both pure multiplicities must be positive")
    d = f1.dim
    r0, rd = nth_root(as_scalar(e0), d), nth_root(as_scalar(ed), d)
    a0, ok0 = _exactify(r0)
    ad, okd = _exactify(rd)
    lam = max(truncation_lambda(f1).value, truncation_lambda(f2).value)
    if phi is None:
        phi = Fraction(math.ceil(Fraction(lam) / min(to_float(a0), to_float(ad)) + 1))
    spec = (a0, ad, phi)
    b1 = pair_body(f1, f2, 1, 0, spec).body
    b2 = pair_body(f1, f2, 0, 1, spec).body
    fields = {x.n for x in (a0, ad) if isinstance(x, QuadExt)}
    fields |= {x.n for b in (b1, b2) for v in b.vertices for x in v if isinstance(x, QuadExt)}
    if ok0 and okd and len(fields) <= 1:
        s1, s2 = scale(b1, ad), scale(b2, a0)
        return PairHomothetyReport(s1 == s2, _hausdorff_vertices(s1, s2), False, b1, b2)
    s1 = Polytope(d, [tuple(Fraction(to_float(ad) * to_float(x)) for x in v) for v in b1.vertices])
    s2 = Polytope(d, [tuple(Fraction(to_float(a0) * to_float(x)) for x in v) for v in b2.vertices])
    dev = _hausdorff_vertices(s1, s2)
    return PairHomothetyReport(dev <= tol * max(1.0, float(lam)), dev, True, b1, b2)
