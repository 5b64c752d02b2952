"""Divisorial filtrations through intersection numbers.

A divisor ``D = sum a_i E_i`` supported on the exceptional curves of a
resolution is described by its coefficient vector.  Its filtration's
multiplicity is ``-<(-D)^d>``, where the anti-positive product is the
ordinary intersection product of the nef parts ``-sum γ_i(D) E_i``.  The map
``D -> γ(D)`` is supplied as a piecewise-linear envelope over finitely many
cones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    BoundaryAmbiguity,
    DimensionMismatch,
    NonPositiveInput,
    NotEquality,
    OutsideEnvelope,
    RationalityUndecided,
    SchemaError,
)
from .multiplicity import HomogeneousForm
from .numeric import QuadExt, Scalar, as_scalar, quad, sign


# -- tensors ---------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionTensor:
    """Symmetric ``d``-linear form on the span of ``labels``.

    ``entries`` is keyed by sorted tuples of label indices.
    """

    d: int
    labels: tuple[str, ...]
    entries: Mapping[tuple[int, ...], Scalar]

    def __post_init__(self):
        r = len(self.labels)
        if self.d < 1 or r < 1:
            raise SchemaError("a tensor needs d >= 1 and at least one label")
        keys = set(itertools.combinations_with_replacement(range(r), self.d))
        if set(self.entries) != keys:
            raise SchemaError(f"expected {len(keys)} entries keyed by sorted label tuples")

    @classmethod
    def from_labels(cls, d: int, labels: Sequence[str], entries: Mapping) -> "IntersectionTensor":
        """Build from keys given as label tuples or comma-separated strings."""
        labels = tuple(labels)
        index = {name: i for i, name in enumerate(labels)}
        out = {}
        for key, val in entries.items():
            names = key.split(",") if isinstance(key, str) else key
            try:
                idx = tuple(sorted(index[n.strip()] for n in names))
            except KeyError as exc:
                raise SchemaError(f"unknown label in {key!r}") from exc
            if len(idx) != d:
                raise SchemaError(f"entry {key!r} has degree {len(idx)}, expected {d}")
            if idx in out:
                raise SchemaError(f"entry {key!r} given twice")
            out[idx] = as_scalar(val)
        return cls(d, labels, out)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def entry(self, *idx: int) -> Scalar:
        return self.entries[tuple(sorted(idx))]

    def query(self, *names: str) -> Scalar:
        index = {name: i for i, name in enumerate(self.labels)}
        return self.entry(*(index[n] for n in names))


def intersection_product(t: IntersectionTensor, divisors: Sequence[Sequence]):
    """``(D_1 . ... . D_d)`` by full multilinear expansion.

    Coefficients may be any ring elements supporting ``+`` and ``*`` with
    scalars, which lets the same routine expand polynomial coefficients.
    """
    if len(divisors) != t.d:
        raise DimensionMismatch(f"need exactly {t.d} divisors")
    if any(len(v) != t.rank for v in divisors):
        raise DimensionMismatch(f"divisors must have {t.rank} coefficients")
    total = Fraction(0)
    for idx in itertools.product(range(t.rank), repeat=t.d):
        term = t.entry(*idx)
        if sign(term) == 0:
            continue
        for v, i in zip(divisors, idx):
            term = v[i] * term
        total = term + total
    return total


# -- polynomial helper -------------------------------------------------------


class _Poly:
    """Sparse polynomial with exact scalar coefficients."""

    __slots__ = ("terms", "nvars")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if sign(v) != 0}

    @classmethod
    def linear(cls, coeffs: Sequence) -> "_Poly":
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): as_scalar(c) for i, c in enumerate(coeffs)})

    def __add__(self, other):
        if not isinstance(other, _Poly):
            other = _Poly(self.nvars, {(0,) * self.nvars: as_scalar(other)})
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return _Poly(self.nvars, out)

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, _Poly):
            return _Poly(self.nvars, {k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (k1, v1), (k2, v2) in itertools.product(self.terms.items(), other.terms.items()):
            k = tuple(a + b for a, b in zip(k1, k2))
            out[k] = out.get(k, Fraction(0)) + v1 * v2
        return _Poly(self.nvars, out)

    __rmul__ = __mul__


# -- envelopes -------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """``{x : row . x >= 0 for each row}`` with the linear map ``γ(x) = gamma . x``."""

    name: str
    ineqs: tuple[tuple[Scalar, ...], ...]
    gamma: tuple[tuple[Scalar, ...], ...]

    def contains(self, x: Sequence) -> bool:
        return all(sign(_dot(row, x)) >= 0 for row in self.ineqs)

    def interior(self, x: Sequence) -> bool:
        return all(sign(_dot(row, x)) > 0 for row in self.ineqs)

    def apply(self, x: Sequence) -> tuple:
        return tuple(_dot(row, x) for row in self.gamma)


def _dot(row, x):
    total = Fraction(0)
    for a, b in zip(row, x):
        total = a * b + total
    return total


@dataclass(frozen=True)
class NefEnvelope:
    rank: int
    cones: tuple[Cone, ...]

    @classmethod
    def build(cls, rank: int, cones: Sequence[tuple[str, Sequence, Sequence]]) -> "NefEnvelope":
        out = []
        for name, ineqs, gam in cones:
            ineqs = tuple(tuple(as_scalar(a) for a in row) for row in ineqs)
            gam = tuple(tuple(as_scalar(a) for a in row) for row in gam)
            if any(len(row) != rank for row in ineqs) or len(gam) != rank or any(len(r) != rank for r in gam):
                raise DimensionMismatch(f"cone {name!r} does not match rank {rank}")
            out.append(Cone(str(name), ineqs, gam))
        if not out:
            raise SchemaError("an envelope needs at least one cone")
        return cls(rank, tuple(out))

    def locate(self, x: Sequence) -> list[Cone]:
        return [c for c in self.cones if c.contains(x)]


def _coeffs(d: Sequence, rank: int) -> tuple:
    x = tuple(as_scalar(a) for a in d)
    if len(x) != rank:
        raise DimensionMismatch(f"expected {rank} coefficients")
    if any(sign(a) < 0 for a in x) or all(sign(a) == 0 for a in x):
        raise NonPositiveInput("divisor coefficients must be nonnegative and not all zero")
    return x


def gamma_eval(env: NefEnvelope, d: Sequence) -> tuple:
    """``γ(D)`` on the cone containing ``D``; boundary points must agree."""
    x = _coeffs(d, env.rank)
    cones = env.locate(x)
    if not cones:
        raise OutsideEnvelope(f"no cone contains {x}")
    values = {c.apply(x) for c in cones}
    if len(values) > 1:
        raise BoundaryAmbiguity(f"cones {[c.name for c in cones]} disagree at {x}")
    return values.pop()


def region_of(env: NefEnvelope, d: Sequence) -> str:
    """Name of the cone containing ``D`` (joined with ``|`` on a shared wall)."""
    x = _coeffs(d, env.rank)
    cones = env.locate(x)
    if not cones:
        raise OutsideEnvelope(f"no cone contains {x}")
    return "|".join(c.name for c in cones)


def envelope_issues(env: NefEnvelope, samples: Sequence[Sequence]) -> list[str]:
    """Axioms checkable from the data: ``γ >= coeffs`` and agreement on walls."""
    issues = []
    for s in samples:
        x = tuple(as_scalar(a) for a in s)
        cones = env.locate(x)
        vals = {c.apply(x) for c in cones}
        if len(vals) > 1:
            issues.append(f"cones {[c.name for c in cones]} disagree at {x}")
        for v in vals:
            if any(sign(g - a) < 0 for g, a in zip(v, x)):
                issues.append(f"gamma below coefficients at {x}")
    return issues


# -- anti-positive products ------------------------------------------------------


def _anti_sign(d: int) -> int:
    # -<(-A)^{d1} (-B)^{d2}> = (-1)^{d+1} (A^{d1} . B^{d2}) on nef parts
    return 1 if d % 2 else -1


def anti_positive_mixed(t: IntersectionTensor, env: NefEnvelope, d1_coeffs, d2_coeffs, d1: int, d2: int) -> Scalar:
    """``-<(-D1)^{d1} . (-D2)^{d2}>`` via the γ envelope."""
    if d1 + d2 != t.d or d1 < 0 or d2 < 0:
        raise DimensionMismatch(f"exponents must be nonnegative and sum to {t.d}")
    g1 = gamma_eval(env, d1_coeffs) if d1 else None
    g2 = gamma_eval(env, d2_coeffs) if d2 else None
    return _anti_sign(t.d) * intersection_product(t, [g1] * d1 + [g2] * d2)


def mixed_polynomial(t: IntersectionTensor, env: NefEnvelope, d1_coeffs, d2_coeffs) -> HomogeneousForm:
    """``sum_{d1+d2=d} e(d1, d2) n1^{d1} n2^{d2} / (d1! d2!)``.

    ``e(d1, d2)`` are the mixed multiplicities of the two filtrations,
    i.e. the anti-positive products of ``D1`` and ``D2``.
    """
    d = t.d
    coeffs = {}
    for k in range(d + 1):
        e = anti_positive_mixed(t, env, d1_coeffs, d2_coeffs, d - k, k)
        coeffs[(d - k, k)] = e * Fraction(1, math.factorial(d - k) * math.factorial(k))
    return HomogeneousForm(d, 2, coeffs)


def mixed_values(t: IntersectionTensor, env: NefEnvelope, d1_coeffs, d2_coeffs) -> tuple:
    """``(e_0, ..., e_d)`` with ``e_i = e(D1^{[d-i]}, D2^{[i]})``."""
    return tuple(anti_positive_mixed(t, env, d1_coeffs, d2_coeffs, t.d - i, i) for i in range(t.d + 1))


def multiplicity_of(t: IntersectionTensor, env: NefEnvelope, coeffs) -> Scalar:
    """``e(I(D)) = -<(-D)^d>``."""
    return anti_positive_mixed(t, env, coeffs, coeffs, t.d, 0)


# -- piecewise forms -----------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """Sector of the ``(n1, n2)`` quadrant between two rays, with its form."""

    region: str
    ray_lo: tuple
    ray_hi: tuple
    form: HomogeneousForm


def _cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sector_rays(rows: Sequence[tuple]) -> tuple | None:
    """Extreme rays of ``{n >= 0 : row . n >= 0}`` in the plane, ordered by angle from ``(1, 0)``."""
    cands = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    for b in rows:
        for ray in ((b[1], -b[0]), (-b[1], b[0])):
            if sign(ray[0]) >= 0 and sign(ray[1]) >= 0 and (sign(ray[0]) or sign(ray[1])):
                cands.append(ray)
    good = [r for r in cands if all(sign(_dot(b, r)) >= 0 for b in rows)]
    if not good:
        return None
    lo = hi = good[0]
    for r in good[1:]:
        if sign(_cross2(lo, r)) < 0:
            lo = r
        if sign(_cross2(hi, r)) > 0:
            hi = r
    if sign(_cross2(lo, hi)) <= 0:
        return None
    return lo, hi


def multiplicity_polynomial(t: IntersectionTensor, env: NefEnvelope, d1_coeffs, d2_coeffs) -> list[Piece]:
    """``f(n1, n2) = -<(-(n1 D1 + n2 D2))^d> / d!`` as a piecewise form.

    Each piece is the sector of the quadrant mapped into one cone, ordered
    from the ``n1`` axis towards the ``n2`` axis.
    """
    a = tuple(as_scalar(x) for x in d1_coeffs)
    b = tuple(as_scalar(x) for x in d2_coeffs)
    if len(a) != t.rank or len(b) != t.rank:
        raise DimensionMismatch(f"divisors must have {t.rank} coefficients")
    pieces = []
    for cone in env.cones:
        rows = [(_dot(row, a), _dot(row, b)) for row in cone.ineqs]
        rays = _sector_rays(rows)
        if rays is None:
            continue
        lin = [_Poly.linear((_dot(g, a), _dot(g, b))) for g in cone.gamma]
        val = intersection_product(t, [lin] * t.d)
        val = val * Fraction(_anti_sign(t.d), math.factorial(t.d))
        coeffs = {k: v for k, v in val.terms.items()} if isinstance(val, _Poly) else {}
        pieces.append(Piece(cone.name, rays[0], rays[1], HomogeneousForm(t.d, 2, coeffs)))
    pieces.sort(key=lambda p: _angle_key(p.ray_lo))
    return pieces


def _angle_key(ray):
    # monotone in the angle for rays in the closed first quadrant
    x, y = float(ray[0]), float(ray[1])
    return y / (x + y)


# -- equality ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassifierVerdict:
    verdict: str
    ratio: Scalar | None
    regions: tuple[str, str]
    expected: str | None
    gammas: tuple[tuple, tuple]


def _common_ratio(g1: Sequence, g2: Sequence) -> Scalar | None:
    ratio = None
    for x, y in zip(g1, g2):
        if sign(x) == 0 or sign(y) == 0:
            if sign(x) != sign(y):
                return None
            continue
        r = y / x
        if ratio is None:
            ratio = r
        elif sign(as_scalar(r - ratio)) != 0:
            return None
    return ratio


BUILTIN_RULES = {
    ("region 1", "region 1"): "always",
    ("region 2", "region 2"): "iff rational multiple",
    ("region 3", "region 3"): "always",
}


def equality_classifier(env: NefEnvelope, t: IntersectionTensor, d1_coeffs, d2_coeffs) -> ClassifierVerdict:
    """EQUALITY iff every ratio ``γ_i(D2) / γ_i(D1)`` is the same."""
    g1, g2 = gamma_eval(env, d1_coeffs), gamma_eval(env, d2_coeffs)
    ratio = _common_ratio(g1, g2)
    regions = (region_of(env, d1_coeffs), region_of(env, d2_coeffs))
    expected = None
    if env == BUILTIN_ENVELOPE and "|" not in "".join(regions):
        expected = BUILTIN_RULES.get(regions, "never")
    return ClassifierVerdict("EQUALITY" if ratio is not None else "STRICT", ratio, regions, expected, (g1, g2))


def find_rescaling(env: NefEnvelope, t: IntersectionTensor, d1_coeffs, d2_coeffs, q_cap: int = 1000) -> tuple[int, int]:
    """Integers ``(a, b)`` with ``a γ(D1) = b γ(D2)``, verified exactly."""
    v = equality_classifier(env, t, d1_coeffs, d2_coeffs)
    if v.verdict != "EQUALITY":
        raise NotEquality("the divisors are not in Minkowski equality")
    xi = as_scalar(v.ratio)
    if isinstance(xi, QuadExt):
        integral = all(isinstance(as_scalar(c), Fraction) and as_scalar(c).denominator == 1
                       for c in (*d1_coeffs, *d2_coeffs))
        note = " (for integral divisors the ratio should be rational; check the envelope)" if integral else ""
        raise RationalityUndecided(f"the γ ratio {xi} is irrational{note}")
    if not isinstance(xi, Fraction):
        raise RationalityUndecided("the γ ratio is not exact")
    a, b = xi.numerator, xi.denominator
    if b > q_cap:
        raise RationalityUndecided(f"ratio denominator {b} exceeds q_cap = {q_cap}")
    g1, g2 = v.gammas
    if any(sign(a * x - b * y) != 0 for x, y in zip(g1, g2)):
        raise RationalityUndecided("rescaling failed exact verification")
    return a, b


# -- builtin data ---------------------------------------------------------------

_C = Fraction(3) / quad(9, -1, 3)  # 3 / (9 - sqrt(3))
_WALL = quad(3, Fraction(-1, 3), 3)  # 3 - sqrt(3)/3

BUILTIN_TENSOR = IntersectionTensor.from_labels(
    3, ("E1", "E2"), {"E1,E1,E1": 468, "E1,E1,E2": -162, "E1,E2,E2": 54, "E2,E2,E2": 54})

BUILTIN_ENVELOPE = NefEnvelope.build(2, [
    ("region 1", [(1, -1), (0, 1)], [(1, 0), (1, 0)]),
    ("region 2", [(-1, 1), (_WALL, -1)], [(1, 0), (0, 1)]),
    ("region 3", [(-_WALL, 1), (1, 0)], [(0, _C), (0, 1)]),
])


def builtin_example() -> tuple[IntersectionTensor, NefEnvelope]:
    """Tensor and γ envelope of a two-curve resolution over ``Q(sqrt 3)``."""
    return BUILTIN_TENSOR, BUILTIN_ENVELOPE
