"""Exact convex geometry over the rationals and real quadratic fields.

The workhorses are :class:`Polytope` (a hull-reduced V-polytope) and
:class:`UpperHull`, which models unbounded bodies of the form
``conv(points) + R_{>=0}^d`` such as Newton polyhedra.  Facets of
hulls in dimension three and higher come from a double-description
enumeration; nothing here touches floating point except the numeric
fallbacks of :func:`brunn_minkowski_check` and :func:`homothety_detect`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import DimensionMismatch, InexactInput, NonPositiveInput, ZeroVolume
from .numeric import (
    Approx,
    QuadExt,
    Scalar,
    as_scalar,
    is_exact,
    nth_root,
    rational_dth_root,
    sign,
    sqrt_rational,
    to_float,
    to_mpf,
)

Point = tuple

# -- exact linear algebra ------------------------------------------------


def _is_zero(x) -> bool:
    return x == 0 if not isinstance(x, QuadExt) else False


def _echelon(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Row-reduce a copy of ``rows``; returns reduced rows and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / as_scalar(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(_echelon(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list | None:
    """Solve a square system exactly; ``None`` when it is singular."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = _echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        return None
    return [red[i][n] for i in range(n)]


def det(m: Sequence[Sequence]) -> Scalar:
    rows = [list(map(as_scalar, r)) for r in m]
    n = len(rows)
    result: Scalar = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(rows[i][c])), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        result = result * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if not _is_zero(rows[i][c]):
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def _dot(u, v):
    total = 0
    for a, b in zip(u, v):
        total = total + a * b
    return total


def _primitive(vec: Sequence) -> tuple:
    """Normalize a ray: primitive integers when rational, unit leading entry otherwise."""
    if all(isinstance(x, (int, Fraction)) for x in vec):
        fr = [Fraction(x) for x in vec]
        den = math.lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = math.gcd(*ints)
        return tuple(i // g for i in ints) if g else tuple(ints)
    lead = next(x for x in vec if not _is_zero(x))
    s = abs(lead)
    return tuple(x / s for x in vec)


def _integral_row(row: Sequence) -> tuple:
    if all(isinstance(x, (int, Fraction)) for x in row):
        den = math.lcm(*(Fraction(x).denominator for x in row))
        return tuple(int(Fraction(x) * den) for x in row)
    return tuple(row)


def extreme_rays(rows: Sequence[Sequence]) -> list[tuple]:
    """Extreme rays of the pointed cone ``{y : row . y >= 0 for all rows}``.

    Double description with the combinatorial adjacency test.
    """
    rows = [_integral_row(r) for r in rows]
    k = len(rows[0])
    basis: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == k:
                break
    if len(basis) < k:
        raise ValueError("cone is not pointed")
    bmat = [rows[i] for i in basis]
    rays: list[tuple] = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        rays.append(_primitive(solve(bmat, e)))
    zeros = []
    for j in range(k):
        mask = 0
        for t, i in enumerate(basis):
            if t != j:
                mask |= 1 << i
        zeros.append(mask)
    for i, row in enumerate(rows):
        if i in basis:
            continue
        vals = [_dot(row, r) for r in rays]
        pos = [t for t, v in enumerate(vals) if sign(v) > 0]
        neg = [t for t, v in enumerate(vals) if sign(v) < 0]
        zer = [t for t, v in enumerate(vals) if sign(v) == 0]
        new_rays, new_zeros = [], []
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if common.bit_count() < k - 2:
                    continue
                if any(t != p and t != q and zeros[t] & common == common for t in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                new = [vp * b - vq * a for a, b in zip(rays[p], rays[q])]
                new_rays.append(_primitive(new))
                new_zeros.append(common | (1 << i))
        bit = 1 << i
        rays = [rays[t] for t in pos] + [rays[t] for t in zer] + new_rays
        zeros = [zeros[t] for t in pos] + [zeros[t] | bit for t in zer] + new_zeros
    return rays


# -- affine helpers ------------------------------------------------------


def _sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _affine_frame(points: Sequence[Point]) -> tuple[int, list[int]]:
    """Affine dimension of the points and coordinates on which they project injectively."""
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    if not diffs:
        return 0, []
    _, piv = _echelon(diffs)
    return len(piv), piv


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _chain(points: Sequence[Point]) -> list[Point]:
    """Counter-clockwise hull of planar points with collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and sign(_cross(lower[-2], lower[-1], p)) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and sign(_cross(upper[-2], upper[-1], p)) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _canon(p) -> Point:
    return tuple(as_scalar(x) if not isinstance(x, (Fraction, QuadExt)) else x for x in p)


def _facets_from_points(points: Sequence[Point]) -> list[tuple[tuple, Scalar]]:
    """Facets ``(normal, offset)`` with ``normal . x >= offset`` of a full-dimensional hull."""
    rows = [tuple(p) + (1,) for p in points]
    out = []
    for ray in extreme_rays(rows):
        normal, o = ray[:-1], ray[-1]
        if all(_is_zero(x) for x in normal):
            continue
        out.append((tuple(normal), as_scalar(-o)))
    return out


class Polytope:
    """A convex polytope stored by its vertices.

    Parameters
    ----------
    dim : int
        Ambient dimension.
    points : iterable of sequences
        Any finite point set; the hull is reduced to its extreme points.

    Vertices are kept in sorted order, so two polytopes compare equal
    exactly when they are the same set.
    """

    __slots__ = ("dim", "vertices", "_cache")

    def __init__(self, dim: int, points: Iterable[Sequence] = ()) -> None:
        pts = []
        for p in points:
            if len(p) != dim:
                raise DimensionMismatch(f"point {tuple(p)} is not in dimension {dim}")
            pts.append(_canon(p))
        self.dim = dim
        self._cache: dict = {}
        self.vertices = tuple(sorted(self._reduce(sorted(set(pts)))))

    def _reduce(self, pts: list[Point]) -> list[Point]:
        if len(pts) <= 1:
            return pts
        r, piv = _affine_frame(pts)
        self._cache["affdim"] = r
        if r == 0:
            return pts[:1]
        proj = {tuple(p[c] for c in piv): p for p in pts}
        keys = list(proj)
        if r == 1:
            return [proj[min(keys)], proj[max(keys)]]
        if r == 2:
            return [proj[q] for q in _chain(keys)]
        facets = _facets_from_points(keys)
        if r == self.dim:
            self._cache["facets"] = facets
        keep = []
        for q in keys:
            tight = [n for n, o in facets if sign(_dot(n, q) - o) == 0]
            if rank(tight) == r:
                keep.append(proj[q])
        return keep

    # -- basic queries --------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def affine_dim(self) -> int:
        if not self.vertices:
            return -1
        if "affdim" not in self._cache or len(self.vertices) <= 1:
            self._cache["affdim"] = _affine_frame(self.vertices)[0]
        return self._cache["affdim"]

    def facets(self) -> list[tuple[tuple, Scalar]]:
        """Facet inequalities of a full-dimensional polytope."""
        if "facets" not in self._cache:
            if self.affine_dim() != self.dim:
                raise ZeroVolume("facets requested for a lower-dimensional polytope")
            if self.dim == 1:
                lo, hi = self.vertices[0][0], self.vertices[-1][0]
                f = [((1,), lo), ((-1,), -hi)]
            elif self.dim == 2:
                cyc = _chain(self.vertices)
                f = []
                for p, q in zip(cyc, cyc[1:] + cyc[:1]):
                    n = (-(q[1] - p[1]), q[0] - p[0])
                    f.append((n, _dot(n, p)))
            else:
                f = _facets_from_points(self.vertices)
            self._cache["facets"] = f
        return self._cache["facets"]

    def volume(self) -> Scalar:
        if "volume" in self._cache:
            return self._cache["volume"]
        if not self.vertices or self.affine_dim() < self.dim:
            vol: Scalar = Fraction(0)
        elif self.dim == 1:
            vol = self.vertices[-1][0] - self.vertices[0][0]
        elif self.dim == 2:
            cyc = _chain(self.vertices)
            s = 0
            for p, q in zip(cyc, cyc[1:] + cyc[:1]):
                s = s + p[0] * q[1] - p[1] * q[0]
            vol = abs(as_scalar(s)) / 2
        else:
            vol = self._simplex_volume()
        self._cache["volume"] = vol
        return vol

    def _simplex_volume(self) -> Scalar:
        verts = self.vertices
        sets = []
        for n, o in self.facets():
            sets.append(frozenset(i for i, v in enumerate(verts) if sign(_dot(n, v) - o) == 0))

        def affdim(idx) -> int:
            return _affine_frame([verts[i] for i in sorted(idx)])[0]

        def triangulate(face: frozenset, k: int) -> list[tuple[int, ...]]:
            if k == 0:
                return [(min(face),)]
            v = min(face)
            subs = {face & s for s in sets}
            out = []
            for sub in subs:
                if v in sub or len(sub) < k or affdim(sub) != k - 1:
                    continue
                out.extend((v,) + simp for simp in triangulate(sub, k - 1))
            return out

        total: Scalar = Fraction(0)
        for simp in triangulate(frozenset(range(len(verts))), self.dim):
            base = verts[simp[0]]
            total = total + abs(det([_sub(verts[i], base) for i in simp[1:]]))
        return total / math.factorial(self.dim)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatch("point dimension differs from polytope dimension")
        if not self.vertices:
            return False
        x = _canon(x)
        r = self.affine_dim()
        if r == self.dim:
            return all(sign(_dot(n, x) - o) >= 0 for n, o in self.facets())
        base = self.vertices[0]
        diffs = [_sub(v, base) for v in self.vertices[1:]]
        if rank(diffs + [_sub(x, base)]) > r:
            return False
        if r == 0:
            return True
        _, piv = _affine_frame(self.vertices)
        sub = Polytope(r, [tuple(v[c] for c in piv) for v in self.vertices])
        return sub.contains(tuple(x[c] for c in piv))

    def centroid(self) -> Point:
        """Vertex average (equivariant under homotheties)."""
        k = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / k for i in range(self.dim))

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={list(self.vertices)})"

    def __add__(self, other):
        return minkowski_sum(self, other)


def hull(points: Iterable[Sequence], dim: int | None = None) -> Polytope:
    pts = [tuple(p) for p in points]
    if dim is None:
        if not pts:
            raise ValueError("dimension of an empty point set is unknown")
        dim = len(pts[0])
    return Polytope(dim, pts)


def _check_dims(p: Polytope, q: Polytope) -> None:
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimensions {p.dim} and {q.dim} differ")


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    _check_dims(p, q)
    return Polytope(p.dim, [tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices])


def scale(p: Polytope, c) -> Polytope:
    c = as_scalar(c)
    if not is_exact(c):
        raise InexactInput("polytopes are scaled by exact scalars only")
    if sign(c) < 0:
        raise NonPositiveInput("scale factor must be nonnegative")
    return Polytope(p.dim, [tuple(c * x for x in v) for v in p.vertices])


def translate(p: Polytope, t: Sequence) -> Polytope:
    if len(t) != p.dim:
        raise DimensionMismatch("translation vector has the wrong dimension")
    t = _canon(t)
    return Polytope(p.dim, [tuple(a + b for a, b in zip(v, t)) for v in p.vertices])


def contains(p: Polytope, x: Sequence) -> bool:
    return p.contains(x)


def equals(p: Polytope, q: Polytope) -> bool:
    return p == q


def volume(p: Polytope) -> Scalar:
    return p.volume()


def from_inequalities(dim: int, ineqs: Sequence[tuple[Sequence, Scalar]]) -> Polytope:
    """The bounded polyhedron ``{x : a . x >= b}`` by vertex enumeration."""
    ineqs = [(tuple(map(as_scalar, a)), as_scalar(b)) for a, b in ineqs]
    pts: list[Point] = []
    for combo in itertools.combinations(range(len(ineqs)), dim):
        a = [ineqs[i][0] for i in combo]
        b = [ineqs[i][1] for i in combo]
        x = solve(a, b)
        if x is None:
            continue
        x = tuple(x)
        if x in pts:
            continue
        if all(sign(_dot(n, x) - o) >= 0 for n, o in ineqs):
            pts.append(x)
    return Polytope(dim, pts)


def simplex(dim: int, c) -> Polytope:
    """``{x >= 0 : sum(x) <= c}``."""
    c = as_scalar(c)
    pts = [tuple([Fraction(0)] * dim)]
    for i in range(dim):
        e = [Fraction(0)] * dim
        e[i] = c
        pts.append(tuple(e))
    return Polytope(dim, pts)


# -- unbounded bodies conv(points) + R_+^d --------------------------------


def _pareto_min(points: Iterable[Point]) -> list[Point]:
    pts = sorted(set(points))
    keep: list[Point] = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in keep):
            keep = [q for q in keep if not all(a <= b for a, b in zip(p, q))]
            keep.append(p)
    return sorted(keep)


class UpperHull:
    """The unbounded convex body ``conv(points) + R_{>=0}^d``.

    Built either from points or from inequalities ``n . x >= o`` with
    ``n >= 0`` (together with ``x >= 0``).  Newton polyhedra of monomial
    ideals and the bodies of divisorial filtrations both have this shape.
    """

    __slots__ = ("dim", "_points", "_ineqs", "_cache")

    def __init__(self, dim: int, points: Iterable[Sequence] | None = None,
                 ineqs: Iterable[tuple[Sequence, Scalar]] | None = None) -> None:
        self.dim = dim
        self._cache: dict = {}
        self._points = None if points is None else _pareto_min(_canon(p) for p in points)
        self._ineqs = None if ineqs is None else [(tuple(map(as_scalar, n)), as_scalar(o)) for n, o in ineqs]
        if self._points is None and self._ineqs is None:
            raise ValueError("UpperHull needs points or inequalities")
        if self._points is not None and not self._points:
            raise ValueError("UpperHull needs at least one point")

    @classmethod
    def orthant(cls, dim: int) -> "UpperHull":
        return cls(dim, [tuple([Fraction(0)] * dim)])

    def vertices(self) -> tuple[Point, ...]:
        if "vertices" not in self._cache:
            if self._points is not None:
                facets = self.facets()
                verts = []
                for p in self._points:
                    tight = [n for n, o in facets if sign(_dot(n, p) - o) == 0]
                    if rank(tight) == self.dim:
                        verts.append(p)
            else:
                verts = self._vertices_from_ineqs()
            self._cache["vertices"] = tuple(sorted(verts))
        return self._cache["vertices"]

    def _vertices_from_ineqs(self) -> list[Point]:
        d = self.dim
        rows = list(self._ineqs)
        for i in range(d):
            e = [Fraction(0)] * d
            e[i] = Fraction(1)
            rows.append((tuple(e), Fraction(0)))
        pts = set()
        for combo in itertools.combinations(range(len(rows)), d):
            x = solve([rows[i][0] for i in combo], [rows[i][1] for i in combo])
            if x is None:
                continue
            x = tuple(x)
            if all(sign(_dot(n, x) - o) >= 0 for n, o in rows):
                pts.add(x)
        return _pareto_min(pts)

    def facets(self) -> list[tuple[tuple, Scalar]]:
        """Inequalities ``n . x >= o`` cutting out the body (with ``x >= 0``)."""
        if "facets" not in self._cache:
            if self._ineqs is not None:
                f = list(self._ineqs)
            elif self.dim == 1:
                f = [((Fraction(1),), self._points[0][0])]
            elif self.dim == 2:
                f = self._facets_2d()
            else:
                rows = [tuple(p) + (1,) for p in self._points]
                for i in range(self.dim):
                    e = [0] * (self.dim + 1)
                    e[i] = 1
                    rows.append(tuple(e))
                f = []
                for ray in extreme_rays(rows):
                    n, o = ray[:-1], ray[-1]
                    if all(_is_zero(x) for x in n):
                        continue
                    f.append((tuple(n), as_scalar(-o)))
            self._cache["facets"] = f
        return self._cache["facets"]

    def _facets_2d(self) -> list[tuple[tuple, Scalar]]:
        pts = self._points  # Pareto-minimal: x increasing, y decreasing
        chain: list[Point] = []
        for p in pts:
            while len(chain) >= 2 and sign(_cross(chain[-2], chain[-1], p)) <= 0:
                chain.pop()
            chain.append(p)
        out = [((1, 0), chain[0][0])]
        for p, q in zip(chain, chain[1:]):
            n = _primitive((p[1] - q[1], q[0] - p[0]))
            out.append((n, _dot(n, p)))
        out.append(((0, 1), chain[-1][1]))
        return out

    def intercepts(self) -> tuple[Scalar, ...]:
        """Smallest ``t`` with ``t e_i`` in the body, for each axis."""
        out = []
        for i in range(self.dim):
            t: Scalar = Fraction(0)
            for n, o in self.facets():
                if sign(n[i]) > 0 and o / n[i] > t:
                    t = o / n[i]
            out.append(t)
        return tuple(out)

    def min_linear(self, weights: Sequence) -> Scalar:
        return min(_dot(weights, v) for v in self.vertices())

    def gauge(self, v: Sequence) -> Scalar | None:
        """``max{t : v in t * body}``; ``None`` means unbounded."""
        best = None
        for n, o in self.facets():
            if sign(o) > 0:
                t = _dot(n, v) / o
                best = t if best is None or t < best else best
        return best

    def contains(self, x: Sequence) -> bool:
        return all(sign(a) >= 0 for a in x) and all(sign(_dot(n, x) - o) >= 0 for n, o in self.facets())

    def scale(self, c) -> "UpperHull":
        c = as_scalar(c)
        return UpperHull(self.dim, [tuple(c * a for a in v) for v in self.vertices()])

    def minkowski_sum(self, other: "UpperHull") -> "UpperHull":
        if other.dim != self.dim:
            raise DimensionMismatch("dimensions differ")
        return UpperHull(self.dim, [tuple(a + b for a, b in zip(u, v))
                                    for u in self.vertices() for v in other.vertices()])

    def truncate(self, c) -> Polytope:
        """The bounded body ``self ∩ {sum(x) <= c}``."""
        c = as_scalar(c)
        d = self.dim
        rows = list(self.facets())
        for i in range(d):
            e = [Fraction(0)] * d
            e[i] = Fraction(1)
            rows.append((tuple(e), Fraction(0)))
        rows.append((tuple([Fraction(-1)] * d), -c))
        return from_inequalities(d, rows)

    def __repr__(self):
        return f"UpperHull(dim={self.dim}, vertices={list(self.vertices())})"


# -- volume polynomial ---------------------------------------------------


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _monomial(lams, alpha):
    out = 1
    for lam, a in zip(lams, alpha):
        out = out * lam**a
    return out


@dataclass(frozen=True)
class VolumePolynomial:
    """``Vol(l_1 K_1 + ... + l_r K_r)`` as a homogeneous polynomial."""

    degree: int
    nvars: int
    coeffs: dict

    def __call__(self, lams: Sequence) -> Scalar:
        total: Scalar = Fraction(0)
        for alpha, c in self.coeffs.items():
            total = total + c * _monomial(lams, alpha)
        return total

    def coefficient(self, alpha: Sequence[int]) -> Scalar:
        return self.coeffs.get(tuple(alpha), Fraction(0))

    def mixed_volume(self, indices: Sequence[int]) -> Scalar:
        """``V(K_{i_1}, ..., K_{i_d})`` for body indices ``i_1..i_d``."""
        if len(indices) != self.degree:
            raise DimensionMismatch("mixed volume needs exactly d bodies")
        alpha = [0] * self.nvars
        for i in indices:
            alpha[i] += 1
        fact = 1
        for a in alpha:
            fact *= math.factorial(a)
        return self.coefficient(alpha) * Fraction(fact, math.factorial(self.degree))


def weighted_sum(bodies: Sequence[Polytope], lams: Sequence) -> Polytope:
    d = bodies[0].dim
    acc = Polytope(d, [tuple([Fraction(0)] * d)])
    for k, lam in zip(bodies, lams):
        if lam:
            acc = minkowski_sum(acc, scale(k, lam))
    return acc


def volume_polynomial(bodies: Sequence[Polytope]) -> VolumePolynomial:
    if not bodies:
        raise ValueError("at least one body is required")
    d = bodies[0].dim
    for k in bodies:
        _check_dims(bodies[0], k)
    r = len(bodies)
    nodes = list(_compositions(d, r))
    mat = [[_monomial(node, alpha) for alpha in nodes] for node in nodes]
    rhs = [weighted_sum(bodies, node).volume() for node in nodes]
    sol = solve(mat, rhs)
    assert sol is not None, "node set is unisolvent for homogeneous forms"
    coeffs = {alpha: c for alpha, c in zip(nodes, sol) if c != 0}
    return VolumePolynomial(d, r, coeffs)


# -- Brunn-Minkowski -----------------------------------------------------


@dataclass(frozen=True)
class BMReport:
    lhs: Scalar
    rhs: Scalar
    strict: bool
    equality: bool
    exact: bool


def brunn_minkowski_check(k: Polytope, l: Polytope, t) -> BMReport:
    """Compare ``Vol((1-t)K + tL)^{1/d}`` with ``(1-t)Vol(K)^{1/d} + t Vol(L)^{1/d}``."""
    _check_dims(k, l)
    t = as_scalar(t)
    if not (0 < t < 1):
        raise NonPositiveInput("t must lie strictly between 0 and 1")
    d = k.dim
    s = 1 - t
    vk, vl = k.volume(), l.volume()
    vm = minkowski_sum(scale(k, s), scale(l, t)).volume()
    lhs = nth_root(vm, d)
    rk, rl = nth_root(vk, d), nth_root(vl, d)
    rhs = s * rk + t * rl
    verdict = None
    if all(isinstance(v, Fraction) for v in (vk, vl, vm)) and vk > 0 and vl > 0:
        ratio = rational_dth_root(vl, vk, d)
        if ratio is not None:
            verdict = sign(vm - (s + t * ratio) ** d * vk)
        elif d == 2:
            # lhs^2 - rhs^2 = A - B*sqrt(C)
            a = vm - s * s * vk - t * t * vl
            verdict = sign(a - 2 * s * t * sqrt_rational(vk * vl))
    if verdict is None and is_exact(lhs) and is_exact(rhs):
        diff = lhs - rhs
        if is_exact(diff):
            verdict = sign(diff)
    if verdict is not None:
        return BMReport(lhs, rhs, strict=verdict > 0, equality=verdict == 0, exact=True)
    with mpmath.workdps(50):
        ml = mpmath.root(to_mpf(vm), d)
        mr = to_mpf(s) * mpmath.root(to_mpf(vk), d) + to_mpf(t) * mpmath.root(to_mpf(vl), d)
        diff = float(ml - mr)
    tol = 1e-9
    return BMReport(lhs, rhs, strict=diff > tol, equality=abs(diff) <= tol, exact=False)


@dataclass(frozen=True)
class Homothety:
    factor: Scalar
    shift: tuple
    numeric: bool


def _numeric_vertex_match(p: Sequence[Point], q: Sequence[Point], tol: float) -> bool:
    if len(p) != len(q):
        return False
    fp = sorted(tuple(to_float(x) for x in v) for v in p)
    fq = sorted(tuple(to_float(x) for x in v) for v in q)
    return all(max(abs(a - b) for a, b in zip(u, v)) <= tol for u, v in zip(fp, fq))


def homothety_detect(k: Polytope, l: Polytope, tol: float = 1e-9) -> Homothety | None:
    """Find ``c > 0`` and a shift with ``c K + shift == L``, if they exist."""
    _check_dims(k, l)
    vk, vl = k.volume(), l.volume()
    if sign(vk) <= 0 or sign(vl) <= 0:
        raise ZeroVolume("homothety detection needs bodies of positive volume")
    c = nth_root(vl / vk, k.dim)
    ck, cl = k.centroid(), l.centroid()
    fields = {x.n for x in (c, *ck, *cl) if isinstance(x, QuadExt)}
    if is_exact(c) and len(fields) <= 1:
        shift = tuple(b - c * a for a, b in zip(ck, cl))
        image = translate(scale(k, c), shift)
        return Homothety(c, shift, False) if image == l else None
    cf = to_float(c)
    shift_f = tuple(to_float(b) - cf * to_float(a) for a, b in zip(ck, cl))
    image = [tuple(cf * to_float(x) + s for x, s in zip(v, shift_f)) for v in k.vertices]
    if _numeric_vertex_match(image, l.vertices, tol):
        return Homothety(Approx(cf, tol), tuple(Approx(s, tol) for s in shift_f), True)
    return None
