"""Monomial ideals and filtrations in a polynomial ring.

A monomial ideal is stored by its minimal generators (exponent vectors).
Ideals primary to the maximal ideal also carry a *staircase*: for every
point ``p`` of the box below the pure powers of the first ``d - 1``
variables, the smallest exponent ``h(p)`` of the last variable with
``(p, h(p))`` in the ideal.  The colength is then ``sum(h)``, and products,
closures and divisorial levels are all computed on that array.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .convex import UpperHull
from .errors import CapReached, DimensionMismatch, NonPositiveInput, NotPrimary
from .numeric import Approx, QuadExt, Scalar, as_scalar, is_exact, sign

ExponentVector = tuple

INFINITE = math.inf


# -- staircase kernels ----------------------------------------------------


def _pure_powers(arr: np.ndarray) -> list[int | None]:
    d = arr.shape[1]
    out: list[int | None] = []
    for i in range(d):
        others = np.delete(arr, i, axis=1)
        mask = (others == 0).all(axis=1)
        out.append(int(arr[mask, i].min()) if mask.any() else None)
    return out


def _staircase_from_points(arr: np.ndarray, powers: Sequence[int]) -> np.ndarray:
    d = arr.shape[1]
    box = tuple(powers[:-1])
    h = np.full(box, powers[-1], dtype=np.int64)
    inside = (arr[:, :-1] < np.asarray(box, dtype=np.int64)).all(axis=1)
    pts = arr[inside]
    if len(pts):
        np.minimum.at(h, tuple(pts[:, :-1].T), pts[:, -1])
    for axis in range(d - 1):
        h = np.minimum.accumulate(h, axis=axis)
    return h


def _gens_from_staircase(powers: Sequence[int], h: np.ndarray) -> np.ndarray:
    d = len(powers)
    mask = np.ones(h.shape, dtype=bool)
    for axis in range(d - 1):
        prev = np.roll(h, 1, axis=axis)
        first = [slice(None)] * (d - 1)
        first[axis] = 0
        ok = prev > h
        ok[tuple(first)] = True
        mask &= ok
    idx = np.argwhere(mask)
    inner = np.column_stack([idx, h[mask]]) if len(idx) else np.zeros((0, d), dtype=np.int64)
    extra = []
    for i in range(d - 1):
        e = np.zeros(d, dtype=np.int64)
        e[i] = powers[i]
        extra.append(e)
    return np.vstack([inner] + ([np.array(extra)] if extra else [])).astype(np.int64)


def _naive_minimal(arr: np.ndarray) -> np.ndarray:
    arr = np.unique(arr, axis=0)
    keep = np.ones(len(arr), dtype=bool)
    for start in range(0, len(arr), 512):
        block = arr[start:start + 512]
        le = (arr[None, :, :] <= block[:, None, :]).all(axis=2)
        le[np.arange(len(block)), np.arange(start, start + len(block))] = False
        keep[start:start + len(block)] &= ~le.any(axis=1)
    return arr[keep]


def _lex_sorted(arr: np.ndarray) -> np.ndarray:
    if len(arr) <= 1:
        return arr
    return arr[np.lexsort(arr.T[::-1])]


def _staircase_product(sa, gens_b: np.ndarray) -> tuple[tuple[int, ...], np.ndarray]:
    """Staircase of ``A * B`` from the staircase of ``A`` and the generators of ``B``."""
    pa, ha = sa
    pb = _pure_powers(gens_b)
    powers = tuple(a + b for a, b in zip(pa, pb))
    box = powers[:-1]
    ext = np.zeros(box, dtype=np.int64)
    ext[tuple(slice(0, p) for p in pa[:-1])] = ha
    h = np.full(box, powers[-1], dtype=np.int64)
    for g in gens_b:
        off = g[:-1]
        if any(o >= b for o, b in zip(off, box)):
            continue
        dst = tuple(slice(int(o), None) for o in off)
        src = tuple(slice(0, b - int(o)) for o, b in zip(off, box))
        np.minimum(h[dst], ext[src] + g[-1], out=h[dst])
    return powers, h


class MonomialIdeal:
    """A monomial ideal given by generators.

    Parameters
    ----------
    dim : int
        Number of variables.
    gens : iterable of exponent vectors
        Generators; they are minimalized and sorted on construction.
        An empty list is the zero ideal, ``[(0, ..., 0)]`` the unit ideal.

    Examples
    --------
    >>> I = MonomialIdeal(2, [(1, 0), (0, 1)])
    >>> (I * MonomialIdeal(2, [(2, 0), (0, 3)])).gens
    ((0, 4), (1, 3), (2, 1), (3, 0))
    """

    __slots__ = ("dim", "_arr", "_gens", "_stair", "__weakref__")

    def __init__(self, dim: int, gens: Iterable[Sequence[int]] = ()) -> None:
        if dim < 1:
            raise ValueError("dimension must be positive")
        if isinstance(gens, np.ndarray):
            arr = gens.astype(np.int64).reshape(-1, dim) if gens.size else np.zeros((0, dim), dtype=np.int64)
        else:
            rows = [tuple(int(x) for x in g) for g in gens]
            for g in rows:
                if len(g) != dim:
                    raise DimensionMismatch(f"exponent vector {g} is not in dimension {dim}")
            arr = np.array(rows, dtype=np.int64).reshape(len(rows), dim)
        if arr.size and arr.min() < 0:
            raise NonPositiveInput("exponent vectors must be nonnegative")
        self.dim = dim
        self._stair = None
        self._gens = None
        self._arr = _lex_sorted(self._minimalize(arr))

    def _minimalize(self, arr: np.ndarray) -> np.ndarray:
        if len(arr) == 0:
            return arr
        if (arr == 0).all(axis=1).any():
            return np.zeros((1, self.dim), dtype=np.int64)
        if self.dim == 1:
            return arr[[arr[:, 0].argmin()]]
        powers = _pure_powers(arr)
        if all(p is not None for p in powers):
            h = _staircase_from_points(arr, powers)
            self._stair = (tuple(powers), h)
            return _gens_from_staircase(powers, h)
        return _naive_minimal(arr)

    @classmethod
    def _from_staircase(cls, dim: int, powers: Sequence[int], h: np.ndarray) -> "MonomialIdeal":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._stair = (tuple(int(p) for p in powers), h)
        obj._gens = None
        obj._arr = None
        return obj

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, [(0,) * dim])

    @classmethod
    def maximal(cls, dim: int, power: int = 1) -> "MonomialIdeal":
        m = cls(dim, [tuple(int(i == j) for j in range(dim)) for i in range(dim)])
        return m**power

    def array(self) -> np.ndarray:
        """Minimal generators as a lexicographically sorted integer array."""
        if self._arr is None:
            powers, h = self._stair
            if self.dim == 1:
                self._arr = np.array([[powers[0]]], dtype=np.int64)
            else:
                self._arr = _lex_sorted(_gens_from_staircase(powers, h))
        return self._arr

    @property
    def gens(self) -> tuple[ExponentVector, ...]:
        if self._gens is None:
            self._gens = tuple(tuple(int(x) for x in row) for row in self.array())
        return self._gens

    @property
    def ngens(self) -> int:
        return len(self.array())

    @property
    def is_unit(self) -> bool:
        arr = self.array()
        return len(arr) == 1 and not arr.any()

    @property
    def is_zero(self) -> bool:
        return len(self.array()) == 0

    def is_primary(self) -> bool:
        """True when some generator is a pure power of every variable (or the ideal is the unit)."""
        if self._stair is not None:
            return True
        if self.is_zero:
            return False
        if self.is_unit:
            return True
        return all(p is not None for p in _pure_powers(self.array()))

    def staircase(self) -> tuple[tuple[int, ...], np.ndarray]:
        """Pure powers and the height array; raises :class:`NotPrimary` otherwise."""
        if self._stair is None:
            if self.is_unit:
                self._stair = ((0,) * self.dim, np.zeros((0,) * (self.dim - 1), dtype=np.int64))
            elif not self.is_primary():
                missing = [i + 1 for i, p in enumerate(_pure_powers(self.array())) if p is None]
                raise NotPrimary(f"{self!r} contains no pure power of variable(s) {missing}")
            elif self.dim == 1:
                self._stair = ((self.gens[0][0],), np.zeros((), dtype=np.int64))
            else:
                arr = self.array()
                powers = _pure_powers(arr)
                self._stair = (tuple(powers), _staircase_from_points(arr, powers))
        return self._stair

    def colength(self) -> int:
        """Number of standard monomials."""
        powers, h = self.staircase()
        if self.dim == 1:
            return powers[0]
        return int(h.sum())

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch("exponent vector has the wrong dimension")
        if self._stair is not None:
            powers, h = self._stair
            if any(a >= p for a, p in zip(v, powers)):
                return True
            if self.dim == 1:
                return False
            return v[-1] >= h[tuple(v[:-1])]
        return any(all(a <= b for a, b in zip(g, v)) for g in self.gens)

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized membership for an ``(N, d)`` integer array."""
        pts = np.asarray(pts, dtype=np.int64).reshape(-1, self.dim)
        if self.is_primary():
            powers, h = self.staircase()
            out = (pts >= np.asarray(powers, dtype=np.int64)).any(axis=1)
            if self.dim > 1:
                rest = ~out
                sub = pts[rest]
                out[rest] = sub[:, -1] >= h[tuple(sub[:, :-1].T)]
            return out
        arr = self.array()
        return (pts[:, None, :] >= arr[None, :, :]).all(axis=2).any(axis=1)

    def max_standard_degree(self) -> int:
        """Largest total degree of a standard monomial, or -1 for the unit ideal."""
        powers, h = self.staircase()
        if self.is_unit:
            return -1
        if self.dim == 1:
            return powers[0] - 1
        grid = np.indices(h.shape).sum(axis=0)
        tot = np.where(h > 0, grid + h - 1, -1)
        return int(tot.max())

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def _check(self, other: "MonomialIdeal") -> None:
        if not isinstance(other, MonomialIdeal):
            raise TypeError("expected a MonomialIdeal")
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        if self.is_zero or other.is_zero:
            return MonomialIdeal(self.dim)
        if self.is_unit:
            return other
        if other.is_unit:
            return self
        big, small = (self, other) if self.ngens >= other.ngens else (other, self)
        if self.dim > 1 and big.is_primary() and small.is_primary():
            sa = big.staircase()
            if small.ngens * sa[1].size <= 4 * big.ngens * small.ngens + 10**6:
                powers, h = _staircase_product(sa, small.array())
                return MonomialIdeal._from_staircase(self.dim, powers, h)
        a, b = self.array(), other.array()
        cand = (a[:, None, :] + b[None, :, :]).reshape(-1, self.dim)
        return MonomialIdeal(self.dim, cand)

    def __pow__(self, k: int) -> "MonomialIdeal":
        if k < 0:
            raise ValueError("negative power")
        result = MonomialIdeal.unit(self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        if self.is_zero or other.is_zero:
            return MonomialIdeal(self.dim)
        a, b = self.array(), other.array()
        cand = np.maximum(a[:, None, :], b[None, :, :]).reshape(-1, self.dim)
        return MonomialIdeal(self.dim, cand)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.dim, list(self.gens) + list(other.gens))

    def __le__(self, other: "MonomialIdeal") -> bool:
        self._check(other)
        if other._stair is not None or other.is_primary():
            if other.is_unit:
                return True
            powers, h = other.staircase()
            arr = self.array()
            if self.dim == 1:
                return bool((arr[:, 0] >= powers[0]).all())
            outside = (arr >= np.asarray(powers)).any(axis=1)
            rest = arr[~outside]
            return bool((rest[:, -1] >= h[tuple(rest[:, :-1].T)]).all())
        return all(other.contains(g) for g in self.gens)

    def __ge__(self, other: "MonomialIdeal") -> bool:
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.array(), other.array())

    def __hash__(self):
        return hash((self.dim, self.gens))

    def __repr__(self):
        gens = list(self.gens)
        if len(gens) > 8:
            return f"MonomialIdeal({self.dim}, [{', '.join(map(str, gens[:4]))}, ... {len(gens)} generators])"
        return f"MonomialIdeal({self.dim}, {gens})"


def colength(ideal: MonomialIdeal) -> int:
    return ideal.colength()


def product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    return i * j


def power(i: MonomialIdeal, k: int) -> MonomialIdeal:
    return i**k


def intersect(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    return i & j


def contains(i: MonomialIdeal, v: Sequence[int]) -> bool:
    return i.contains(v)


def ideal_from_halfspaces(dim: int, ineqs: Sequence[tuple[Sequence, Scalar]]) -> MonomialIdeal:
    """Lattice points ``{v in N^d : n . v >= o}`` for integer normals ``n >= 0``.

    Offsets may be any exact scalar; only their ceilings matter.
    """
    rows = []
    for n, o in ineqs:
        n = tuple(as_scalar(x) for x in n)
        den = math.lcm(*(x.denominator for x in n))
        nn = tuple(int(x * den) for x in n)
        if min(nn) < 0:
            raise NonPositiveInput("half-space normals must be nonnegative")
        off = as_scalar(o) * den
        if sign(off) <= 0:
            continue
        rows.append((nn, math.ceil(off)))
    if not rows:
        return MonomialIdeal.unit(dim)
    powers = []
    for i in range(dim):
        need = 0
        for nn, c in rows:
            if nn[i] == 0:
                raise NotPrimary("half-space system does not contain a pure power of every variable")
            need = max(need, -(-c // nn[i]))
        powers.append(need)
    if 0 in powers:
        return MonomialIdeal.unit(dim)
    if dim == 1:
        return MonomialIdeal(1, [(powers[0],)])
    box = tuple(powers[:-1])
    grid = np.indices(box, dtype=np.int64)
    h = np.zeros(box, dtype=np.int64)
    for nn, c in rows:
        partial = sum(nn[i] * grid[i] for i in range(dim - 1)) if dim > 1 else 0
        need = -((partial - c) // nn[-1])
        h = np.maximum(h, need)
    return MonomialIdeal._from_staircase(dim, powers, h)


def newton_polyhedron(ideal: MonomialIdeal) -> UpperHull:
    """``conv(generators) + R_{>=0}^d``."""
    if not ideal.is_primary():
        raise NotPrimary(f"{ideal!r} is not primary to the maximal ideal")
    return UpperHull(ideal.dim, ideal.gens)


def integral_closure_ideal(ideal: MonomialIdeal) -> MonomialIdeal:
    """Monomials whose exponents lie in the Newton polyhedron."""
    if ideal.is_unit:
        return ideal
    return ideal_from_halfspaces(ideal.dim, newton_polyhedron(ideal).facets())


@dataclass(frozen=True)
class WeightValuation:
    """The monomial valuation ``x^v -> w . v`` with positive integer weights."""

    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if not w or min(w) < 1:
            raise NonPositiveInput("valuation weights must be positive integers")
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def __call__(self, v: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.weights, v))

    def of_ideal(self, ideal: MonomialIdeal) -> int:
        if ideal.is_zero:
            return INFINITE
        return int((ideal.array() @ np.array(self.weights, dtype=np.int64)).min())


def _as_valuation(mu) -> WeightValuation:
    return mu if isinstance(mu, WeightValuation) else WeightValuation(tuple(mu))


# -- filtrations ----------------------------------------------------------


class Filtration:
    """A multiplicative descending family ``I_0 = R ⊇ I_1 ⊇ ...`` of monomial ideals.

    Subclasses implement :meth:`_compute`.  Levels are memoized behind a
    lock, so one filtration may be shared between worker threads.
    """

    kind = "abstract"

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self._levels: dict[int, MonomialIdeal] = {}
        self._lock = threading.RLock()
        self._delta = None
        self._checked = False

    def level(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError("levels are indexed by nonnegative integers")
        if n == 0:
            return MonomialIdeal.unit(self.dim)
        if n > 1 and not self._checked:
            self.level(1)
        with self._lock:
            ideal = self._levels.get(n)
            if ideal is None:
                ideal = self._compute(n)
                self._levels[n] = ideal
        if n == 1:
            if not ideal.is_primary():
                raise NotPrimary(f"level 1 of {self!r} is not primary to the maximal ideal")
            self._checked = True
        return ideal

    def _compute(self, n: int) -> MonomialIdeal:
        raise NotImplementedError

    def colength(self, n: int) -> int:
        return self.level(n).colength()

    def contains(self, v: Sequence[int], n: int) -> bool:
        return self.level(n).contains(v)

    def as_adic(self) -> MonomialIdeal | None:
        """An ideal ``I`` with ``level(n) == I**n`` for all n, when one is known."""
        return None

    def as_divisorial(self) -> "DivisorialToric | None":
        return None

    def delta(self) -> UpperHull:
        """The limiting body of the filtration, computed from its structure."""
        if self._delta is None:
            self._delta = self._compute_delta()
        return self._delta

    def _compute_delta(self) -> UpperHull:
        raise NotImplementedError

    @property
    def exact_body(self) -> bool:
        """False when the body involves floating-point data."""
        return True

    def quad_fields(self) -> frozenset:
        """Radicands of the quadratic fields appearing in the data."""
        base = getattr(self, "base", None)
        return base.quad_fields() if base is not None else frozenset()


class Trivial(Filtration):
    """Every level is the unit ideal."""

    kind = "trivial"

    def _compute(self, n):
        return MonomialIdeal.unit(self.dim)

    def level(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError("levels are indexed by nonnegative integers")
        return MonomialIdeal.unit(self.dim)

    def as_adic(self):
        return MonomialIdeal.unit(self.dim)

    def _compute_delta(self):
        return UpperHull.orthant(self.dim)

    def __repr__(self):
        return f"Trivial({self.dim})"


class Adic(Filtration):
    """``I_n = I**n``."""

    kind = "adic"

    def __init__(self, ideal: MonomialIdeal) -> None:
        super().__init__(ideal.dim)
        self.ideal = ideal

    def _compute(self, n):
        below = [k for k in self._levels if k < n]
        k = max(below, default=0)
        cur = self._levels[k] if k else MonomialIdeal.unit(self.dim)
        while k < n:
            cur = cur * self.ideal
            k += 1
            if k < n:
                self._levels[k] = cur
        return cur

    def as_adic(self):
        return self.ideal

    def _compute_delta(self):
        return newton_polyhedron(self.ideal)

    def __repr__(self):
        return f"Adic({list(self.ideal.gens)})"


class DivisorialToric(Filtration):
    """``I_n = {v : w_j . v >= ceil(n a_j) for all j}``.

    Parameters
    ----------
    terms : sequence of (weights, coefficient)
        Weight vectors with positive integer entries and nonnegative
        coefficients; coefficients may be irrational (:class:`QuadExt`).
    """

    kind = "divtoric"

    def __init__(self, terms: Sequence[tuple]) -> None:
        if not terms:
            raise ValueError("a divisorial filtration needs at least one term")
        parsed = []
        for w, a in terms:
            mu = _as_valuation(w)
            a = as_scalar(a)
            if sign(a) < 0:
                raise NonPositiveInput("divisorial coefficients must be nonnegative")
            parsed.append((mu, a))
        dims = {mu.dim for mu, _ in parsed}
        if len(dims) != 1:
            raise DimensionMismatch("all weight vectors must share one dimension")
        super().__init__(dims.pop())
        self.terms = tuple(parsed)

    def _compute(self, n):
        return ideal_from_halfspaces(self.dim, [(mu.weights, n * a) for mu, a in self.terms])

    def as_divisorial(self):
        return self

    def scaled(self, l) -> "DivisorialToric":
        return DivisorialToric([(mu, l * a) for mu, a in self.terms])

    @property
    def exact_body(self) -> bool:
        # vertices mixing two quadratic fields are not representable exactly
        return all(is_exact(a) for _, a in self.terms) and len(self.quad_fields()) <= 1

    def quad_fields(self) -> frozenset:
        return frozenset(a.n for _, a in self.terms if isinstance(a, QuadExt))

    def _compute_delta(self):
        if all(sign(a) == 0 for _, a in self.terms):
            return UpperHull.orthant(self.dim)
        return UpperHull(self.dim, ineqs=[(mu.weights, a) for mu, a in self.terms])

    def __repr__(self):
        return f"DivisorialToric({[(mu.weights, str(a)) for mu, a in self.terms]})"


class Product(Filtration):
    """``I_n = F_n * G_n``."""

    kind = "product"

    def __init__(self, *factors: Filtration) -> None:
        if len(factors) < 2:
            raise ValueError("a product needs at least two factors")
        dims = {f.dim for f in factors}
        if len(dims) != 1:
            raise DimensionMismatch("factors live in different dimensions")
        super().__init__(dims.pop())
        self.factors = tuple(factors)

    def _compute(self, n):
        acc = self.factors[0].level(n)
        for f in self.factors[1:]:
            acc = acc * f.level(n)
        return acc

    def as_adic(self):
        parts = [f.as_adic() for f in self.factors]
        if any(p is None for p in parts):
            return None
        acc = parts[0]
        for p in parts[1:]:
            acc = acc * p
        return acc

    @property
    def exact_body(self):
        return all(f.exact_body for f in self.factors) and len(self.quad_fields()) <= 1

    def quad_fields(self) -> frozenset:
        return frozenset().union(*(f.quad_fields() for f in self.factors))

    def _compute_delta(self):
        acc = self.factors[0].delta()
        for f in self.factors[1:]:
            acc = acc.minkowski_sum(f.delta())
        return acc

    def __repr__(self):
        return f"Product{self.factors!r}"


class Rescale(Filtration):
    """``I_n = F_{l n}``.  A factor of 0 gives the trivial filtration."""

    kind = "rescale"

    def __init__(self, base: Filtration, l: int) -> None:
        if int(l) != l or l < 0:
            raise NonPositiveInput("rescale factor must be a nonnegative integer")
        super().__init__(base.dim)
        self.base = base
        self.l = int(l)

    def _compute(self, n):
        if self.l == 0:
            return MonomialIdeal.unit(self.dim)
        return self.base.level(self.l * n)

    def level(self, n: int) -> MonomialIdeal:
        if self.l == 0:
            return MonomialIdeal.unit(self.dim)
        return super().level(n)

    def as_adic(self):
        a = self.base.as_adic()
        return None if a is None else a**self.l

    def as_divisorial(self):
        d = self.base.as_divisorial()
        return None if d is None or self.l == 0 else d.scaled(self.l)

    @property
    def exact_body(self):
        return self.base.exact_body

    def _compute_delta(self):
        if self.l == 0:
            return UpperHull.orthant(self.dim)
        return self.base.delta().scale(self.l)

    def __repr__(self):
        return f"Rescale({self.base!r}, {self.l})"


class Truncate(Filtration):
    """The filtration generated by the levels ``F_1 .. F_a``."""

    kind = "truncate"

    def __init__(self, base: Filtration, a: int) -> None:
        if int(a) != a or a < 1:
            raise NonPositiveInput("truncation level must be a positive integer")
        super().__init__(base.dim)
        self.base = base
        self.a = int(a)

    def _compute(self, n):
        if n <= self.a:
            return self.base.level(n)
        for k in range(self.a + 1, n + 1):
            if k in self._levels:
                continue
            acc = None
            for i in range(1, self.a + 1):
                term = self.base.level(i) * (self._levels.get(k - i) or self._compute(k - i))
                acc = term if acc is None else acc + term
            if k < n:
                self._levels[k] = acc
        return acc

    def as_adic(self):
        return self.base.as_adic()

    @property
    def exact_body(self):
        return self.base.exact_body

    def _compute_delta(self):
        pts = []
        for i in range(1, self.a + 1):
            for g in self.base.level(i).gens:
                pts.append(tuple(Fraction(x, i) for x in g))
        return UpperHull(self.dim, pts)

    def __repr__(self):
        return f"Truncate({self.base!r}, {self.a})"


class Table(Filtration):
    """Explicit levels ``I_1 .. I_N`` followed by ``I_n = tail**n`` for ``n > N``."""

    kind = "table"

    def __init__(self, levels: Sequence[MonomialIdeal], tail: MonomialIdeal) -> None:
        super().__init__(tail.dim)
        if any(l.dim != tail.dim for l in levels):
            raise DimensionMismatch("table levels live in different dimensions")
        self.table = tuple(levels)
        self.tail = tail
        self._tail = Adic(tail)

    def _compute(self, n):
        if n <= len(self.table):
            return self.table[n - 1]
        return self._tail.level(n)

    def _compute_delta(self):
        pts = list(self.tail.gens)
        for i, lev in enumerate(self.table, start=1):
            pts.extend(tuple(Fraction(x, i) for x in g) for g in lev.gens)
        return UpperHull(self.dim, pts)

    def __repr__(self):
        return f"Table({[list(l.gens) for l in self.table]}, tail={list(self.tail.gens)})"


class Closure(Filtration):
    """``J_n = {f : f^r in closure(I_{rn}) for some r <= r_max}``.

    Exact (independent of ``r_max``) when the base is adic or divisorial;
    otherwise levels grow monotonically with ``r_max``.
    """

    kind = "closure"

    def __init__(self, base: Filtration, r_max: int = 1) -> None:
        if int(r_max) != r_max or r_max < 1:
            raise NonPositiveInput("r_max must be a positive integer")
        super().__init__(base.dim)
        self.base = base
        self.r_max = int(r_max)

    @property
    def exact(self) -> bool:
        return self.base.as_divisorial() is not None or self.base.as_adic() is not None

    def _compute(self, n):
        div = self.base.as_divisorial()
        if div is not None:
            return div.level(n)
        adic = self.base.as_adic()
        if adic is not None:
            if adic.is_unit:
                return adic
            facets = newton_polyhedron(adic).facets()
            return ideal_from_halfspaces(self.dim, [(f, n * o) for f, o in facets])
        acc = None
        for r in range(1, self.r_max + 1):
            lev = self.base.level(r * n)
            if lev.is_unit:
                return lev
            facets = newton_polyhedron(lev).facets()
            part = ideal_from_halfspaces(self.dim, [(f, o / r) for f, o in facets])
            acc = part if acc is None else acc + part
        return acc

    def as_divisorial(self):
        return self.base.as_divisorial()

    @property
    def exact_body(self):
        return self.base.exact_body

    def _compute_delta(self):
        return self.base.delta()

    def __repr__(self):
        return f"Closure({self.base!r}, r_max={self.r_max})"


def level(f: Filtration, n: int) -> MonomialIdeal:
    return f.level(n)


def check_filtration(f: Filtration, m_max: int) -> list[str]:
    """Sample the filtration axioms up to ``m_max``; returns the violations found."""
    issues = []
    if not f.level(1).is_primary():
        issues.append("level 1 is not primary")
    for n in range(1, m_max):
        if not f.level(n + 1) <= f.level(n):
            issues.append(f"level {n + 1} is not contained in level {n}")
    for i in range(1, m_max):
        for j in range(i, m_max - i + 1):
            if not (f.level(i) * f.level(j)) <= f.level(i + j):
                issues.append(f"level {i} times level {j} escapes level {i + j}")
    return issues


# -- invariants ------------------------------------------------------------


def tau(f: Filtration, mu, m: int) -> int:
    """``min mu`` over level ``m``."""
    if m < 1:
        raise ValueError("tau is defined for m >= 1")
    return _as_valuation(mu).of_ideal(f.level(m))


@dataclass(frozen=True)
class GammaEstimate:
    """``value`` is exact when ``exact`` is set; ``upper`` is ``min tau_m/m`` over the sampled m."""

    value: Scalar
    upper: Fraction
    m_max: int
    exact: bool


def gamma(f: Filtration, mu, m_max: int = 20) -> GammaEstimate:
    """Asymptotic order ``inf_m tau_m / m`` of the filtration along ``mu``."""
    if m_max < 1:
        raise ValueError("m_max must be positive")
    mu = _as_valuation(mu)
    upper = min(Fraction(tau(f, mu, m), m) for m in range(1, m_max + 1))
    if f.exact_body:
        return GammaEstimate(f.delta().min_linear(mu.weights), upper, m_max, True)
    return GammaEstimate(upper, upper, m_max, False)


def w_invariant(f: Filtration, v: Sequence[int] | None, n_cap: int = 1000):
    """``max{m : x^v in I_m}``.

    ``None`` stands for the zero element, whose order is infinite.  The
    monomial ``1`` (``v = 0``) has order 0 because level 1 is proper.
    """
    if v is None:
        return INFINITE
    v = tuple(int(x) for x in v)
    if not f.contains(v, 1):
        return 0
    if f.contains(v, n_cap):
        raise CapReached(f"x^{v} lies in level {n_cap}; raise n_cap")
    lo, hi = 1, 2
    while hi < n_cap and f.contains(v, hi):
        lo, hi = hi, min(2 * hi, n_cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f.contains(v, mid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class AsymptoticW:
    value: Scalar
    empirical: Fraction
    exact: bool
    period: int | None
    linear_verified: bool | None


def asymptotic_w(f: Filtration, v: Sequence[int], k_max: int = 8) -> AsymptoticW:
    """``lim w(k v) / k``, exact from the body when available."""
    v = tuple(int(x) for x in v)
    if not any(v):
        raise NonPositiveInput("asymptotic_w needs a nonzero exponent vector")
    exact_val = f.delta().gauge(v) if f.exact_body else None

    def cap(k: int) -> int:
        if exact_val is not None:
            return math.floor(k * exact_val) + 2
        return 4 * k * sum(v) + 2

    emp = max(Fraction(w_invariant(f, tuple(k * x for x in v), cap(k)), k) for k in range(1, k_max + 1))
    period = verified = None
    div = f.as_divisorial()
    if div is not None and all(isinstance(a, Fraction) for _, a in div.terms):
        ratios = [Fraction(mu(v)) / a for mu, a in div.terms if a > 0]
        period = math.lcm(*(r.denominator for r in ratios))
        base = w_invariant(f, tuple(period * x for x in v), cap(period))
        verified = all(w_invariant(f, tuple(n * period * x for x in v), cap(n * period)) == n * base
                       for n in range(2, 4))
    if exact_val is not None:
        return AsymptoticW(exact_val, emp, True, period, verified)
    return AsymptoticW(emp, emp, False, period, verified)
