"""Exact number tower and continued-fraction approximation.

Three kinds of scalar are used throughout the package:

* :class:`fractions.Fraction` for rationals,
* :class:`QuadExt` for elements ``a + b*sqrt(n)`` of a real quadratic field,
* :class:`Approx` for floating point values carrying an absolute tolerance.

Arithmetic on a :class:`QuadExt` whose irrational part cancels returns a
plain ``Fraction``, so exact results always come back in the simplest kind.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Union

import mpmath

from .errors import InexactInput, NonPositiveInput, PrecisionExhausted, SchemaError

DEFAULT_TOL = 1e-12
_FLOAT_EPS = 2.0**-52

Scalar = Union[Fraction, "QuadExt", "Approx"]


def iroot(k: int, d: int) -> int:
    """Floor of the real d-th root of a nonnegative integer."""
    if k < 0:
        raise ValueError("iroot of a negative integer")
    if k < 2 or d == 1:
        return k
    if d == 2:
        return math.isqrt(k)
    x = 1 << -(-k.bit_length() // d)
    while True:
        y = ((d - 1) * x + k // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    while x**d > k:
        x -= 1
    while (x + 1) ** d <= k:
        x += 1
    return x


def squarefree_split(k: int) -> tuple[int, int]:
    """Write ``k = s**2 * m`` with ``m`` squarefree; returns ``(s, m)``."""
    if k <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    r = math.isqrt(k)
    if r * r == k:
        return r, 1
    s, m, p = 1, 1, 2
    while p * p <= k:
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    return s, m * k


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_split(n)[0] == 1


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational")


def quad(a, b, n: int) -> Scalar:
    """Build ``a + b*sqrt(n)``, pulling square factors out of ``n`` and
    collapsing to a ``Fraction`` when the irrational part vanishes."""
    a = _as_fraction(a)
    b = _as_fraction(b)
    if n < 0:
        raise ValueError("n must be nonnegative")
    s, n = squarefree_split(int(n)) if n else (0, 1)
    b *= s
    if b == 0 or n == 1:
        return a + b if n == 1 else a
    return QuadExt(a, b, n)


class QuadExt:
    """An element ``a + b*sqrt(n)`` with rational ``a, b`` and squarefree ``n > 1``.

    Instances are immutable. Comparisons with rationals and with elements of
    the same field are exact; anything else goes through :class:`Approx`.
    """

    __slots__ = ("a", "b", "n")

    def __init__(self, a, b, n: int) -> None:
        n = int(n)
        if n < 2 or not is_squarefree(n):
            raise ValueError(f"n must be a squarefree integer > 1, got {n}")
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt(cls, n: int) -> "QuadExt":
        return cls(0, 1, n)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        """Return ``(a, b)`` for same-field operands, or None."""
        if isinstance(other, (int, Fraction)):
            return _as_fraction(other), Fraction(0)
        if isinstance(other, QuadExt) and other.n == self.n:
            return other.a, other.b
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return _approx_binop(self, other, "add")
        return quad(self.a + c[0], self.b + c[1], self.n)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.n)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return _approx_binop(self, other, "sub")
        return quad(self.a - c[0], self.b - c[1], self.n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return _approx_binop(self, other, "mul")
        a, b = c
        return quad(self.a * a + self.b * b * self.n, self.a * b + self.b * a, self.n)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.n * self.b * self.b

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.n)

    def inverse(self) -> Scalar:
        nrm = self.norm()
        return quad(self.a / nrm, -self.b / nrm, self.n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return quad(self.a / other, self.b / other, self.n)
        if isinstance(other, QuadExt) and other.n == self.n:
            return self * other.inverse()
        return _approx_binop(self, other, "div")

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return _approx_binop(other, self, "div")

    def __pow__(self, k):
        if not isinstance(k, int):
            return to_approx(self) ** k
        if k < 0:
            return self.inverse() ** (-k)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with n b^2
        d = self.a * self.a - self.n * self.b * self.b
        return sa if d > 0 else -sa

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Approx):
            return diff.sign()
        return sign(diff)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.n) == (other.a, other.b, other.n)
        if isinstance(other, (int, Fraction)):
            return False
        if isinstance(other, Approx):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash(("quad", self.a, self.b, self.n))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- rounding ---------------------------------------------------------
    def __floor__(self) -> int:
        t = self.b * self.b * self.n
        r = math.isqrt(t.numerator * t.denominator) // t.denominator
        k = math.floor(self.a) + (r if self.b > 0 else -r - 1)
        while (self - k).sign() < 0:
            k -= 1
        while (self - (k + 1)).sign() >= 0:
            k += 1
        return k

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __float__(self) -> float:
        return float(to_mpf(self))

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, {self.n})"

    def __str__(self):
        return format_scalar(self)


class Approx:
    """A float with an absolute error bound.

    Equality is tolerant: two values are equal when they differ by at most
    the larger tolerance. Instances are therefore unhashable.
    """

    __slots__ = ("value", "tol")

    def __init__(self, value: float, tol: float = DEFAULT_TOL) -> None:
        object.__setattr__(self, "value", float(value))
        object.__setattr__(self, "tol", float(tol))

    def __setattr__(self, name, value):
        raise AttributeError("Approx is immutable")

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        o = to_approx(other)
        return Approx(self.value + o.value, self.tol + o.tol + _round_err(self.value + o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = to_approx(other)
        return Approx(self.value - o.value, self.tol + o.tol + _round_err(self.value - o.value))

    def __rsub__(self, other):
        return to_approx(other) - self

    def __neg__(self):
        return Approx(-self.value, self.tol)

    def __pos__(self):
        return self

    def __abs__(self):
        return Approx(abs(self.value), self.tol)

    def __mul__(self, other):
        o = to_approx(other)
        v = self.value * o.value
        tol = abs(self.value) * o.tol + abs(o.value) * self.tol + self.tol * o.tol
        return Approx(v, tol + _round_err(v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = to_approx(other)
        if abs(o.value) <= o.tol:
            raise ZeroDivisionError("denominator interval contains zero")
        v = self.value / o.value
        lo = abs(o.value) - o.tol
        tol = (self.tol + abs(v) * o.tol) / lo
        return Approx(v, tol + _round_err(v))

    def __rtruediv__(self, other):
        return to_approx(other) / self

    def __pow__(self, k):
        if isinstance(k, int) and k >= 0:
            result = Approx(1.0, 0.0)
            for _ in range(k):
                result = result * self
            return result
        k = float(k)
        if self.value - self.tol <= 0:
            raise ValueError("fractional power of a non-positive interval")
        v = self.value**k
        lo = (self.value - self.tol) ** k
        hi = (self.value + self.tol) ** k
        return Approx(v, max(abs(v - lo), abs(hi - v)) + _round_err(v))

    def sign(self) -> int:
        if abs(self.value) <= self.tol:
            return 0
        return 1 if self.value > 0 else -1

    def interval(self) -> tuple[Fraction, Fraction]:
        v = Fraction(self.value)
        t = Fraction(self.tol)
        return v - t, v + t

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, QuadExt, Approx, float)):
            return NotImplemented
        o = to_approx(other)
        return abs(self.value - o.value) <= max(self.tol, o.tol)

    def __lt__(self, other):
        o = to_approx(other)
        return self.value < o.value - max(self.tol, o.tol)

    def __gt__(self, other):
        o = to_approx(other)
        return self.value > o.value + max(self.tol, o.tol)

    def __le__(self, other):
        return not self > other

    def __ge__(self, other):
        return not self < other

    def __float__(self):
        return self.value

    def __floor__(self):
        lo, hi = self.interval()
        if math.floor(lo) != math.floor(hi):
            raise PrecisionExhausted(f"floor of {self!r} is ambiguous")
        return math.floor(lo)

    def __ceil__(self):
        lo, hi = self.interval()
        if math.ceil(lo) != math.ceil(hi):
            raise PrecisionExhausted(f"ceiling of {self!r} is ambiguous")
        return math.ceil(lo)

    def __repr__(self):
        return f"Approx({self.value!r}, tol={self.tol!r})"

    def __str__(self):
        return format_scalar(self)


def _round_err(v: float) -> float:
    return abs(v) * _FLOAT_EPS


def _approx_binop(x, y, op: str) -> Approx:
    ax, ay = to_approx(x), to_approx(y)
    if op == "add":
        return ax + ay
    if op == "sub":
        return ax - ay
    if op == "mul":
        return ax * ay
    return ax / ay


# -- conversions ---------------------------------------------------------

def to_mpf(x, dps: int = 50):
    """High-precision value of a scalar (tolerance is dropped)."""
    with mpmath.workdps(dps):
        if isinstance(x, (int, Fraction)):
            f = _as_fraction(x)
            return mpmath.mpf(f.numerator) / f.denominator
        if isinstance(x, QuadExt):
            return to_mpf(x.a, dps) + to_mpf(x.b, dps) * mpmath.sqrt(x.n)
        if isinstance(x, Approx):
            return mpmath.mpf(x.value)
        return mpmath.mpf(x)


def to_approx(x) -> Approx:
    if isinstance(x, Approx):
        return x
    if isinstance(x, float):
        return Approx(x, DEFAULT_TOL)
    if isinstance(x, (int, Fraction, QuadExt)):
        v = float(to_mpf(x, 30))
        return Approx(v, _round_err(v))
    raise TypeError(f"cannot convert {type(x).__name__} to Approx")


def to_float(x) -> float:
    if isinstance(x, Approx):
        return x.value
    return float(to_mpf(x, 30)) if isinstance(x, QuadExt) else float(x)


def as_scalar(x) -> Scalar:
    """Coerce ints, strings, floats and scalars into the tower."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (Fraction, QuadExt, Approx)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Approx(x)
    raise TypeError(f"cannot use {type(x).__name__} as a scalar")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QuadExt))


def sign(x) -> int:
    if isinstance(x, (QuadExt, Approx)):
        return x.sign()
    return (x > 0) - (x < 0)


def sqrt_rational(r) -> Scalar:
    """Exact square root of a nonnegative rational."""
    r = _as_fraction(r)
    if r < 0:
        raise NonPositiveInput("square root of a negative rational")
    if r == 0:
        return Fraction(0)
    s, m = squarefree_split(r.numerator * r.denominator)
    return quad(0, Fraction(s, r.denominator), m) if m > 1 else Fraction(s, r.denominator)


def _field_sqrt(x: QuadExt) -> Scalar | None:
    """Square root of ``x`` inside its own field, if it exists."""
    if x.sign() < 0:
        return None
    t = x.norm()
    if t < 0:
        return None
    rt = sqrt_rational(t)
    if not isinstance(rt, Fraction):
        return None
    for cand in ((x.a + rt) / 2, (x.a - rt) / 2):
        if cand <= 0:
            continue
        u = sqrt_rational(cand)
        if isinstance(u, Fraction):
            v = x.b / (2 * u)
            root = quad(u, v, x.n)
            if sign(root) < 0:
                root = -root
            if root * root == x:
                return root
    return None


def nth_root(x, d: int) -> Scalar:
    """The positive real d-th root, exact whenever it lies in the tower."""
    if d < 1:
        raise ValueError("root degree must be positive")
    if sign(x) < 0:
        raise NonPositiveInput("root of a negative number")
    if d == 1:
        return x
    if isinstance(x, (int, Fraction)):
        f = _as_fraction(x)
        p, q = iroot(f.numerator, d), iroot(f.denominator, d)
        if p**d == f.numerator and q**d == f.denominator:
            return Fraction(p, q)
        if d == 2:
            return sqrt_rational(f)
        if d % 2 == 0:
            inner = nth_root(f, 2)
            if isinstance(inner, QuadExt):
                return _float_root(x, d)
            return nth_root(inner, d // 2)
        return _float_root(x, d)
    if isinstance(x, QuadExt):
        if d % 2 == 0:
            r = _field_sqrt(x)
            if r is not None:
                return nth_root(r, d // 2)
        return _float_root(x, d)
    return to_approx(x) ** (1.0 / d)


def _float_root(x, d: int) -> Approx:
    with mpmath.workdps(40):
        v = mpmath.root(to_mpf(x, 40), d)
    fv = float(v)
    return Approx(fv, 4 * _round_err(fv))


def rational_dth_root(num, den, d: int) -> Fraction | None:
    """Return ``(num/den)**(1/d)`` when it is rational, else ``None``."""
    if isinstance(num, Approx) or isinstance(den, Approx) or isinstance(num, float) or isinstance(den, float):
        raise InexactInput("rational_dth_root needs exact inputs")
    if sign(num) <= 0 or sign(den) <= 0:
        raise NonPositiveInput("rational_dth_root needs positive inputs")
    ratio = as_scalar(num) / as_scalar(den)
    if not isinstance(ratio, Fraction):
        return None
    p, q = iroot(ratio.numerator, d), iroot(ratio.denominator, d)
    if p**d == ratio.numerator and q**d == ratio.denominator:
        return Fraction(p, q)
    return None


# -- continued fractions --------------------------------------------------

def partial_quotients(x) -> Iterator[int]:
    """Lazily expand ``x`` as a regular continued fraction.

    Rationals terminate. Quadratic irrationals are expanded exactly.
    For :class:`Approx` values an interval is tracked and
    :class:`PrecisionExhausted` is raised once the next quotient is ambiguous.
    """
    if isinstance(x, (int, Fraction)):
        f = _as_fraction(x)
        p, q = f.numerator, f.denominator
        while q:
            a = p // q
            yield a
            p, q = q, p - a * q
        return
    if isinstance(x, QuadExt):
        cur: Scalar = x
        while True:
            a = math.floor(cur)
            yield a
            rest = cur - a
            if rest == 0:
                return
            cur = 1 / rest
        return
    if isinstance(x, Approx):
        lo, hi = x.interval()
        while True:
            a = math.floor(lo)
            if math.floor(hi) != a:
                raise PrecisionExhausted("interval too wide to continue the expansion")
            yield a
            lo, hi = lo - a, hi - a
            if lo <= 0:
                if hi == 0:
                    return
                raise PrecisionExhausted("interval straddles a convergent")
            lo, hi = 1 / hi, 1 / lo
    raise TypeError(f"cannot expand {type(x).__name__}")


def convergents(x) -> Iterator[tuple[int, int]]:
    """Yield the convergents ``(p, q)`` of ``x`` in order."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    for a in partial_quotients(x):
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1


def _check_positive(xi, alpha) -> tuple[Scalar, Fraction]:
    xi = as_scalar(xi)
    alpha = _as_fraction(alpha) if not isinstance(alpha, float) else Fraction(alpha)
    if sign(xi) <= 0 or alpha <= 0:
        raise NonPositiveInput("xi and alpha must be positive")
    return xi, alpha


def _one_sided(xi, alpha, below: bool) -> tuple[int, int]:
    xi, alpha = _check_positive(xi, alpha)
    try:
        for p, q in convergents(xi):
            if p <= 0:
                continue
            bound = alpha / q
            target = Fraction(p, q)
            if isinstance(xi, Approx):
                if Fraction(xi.tol) >= bound / 2:
                    continue
                lo, hi = xi.interval()
                diff_lo, diff_hi = (lo - target, hi - target) if below else (target - hi, target - lo)
                if diff_lo >= 0 and diff_hi < bound:
                    return p, q
                continue
            diff = xi - target if below else target - xi
            if sign(diff) >= 0 and sign(diff - bound) < 0:
                return p, q
    except PrecisionExhausted:
        pass
    raise PrecisionExhausted(f"cannot certify a one-sided approximation of {xi!r} at alpha={alpha}")


def approximate_below(xi, alpha) -> tuple[int, int]:
    """First convergent ``p/q`` (``p > 0``) with ``0 <= xi - p/q < alpha/q``."""
    return _one_sided(xi, alpha, below=True)


def approximate_above(xi, alpha) -> tuple[int, int]:
    """First convergent ``p/q`` (``p > 0``) with ``-alpha/q < xi - p/q <= 0``."""
    return _one_sided(xi, alpha, below=False)


# -- formatting and JSON --------------------------------------------------

def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(x, digits: int = 12) -> str:
    """Render a scalar: ``33``, ``3/2``, ``2007/169 - 9/338*sqrt(3)``, ``~1.0572``."""
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, (int, Fraction)):
        return _fmt_frac(_as_fraction(x))
    if isinstance(x, QuadExt):
        mag = abs(x.b)
        root = f"sqrt({x.n})" if mag == 1 else f"{_fmt_frac(mag)}*sqrt({x.n})"
        if x.a == 0:
            return root if x.b > 0 else f"-{root}"
        return f"{_fmt_frac(x.a)} {'+' if x.b > 0 else '-'} {root}"
    if isinstance(x, (Approx, float)):
        return f"~{to_float(x):.{digits}g}"
    return str(x)


def scalar_to_json(x) -> dict:
    if isinstance(x, (int, Fraction)):
        f = _as_fraction(x)
        return {"rat": f"{f.numerator}/{f.denominator}"}
    if isinstance(x, QuadExt):
        return {"quad": {"a": f"{x.a.numerator}/{x.a.denominator}",
                         "b": f"{x.b.numerator}/{x.b.denominator}", "n": x.n}}
    if isinstance(x, (Approx, float)):
        a = to_approx(x)
        return {"float": a.value, "tol": a.tol}
    raise TypeError(f"cannot encode {type(x).__name__}")


def scalar_from_json(obj) -> Scalar:
    try:
        if isinstance(obj, bool):
            raise SchemaError("booleans are not scalars")
        if isinstance(obj, (int, str)):
            return Fraction(obj)
        if isinstance(obj, float):
            return Approx(obj)
        if "rat" in obj:
            return Fraction(obj["rat"])
        if "quad" in obj:
            q = obj["quad"]
            return quad(Fraction(q["a"]), Fraction(q["b"]), int(q["n"]))
        if "float" in obj:
            return Approx(float(obj["float"]), float(obj.get("tol", DEFAULT_TOL)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar {obj!r}: {exc}") from exc
    raise SchemaError(f"bad scalar {obj!r}")
