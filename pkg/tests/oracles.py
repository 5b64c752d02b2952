"""Brute-force reference computations used to freeze expected values.

Nothing here imports the package: every routine works directly on
generator lists and lattice points so that agreement with the library is
an independent check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def divides(g, v):
    return all(a <= b for a, b in zip(g, v))


def member(gens, v):
    return any(divides(g, v) for g in gens)


def minimal(gens):
    gens = set(map(tuple, gens))
    return sorted(g for g in gens if not any(h != g and divides(h, g) for h in gens))


def product(a, b):
    return minimal(tuple(x + y for x, y in zip(g, h)) for g in a for h in b)


def power(gens, k):
    dim = len(gens[0])
    out = [tuple([0] * dim)]
    for _ in range(k):
        out = product(out, gens)
    return out


def pure_powers(gens):
    dim = len(gens[0])
    caps = []
    for i in range(dim):
        cands = [g[i] for g in gens if all(g[j] == 0 for j in range(dim) if j != i)]
        caps.append(min(cands) if cands else None)
    return caps


def colength(gens):
    """Count standard monomials by walking the whole box."""
    caps = pure_powers(gens)
    if any(c is None for c in caps):
        raise ValueError("not primary")
    return sum(1 for v in itertools.product(*(range(c) for c in caps)) if not member(gens, v))


def divisorial_member(terms, v, n):
    """``terms`` are ``(weights, a)`` with ``a`` a float or Fraction."""
    return all(sum(w * x for w, x in zip(ws, v)) >= n * a - 1e-12 for ws, a in terms)


def divisorial_colength(terms, dim, n, box):
    return sum(1 for v in itertools.product(range(box), repeat=dim) if not divisorial_member(terms, v, n))


def np_contains_2d(gens, v):
    """Newton polyhedron membership in two variables via supporting lines.

    A point lies in ``conv(gens) + R^2_{>=0}`` iff it satisfies every
    inequality ``a x + b y >= c`` with ``a, b >= 0`` that is tight at two
    generators (or at one generator along an axis direction) and valid on
    all of them.
    """
    pts = [tuple(map(Fraction, g)) for g in gens]
    v = tuple(map(Fraction, v))
    ineqs = [((Fraction(1), Fraction(0)), min(p[0] for p in pts)),
             ((Fraction(0), Fraction(1)), min(p[1] for p in pts))]
    for p, q in itertools.combinations(pts, 2):
        a, b = q[1] - p[1], p[0] - q[0]
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        if a < 0 or b < 0 or (a == 0 and b == 0):
            continue
        c = a * p[0] + b * p[1]
        if all(a * r[0] + b * r[1] >= c for r in pts):
            ineqs.append(((a, b), c))
    return all(a * v[0] + b * v[1] >= c for (a, b), c in ineqs)


def closure_gens_2d(gens):
    caps = pure_powers(gens)
    box = [range(c + 1) for c in caps]
    return minimal(v for v in itertools.product(*box) if np_contains_2d(gens, v))


def second_difference(values):
    """``l(n+1) - 2 l(n) + l(n-1)`` for the last three entries."""
    return values[-1] - 2 * values[-2] + values[-3]


def polygon_area(pts):
    """Shoelace formula for a polygon listed in cyclic order."""
    s = 0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        s += x0 * y1 - x1 * y0
    return abs(s) / 2


def simplex_lattice(dim, cap):
    return [v for v in itertools.product(range(cap + 1), repeat=dim) if sum(v) <= cap]


def eval_qsqrt(a, b, n):
    return float(a) + float(b) * math.sqrt(n)
