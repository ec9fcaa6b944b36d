"""Independent reference computations used by the test suite.

Nothing here imports the package; every routine is a direct, slow
restatement of a definition.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def brute_members(gens, bound):
    """All a*l + b*m + c*n <= bound, by triple enumeration."""
    l, m, n = gens
    out = set()
    for a in range(bound // l + 1):
        for b in range((bound - a * l) // m + 1):
            for c in range((bound - a * l - b * m) // n + 1):
                out.add(a * l + b * m + c * n)
    return out


def brute_representations(k, gens):
    l, m, n = gens
    return [(a, b, c)
            for a in range(k // l + 1)
            for b in range(k // m + 1)
            for c in range(k // n + 1)
            if a * l + b * m + c * n == k]


def brute_conductor(gens):
    # Schur: the Frobenius number is below (min - 1)(max - 1) for coprime generators
    bound = (min(gens) - 1) * (max(gens) - 1)
    mem = brute_members(gens, bound + 1)
    gaps = [k for k in range(bound + 1) if k not in mem]
    return (max(gaps) + 1) if gaps else 0, gaps


def minimal_multiple(i, gens):
    """Least a > 0 with a*g_i in the semigroup of the other two generators."""
    g = gens[i]
    u, v = [gens[j] for j in range(3) if j != i]
    a = 1
    while True:
        t = a * g
        if any((t - p * u) % v == 0 for p in range(t // u + 1)):
            return a
        a += 1


def eval_poly(terms, point):
    """Evaluate {exponent tuple: coeff} at a tuple of Fractions."""
    total = Fraction(0)
    for e, c in terms.items():
        v = Fraction(c)
        for x, k in zip(point, e):
            v *= Fraction(x) ** k
        total += v
    return total


def series_mul(a, b, order):
    out = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            if order is not None and i + k >= order:
                continue
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + Fraction(u) * Fraction(v)
    return {k: v for k, v in out.items() if v}


def series_pow(a, e, order):
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = series_mul(out, a, order)
    return out


def param_series(gens, tails, specialize_s=False):
    """(xi, eta, zeta) as {(t, s): coeff}; tails is a 3-list of (exponent, coeff) lists."""
    out = []
    for base, tail in zip(gens, tails):
        d = {(base, 0): Fraction(1)}
        for i, c in tail:
            d[(i, 0 if specialize_s else i - base)] = Fraction(c)
        out.append(d)
    return out


def substitute(terms, gens, tails, order, s_power_shift=0):
    """p(xi, eta, zeta, s) for p given as {(ex, ey, ez, es): c}, truncated below t^order."""
    ser = param_series(gens, tails)
    out = {}
    for e, c in terms.items():
        v = {(0, e[3] + s_power_shift): Fraction(c)}
        for k in range(3):
            v = series_mul(v, series_pow(ser[k], e[k], order), order)
        for key, val in v.items():
            out[key] = out.get(key, 0) + val
    return {k: v for k, v in out.items() if v}


def value_set_by_elimination(gens, tails, order):
    """Valuations below ``order`` of the algebra generated by the s = 1 parametrization.

    Every element of the local ring agrees below t^order with a polynomial in
    monomials of weighted degree < order, so the valuations below order are the
    pivot columns of the echelon form of those monomials' truncated series.
    """
    l, m, n = gens
    ser = param_series(gens, tails, specialize_s=True)
    flat = [{t: c for (t, _), c in s.items()} for s in ser]

    def mul(a, b):
        out = {}
        for i, u in a.items():
            for j, v in b.items():
                if i + j < order:
                    out[i + j] = out.get(i + j, 0) + u * v
        return {k: v for k, v in out.items() if v}

    rows = []
    for a, b, c in product(range(order // l + 1), range(order // m + 1), range(order // n + 1)):
        if a * l + b * m + c * n >= order:
            continue
        v = {0: Fraction(1)}
        for base, e in zip(flat, (a, b, c)):
            for _ in range(e):
                v = mul(v, base)
        if v:
            rows.append(v)
    pivots = {}
    for r in rows:
        r = dict(r)
        while r:
            low = min(r)
            if low not in pivots:
                pivots[low] = r
                break
            p = pivots[low]
            f = r[low] / p[low]
            for k, v in p.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return sorted(pivots)
