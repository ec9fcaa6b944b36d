"""Exact sparse polynomials in x, y, z, s and truncated series in t, s.

Polynomials carry the grading deg(x, y, z) = (l, m, n), deg(s) = -1.
Series carry deg(t) = 1, deg(s) = -1 and an optional truncation order in t;
terms with t-exponent at or above the order are dropped and the drop is
remembered in ``truncated`` so that no verdict silently relies on them.

Coefficients are Python ints or ``fractions.Fraction`` (integral fractions
are stored as ints, which keeps the common integral case fast).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import ValuationOfZero, ValuationUndetermined, WeightMismatch, ZeroPolynomial

Exps = tuple[int, int, int, int]
VARS = ("x", "y", "z", "s")


def qnorm(c):
    """Normalize an exact coefficient: integral values become ints."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return qnorm(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return qnorm(Fraction(c))
    raise TypeError(f"inexact or unsupported coefficient {c!r}")


def qstr(c) -> str:
    """Canonical rational rendering: ``p`` or ``p/q``."""
    return str(qnorm(c))



class SparsePoly:
    __slots__ = ("terms", "weights")

    def __init__(self, terms: Mapping[Exps, object] | None = None, weights: tuple[int, int, int] = (1, 1, 1)):
        self.weights = tuple(weights)
        clean: dict[Exps, object] = {}
        if terms:
            for e, c in terms.items():
                c = qnorm(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, weights) -> SparsePoly:
        p = cls.__new__(cls)
        p.terms = terms
        p.weights = weights
        return p

    @classmethod
    def zero(cls, weights) -> SparsePoly:
        return cls._raw({}, tuple(weights))

    @classmethod
    def constant(cls, c, weights) -> SparsePoly:
        return cls({(0, 0, 0, 0): c}, weights)

    @classmethod
    def monomial(cls, exps: Iterable[int], weights, coeff=1) -> SparsePoly:
        e = tuple(exps)
        if len(e) == 3:
            e = e + (0,)
        if any(k < 0 for k in e):
            raise ValueError(f"negative exponent in {e}")
        return cls({e: coeff}, weights)

    @classmethod
    def var(cls, name: str, weights) -> SparsePoly:
        e = [0, 0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1}, weights)

    @classmethod
    def gens(cls, weights) -> tuple[SparsePoly, SparsePoly, SparsePoly, SparsePoly]:
        return tuple(cls.var(v, weights) for v in VARS)  # type: ignore[return-value]

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            if other.weights != self.weights:
                raise WeightMismatch(f"weights {self.weights} vs {other.weights}")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.constant(other, self.weights)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = qnorm(v)
            else:
                out.pop(e, None)
        return SparsePoly._raw(out, self.weights)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw({e: -c for e, c in self.terms.items()}, self.weights)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exps, object] = {}
        for (a0, a1, a2, a3), c in self.terms.items():
            for (b0, b1, b2, b3), d in other.terms.items():
                e = (a0 + b0, a1 + b1, a2 + b2, a3 + b3)
                out[e] = out.get(e, 0) + c * d
        return SparsePoly._raw({e: qnorm(c) for e, c in out.items() if c}, self.weights)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = SparsePoly.constant(1, self.weights)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> SparsePoly:
        c = qnorm(c)
        if not c:
            return SparsePoly.zero(self.weights)
        return SparsePoly._raw({e: qnorm(v * c) for e, v in self.terms.items()}, self.weights)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other, self.weights)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.weights == other.weights and self.terms == other.terms

    def __hash__(self):
        return hash((self.weights, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # grading --------------------------------------------------------------
    def degree_of(self, e: Exps) -> int:
        l, m, n = self.weights
        return e[0] * l + e[1] * m + e[2] * n - e[3]

    def weighted_order(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("weighted order of the zero polynomial")
        return min(self.degree_of(e) for e in self.terms)

    def weighted_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("weighted degree of the zero polynomial")
        return max(self.degree_of(e) for e in self.terms)

    def initial_part(self) -> SparsePoly:
        o = self.weighted_order()
        return SparsePoly._raw({e: c for e, c in self.terms.items() if self.degree_of(e) == o}, self.weights)

    def is_homogeneous(self) -> bool:
        return not self.terms or self.initial_part() == self

    def x_adic_order(self) -> float:
        """Largest e with x^e dividing self (inf for zero)."""
        return min((e[0] for e in self.terms), default=float("inf"))

    def divide_monomial(self, exps: Iterable[int]) -> SparsePoly:
        d = tuple(exps) + (0,) * (4 - len(tuple(exps)))
        out = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, d))
            if min(q) < 0:
                raise ValueError(f"monomial {d} does not divide term {e}")
            out[q] = c
        return SparsePoly._raw(out, self.weights)

    def set_s(self, value=1) -> SparsePoly:
        """Specialize s to a constant (default 1)."""
        out: dict[Exps, object] = {}
        for (a, b, c, k), v in self.terms.items():
            key = (a, b, c, 0)
            out[key] = out.get(key, 0) + v * value ** k
        return SparsePoly._raw({e: qnorm(v) for e, v in out.items() if v}, self.weights)

    def mod_xz(self) -> SparsePoly:
        """Image modulo the ideal <x, z>: keep the terms free of x and z."""
        return SparsePoly._raw({e: c for e, c in self.terms.items() if e[0] == 0 and e[2] == 0}, self.weights)

    def evaluate_monomial_curve(self) -> dict[int, object]:
        """Coefficients of self(t^l, t^m, t^n, 1) keyed by t-exponent (zero entries dropped)."""
        out: dict[int, object] = {}
        for e, c in self.terms.items():
            k = self.degree_of(e) + e[3]
            out[k] = out.get(k, 0) + c
        return {k: v for k, v in out.items() if v}

    # rendering ------------------------------------------------------------
    def sort_key(self, e: Exps):
        # graded (descending), then reverse lexicographic on x, y, z, s
        return (-self.degree_of(e), tuple(e[::-1]))

    def sorted_terms(self) -> list[tuple[Exps, object]]:
        return sorted(self.terms.items(), key=lambda ec: self.sort_key(ec[0]))

    def __str__(self):
        return render_terms([(_mono_str(e, VARS), c) for e, c in self.sorted_terms()])

    def __repr__(self):
        return f"SparsePoly({str(self)!r}, weights={self.weights})"


def _mono_str(exps, names) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_terms(items: list[tuple[str, object]]) -> str:
    if not items:
        return "0"
    out = []
    for i, (mono, c) in enumerate(items):
        c = qnorm(c)
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{qstr(mag)}*{mono}"
        else:
            body = qstr(mag)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


class TruncSeries:
    """Series in t, s known exactly below t-order ``order`` (``None``: exact, finitely many terms)."""

    __slots__ = ("terms", "order", "truncated")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None, order: int | None = None, truncated: bool = False):
        self.order = order
        self.truncated = truncated
        clean: dict[tuple[int, int], object] = {}
        if terms:
            for (et, es), c in terms.items():
                if et < 0 or es < 0:
                    raise ValueError("series exponents must be nonnegative")
                c = qnorm(c)
                if not c:
                    continue
                if order is not None and et >= order:
                    self.truncated = True
                    continue
                clean[(et, es)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms, order, truncated) -> TruncSeries:
        u = cls.__new__(cls)
        u.terms = terms
        u.order = order
        u.truncated = truncated
        return u

    @classmethod
    def one(cls, order: int | None = None) -> TruncSeries:
        return cls({(0, 0): 1}, order)

    @classmethod
    def monomial(cls, et: int, es: int = 0, coeff=1, order: int | None = None) -> TruncSeries:
        return cls({(et, es): coeff}, order)

    @staticmethod
    def _min_order(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def _coerce(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries({(0, 0): other}, None)
        return NotImplemented

    def _cut(self, terms: dict, order, truncated: bool) -> TruncSeries:
        if order is not None:
            kept = {}
            for k, c in terms.items():
                if k[0] < order:
                    kept[k] = c
                else:
                    truncated = True
            terms = kept
        return TruncSeries._raw(terms, order, truncated)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = qnorm(v)
            else:
                out.pop(k, None)
        order = self._min_order(self.order, other.order)
        return self._cut(out, order, self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw({k: -c for k, c in self.terms.items()}, self.order, self.truncated)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = self._min_order(self.order, other.order)
        truncated = self.truncated or other.truncated
        out: dict[tuple[int, int], object] = {}
        b_items = sorted(other.terms.items())
        for (at, as_), c in self.terms.items():
            for (bt, bs), d in b_items:
                et = at + bt
                if order is not None and et >= order:
                    truncated = True
                    break
                k = (et, as_ + bs)
                out[k] = out.get(k, 0) + c * d
        return TruncSeries._raw({k: qnorm(v) for k, v in out.items() if v}, order, truncated)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = TruncSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> TruncSeries:
        c = qnorm(c)
        if not c:
            return TruncSeries._raw({}, self.order, self.truncated)
        return TruncSeries._raw({k: qnorm(v * c) for k, v in self.terms.items()}, self.order, self.truncated)

    def shift(self, et: int = 0, es: int = 0) -> TruncSeries:
        """Multiply by t^et s^es."""
        return self._cut({(a + et, b + es): c for (a, b), c in self.terms.items()}, self.order, self.truncated)

    def retruncate(self, order: int) -> TruncSeries:
        order = self._min_order(self.order, order)
        return self._cut(dict(self.terms), order, self.truncated)

    def set_s(self, value=1) -> TruncSeries:
        out: dict[tuple[int, int], object] = {}
        for (et, es), c in self.terms.items():
            out[(et, 0)] = out.get((et, 0), 0) + c * value ** es
        return TruncSeries._raw({k: qnorm(v) for k, v in out.items() if v}, self.order, self.truncated)

    def derivative_t(self) -> TruncSeries:
        out = {}
        for (et, es), c in self.terms.items():
            if et:
                out[(et - 1, es)] = qnorm(c * et)
        order = None if self.order is None else self.order - 1
        return TruncSeries._raw(out, order, self.truncated)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool | None:
        """True if exactly zero, False if nonzero, None if every known term vanished but terms were dropped."""
        if self.terms:
            return False
        return None if self.truncated else True

    def valuation(self) -> int:
        if self.terms:
            return min(k[0] for k in self.terms)
        if self.truncated:
            raise ValuationUndetermined(self.order)
        raise ValuationOfZero("valuation of the zero series")

    def lowest_part(self) -> TruncSeries:
        """Initial symbol: the terms of least t-order."""
        v = self.valuation()
        return TruncSeries._raw({k: c for k, c in self.terms.items() if k[0] == v}, None, False)

    def coefficient(self, et: int, es: int = 0):
        return self.terms.get((et, es), 0)

    def leading(self) -> tuple[int, object]:
        """(valuation, coefficient) for a series in t alone (s-exponents summed out)."""
        v = self.valuation()
        c = sum(c for k, c in self.terms.items() if k[0] == v)
        return v, qnorm(c)

    def agrees_with(self, other: TruncSeries) -> bool:
        """Equality of all terms below the common truncation order."""
        return not (self - other).terms

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms and self.order == other.order and self.truncated == other.truncated

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.order, self.truncated))

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kc: kc[0])
        body = render_terms([(_mono_str((es, et), ("s", "t")), c) for (et, es), c in items])
        if self.truncated:
            return f"{body} + O(t^{self.order})" if items else f"O(t^{self.order})"
        return body

    def __repr__(self):
        return f"TruncSeries({str(self)!r}, order={self.order})"


def substitute_param(p: SparsePoly, P, order: int | None = None, specialize_s: bool = False) -> TruncSeries:
    """Evaluate ``p`` at (xi, eta, zeta, s) of a parametrization, as a series truncated at t-order ``order``.

    ``P`` must provide ``weights`` and ``generator_series(order, specialize_s)``
    returning the three generator series. With ``specialize_s`` the variable s
    is set to 1 throughout.
    """
    if tuple(P.weights) != p.weights:
        raise WeightMismatch(f"polynomial weights {p.weights} vs parametrization {tuple(P.weights)}")
    gens = P.generator_series(order, specialize_s)
    powers: list[dict[int, TruncSeries]] = [{0: TruncSeries.one(order)} for _ in range(3)]

    def power(j: int, k: int) -> TruncSeries:
        cache = powers[j]
        if k not in cache:
            below = max(e for e in cache if e < k)
            r = cache[below]
            for e in range(below + 1, k + 1):
                r = r * gens[j]
                cache[e] = r
        return cache[k]

    total = TruncSeries({}, order)
    for (a, b, c, k), coeff in p.sorted_terms():
        term = power(0, a) * power(1, b) * power(2, c)
        if k and not specialize_s:
            term = term.shift(0, k)
        total = total + term.scale(coeff)
    return total
