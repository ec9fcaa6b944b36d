"""Deformed parametrizations of monomial space curves and their certificates.

A deformation replaces each t^l_j by t^l_j + sum_i c_i t^i s^(i - l_j) with
i > l_j. With s = 1 this is the curve (xi', eta', zeta') whose value
semigroup is computed by subduction; with s kept, the defining binomials f_i
are lifted to f_i(xi) = f'_i(xi, s)*s, which is the flatness criterion.

All valuation work sets s = 1: every series involved is homogeneous, so the
s-exponents are recovered from the grading when needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    InternalInconsistency,
    InvalidTail,
    NotApplicable,
    SemigroupJump,
    ShapeMismatch,
    TailAtOrBelowBase,
    TruncationExhausted,
    TruncationTooSmall,
    ValuationUndetermined,
)
from .herzog import DefiningEquations, HerzogData
from .numsg import NumericalSemigroup, contains, factorize, make_semigroup, representations
from .poly import SparsePoly, TruncSeries, qnorm, qstr, render_terms, substitute_param
from .stci import BresinskyData

INF = math.inf
AXES = ("x", "y", "z")
NAMES = ("xi", "eta", "zeta")


def jnum(v):
    """JSON form of a possibly infinite integer."""
    return "inf" if v == INF else v


@dataclass(frozen=True)
class Parametrization:
    l: int
    m: int
    n: int
    tails: tuple[tuple[tuple[int, object], ...], ...] = ((), (), ())

    @property
    def weights(self) -> tuple[int, int, int]:
        return (self.l, self.m, self.n)

    @property
    def offsets(self) -> tuple:
        return tuple(min(i for i, _ in tail) - base if tail else INF
                     for base, tail in zip(self.weights, self.tails))

    @property
    def delta(self):
        return min(self.offsets)

    @property
    def is_monomial(self) -> bool:
        return not any(self.tails)

    def generator_series(self, order: int | None = None, specialize_s: bool = False) -> list[TruncSeries]:
        out = []
        for base, tail in zip(self.weights, self.tails):
            terms = {(base, 0): 1}
            for i, c in tail:
                terms[(i, 0 if specialize_s else i - base)] = c
            out.append(TruncSeries(terms, order))
        return out

    def as_dict(self) -> dict:
        return {
            "l": self.l, "m": self.m, "n": self.n,
            "tails": {ax: [[i, qstr(c)] for i, c in tail] for ax, tail in zip(AXES, self.tails)},
        }

    def __str__(self):
        parts = []
        for base, tail in zip(self.weights, self.tails):
            parts.append(render_terms([(_tpow(base), 1)] + [(_tpow(i), c) for i, c in tail]))
        return "(" + ", ".join(parts) + ")"


def _tpow(k: int) -> str:
    return "t" if k == 1 else f"t^{k}"


def make_parametrization(l: int, m: int, n: int, tails: Mapping[str, Iterable] | Iterable | None = None) -> Parametrization:
    """Validate and build a deformation; ``tails`` maps 'x', 'y', 'z' to (exponent, coefficient) pairs."""
    if tails is None:
        tails = {}
    if not isinstance(tails, Mapping):
        tails = dict(zip(AXES, tails))
    unknown = set(tails) - set(AXES)
    if unknown:
        raise InvalidTail(f"unknown tail keys {sorted(unknown)}")
    built = []
    for ax, base in zip(AXES, (l, m, n)):
        seen = {}
        for item in tails.get(ax, ()) or ():
            i, c = item
            i = int(i)
            c = qnorm(c)
            if i <= base:
                raise TailAtOrBelowBase(f"{ax}-tail exponent {i} is not above the base exponent {base}")
            if c == 0:
                raise InvalidTail(f"{ax}-tail coefficient at t^{i} is zero")
            if i in seen:
                raise InvalidTail(f"{ax}-tail exponent {i} given twice")
            seen[i] = c
        built.append(tuple(sorted(seen.items())))
    return Parametrization(l, m, n, tuple(built))


def parametrization_from_dict(doc: Mapping) -> Parametrization:
    tails = doc.get("tails", {}) or {}
    return make_parametrization(int(doc["l"]), int(doc["m"]), int(doc["n"]),
                                {ax: [(i, str(c)) for i, c in v] for ax, v in tails.items()})


# ---------------------------------------------------------------------------
# value semigroup

@dataclass
class ValueSemigroupResult:
    order: int
    conductor: int
    values: list[int]
    verdict: str  # EqualsGamma | ExceedsGamma | Undetermined
    extra: list[int] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "trunc": self.order,
            "conductor": self.conductor,
            "verdict": self.verdict,
            "extra_values": self.extra,
            "values": self.values,
            "witnesses": self.witnesses,
            "reason": self.reason,
        }


class _Subalgebra:
    """Monic elements of K[[t]] whose leading exponents generate the known part of the value semigroup."""

    def __init__(self, gens: list[TruncSeries], names: list[str], order: int):
        self.order = order
        self.basis: list[TruncSeries] = []
        self.values: list[int] = []
        self.names: list[str] = []
        self.reach = bytearray(order)
        self.reach[0] = 1
        self._prod: dict[tuple[int, ...], TruncSeries] = {(): TruncSeries.one(order)}
        self._reps: dict[int, list[tuple[int, ...]]] = {}
        for g, name in zip(gens, names):
            self.add(g, name)

    def add(self, u: TruncSeries, name: str) -> int:
        v, c = u.leading()
        if c != 1:
            u = u.scale(Fraction(1) / c)
        self.basis.append(u)
        self.values.append(v)
        self.names.append(name)
        self._reps.clear()
        for k in range(v, self.order):
            if not self.reach[k] and self.reach[k - v]:
                self.reach[k] = 1
        return v

    def reps(self, v: int) -> list[tuple[int, ...]]:
        if v not in self._reps:
            self._reps[v] = representations(v, tuple(self.values))
        return self._reps[v]

    def product(self, exps: tuple[int, ...]) -> TruncSeries:
        key = tuple(exps)
        while key and key[-1] == 0:
            key = key[:-1]
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        idx = len(key) - 1
        lower = key[:-1] + (key[-1] - 1,)
        r = self.product(lower) * self.basis[idx]
        self._prod[key] = r
        return r

    def label(self, exps: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def value_semigroup(P: Parametrization, order: int) -> ValueSemigroupResult:
    """Valuations of K{xi', eta', zeta'} below t-order ``order`` (s set to 1).

    Every pair of distinct products of basis elements with the same leading
    exponent and disjoint supports is subtracted and subduced against the
    basis; a leading exponent that is not yet reachable becomes a new basis
    element. Values below ``order`` are then exact, so ``order`` at least the
    conductor decides whether the semigroup grew.
    """
    S = make_semigroup(P.l, P.m, P.n)
    gamma = S.conductor
    if order <= max(P.weights):
        raise TruncationTooSmall(f"truncation {order} must exceed the largest generator {max(P.weights)}")
    alg = _Subalgebra(P.generator_series(order, specialize_s=True), list(NAMES), order)
    witnesses = []
    for v in range(1, order):
        if alg.reach.find(0, v) == -1:
            break  # every later leading exponent is already reachable
        if not alg.reach[v]:
            continue
        reps = alg.reps(v)
        if len(reps) < 2:
            continue
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                ra, rb = reps[i], reps[j]
                if any(x and y for x, y in zip(ra, rb)):
                    continue
                h = alg.product(ra) - alg.product(rb)
                steps = 0
                while h.terms:
                    w, c = h.leading()
                    if alg.reach[w]:
                        h = h - alg.product(alg.reps(w)[0]).scale(c)
                        steps += 1
                        continue
                    name = f"h{w}"
                    expr = f"{alg.label(ra)} - {alg.label(rb)}"
                    alg.add(h, name)
                    witnesses.append({
                        "value": w, "level": v, "name": name,
                        "combination": expr,
                        "lhs": list(ra), "rhs": list(rb),
                        "subduction_steps": steps,
                        "leading_coefficient": qstr(c),
                    })
                    break
    values = [k for k in range(order) if alg.reach[k]]
    extra = [k for k in values if not contains(S, k)]
    if extra:
        verdict, reason = "ExceedsGamma", f"values outside the semigroup: {extra}"
    elif order < gamma:
        verdict, reason = "Undetermined", f"truncation {order} is below the conductor {gamma}"
    else:
        verdict, reason = "EqualsGamma", "every cancellation below the conductor resolved"
    return ValueSemigroupResult(order, gamma, values, verdict, extra, witnesses, reason)


# ---------------------------------------------------------------------------
# relation lifting

@dataclass
class LiftResult:
    f_prime: tuple[SparsePoly, ...]
    F: tuple[SparsePoly, ...]
    ord_bounds: tuple  # certified lower bounds for ord(f'_i(x, y, z, 1))
    ord_margins: tuple  # ord_bounds[i] - d_i
    x_orders: tuple  # largest e with x^e | f'_i (of the computed truncation)
    order: int
    exact: tuple[bool, ...]
    identity_verified: bool

    def as_dict(self) -> dict:
        return {
            "trunc": self.order,
            "f_prime": [str(p) for p in self.f_prime],
            "F": [str(p) for p in self.F],
            "ord_lower_bounds": [jnum(v) for v in self.ord_bounds],
            "ord_margins": [jnum(v) for v in self.ord_margins],
            "x_orders": [jnum(v) for v in self.x_orders],
            "exact": list(self.exact),
            "identity_verified": self.identity_verified,
        }


def lift_relations(E: DefiningEquations, P: Parametrization, order: int, k: int = 0) -> LiftResult:
    """Greedy lift of each f_i with f_i(xi) = f'_i(xi, s)*s below t-order ``order``.

    The lowest term c*t^u of the residual is removed with c*x^a*y^b*z^g*s^e
    where (a, b, g) factorizes u (alpha >= k preferred) and e is fixed by
    homogeneity.
    """
    S = make_semigroup(P.l, P.m, P.n)
    if tuple(E.weights) != P.weights:
        raise ValueError(f"equations for {E.weights} but parametrization over {P.weights}")
    w = P.weights
    delta = P.delta
    gens1 = P.generator_series(order, specialize_s=True)
    cache: dict[tuple[int, int, int], TruncSeries] = {(0, 0, 0): TruncSeries.one(order)}

    def prod(e):
        if e not in cache:
            a, b, g = e
            if g:
                cache[e] = prod((a, b, g - 1)) * gens1[2]
            elif b:
                cache[e] = prod((a, b - 1, 0)) * gens1[1]
            else:
                cache[e] = prod((a - 1, 0, 0)) * gens1[0]
        return cache[e]

    f_primes, Fs, bounds, margins, xords, exact = [], [], [], [], [], []
    s_var = SparsePoly.var("s", w)
    for idx, (f, d) in enumerate(zip(E.f, E.degrees)):
        R = substitute_param(f, P, order, specialize_s=True)
        terms: dict = {}
        first_u = None
        while R.terms:
            u, c = R.leading()
            fac = factorize(S, u, k) if k else None
            if fac is None:
                fac = factorize(S, u, 0)
            if fac is None:
                raise SemigroupJump(u, idx)
            if first_u is None:
                first_u = u
            R = R - prod(fac).scale(c)
            e = (fac[0], fac[1], fac[2], u - d - 1)
            if e[3] < 0:
                raise InternalInconsistency(f"residual t^{u} at or below the degree {d} of f{idx + 1}")
            terms[e] = terms.get(e, 0) + c
        fp = SparsePoly(terms, w)
        if first_u is not None:
            bound = first_u
        elif not R.truncated:
            bound = INF
        else:
            bound = order
            if order - d < delta:
                raise TruncationExhausted(
                    f"f{idx + 1}(xi) vanishes below t^{order}; need order >= {d} + {delta} to bound ord(f'{idx + 1})")
        if bound - d < delta:
            raise InternalInconsistency(f"ord(f'{idx + 1}) = {bound} is below d + delta = {d} + {delta}")
        f_primes.append(fp)
        Fs.append(f - fp * s_var)
        bounds.append(bound)
        margins.append(bound - d)
        xords.append(fp.x_adic_order())
        exact.append(not R.truncated)

    verified = True
    for f, fp in zip(E.f, f_primes):
        lhs = substitute_param(f, P, order)
        rhs = substitute_param(fp * s_var, P, order)
        if not lhs.agrees_with(rhs):
            verified = False
    if not verified:
        raise InternalInconsistency("f(xi) != f'(xi, s)*s below the truncation order")
    return LiftResult(tuple(f_primes), tuple(Fs), tuple(bounds), tuple(margins), tuple(xords), order,
                      tuple(exact), verified)


# ---------------------------------------------------------------------------
# certificates

def inequality(lhs, rhs) -> dict:
    return {"lhs": jnum(lhs), "rhs": jnum(rhs), "holds": bool(lhs >= rhs)}


def default_trunc(gamma: int, degrees: Iterable[int], k: int, l: int) -> int:
    return gamma + max(degrees) + k * l + 8 * l


@dataclass
class StciCertificate:
    semigroup: tuple[int, int, int]
    conductor: int
    degrees: tuple[int, ...]
    k: int
    delta: object
    lemma21: dict
    prop29: dict
    prop29_split: list[dict]
    verdict: str  # Certified | NotCertified
    parametrization: Parametrization
    bresinsky: BresinskyData | None = None
    value_semigroup: ValueSemigroupResult | None = None
    lift: LiftResult | None = None
    lift_error: str | None = None
    divisibility: dict | None = None
    one_form: dict | None = None
    consistent: bool = True

    @property
    def certified(self) -> bool:
        return self.verdict == "Certified"

    def as_dict(self) -> dict:
        l, m, n = self.semigroup
        out = {
            "semigroup": {"l": l, "m": m, "n": n, "conductor": self.conductor},
            "parametrization": self.parametrization.as_dict(),
            "degrees": list(self.degrees),
            "k": self.k,
            "delta": jnum(self.delta),
            "lemma21": self.lemma21,
            "prop29": self.prop29,
            "prop29_split": self.prop29_split,
            "verdict": self.verdict,
            "witnesses_consistent": self.consistent,
        }
        if self.bresinsky is not None:
            out["bresinsky"] = {
                "c": self.bresinsky.c, "k": self.bresinsky.k,
                "g": str(self.bresinsky.g), "identity_verified": self.bresinsky.identity_verified,
            }
        wit = {}
        if self.value_semigroup is not None:
            vs = self.value_semigroup.as_dict()
            vs.pop("values")
            wit["value_semigroup"] = vs
        if self.lift is not None:
            wit["lift"] = self.lift.as_dict()
        if self.lift_error is not None:
            wit["lift_error"] = self.lift_error
        if self.divisibility is not None:
            wit["divisibility"] = self.divisibility
        if self.one_form is not None:
            wit["one_form"] = self.one_form
        out["witnesses"] = wit
        return out


def certify_stci(S: NumericalSemigroup, H: HerzogData, E: DefiningEquations, B: BresinskyData,
                 P: Parametrization, order: int | None = None, witnesses: bool = True) -> StciCertificate:
    if H.case != "H1":
        raise NotApplicable("the criterion is stated for the non complete intersection case")
    if P.weights != S.generators:
        raise ValueError(f"parametrization over {P.weights} but semigroup {S.generators}")
    gamma = S.conductor
    d1, d2, d3 = E.degrees
    k = H.a1 * H.c2
    kl = k * S.l
    delta = P.delta
    lemma21 = inequality(min(d1, d2, d3) + delta, gamma)
    split = [lemma21, inequality(min(d1, d3) + delta, gamma + kl)]
    single = inequality(min(d1, d2 + kl, d3) + delta, gamma + kl)
    if single["holds"] != (split[0]["holds"] and split[1]["holds"]):
        raise InternalInconsistency("the two forms of the criterion disagree")
    verdict = "Certified" if single["holds"] else "NotCertified"
    cert = StciCertificate(S.generators, gamma, E.degrees, k, delta, lemma21, single, split, verdict, P, B)

    if _one_form_shape(P):
        val = one_form_valuation(P)
        cert.one_form = {"valuation": val, "in_semigroup": contains(S, val),
                         "nonisomorphy_witness": not contains(S, val)}

    if not witnesses:
        return cert
    T = order if order is not None else default_trunc(gamma, E.degrees, k, S.l)
    vs = value_semigroup(P, T)
    cert.value_semigroup = vs
    if vs.verdict == "EqualsGamma":
        try:
            lift = lift_relations(E, P, T, k)
        except (SemigroupJump, TruncationExhausted) as exc:
            cert.lift_error = str(exc)
        else:
            cert.lift = lift
            x1, x3 = lift.x_orders[0], lift.x_orders[2]
            cert.divisibility = {
                "k": k,
                "x_order_f1": jnum(x1),
                "x_order_f3": jnum(x3),
                "divisible_by_x_k": bool(min(x1, x3) >= k and T >= gamma + kl),
            }
    if cert.certified:
        cert.consistent = (vs.verdict == "EqualsGamma" and cert.lift is not None
                           and cert.divisibility["divisible_by_x_k"])
    elif lemma21["holds"]:
        cert.consistent = vs.verdict == "EqualsGamma"
    return cert


# ---------------------------------------------------------------------------
# the 1-form witness

def _one_form_shape(P: Parametrization) -> bool:
    return not P.tails[0] and len(P.tails[1]) == 1 and P.tails[1][0][0] > P.m


def one_form_valuation(P: Parametrization) -> int:
    """Valuation of m*y*dx - l*x*dy on (t^l, t^m + c*t^p), counting dt as +1."""
    if P.tails[0]:
        raise ShapeMismatch("the x-tail must be empty")
    if len(P.tails[1]) != 1:
        raise ShapeMismatch(f"the y-tail must be a single term, got {len(P.tails[1])}")
    p, c = P.tails[1][0]
    if p <= P.m:
        raise ShapeMismatch(f"y-tail exponent {p} does not exceed m = {P.m}")
    T = p + P.l + 1
    xi, eta = P.generator_series(T, specialize_s=True)[:2]
    omega = (eta * xi.derivative_t()).scale(P.m) - (xi * eta.derivative_t()).scale(P.l)
    try:
        return omega.valuation() + 1
    except ValuationUndetermined as exc:
        raise InternalInconsistency("1-form vanished below its expected order") from exc


def cor44_nonisomorphy_witness(S: NumericalSemigroup, P: Parametrization) -> bool:
    return not contains(S, one_form_valuation(P))
