"""Minimal relations of <l, m, n>, the determinantal equations, and the inverse constructions.

Two cases occur. In the non complete intersection case ``H1`` there are
three minimal relations

    a*l = b1*m + c2*n,   b*m = a2*l + c1*n,   c*n = a1*l + b2*m

with all six split coefficients positive and a = a1 + a2, b = b1 + b2,
c = c1 + c2. The defining ideal is generated by the maximal minors of

    M0 = [[z^c1, x^a1, y^b1],
          [y^b2, z^c2, x^a2]]

In the complete intersection case ``H2`` two generators g_i, g_j satisfy a
pure relation a*g_i = b*g_j and the third one a relation
a1*g_i + b2*g_j = c*g_k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import DegenerateRelation, InternalInconsistency, NonUniqueH1Witness, NotApplicable, NotNumerical
from .numsg import NumericalSemigroup, make_semigroup
from .poly import SparsePoly

# pair index -> (i, j, k) role assignment
_PAIRS = ((0, 1, 2), (0, 2, 1), (1, 2, 0))


@dataclass(frozen=True)
class H2Shape:
    """Minimal relations a*g_i = b*g_j and a1*g_i + b2*g_j = c*g_k, canonical with 0 <= a1 < a."""

    perm: tuple[int, int, int]
    a: int
    b: int
    c: int
    a1: int
    b2: int
    # every pair (i, j) whose pure relation is minimal; more than one is the overlap case
    minimal_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def subcase(self) -> str:
        return "overlap" if len(self.minimal_pairs) > 1 else "generic"

    def rows(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        """The two relation rows in the original (l, m, n) coordinates."""
        i, j, k = self.perm
        first = [0, 0, 0]
        first[i], first[j] = self.a, -self.b
        second = [0, 0, 0]
        second[i], second[j], second[k] = -self.a1, -self.b2, self.c
        return tuple(first), tuple(second)  # type: ignore[return-value]


@dataclass(frozen=True)
class HerzogData:
    a: int
    b: int
    c: int
    a1: int
    a2: int
    b1: int
    b2: int
    c1: int
    c2: int
    case: str
    h2: H2Shape | None = None

    @property
    def sextuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.a1, self.a2, self.b1, self.b2, self.c1, self.c2)

    def relation_matrix(self) -> tuple[tuple[int, int, int], ...]:
        if self.case == "H1":
            return (
                (self.a, -self.b1, -self.c2),
                (-self.a2, self.b, -self.c1),
                (-self.a1, -self.b2, self.c),
            )
        return self.h2.rows()

    def as_dict(self) -> dict:
        out = {
            "case": self.case,
            "a": self.a, "b": self.b, "c": self.c,
            "a1": self.a1, "a2": self.a2, "b1": self.b1,
            "b2": self.b2, "c1": self.c1, "c2": self.c2,
            "relations": [list(r) for r in self.relation_matrix()],
        }
        if self.h2 is not None:
            out["h2"] = {
                "perm": list(self.h2.perm),
                "a": self.h2.a, "b": self.h2.b, "c": self.h2.c,
                "a1": self.h2.a1, "b2": self.h2.b2,
                "subcase": self.h2.subcase,
                "minimal_pairs": [list(p) for p in self.h2.minimal_pairs],
            }
        return out


def _decompositions(target: int, u: int, v: int) -> list[tuple[int, int]]:
    """All (p, q) >= 0 with p*u + q*v == target, by increasing q."""
    return [(( target - q * v) // u, q) for q in range(target // v + 1) if (target - q * v) % u == 0]


def _minimal_multiple(g: int, u: int, v: int, bound: int) -> tuple[int, list[tuple[int, int]]]:
    for a in range(1, bound + 1):
        decs = _decompositions(a * g, u, v)
        if decs:
            return a, decs
    raise InternalInconsistency(f"no multiple of {g} up to {bound} lies in <{u},{v}>")


def herzog_data(S: NumericalSemigroup) -> HerzogData:
    gens = S.generators
    mults = []
    decs = []
    for idx in range(3):
        g = gens[idx]
        u, v = (gens[j] for j in range(3) if j != idx)
        # u*v*g lies in <u, v>, so the scan stops by u*v
        a, d = _minimal_multiple(g, u, v, u * v)
        mults.append(a)
        decs.append(d)
    a, b, c = mults
    # decs[0]: a*l = p*m + q*n ; decs[1]: b*m = p*l + q*n ; decs[2]: c*n = p*l + q*m
    has_zero = any(p == 0 or q == 0 for d in decs for p, q in d)
    if not has_zero:
        for idx, d in enumerate(decs):
            if len(d) != 1:
                raise NonUniqueH1Witness(
                    f"<{S.l},{S.m},{S.n}>: {len(d)} positive decompositions of the minimal multiple of generator {idx}")
        (b1, c2), = decs[0]
        (a2, c1), = decs[1]
        (a1, b2), = decs[2]
        if (a, b, c) != (a1 + a2, b1 + b2, c1 + c2):
            raise InternalInconsistency(f"<{S.l},{S.m},{S.n}>: split coefficients do not add up")
        return HerzogData(a, b, c, a1, a2, b1, b2, c1, c2, "H1")

    shape = _h2_shape(S, mults)
    # one witness per multiple, preferring the first listed (a zero part when available)
    (b1, c2) = decs[0][0]
    (a2, c1) = decs[1][0]
    (a1, b2) = decs[2][0]
    return HerzogData(a, b, c, a1, a2, b1, b2, c1, c2, "H2", shape)


def _h2_shape(S: NumericalSemigroup, mults: list[int]) -> H2Shape:
    gens = S.generators
    minimal = []
    for i, j, k in _PAIRS:
        gi, gj = gens[i], gens[j]
        if mults[i] * gi == mults[j] * gj:
            minimal.append((i, j, k))
    if not minimal:
        raise InternalInconsistency(f"<{S.l},{S.m},{S.n}>: no pure minimal relation in the complete intersection case")
    i, j, k = minimal[0]
    a, b, c = mults[i], mults[j], mults[k]
    decs = _decompositions(c * gens[k], gens[i], gens[j])
    if not decs:
        raise InternalInconsistency(f"<{S.l},{S.m},{S.n}>: minimal multiple of g{k} has no decomposition")
    a1 = min(p for p, _ in decs) % a
    rest = c * gens[k] - a1 * gens[i]
    if rest % gens[j] or rest < 0:
        raise InternalInconsistency("canonical second relation is not integral")
    b2 = rest // gens[j]
    return H2Shape((i, j, k), a, b, c, a1, b2, tuple((p, q) for p, q, _ in minimal))


@dataclass
class DefiningEquations:
    f: tuple[SparsePoly, ...]
    degrees: tuple[int, ...]
    M0: tuple[tuple[SparsePoly, SparsePoly, SparsePoly], tuple[SparsePoly, SparsePoly, SparsePoly]] | None = None
    checks: dict = field(default_factory=dict)

    @property
    def weights(self):
        return self.f[0].weights

    def as_dict(self) -> dict:
        out = {
            "equations": [str(p) for p in self.f],
            "degrees": list(self.degrees),
        }
        if self.M0 is not None:
            out["M0"] = [[str(e) for e in row] for row in self.M0]
        out["checks"] = dict(self.checks)
        return out


def maximal_minors(M) -> tuple[SparsePoly, SparsePoly, SparsePoly]:
    """Minors obtained by deleting column 1, 2, 3 of a 2x3 matrix."""
    (u1, u2, u3), (v1, v2, v3) = M
    return (u2 * v3 - u3 * v2, u1 * v3 - u3 * v1, u1 * v2 - u2 * v1)


def row_is_syzygy(row, minors) -> bool:
    # Laplace expansion of the 3x3 matrix with a repeated row
    return not (row[0] * minors[0] - row[1] * minors[1] + row[2] * minors[2])


def defining_equations(S: NumericalSemigroup, H: HerzogData) -> DefiningEquations:
    w = S.generators
    x, y, z, _ = SparsePoly.gens(w)
    if H.case == "H1":
        f1 = x ** H.a - y ** H.b1 * z ** H.c2
        f2 = y ** H.b - x ** H.a2 * z ** H.c1
        f3 = x ** H.a1 * y ** H.b2 - z ** H.c
        M0 = ((z ** H.c1, x ** H.a1, y ** H.b1), (y ** H.b2, z ** H.c2, x ** H.a2))
        minors = maximal_minors(M0)
        minors_ok = all(mi == fi or mi == -fi for mi, fi in zip(minors, (f1, f2, f3)))
        rows_ok = all(row_is_syzygy(row, minors) for row in M0)
        if not (minors_ok and rows_ok):
            raise InternalInconsistency(f"<{S.l},{S.m},{S.n}>: minors={minors_ok} rows={rows_ok}")
        eqs = (f1, f2, f3)
        degrees = (H.a * S.l, H.b * S.m, H.c * S.n)
        result = DefiningEquations(eqs, degrees, M0, {"minors_match": True, "rows_are_syzygies": True})
    else:
        sh = H.h2
        v = (x, y, z)
        i, j, k = sh.perm
        g1 = v[i] ** sh.a - v[j] ** sh.b
        g2 = v[i] ** sh.a1 * v[j] ** sh.b2 - v[k] ** sh.c
        eqs = (g1, g2)
        degrees = (sh.a * w[i], sh.c * w[k])
        result = DefiningEquations(eqs, degrees)
    for p, d in zip(result.f, result.degrees):
        if not p.is_homogeneous() or p.weighted_order() != d:
            raise InternalInconsistency(f"equation {p} is not homogeneous of degree {d}")
        if p.evaluate_monomial_curve():
            raise InternalInconsistency(f"equation {p} does not vanish on the monomial curve")
    result.checks["vanish_on_monomial_curve"] = True
    return result


def gs1_forward(sextuple) -> tuple[int, int, int, int]:
    """(l', m', n', e') from positive (a1, a2, b1, b2, c1, c2)."""
    a1, a2, b1, b2, c1, c2 = sextuple
    if min(sextuple) < 1:
        raise ValueError(f"all six coefficients must be positive, got {tuple(sextuple)}")
    a, b, c = a1 + a2, b1 + b2, c1 + c2
    l = b1 * c1 + b1 * c2 + b2 * c2
    m = a1 * c1 + a2 * c1 + a2 * c2
    n = a1 * b1 + a1 * b2 + a2 * b2
    assert l == b1 * c + b2 * c2 == b1 * c1 + b * c2
    assert m == a * c1 + a2 * c2 == a1 * c1 + a2 * c
    assert n == a1 * b + a2 * b2 == a1 * b1 + a * b2
    return l, m, n, gcd(gcd(l, m), n)


def gs1_is_image(sextuple) -> bool:
    l, m, n, e = gs1_forward(sextuple)
    if e != 1:
        return False
    H = herzog_data(make_semigroup(l, m, n))
    if H.case != "H1" or H.sextuple != tuple(sextuple):
        raise InternalInconsistency(f"{tuple(sextuple)} has e'=1 but does not round-trip through <{l},{m},{n}>")
    return True


def gs2_forward(a: int, b: int, c: int, a1: int, b2: int) -> tuple[int, int, int, int]:
    """(l', m', n', d') from the complete intersection relation data."""
    num = a1 * b + a * b2
    if num == 0:
        raise DegenerateRelation("a1*b + a*b2 must be positive")
    g = gcd(num, c)
    d = c // g
    n = num // g
    return b * d, a * d, n, d


@dataclass(frozen=True)
class GS2Verdict:
    triple: tuple[int, int, int]
    d: int
    cond_16a: bool
    cond_16b: bool
    recomputed: HerzogData | None
    is_image: bool
    reason: str

    def as_dict(self) -> dict:
        return {
            "triple": list(self.triple),
            "d": self.d,
            "gcd_condition": self.cond_16a,
            "second_row_condition": self.cond_16b,
            "recomputed": None if self.recomputed is None else self.recomputed.as_dict(),
            "is_image": self.is_image,
            "reason": self.reason,
        }


def gs2_check(a: int, b: int, c: int, a1: int, b2: int) -> GS2Verdict:
    l, m, n, d = gs2_forward(a, b, c, a1, b2)
    c16a = gcd(a, b) == 1
    # q ranges over the natural numbers in [-b2/b, a1/a]; the lower end is <= 0
    c16b = all(gcd(gcd(-a1 + q * a, -b2 - q * b), c) == 1 for q in range(a1 // a + 1))
    try:
        H = herzog_data(make_semigroup(l, m, n))
    except NotNumerical:
        return GS2Verdict((l, m, n), d, c16a, c16b, None, False, "triple is not a numerical semigroup")
    if not (c16a and c16b):
        return GS2Verdict((l, m, n), d, c16a, c16b, H, False, "gcd conditions fail")
    if H.case != "H2":
        return GS2Verdict((l, m, n), d, c16a, c16b, H, False, "triple is in the non complete intersection case")
    if (0, 1) not in H.h2.minimal_pairs:
        return GS2Verdict((l, m, n), d, c16a, c16b, H, False, f"({a},{-b},0) is not a minimal relation")
    sh = H.h2 if H.h2.perm == (0, 1, 2) else _h2_for_pair(make_semigroup(l, m, n), H)
    if (sh.a, sh.b) != (a, b):
        return GS2Verdict((l, m, n), d, c16a, c16b, H, False, f"({a},{-b},0) is not a minimal relation")
    if sh.c != c or (a1 - sh.a1) % a or (a1 - sh.a1) // a * b != sh.b2 - b2:
        return GS2Verdict((l, m, n), d, c16a, c16b, H, False,
                          f"({-a1},{-b2},{c}) is not a minimal relation; minimal second row is {sh.rows()[1]}")
    return GS2Verdict((l, m, n), d, c16a, c16b, H, True, "round trip reproduces the relations")


def _h2_for_pair(S: NumericalSemigroup, H: HerzogData) -> H2Shape:
    # re-anchor the canonical second row on the (l, m) pair in the overlap case
    a, b, c = H.a, H.b, H.c
    decs = _decompositions(c * S.n, S.l, S.m)
    a1 = min(p for p, _ in decs) % a
    b2 = (c * S.n - a1 * S.l) // S.m
    return H2Shape((0, 1, 2), a, b, c, a1, b2, H.h2.minimal_pairs)


def gs2_is_image(a: int, b: int, c: int, a1: int, b2: int) -> bool:
    return gs2_check(a, b, c, a1, b2).is_image


def lemma3_pair(S: NumericalSemigroup, H: HerzogData) -> tuple[int, int]:
    """Least (n~, l~) with x^n~ - z^l~ in the ideal of the monomial curve."""
    if H.case != "H1":
        raise NotApplicable("defined in the non complete intersection case only")
    g = gcd(H.b1, H.b2)
    if S.n % g or S.l % g:
        raise InternalInconsistency(f"gcd(b1,b2)={g} does not divide (n,l)=({S.n},{S.l})")
    nt, lt = S.n // g, S.l // g
    if gcd(nt, lt) != 1 or nt != S.n // gcd(S.l, S.n):
        raise InternalInconsistency(f"<{S.l},{S.m},{S.n}>: gcd(b1,b2)={g} but gcd(l,n)={gcd(S.l, S.n)}")
    return nt, lt
