"""The two-parameter family (l, m, n) = (b + 2, 2a + 1, ab + b + 1).

Here the determinantal matrix is [[z, x, y], [y^b, z, x^a]] and the
equations, degrees and Bresinsky identity have closed forms:

    f1 = x^(a+1) - y*z,  f2 = y^(b+1) - x^a*z,  f3 = z^2 - x*y^b
    d1 = (a+1)(b+2),     d2 = (2a+1)(b+1),      d3 = 2ab + 2b + 2
    f1^2 - y^2*f3 = x*g, g = x^(2a+1) - 2*x^a*y*z + y^(b+2)

Note that f3 here is the negative of the general third minor
x^a1*y^b2 - z^c; the family keeps its own sign convention and the
cross-check against the general machinery accounts for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .deform import (
    INF,
    Parametrization,
    StciCertificate,
    certify_stci,
    jnum,
    make_parametrization,
)
from .errors import InternalInconsistency, InvalidParameters, InvalidTail
from .herzog import DefiningEquations, HerzogData, defining_equations, herzog_data
from .numsg import NumericalSemigroup, make_semigroup
from .poly import SparsePoly
from .stci import BresinskyData, bresinsky_reduce, moh_check

# instances whose germ type is known from hand arguments rather than computed
KNOWN_FACTS = {
    (2, 2): "certificate holds; germ known trivial (coordinate change removes the only admissible tail)",
    (3, 2): "germ known non-isomorphic to the monomial curve by an automorphism argument; not computed",
}


@dataclass
class FamilyInstance:
    a: int
    b: int
    semigroup: NumericalSemigroup
    f: tuple[SparsePoly, SparsePoly, SparsePoly]
    degrees: tuple[int, int, int]
    g: SparsePoly
    conductor: int
    k: int = 1
    c: int = 2
    herzog: HerzogData | None = None
    equations: DefiningEquations | None = None
    bresinsky: BresinskyData | None = None

    @property
    def l(self) -> int:
        return self.semigroup.l

    @property
    def m(self) -> int:
        return self.semigroup.m

    @property
    def n(self) -> int:
        return self.semigroup.n

    def as_dict(self) -> dict:
        return {
            "a": self.a, "b": self.b,
            "l": self.l, "m": self.m, "n": self.n,
            "conductor": self.conductor,
            "degrees": list(self.degrees),
            "equations": [str(p) for p in self.f],
            "g": str(self.g),
            "k": self.k, "c": self.c,
            "general_data": self.herzog.as_dict() if self.herzog else None,
        }


def validate_parameters(a: int, b: int) -> str | None:
    """The violated condition, or None when (a, b) is admissible."""
    if a < 2 or b < 2:
        return "a, b >= 2"
    if not b + 2 < 2 * a + 1:
        return "b + 2 < 2a + 1"
    if gcd(b + 2, 2 * a + 1) != 1:
        return "gcd(b + 2, 2a + 1) = 1"
    return None


def family_instance(a: int, b: int) -> FamilyInstance:
    bad = validate_parameters(a, b)
    if bad:
        raise InvalidParameters(f"(a, b) = ({a}, {b}) violates {bad}")
    l, m, n = b + 2, 2 * a + 1, a * b + b + 1
    assert n == (a + 1) * l - m
    S = make_semigroup(l, m, n)
    w = S.generators
    x, y, z, _ = SparsePoly.gens(w)
    f1 = x ** (a + 1) - y * z
    f2 = y ** (b + 1) - x ** a * z
    f3 = z ** 2 - x * y ** b
    d = ((a + 1) * (b + 2), (2 * a + 1) * (b + 1), 2 * a * b + 2 * b + 2)
    if not d[0] < d[2] < d[1]:
        raise InternalInconsistency(f"degree order d1 < d3 < d2 fails for {d}")
    g = x ** (2 * a + 1) - 2 * x ** a * y * z + y ** (b + 2)
    if f1 ** 2 - y ** 2 * f3 != x * g:
        raise InternalInconsistency("f1^2 - y^2*f3 != x*g")
    inst = FamilyInstance(a, b, S, (f1, f2, f3), d, g, S.conductor)

    # the general machinery has to reproduce the closed forms
    H = herzog_data(S)
    if H.case != "H1" or H.sextuple != (1, a, 1, b, 1, 1):
        raise InternalInconsistency(f"general data {H.sextuple} does not match the family shape")
    E = defining_equations(S, H)
    if E.f[0] != f1 or E.f[1] != f2 or E.f[2] != -f3 or E.degrees != d:
        raise InternalInconsistency("general equations differ from the family equations")
    B = bresinsky_reduce(E, H)
    if (B.c, B.k) != (2, 1) or B.g != g:
        raise InternalInconsistency("general Bresinsky data differ from the family closed form")
    inst.herzog, inst.equations, inst.bresinsky = H, E, B
    return inst


@dataclass(frozen=True)
class Lemma43:
    lhs: int
    mid: int
    rhs: int
    holds: bool
    d2_bound: bool
    d3_bound: bool

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "mid": self.mid, "rhs": self.rhs, "holds": self.holds,
                "d2_ge_gamma_plus_2l": self.d2_bound, "d3_gt_gamma_plus_l": self.d3_bound}


def lemma43_check(F: FamilyInstance) -> Lemma43:
    """gamma + l <= d2 - floor(m/l)*l < d3, with d2 >= gamma + 2l and d3 > gamma + l."""
    gamma, l, m = F.conductor, F.l, F.m
    _, d2, d3 = F.degrees
    lhs, mid, rhs = gamma + l, d2 - (m // l) * l, d3
    return Lemma43(lhs, mid, rhs, lhs <= mid < rhs, d2 >= gamma + 2 * l, d3 > gamma + l)


@dataclass
class Cor44Result:
    delta: object
    p: int | None
    q: int | None
    clause_a: dict
    clause_b: dict
    clause_c: dict
    lemma43: Lemma43

    def as_dict(self) -> dict:
        return {
            "delta": jnum(self.delta), "p": self.p, "q": self.q,
            "a": self.clause_a, "b": self.clause_b, "c": self.clause_c,
            "lemma43": self.lemma43.as_dict(),
        }


def canonical_p(F: FamilyInstance) -> int:
    return F.conductor - 1 - F.l


def cor44_evaluate(F: FamilyInstance, p: int | None = None, q: int | None = None) -> Cor44Result:
    if p is not None and p <= F.m:
        raise InvalidTail(f"p = {p} must exceed m = {F.m}")
    if q is not None and q <= F.n:
        raise InvalidTail(f"q = {q} must exceed n = {F.n}")
    gamma, l = F.conductor, F.l
    d1 = F.degrees[0]
    dp = INF if p is None else p - F.m
    dq = INF if q is None else q - F.n
    delta = min(dp, dq)
    lem = lemma43_check(F)
    if not lem.holds:
        raise InternalInconsistency(f"degree chain gamma + l <= d2 - floor(m/l)*l < d3 fails for (a, b) = ({F.a}, {F.b})")
    ca = {"lhs": jnum(d1 + delta), "rhs": gamma, "holds": d1 + delta >= gamma}
    cb = {"lhs": jnum(d1 + delta), "rhs": gamma + l, "holds": d1 + delta >= gamma + l}
    pc = canonical_p(F)
    big = F.a >= 3 and F.b >= 3
    c_ineq = d1 + dq >= gamma + l
    cc = {
        "a_b_at_least_3": big,
        "lhs": jnum(d1 + dq), "rhs": gamma + l,
        "canonical_p": pc,
        "canonical_p_exceeds_m": pc > F.m,
        "canonical_p_satisfies_b": d1 + pc - F.m >= gamma + l,
        "p_is_canonical": p == pc,
        "holds": bool(big and c_ineq and pc > F.m),
    }
    if big and not pc > F.m:
        raise InternalInconsistency(f"canonical p = {pc} does not exceed m = {F.m}")
    return Cor44Result(delta, p, q, ca, cb, cc, lem)


def family_parametrization(F: FamilyInstance, p: int | None = None, q: int | None = None) -> Parametrization:
    tails = {}
    if p is not None:
        tails["y"] = [(p, 1)]
    if q is not None:
        tails["z"] = [(q, 1)]
    return make_parametrization(F.l, F.m, F.n, tails)


def certify_family(F: FamilyInstance, p: int | None = None, q: int | None = None,
                   witnesses: bool = True, order: int | None = None) -> StciCertificate:
    P = family_parametrization(F, p, q)
    return certify_stci(F.semigroup, F.herzog, F.equations, F.bresinsky, P, order=order, witnesses=witnesses)


def scan_p(F: FamilyInstance) -> int:
    """Tail exponent used by the canonical scan: the canonical p when it exceeds m, else the least p meeting clause (b)."""
    pc = canonical_p(F)
    if pc > F.m:
        return pc
    return max(F.m + 1, F.conductor + F.l - F.degrees[0] + F.m)


def scan(a_range, b_range, mode: str = "monomial", witnesses: bool = False) -> list[dict]:
    """One row per (a, b) in order; invalid pairs are reported with the violated condition."""
    if mode not in ("monomial", "canonical_p"):
        raise ValueError(f"unknown scan mode {mode!r}")
    rows = []
    for a in a_range:
        for b in b_range:
            if not (2 <= a <= 64 and 2 <= b <= 64):
                raise ValueError("scan ranges must lie within 2..64")
            bad = validate_parameters(a, b)
            if bad:
                rows.append({"a": a, "b": b, "skipped": bad})
                continue
            F = family_instance(a, b)
            lem = lemma43_check(F)
            p = scan_p(F) if mode == "canonical_p" else None
            cert = certify_family(F, p, None, witnesses=witnesses)
            cor = cor44_evaluate(F, p, None)
            row = {
                "a": a, "b": b, "l": F.l, "m": F.m, "n": F.n,
                "conductor": F.conductor, "d1": F.degrees[0], "d2": F.degrees[1], "d3": F.degrees[2],
                "p": p,
                "lemma43": lem.holds,
                "moh": moh_check(F.l, F.m, F.n),
                "cor44a": cor.clause_a["holds"], "cor44b": cor.clause_b["holds"], "cor44c": cor.clause_c["holds"],
                "lemma21": cert.lemma21["holds"],
                "prop29": cert.prop29,
                "verdict": cert.verdict,
            }
            if cert.one_form is not None:
                row["one_form_valuation"] = cert.one_form["valuation"]
                row["nonisomorphy_witness"] = cert.one_form["nonisomorphy_witness"]
            if witnesses and cert.value_semigroup is not None:
                row["value_semigroup"] = cert.value_semigroup.verdict
                row["witnesses_consistent"] = cert.consistent
            if (a, b) in KNOWN_FACTS:
                row["note"] = KNOWN_FACTS[(a, b)]
            rows.append(row)
    return rows


CSV_COLUMNS = ("a", "b", "l", "m", "n", "conductor", "d1", "d2", "d3", "p",
               "lemma43", "moh", "cor44a", "cor44b", "cor44c", "verdict")
