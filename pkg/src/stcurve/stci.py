"""Bresinsky's equations for the monomial curve in the non complete intersection case.

Starting from f1^c, every term that is not yet divisible by x^k (k = a1*c2)
still carries a factor z^c; it is rewritten with z^c = x^a1*y^b2 - f3. One
round of rewriting per factor z^c, c2 rounds in total, leaves

    f1^c = q*f3 + x^k*g,     g = +-y^l  mod <x, z>.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotApplicable, ReductionFailure
from .herzog import DefiningEquations, HerzogData
from .poly import SparsePoly


@dataclass(frozen=True)
class BresinskyData:
    q: SparsePoly
    k: int
    g: SparsePoly
    c: int
    rounds: int
    residue: SparsePoly  # g modulo <x, z>
    residue_sign: int
    identity_verified: bool

    def as_dict(self) -> dict:
        return {
            "c": self.c,
            "k": self.k,
            "q": str(self.q),
            "g": str(self.g),
            "residue_mod_xz": str(self.residue),
            "residue_sign": self.residue_sign,
            "rounds": self.rounds,
            "identity_verified": self.identity_verified,
        }


def bresinsky_reduce(E: DefiningEquations, H: HerzogData) -> BresinskyData:
    if H.case != "H1":
        raise NotApplicable("the reduction needs the non complete intersection case")
    f1, _, f3 = E.f
    w = f1.weights
    k = H.a1 * H.c2
    c = H.c
    rem = f1 ** c
    q = SparsePoly.zero(w)
    rounds = 0
    while True:
        low = {e: v for e, v in rem.terms.items() if e[0] < k}
        if not low:
            break
        rounds += 1
        if rounds > H.c2:
            raise ReductionFailure(f"terms below x^{k} survive {H.c2} rounds")
        for e, v in low.items():
            if e[2] < c:
                raise ReductionFailure(f"term {e} has neither x^{k} nor z^{c}")
            cofactor = SparsePoly._raw({(e[0], e[1], e[2] - c, e[3]): v}, w)
            # v*x^e*z^c = cofactor*(x^a1*y^b2 - f3)
            rem = rem - cofactor * SparsePoly.monomial((0, 0, c), w) \
                + cofactor * SparsePoly.monomial((H.a1, H.b2, 0), w)
            q = q - cofactor
    g = rem.divide_monomial((k, 0, 0))
    verified = f1 ** c == q * f3 + g * SparsePoly.monomial((k, 0, 0), w)
    if not verified:
        raise ReductionFailure("f1^c != q*f3 + x^k*g")
    residue = g.mod_xz()
    y_l = SparsePoly.monomial((0, w[0], 0), w)
    if residue == y_l:
        sign = 1
    elif residue == -y_l:
        sign = -1
    else:
        raise ReductionFailure(f"g mod <x,z> is {residue}, expected +-y^{w[0]}")
    return BresinskyData(q=q, k=k, g=g, c=c, rounds=rounds, residue=residue, residue_sign=sign,
                         identity_verified=verified)


def syzygy_check(E: DefiningEquations, H: HerzogData) -> bool:
    """x^a1*f2 == y^b1*f3 - z^c1*f1 and z^c2*f2 == x^a2*f3 - y^b2*f1."""
    if H.case != "H1":
        raise NotApplicable("the syzygies belong to the non complete intersection case")
    f1, f2, f3 = E.f
    w = f1.weights
    mono = lambda a, b, c: SparsePoly.monomial((a, b, c), w)  # noqa: E731
    first = mono(H.a1, 0, 0) * f2 == mono(0, H.b1, 0) * f3 - mono(0, 0, H.c1) * f1
    second = mono(0, 0, H.c2) * f2 == mono(H.a2, 0, 0) * f3 - mono(0, H.b2, 0) * f1
    return first and second


def moh_check(l: int, m: int, n: int) -> bool:
    """Moh's sufficient condition: gcd(l, m) = 1, l < m and (l - 2)*m < n."""
    return gcd(l, m) == 1 and l < m and (l - 2) * m < n
