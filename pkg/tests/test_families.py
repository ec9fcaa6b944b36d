from math import gcd

import pytest

from oracles import brute_conductor
from stcurve.errors import InvalidParameters, InvalidTail
from stcurve.families import (
    KNOWN_FACTS,
    canonical_p,
    certify_family,
    cor44_evaluate,
    family_instance,
    lemma43_check,
    scan,
    validate_parameters,
)
from stcurve.poly import SparsePoly
from stcurve.stci import moh_check

VALID = [(a, b) for a in range(2, 13) for b in range(2, 13) if validate_parameters(a, b) is None]


class TestInstance:
    @pytest.mark.parametrize("ab,gens,degrees,gamma", [
        ((2, 2), (4, 5, 7), (12, 15, 14), 7),
        ((3, 3), (5, 7, 13), (20, 28, 26), 17),
        ((8, 3), (5, 17, 28), (45, 68, 56), 47),
    ])
    def test_examples(self, ab, gens, degrees, gamma):
        F = family_instance(*ab)
        assert (F.l, F.m, F.n) == gens
        assert F.degrees == degrees and F.conductor == gamma
        assert (F.k, F.c) == (1, 2)

    def test_general_data_stored_alongside(self):
        F = family_instance(2, 2)
        assert (F.herzog.a, F.herzog.b, F.herzog.c) == (3, 3, 2)
        assert F.herzog.sextuple == (1, 2, 1, 2, 1, 1)

    @pytest.mark.parametrize("ab,why", [
        ((1, 2), "a, b >= 2"),
        ((2, 3), "b + 2 < 2a + 1"),
        ((4, 4), "gcd(b + 2, 2a + 1) = 1"),
    ])
    def test_invalid(self, ab, why):
        with pytest.raises(InvalidParameters, match=__import__("re").escape(why)):
            family_instance(*ab)

    @pytest.mark.parametrize("ab", VALID)
    def test_closed_forms(self, ab):
        a, b = ab
        F = family_instance(a, b)
        x, y, z, _ = SparsePoly.gens(F.semigroup.generators)
        f1, f2, f3 = F.f
        assert f1 ** 2 - y ** 2 * f3 == x * F.g
        assert F.bresinsky.g == x ** (2 * a + 1) - 2 * x ** a * y * z + y ** (b + 2)
        assert F.n == (a + 1) * F.l - F.m
        assert F.degrees[0] < F.degrees[2] < F.degrees[1]
        assert F.conductor == brute_conductor((F.l, F.m, F.n))[0]
        assert not moh_check(F.l, F.m, F.n)


class TestLemma43:
    @pytest.mark.parametrize("ab,vals", [((3, 3), (22, 23, 26)), ((2, 2), (11, 11, 14)), ((8, 3), (52, 53, 56))])
    def test_examples(self, ab, vals):
        L = lemma43_check(family_instance(*ab))
        assert (L.lhs, L.mid, L.rhs) == vals and L.holds

    @pytest.mark.parametrize("ab", VALID)
    def test_holds(self, ab):
        L = lemma43_check(family_instance(*ab))
        assert L.holds and L.d2_bound and L.d3_bound


class TestCor44:
    def test_example_b(self):
        F = family_instance(3, 3)
        r = cor44_evaluate(F, 11, 16)
        assert r.clause_b["holds"] and r.clause_c["holds"]
        assert canonical_p(F) == 11
        r = cor44_evaluate(F, 11)
        assert r.delta == 4 and r.clause_b["lhs"] == 24 and r.clause_b["rhs"] == 22

    def test_example_c(self):
        r = cor44_evaluate(family_instance(8, 3), 19)
        assert r.clause_a == {"lhs": 47, "rhs": 47, "holds": True}
        assert not r.clause_b["holds"] and r.clause_b["rhs"] == 52

    def test_example_a(self):
        r = cor44_evaluate(family_instance(2, 2), 6)
        assert r.delta == 1 and r.clause_b["lhs"] == 13 and r.clause_b["rhs"] == 11 and r.clause_b["holds"]
        assert "trivial" in KNOWN_FACTS[(2, 2)]

    def test_tail_checks(self):
        F = family_instance(3, 3)
        with pytest.raises(InvalidTail):
            cor44_evaluate(F, 7)
        with pytest.raises(InvalidTail):
            cor44_evaluate(F, 11, 13)

    @pytest.mark.parametrize("ab", [ab for ab in VALID if min(ab) >= 3])
    def test_canonical_p_exceeds_m(self, ab):
        F = family_instance(*ab)
        assert canonical_p(F) > F.m


class TestScan:
    def test_small_rectangle(self):
        rows = scan(range(2, 5), range(2, 5), "canonical_p")
        assert [(r["a"], r["b"]) for r in rows] == [(a, b) for a in range(2, 5) for b in range(2, 5)]
        by = {(r["a"], r["b"]): r for r in rows}
        assert by[(3, 3)]["verdict"] == "Certified" and by[(3, 3)]["p"] == 11
        assert "germ known trivial" in by[(2, 2)]["note"]
        assert "skipped" in by[(2, 3)]
        assert all(not r["moh"] for r in rows if "skipped" not in r)

    def test_witnesses_consistent(self):
        rows = scan(range(2, 7), range(2, 7), "canonical_p", witnesses=True)
        for r in rows:
            if "skipped" in r:
                continue
            assert r["witnesses_consistent"], r
            assert r["value_semigroup"] == "EqualsGamma"

    def test_range_limits(self):
        with pytest.raises(ValueError):
            scan(range(1, 3), range(2, 3))

    def test_certificate_for_family(self):
        cert = certify_family(family_instance(8, 3), 18)
        assert cert.verdict == "NotCertified"
        assert cert.lemma21["lhs"] == 46 and cert.lemma21["rhs"] == 47
