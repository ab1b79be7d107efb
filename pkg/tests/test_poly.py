from fractions import Fraction

import pytest

from hamfam.cyclo import CycloRat, ZETA
from hamfam.poly import DegreeCapError, LaurentError, LaurentPoly, VarTable

TBL = VarTable(("q", "p", "t", "a"), laurent=("q",))


def v(name, exp=1, coeff=1):
    return LaurentPoly.var(TBL, name, exp, coeff)


def const(c):
    return LaurentPoly.const(TBL, c)


class TestAdd:
    def test_cancellation(self):
        assert (v("q") + const(1)) + (-v("q")) == const(1)

    def test_identity(self):
        P = v("q", 2) * v("p") + const(3)
        assert LaurentPoly.zero(TBL) + P == P

    def test_cyclo_coefficients(self):
        got = v("q", coeff=ZETA) + v("q", coeff=ZETA ** 3)
        assert got == v("q", coeff=CycloRat(0, 1, 0, 1))

    def test_table_mismatch(self):
        other = LaurentPoly.var(VarTable(("q", "p")), "q")
        with pytest.raises(LaurentError):
            v("q") + other


class TestMul:
    def test_laurent_inverse_monomial(self):
        assert v("q", 5) * v("q", -5) == const(1)

    def test_zeta_reduction(self):
        assert const(ZETA) * const(ZETA ** 3) == const(-1)

    def test_distribution_matches_family_hamiltonian(self):
        inner = v("q", 5) * v("p") + v("a") * v("q", 4) + v("q", 3) + const(2)
        product = inner * v("p")
        assert product == (v("q", 5) * v("p", 2) + v("a") * v("q", 4) * v("p")
                           + v("q", 3) * v("p") + v("p", 2 - 1) * 2)

    def test_degree_cap(self):
        small = VarTable(("x",), laurent=(), degree_cap=8)
        x = LaurentPoly.var(small, "x")
        with pytest.raises(DegreeCapError):
            (x ** 4) * (x ** 5)


class TestDiff:
    def test_power_rule(self):
        assert (v("q", 5) * v("p", 2)).diff("p") == v("q", 5) * v("p") * 2

    def test_laurent_power_rule(self):
        assert v("q", -1).diff("q") == v("q", -2, coeff=-1)

    def test_independent_variable(self):
        assert (v("a") * v("p")).diff("q").is_zero()

    def test_leibniz_specific(self):
        a = v("q", 2) + v("p")
        b = v("q", -1) * v("t")
        lhs = (a * b).diff("q")
        rhs = a.diff("q") * b + a * b.diff("q")
        assert lhs == rhs


class TestSubstitute:
    def test_empty_binding(self):
        P = v("q", -2) * v("p") + const(5)
        assert P.substitute({}) == P

    def test_unit_monomial_scaling(self):
        got = v("q", 2).substitute({"q": v("q", coeff=-ZETA)})
        assert got == v("q", 2, coeff=ZETA ** 2)

    def test_polynomial_binding_for_p(self):
        shear = v("p") + v("a") * v("q", -1)
        got = (v("q") * v("p")).substitute({"p": shear})
        assert got == v("q") * v("p") + v("a")

    def test_negative_exponent_needs_monomial(self):
        P = v("q", -1)
        with pytest.raises(LaurentError):
            P.substitute({"q": v("q") + const(1)})

    def test_simultaneous(self):
        P = v("q") * v("p")
        got = P.substitute({"q": v("p"), "p": v("q")})
        assert got == P


class TestEvalNumeric:
    def test_plain(self):
        P = v("q", 5) * v("p", 2)
        assert P.eval_numeric({"q": 1, "p": 1}) == 1 + 0j

    def test_zeta_constant(self):
        P = const(ZETA)
        got = P.eval_numeric({})
        root2 = 2 ** 0.5 / 2
        assert abs(got - complex(root2, root2)) < 1e-15

    def test_against_naive_oracle(self, rng):
        # independent route: monomial-by-monomial products
        P = _random_poly(rng)
        pt = {n: complex(rng.uniform(0.5, 2), rng.uniform(-1, 1))
              for n in TBL.names}
        naive = 0j
        for exps, c in P.terms.items():
            term = complex(c)
            for name, e in zip(TBL.names, exps):
                term *= pt[name] ** e
            naive += term
        got = P.eval_numeric(pt)
        assert abs(got - naive) <= 1e-12 * max(1.0, abs(naive))

    def test_unbound_variable(self):
        with pytest.raises(KeyError):
            (v("q") * v("a")).eval_numeric({"q": 1})

    def test_laurent_at_zero(self):
        with pytest.raises(ZeroDivisionError):
            v("q", -2).eval_numeric({"q": 0})


class TestInvariants:
    def test_no_negative_exponents_outside_q(self):
        with pytest.raises(LaurentError):
            LaurentPoly.var(TBL, "p", -1)

    def test_zero_is_empty(self):
        assert (v("q") - v("q")).terms == {}

    def test_structural_equality(self):
        a = v("q") * v("p") + const(Fraction(1, 2))
        b = const(Fraction(1, 2)) + v("p") * v("q")
        assert a == b and hash(a) == hash(b)


class TestSerialize:
    def test_golden_forms(self):
        assert LaurentPoly.zero(TBL).serialize() == "0"
        P = v("q", 5) * v("p", 2) + v("q", -1, coeff=Fraction(5, 2)) \
            + const(ZETA ** 3) * v("t")
        assert P.serialize() == "1*q^5*p^2 + (z^3)*t + 5/2*q^-1"

    def test_roundtrip_stability(self):
        P = v("a") * v("q", 4) * v("p") + v("p", 2)
        assert P.serialize() == (v("p", 2) + v("a") * v("q", 4) * v("p")).serialize()


def _random_poly(rng, nterms=6):
    terms = {}
    for _ in range(nterms):
        exps = (rng.randint(-3, 3), rng.randint(0, 3),
                rng.randint(0, 2), rng.randint(0, 2))
        terms[exps] = CycloRat(rng.randint(-5, 5), rng.randint(-2, 2),
                               rng.randint(-2, 2), rng.randint(-2, 2))
    return LaurentPoly(TBL, terms)
