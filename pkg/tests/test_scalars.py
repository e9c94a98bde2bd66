"""Exact scalar arithmetic: rationals, surds, jets."""

import random
from fractions import Fraction

import pytest

from solvsoliton.scalars import (
    FloatJet2,
    Jet2,
    RadicandMismatchError,
    Surd,
    rational,
    sqrt_fraction,
    surd,
)


class TestRational:
    def test_basic_field_ops(self):
        assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
        assert Fraction(2, 4) == Fraction(1, 2)  # reduced representation

    def test_denominator_structure_substitution(self):
        # (rho + 2c)/(rho + c) at rho=1, c=1/2
        rho, c = Fraction(1), Fraction(1, 2)
        assert (rho + 2 * c) / (rho + c) == Fraction(4, 3)

    def test_parse_and_format(self):
        assert rational("5/6") == Fraction(5, 6)
        assert rational("-3") == Fraction(-3)
        assert str(Fraction(5, 6)) == "5/6"
        assert str(Fraction(7)) == "7"
        with pytest.raises(TypeError):
            rational(1.5)

    def test_field_axioms_randomized(self):
        rng = random.Random(99)

        def rand():
            return Fraction(rng.randint(-40, 40), rng.randint(1, 25))

        for _ in range(200):
            x, y, z = rand(), rand(), rand()
            assert (x + y) + z == x + (y + z)
            assert x * (y + z) == x * y + x * z

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Fraction(1, 2) / Fraction(0)


class TestSurd:
    def test_square_collapses_to_rational(self):
        x = surd(0, 1, Fraction(3, 4))
        assert x * x == Fraction(3, 4)

    def test_perfect_square_radicand_normalizes(self):
        assert surd(1, 2, Fraction(9, 4)) == Fraction(4)
        assert isinstance(surd(0, 1, 2), Surd)

    def test_sigma4_value(self):
        # sqrt((rho+c)/(rho+2c)) at rho=1, c=1 is sqrt(2/3)
        s4 = surd(0, 1, Fraction(2, 3))
        assert isinstance(s4, Surd)
        assert abs(float(s4) - (2 / 3) ** 0.5) < 1e-15

    def test_sigma_ratio_is_rational(self):
        # sigma1 / sigma4 = c/(rho+c) at rho=1, c=1
        rho, c = Fraction(1), Fraction(1)
        q = (rho + c) / (rho + 2 * c)
        s1 = surd(0, c / (rho + c), q)
        s4 = surd(0, 1, q)
        assert s1 / s4 == Fraction(1, 2)

    def test_presentation_independent_equality(self):
        # sqrt(3/8) = (1/4) sqrt(6): canonical radicands make these identical
        assert surd(0, Fraction(2, 3), Fraction(3, 8)) == surd(
            0, Fraction(1, 2), Fraction(2, 3)
        )

    def test_mismatched_radicands_error(self):
        with pytest.raises(RadicandMismatchError):
            surd(0, 1, 2) + surd(0, 1, 3)
        with pytest.raises(RadicandMismatchError):
            surd(0, 1, 2) * surd(0, 1, 5)

    def test_multiplication_rule(self):
        # (a1 + b1 sqrt(q))(a2 + b2 sqrt(q)) with q = 5
        x = surd(1, 2, 5)
        y = surd(3, -1, 5)
        assert x * y == surd(1 * 3 + 2 * (-1) * 5, 1 * (-1) + 2 * 3, 5)

    def test_division_and_sign(self):
        x = surd(1, 1, 2)
        assert x / x == Fraction(1)
        assert (Fraction(1) / x) * x == Fraction(1)
        assert surd(-3, 1, 2).sign() == -1  # -3 + sqrt(2) < 0
        assert surd(-1, 1, 2).sign() == 1  # -1 + sqrt(2) > 0
        assert surd(0, 1, 2) > 0

    def test_surd_vs_double_randomized(self):
        # multiplication agrees with float evaluation to 1e-12 relative
        rng = random.Random(4242)
        for _ in range(300):
            q = Fraction(rng.randint(1, 40), rng.randint(1, 8))
            if q > 10 or q == 0:
                continue
            x = surd(Fraction(rng.randint(-8, 8), rng.randint(1, 5)), Fraction(rng.randint(-8, 8), rng.randint(1, 5)), q)
            y = surd(Fraction(rng.randint(-8, 8), rng.randint(1, 5)), Fraction(rng.randint(-8, 8), rng.randint(1, 5)), q)
            exact = float(x * y) if isinstance(x * y, Surd) else float(x * y)
            approx = float(x) * float(y)
            assert abs(exact - approx) <= 1e-12 * max(1.0, abs(approx))

    def test_string_form(self):
        assert str(surd(Fraction(1, 2), Fraction(3, 4), 2)) == "1/2 + 3/4*sqrt(2)"

    def test_sqrt_fraction(self):
        assert sqrt_fraction(Fraction(9, 4)) == Fraction(3, 2)
        assert sqrt_fraction(0) == 0
        root = sqrt_fraction(Fraction(2, 3))
        assert root * root == Fraction(2, 3)
        with pytest.raises(ValueError):
            sqrt_fraction(-1)


class TestJet2:
    def test_variable_square(self):
        v = Jet2.variable(2)
        assert v * v == Jet2(4, 4, 2)

    def test_lift_is_constant(self):
        assert Jet2.lift(5).d2 == 0
        assert Jet2.lift(5).d1 == 0

    def test_variable_definition(self):
        assert Jet2.variable(Fraction(3, 2)) == Jet2(Fraction(3, 2), 1, 0)

    def test_product_rule(self):
        x, y = Jet2(2, 3, 5), Jet2(7, 11, 13)
        z = x * y
        assert z.d1 == x.d1 * y.v + x.v * y.d1
        assert z.d2 == x.d2 * y.v + 2 * x.d1 * y.d1 + x.v * y.d2

    def test_warp_function_jet(self):
        # f = (rho+2c)/(4 rho^2 (rho+c)) at rho=1, c=0 is 1/(4 rho^2):
        # value 1/4, first derivative -1/2, second derivative 3/2
        rv = Jet2.variable(1)
        f = (rv + 0) / (4 * rv**2 * (rv + 0))
        assert f.v == Fraction(1, 4)
        assert f.d1 == Fraction(-1, 2)
        assert f.d2 == Fraction(3, 2)

    def test_division_requires_nonzero_value(self):
        with pytest.raises(ZeroDivisionError):
            Jet2.lift(1) / Jet2(0, 1, 0)

    def test_reciprocal_inverts(self):
        x = Jet2(Fraction(3), Fraction(-2), Fraction(7))
        assert x * (1 / x) == Jet2.lift(1)

    def test_negative_powers(self):
        x = Jet2.variable(Fraction(2))
        assert x ** (-1) == 1 / x

    def test_jet_vs_exact_finite_differences(self):
        # Central differences at step exactly 1/10^6, evaluated in rational
        # arithmetic so only the O(h^2) truncation remains; 1e-4 relative.
        rng = random.Random(12345)
        h = Fraction(1, 10**6)
        checked = 0
        for _ in range(60):
            k = rng.randint(2, 4)
            factors = [
                (
                    Fraction(rng.randint(1, 4)),
                    Fraction(rng.randint(-3, 3)),
                    rng.choice([-1, 1, 1, 2]),
                )
                for _ in range(k)
            ]
            x0 = Fraction(rng.randint(1, 8), rng.randint(1, 3)) + Fraction(1, 7)
            if any(abs(a * x0 + b) < Fraction(1, 4) for a, b, _ in factors):
                continue

            def value(x):
                out = Fraction(1)
                for a, b, e in factors:
                    out *= (a * x + b) ** e
                return out

            rv = Jet2.variable(x0)
            jet = Jet2.lift(1)
            for a, b, e in factors:
                jet = jet * (a * rv + b) ** e
            d1 = float((value(x0 + h) - value(x0 - h)) / (2 * h))
            d2 = float((value(x0 + h) - 2 * value(x0) + value(x0 - h)) / h**2)
            assert abs(d1 - float(jet.d1)) <= 1e-4 * max(1.0, abs(float(jet.d1)))
            assert abs(d2 - float(jet.d2)) <= 1e-4 * max(1.0, abs(float(jet.d2)))
            checked += 1
        assert checked >= 40


class TestFloatJet2:
    def test_polynomial_gradient_hessian(self):
        # f(x, y) = x^2 y + 3y at (2, 5)
        x = FloatJet2.variable(0, 2.0, 2)
        y = FloatJet2.variable(1, 5.0, 2)
        f = x * x * y + 3.0 * y
        assert f.v == 2.0**2 * 5 + 15
        assert list(f.g) == [2 * 2.0 * 5.0, 2.0**2 + 3.0]
        assert f.h[0][0] == 2 * 5.0
        assert f.h[0][1] == f.h[1][0] == 2 * 2.0
        assert f.h[1][1] == 0.0

    def test_reciprocal(self):
        x = FloatJet2.variable(0, 4.0, 1)
        inv = 1.0 / x
        assert abs(inv.v - 0.25) < 1e-15
        assert abs(inv.g[0] + 1 / 16) < 1e-15
        assert abs(inv.h[0][0] - 2 / 64) < 1e-15
