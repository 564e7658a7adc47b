"""Field arithmetic in Q(sqrt(d)): frozen values first, then algebraic laws."""

from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from algwaves.qfield import (
    QuadExt,
    RadicandMismatchError,
    field_sqrt,
    gamma_ratio,
    is_squarefree,
    parse_quadext,
    pochhammer,
    rational_sqrt,
    squarefree_decompose,
    try_sqrt,
)


def q(a, b=0, d=1):
    return QuadExt(Fr(a), Fr(b), d)


class TestFrozenValues:
    def test_speed_squared(self):
        # (5/6)*sqrt(6) is 5/sqrt(6); its square must be 25/6
        c = q(0, Fr(5, 6), 6)
        assert c * c == q(Fr(25, 6))

    def test_inverse_of_third_sqrt6(self):
        x = q(0, Fr(1, 3), 6)
        assert x.inverse() == q(0, Fr(1, 2), 6)
        assert x * x.inverse() == q(1)

    def test_try_sqrt_perfect_square(self):
        assert try_sqrt(q(4)) == q(2)
        assert try_sqrt(q(4), d=7) == q(2)

    def test_try_sqrt_with_radicand(self):
        r = try_sqrt(q(Fr(49, 6)), d=6)
        assert r == q(0, Fr(7, 6), 6)

    def test_try_sqrt_inferred_radicand(self):
        r = try_sqrt(q(Fr(49, 6)))
        assert r == q(0, Fr(7, 6), 6)
        r = try_sqrt(q(8))
        assert r == q(0, 2, 2)

    def test_try_sqrt_failures(self):
        assert try_sqrt(q(2), d=3) is None
        assert try_sqrt(q(-1)) is None
        with pytest.raises(ValueError):
            try_sqrt(q(0, 1, 2))

    def test_pochhammer_values(self):
        assert pochhammer(Fr(5, 6), 2) == Fr(55, 36)
        assert gamma_ratio(Fr(1, 3), 3) == Fr(28, 27)
        assert pochhammer(Fr(1, 2), 0) == 1

    def test_gamma_factor_m1(self):
        # gamma(1) = (5/6 rising 1)/(1/3 rising 1) = 5/2
        assert pochhammer(Fr(5, 6), 1) / pochhammer(Fr(1, 3), 1) == Fr(5, 2)

    def test_sign_exactness(self):
        # 3 - 2*sqrt(2) is positive (9 > 8); 2 - 3*sqrt(2) negative
        assert q(3, -2, 2).sign() == 1
        assert q(2, -3, 2).sign() == -1
        assert q(-3, 2, 2).sign() == -1
        assert q(0).sign() == 0
        assert q(0, -1, 6) < 0 < q(0, 1, 6)

    def test_radicand_mismatch(self):
        with pytest.raises(RadicandMismatchError):
            q(0, 1, 2) + q(0, 1, 3)
        # radical-free values combine with anything
        assert q(2) + q(0, 1, 3) == q(2, 1, 3)

    def test_normalization(self):
        assert q(1, 0, 6).d == 1
        assert q(2, 3, 1) == q(5)

    def test_bad_radicand(self):
        with pytest.raises(ValueError):
            QuadExt(1, 1, 12)
        with pytest.raises(ValueError):
            QuadExt(1, 1, 0)

    def test_squarefree_decompose(self):
        assert squarefree_decompose(294) == (7, 6)
        assert squarefree_decompose(1) == (1, 1)
        assert squarefree_decompose(36) == (6, 1)
        assert is_squarefree(6)
        assert not is_squarefree(12)

    def test_rational_sqrt(self):
        assert rational_sqrt(Fr(49, 36)) == Fr(7, 6)
        assert rational_sqrt(Fr(2)) is None

    def test_field_sqrt_mixed(self):
        x = q(3, 2, 2)  # (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
        r = field_sqrt(x)
        assert r is not None and r * r == x
        assert field_sqrt(q(1, 1, 2)) is None

    def test_str_and_parse_roundtrip(self):
        vals = [q(2), q(Fr(-1, 3)), q(0, Fr(5, 6), 6), q(0, -1, 6),
                q(Fr(1, 2), Fr(3, 4), 5), q(Fr(1, 2), Fr(-3, 4), 5), q(0)]
        for v in vals:
            assert parse_quadext(str(v)) == v

    def test_parse_literals(self):
        assert parse_quadext("5/6*sqrt(6)") == q(0, Fr(5, 6), 6)
        assert parse_quadext("-sqrt(6)") == q(0, -1, 6)
        assert parse_quadext("sqrt(8)") == q(0, 2, 2)
        assert parse_quadext("2") == q(2)
        with pytest.raises(ValueError):
            parse_quadext("1/0")
        with pytest.raises(ValueError):
            parse_quadext("sqrt(6)", d=5)


rationals = st.builds(Fr, st.integers(min_value=-30, max_value=30),
                      st.integers(min_value=1, max_value=12))
elements = st.builds(lambda a, b, d: QuadExt(a, b, d),
                     rationals, rationals, st.sampled_from([2, 3, 5, 6]))


class TestFieldLaws:
    @settings(max_examples=60, deadline=None)
    @given(elements, elements)
    def test_commutativity(self, x, y):
        y = QuadExt(y.a, y.b, x.d if y.b != 0 else 1)
        assert x + y == y + x
        assert x * y == y * x

    @settings(max_examples=60, deadline=None)
    @given(elements, elements, elements)
    def test_distributivity(self, x, y, z):
        y = QuadExt(y.a, y.b, x.d if y.b != 0 else 1)
        z = QuadExt(z.a, z.b, x.d if z.b != 0 else 1)
        assert x * (y + z) == x * y + x * z

    @settings(max_examples=60, deadline=None)
    @given(elements)
    def test_inverse_roundtrip(self, x):
        if not x.is_zero():
            assert x * x.inverse() == QuadExt(1)
            assert (x ** 3) * (x ** -3) == QuadExt(1)

    @settings(max_examples=60, deadline=None)
    @given(elements)
    def test_sign_against_float(self, x):
        f = float(x)
        if abs(f) > 1e-9:
            assert x.sign() == (1 if f > 0 else -1)

    @settings(max_examples=60, deadline=None)
    @given(elements)
    def test_try_sqrt_recovers(self, s):
        # squares of pure-rational and pure-radical values round-trip
        for v in (QuadExt(s.a), QuadExt(0, s.b, s.d)):
            r = try_sqrt(v * v, d=v.d if v.d > 1 else None)
            assert r is not None
            assert r == abs(v)

    @settings(max_examples=40, deadline=None)
    @given(rationals, st.integers(min_value=0, max_value=8))
    def test_pochhammer_recurrence(self, x, m):
        assert pochhammer(x, m + 1) == pochhammer(x, m) * (x + m)
