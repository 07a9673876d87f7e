import operator
import random
from fractions import Fraction

import pytest
from mpmath import mp

from cantorscan import settings
from cantorscan.exceptions import DomainError, InconsistentBounds, RepresentationOverflow, SpecParseError
from cantorscan.numerics import (
    CertifiedScalar, LogScaleValue, make_certified, from_fraction, pi, ln2, e, hull, minimum, maximum, corner_hull,
    clamp_lower
)
from oracles import encloses


class TestConstruction:
    def test_dyadic_is_exact(self):
        assert make_certified('1/2', 64).is_exact
        assert make_certified('0.75', 64).is_exact
        assert make_certified(3, 64).is_exact

    def test_non_dyadic_encloses(self):
        third = make_certified('1/3', 64)
        assert not third.is_exact
        assert third.contains('1/3')
        assert third.contains(Fraction(1, 3))
        assert not third.contains('0.34')

    def test_rejects_garbage(self):
        with pytest.raises(SpecParseError):
            make_certified('one half', 64)
        with pytest.raises(SpecParseError):
            make_certified('1/0', 64)

    def test_lo_above_hi_rejected(self):
        a, b = make_certified(2, 64), make_certified(1, 64)
        with pytest.raises(InconsistentBounds):
            CertifiedScalar(a.lo, b.hi, 64)


class TestArithmetic:
    def test_basic_ops_enclose(self, prec):
        third, seventh = make_certified('1/3', prec), make_certified('1/7', prec)
        assert (third + seventh).contains(Fraction(10, 21))
        assert (third - seventh).contains(Fraction(4, 21))
        assert (third * seventh).contains(Fraction(1, 21))
        assert (third / seventh).contains(Fraction(7, 3))
        assert (1 - third).contains(Fraction(2, 3))
        assert (third ** 3).contains(Fraction(1, 27))

    def test_division_by_interval_touching_zero(self, prec):
        x = CertifiedScalar(make_certified(0, prec).lo, make_certified(2, prec).hi, prec)
        q = make_certified(1, prec) / x
        assert q.lower == mp.mpf('0.5')
        assert q.upper == mp.inf

    def test_width_is_tight(self, prec):
        assert make_certified('1/3', prec).width < mp.mpf(2) ** (2 - prec)

    @pytest.mark.parametrize('bits', [64, 128])
    def test_random_rationals(self, bits):
        rng = random.Random(20240917)
        ops = [operator.add, operator.sub, operator.mul, operator.truediv]
        for _ in range(1000):
            x = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
            y = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 4)) * rng.choice([-1, 1])
            op = rng.choice(ops)
            enclosure = op(from_fraction(x, bits), from_fraction(y, bits))
            assert enclosure.contains(op(x, y)), (x, op.__name__, y)


class TestFunctions:
    def test_constants(self, prec):
        assert encloses(pi(prec), mp.pi)
        assert encloses(ln2(prec), mp.log(2))
        assert encloses(e(prec), mp.e)

    @pytest.mark.parametrize('x', ['1/3', '2', '7/2', '1/1000'])
    def test_elementary(self, prec, x):
        v = make_certified(x, prec)
        ref = mp.mpf(Fraction(x).numerator) / Fraction(x).denominator
        assert encloses(v.exp(), mp.exp(ref))
        assert encloses(v.ln(), mp.log(ref))
        assert encloses(v.sqrt(), mp.sqrt(ref))
        assert encloses(v.sinh(), mp.sinh(ref))
        assert encloses(v.cosh(), mp.cosh(ref))
        assert encloses(v.asinh(), mp.asinh(ref))
        assert encloses((v + 1).acosh(), mp.acosh(ref + 1))

    def test_atanh(self, prec):
        assert encloses(make_certified('1/2', prec).atanh(), mp.atanh(mp.mpf(1) / 2))
        assert make_certified(1, prec).atanh().upper == mp.inf

    def test_domain_errors(self, prec):
        with pytest.raises(DomainError):
            make_certified(-1, prec).ln()
        with pytest.raises(DomainError):
            make_certified(-1, prec).sqrt()
        with pytest.raises(DomainError):
            make_certified('1/2', prec).acosh()
        with pytest.raises(DomainError):
            make_certified(2, prec).atanh()

    def test_cosh_straddling_zero(self, prec):
        x = make_certified(-1, prec).hull(make_certified(2, prec))
        c = x.cosh()
        assert c.lower == 1
        assert encloses(c, mp.cosh(2))

    def test_acosh_near_one(self, prec):
        # arccosh(1 + 2^-100) ~ 2^-49.5: no cancellation to zero
        x = make_certified(1, prec) + from_fraction(Fraction(1, 2 ** 100), prec)
        assert x.acosh().certainly_positive()

    def test_exp_saturates(self, prec):
        big = make_certified(settings.MAX_EXP_ARGUMENT * 10, prec)
        out = big.exp()
        assert out.upper == mp.inf
        assert out.certainly_positive()
        tiny = (-big).exp()
        assert tiny.lower == 0
        assert tiny.upper > 0


class TestComparisons:
    def test_certainly(self, prec):
        third, half = make_certified('1/3', prec), make_certified('1/2', prec)
        assert third.certainly_lt(half)
        assert half.certainly_gt(third)
        assert not third.certainly_lt(third)
        assert third.intersects(third)

    def test_set_ops(self, prec):
        a = make_certified(1, prec).hull(make_certified(3, prec))
        b = make_certified(2, prec).hull(make_certified(5, prec))
        assert a.intersection(b).contains(2) and a.intersection(b).contains(3)
        assert a.intersection(make_certified(7, prec)) is None
        assert hull([a, b]).contains(5) and hull([a, b]).contains(1)
        assert minimum(a, b).lower == 1 and minimum(a, b).upper == 3
        assert maximum(a, b).lower == 2 and maximum(a, b).upper == 5
        assert clamp_lower(make_certified(-1, prec).hull(a)).lower == 0

    def test_corner_hull(self, prec):
        x = make_certified(1, prec).hull(make_certified(2, prec))
        out = corner_hull(lambda u, v: u - v, x, x)
        assert out.lower == -1 and out.upper == 1


class TestPrecision:
    def test_pi_nests(self):
        p64, p128, p256 = pi(64), pi(128), pi(256)
        assert p256.subset_of(p128)
        assert p128.subset_of(p64)

    def test_composite_narrows(self):
        vals = [(make_certified('1/3', p).atanh() * pi(p)).sinh() for p in (64, 128, 256)]
        assert vals[0].intersects(vals[1]) and vals[1].intersects(vals[2])
        assert vals[2].width < vals[1].width < vals[0].width

    def test_decimal_pair_is_outward(self, prec):
        lo, hi = make_certified('1/3', prec).to_decimal_pair(5)
        assert lo == '0.33333'
        assert hi == '0.33334'
        assert make_certified(0, prec).to_decimal_pair(5) == ('0', '0')


class TestLogScale:
    def test_representable(self, prec):
        assert LogScaleValue(make_certified(10, prec)).representable
        huge = LogScaleValue(make_certified(10 ** 9, prec))
        assert not huge.representable
        with pytest.raises(RepresentationOverflow):
            huge.to_certified()
        assert huge.to_hull().upper == mp.inf

    def test_to_certified_matches_hull(self, prec):
        small = LogScaleValue(make_certified(-3, prec))
        assert small.to_certified() == small.to_hull()
        assert encloses(small.to_certified(), mp.exp(-3))
        tiny = LogScaleValue(make_certified(-10 ** 9, prec))
        assert tiny.to_hull().lower == 0
        with pytest.raises(RepresentationOverflow):
            tiny.to_certified()
