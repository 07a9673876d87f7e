"""
Certified interval scalars built on mpmath's ``libmp`` directed-rounding primitives.

A :class:`.CertifiedScalar` is a closed interval ``[lo, hi]`` of raw ``mpf`` tuples (extended reals allowed) that
encloses one exact real number. Rational arithmetic goes through ``mpmath.libmp.libmpi`` which rounds every endpoint
outward. Transcendental functions evaluate each endpoint at ``precision + GUARD_BITS`` bits with the directed rounding
mode, widen the result by a few units in the last working place and then round outward to the run precision, so that
enclosures computed at a higher precision nest inside the ones computed at a lower precision.

Basic usage::

    >>> from cantorscan.numerics import make_certified, pi_squared
    >>> q = make_certified('1/2', 128)
    >>> bound = pi_squared(128) / q.atanh()
    >>> bound.to_decimal_pair(12)
    ('17.9674255803', '17.9674255804')

"""
import logging
from decimal import Context, Decimal, ROUND_CEILING, ROUND_FLOOR
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional, Tuple, Union

import attr
from mpmath import mp
from mpmath.libmp import (
    fzero, fone, fnone, finf, fninf, fnan, from_int, from_rational, to_rational, to_float, prec_to_dps,
    round_floor, round_ceiling, round_nearest, mpf_add, mpf_sub, mpf_mul, mpf_div, mpf_neg, mpf_abs, mpf_shift,
    mpf_lt, mpf_le, mpf_gt, mpf_ge, mpf_sqrt, mpf_exp, mpf_log, mpf_cosh_sinh, mpf_asinh, mpf_atanh, mpf_pi,
    mpf_ln2
)
from mpmath.libmp.libmpi import mpi_add, mpi_sub, mpi_mul, mpi_div, mpi_neg, mpi_abs, mpi_square, mpi_pow_int

from cantorscan import settings
from cantorscan.exceptions import DomainError, RepresentationOverflow, InconsistentBounds, SpecParseError

log = logging.getLogger(__name__)

Mpf = Tuple[int, int, int, int]
Number = Union['CertifiedScalar', int, Fraction, str]

_SPECIALS = (fzero, finf, fninf)


def _settle(v: Mpf, wp: int, prec: int, rnd: str) -> Mpf:
    """Round a transcendental result computed at ``wp`` bits outward to ``prec`` bits, with a few ulps of slack."""
    if v in _SPECIALS:
        return v
    slack = mpf_shift(mpf_abs(v), 8 - wp)
    if rnd == round_floor:
        return mpf_sub(v, slack, prec, round_floor)
    return mpf_add(v, slack, prec, round_ceiling)


def _directed(fn: Callable, v: Mpf, prec: int, rnd: str) -> Mpf:
    wp = prec + settings.GUARD_BITS
    return _settle(fn(v, wp, rnd), wp, prec, rnd)


def _exp_limit() -> Mpf:
    return from_int(settings.MAX_EXP_ARGUMENT)


def _exp_endpoint(v: Mpf, prec: int, rnd: str) -> Mpf:
    if v == fzero:
        return fone
    limit = _exp_limit()
    if mpf_gt(v, limit):
        return finf if rnd == round_ceiling else _directed(mpf_exp, limit, prec, round_floor)
    if mpf_lt(v, mpf_neg(limit)):
        return fzero if rnd == round_floor else _directed(mpf_exp, mpf_neg(limit), prec, round_ceiling)
    return _directed(mpf_exp, v, prec, rnd)


def _log_endpoint(v: Mpf, prec: int, rnd: str) -> Mpf:
    if v == fzero:
        return fninf
    if v == finf:
        return finf
    return _directed(mpf_log, v, prec, rnd)


def _sinh(v, wp, rnd):
    return mpf_cosh_sinh(v, wp, rnd)[1]


def _cosh(v, wp, rnd):
    return mpf_cosh_sinh(v, wp, rnd)[0]


def _sinh_endpoint(v: Mpf, prec: int, rnd: str) -> Mpf:
    limit = _exp_limit()
    if mpf_gt(v, limit):
        return finf if rnd == round_ceiling else _directed(_sinh, limit, prec, round_floor)
    if mpf_lt(v, mpf_neg(limit)):
        return fninf if rnd == round_floor else _directed(_sinh, mpf_neg(limit), prec, round_ceiling)
    return _directed(_sinh, v, prec, rnd)


def _cosh_endpoint(v: Mpf, prec: int, rnd: str) -> Mpf:
    """cosh of a non-negative endpoint."""
    limit = _exp_limit()
    if mpf_gt(v, limit):
        return finf if rnd == round_ceiling else _directed(_cosh, limit, prec, round_floor)
    return _directed(_cosh, v, prec, rnd)


def _asinh_endpoint(v: Mpf, prec: int, rnd: str) -> Mpf:
    if v in _SPECIALS:
        return v
    return _directed(mpf_asinh, v, prec, rnd)


def _atanh_endpoint(v: Mpf, prec: int, rnd: str) -> Mpf:
    if v == fone:
        return finf
    if v == fnone:
        return fninf
    if v == fzero:
        return fzero
    return _directed(mpf_atanh, v, prec, rnd)


def _acosh_endpoint(v: Mpf, prec: int, rnd: str) -> Mpf:
    # ln(v + sqrt((v-1)(v+1))) with every step rounded in the direction of rnd; v - 1 is where cancellation bites.
    if v == finf:
        return finf
    wp = prec + settings.GUARD_BITS
    t = mpf_mul(mpf_sub(v, fone, wp, rnd), mpf_add(v, fone, wp, rnd), wp, rnd)
    w = mpf_add(v, mpf_sqrt(t, wp, rnd), wp, rnd)
    if w == fone:
        return fzero
    return _settle(mpf_log(w, wp, rnd), wp, prec, rnd)


def _to_fraction(v: Mpf) -> Fraction:
    p, q = to_rational(v)
    return Fraction(p, q)


def _directed_decimal(v: Mpf, digits: int, rounding: str) -> str:
    if v == finf:
        return 'inf'
    if v == fninf:
        return '-inf'
    if v == fzero:
        return '0'
    p, q = to_rational(v)
    ctx = Context(prec=digits, rounding=rounding, Emax=999999999, Emin=-999999999)
    return str(ctx.divide(Decimal(int(p)), Decimal(int(q))))


@attr.s(frozen=True, slots=True, repr=False)
class CertifiedScalar:
    """
    Directed-rounded enclosure ``[lo, hi]`` of a real number at ``precision_bits`` bits.

    Endpoints are raw mpmath ``mpf`` tuples and may be infinite, so that divergent evaluations degrade to
    uninformative-but-sound intervals.
    """
    lo = attr.ib()
    hi = attr.ib()
    precision_bits: int = attr.ib(default=attr.Factory(lambda: settings.PRECISION_BITS))

    def __attrs_post_init__(self):
        if fnan in (self.lo, self.hi):
            raise InconsistentBounds("enclosure endpoint is NaN", lo=self.lo, hi=self.hi)
        if mpf_gt(self.lo, self.hi):
            raise InconsistentBounds("enclosure has lo > hi", lo=self.lo, hi=self.hi)

    # --- construction helpers ------------------------------------------------------------------------------------

    def _wrap(self, pair: Tuple[Mpf, Mpf], prec: int = None) -> 'CertifiedScalar':
        return CertifiedScalar(pair[0], pair[1], self.precision_bits if prec is None else prec)

    def _lift(self, other: Number) -> 'CertifiedScalar':
        if isinstance(other, CertifiedScalar):
            return other
        return make_certified(other, self.precision_bits)

    def _prec_with(self, other: 'CertifiedScalar') -> int:
        return max(self.precision_bits, other.precision_bits)

    # --- arithmetic ----------------------------------------------------------------------------------------------

    def __add__(self, other: Number) -> 'CertifiedScalar':
        other = self._lift(other)
        prec = self._prec_with(other)
        return self._wrap(mpi_add((self.lo, self.hi), (other.lo, other.hi), prec), prec)

    __radd__ = __add__

    def __sub__(self, other: Number) -> 'CertifiedScalar':
        other = self._lift(other)
        prec = self._prec_with(other)
        return self._wrap(mpi_sub((self.lo, self.hi), (other.lo, other.hi), prec), prec)

    def __rsub__(self, other: Number) -> 'CertifiedScalar':
        return self._lift(other) - self

    def __mul__(self, other: Number) -> 'CertifiedScalar':
        other = self._lift(other)
        prec = self._prec_with(other)
        return self._wrap(mpi_mul((self.lo, self.hi), (other.lo, other.hi), prec), prec)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> 'CertifiedScalar':
        other = self._lift(other)
        prec = self._prec_with(other)
        if other.lo == fzero and mpf_gt(other.hi, fzero):
            # divisor [0, h] with h > 0: x / [0, h] = x * [1/h, inf]
            return self * other.reciprocal()
        return self._wrap(mpi_div((self.lo, self.hi), (other.lo, other.hi), prec), prec)

    def reciprocal(self) -> 'CertifiedScalar':
        p = self.precision_bits
        if self.lo == fzero and mpf_gt(self.hi, fzero):
            return self._wrap((mpf_div(fone, self.hi, p, round_floor), finf))
        return make_certified(1, p) / self

    def __rtruediv__(self, other: Number) -> 'CertifiedScalar':
        return self._lift(other) / self

    def __neg__(self) -> 'CertifiedScalar':
        return self._wrap(mpi_neg((self.lo, self.hi), self.precision_bits))

    def __abs__(self) -> 'CertifiedScalar':
        return self._wrap(mpi_abs((self.lo, self.hi), self.precision_bits))

    def __pow__(self, n: int) -> 'CertifiedScalar':
        if not isinstance(n, int):
            raise TypeError("CertifiedScalar powers take integer exponents; use exp(k * ln(x)) otherwise")
        if n == 2:
            return self.square()
        return self._wrap(mpi_pow_int((self.lo, self.hi), n, self.precision_bits))

    def square(self) -> 'CertifiedScalar':
        return self._wrap(mpi_square((self.lo, self.hi), self.precision_bits))

    def half(self) -> 'CertifiedScalar':
        return self._wrap((mpf_shift(self.lo, -1), mpf_shift(self.hi, -1)))

    # --- elementary functions ------------------------------------------------------------------------------------

    def sqrt(self) -> 'CertifiedScalar':
        if mpf_lt(self.lo, fzero):
            raise DomainError("sqrt of an enclosure reaching below 0", function='sqrt', endpoint=self._fmt(self.lo))
        p = self.precision_bits
        return self._wrap((mpf_sqrt(self.lo, p, round_floor), mpf_sqrt(self.hi, p, round_ceiling)))

    def exp(self) -> 'CertifiedScalar':
        p = self.precision_bits
        return self._wrap((_exp_endpoint(self.lo, p, round_floor), _exp_endpoint(self.hi, p, round_ceiling)))

    def ln(self) -> 'CertifiedScalar':
        if mpf_lt(self.lo, fzero):
            raise DomainError("ln of an enclosure reaching below 0", function='ln', endpoint=self._fmt(self.lo))
        p = self.precision_bits
        return self._wrap((_log_endpoint(self.lo, p, round_floor), _log_endpoint(self.hi, p, round_ceiling)))

    def sinh(self) -> 'CertifiedScalar':
        p = self.precision_bits
        return self._wrap((_sinh_endpoint(self.lo, p, round_floor), _sinh_endpoint(self.hi, p, round_ceiling)))

    def cosh(self) -> 'CertifiedScalar':
        p = self.precision_bits
        if mpf_ge(self.lo, fzero):
            near, far = self.lo, self.hi
        elif mpf_le(self.hi, fzero):
            near, far = mpf_neg(self.hi), mpf_neg(self.lo)
        else:
            near, far = fzero, (mpf_neg(self.lo) if mpf_gt(mpf_neg(self.lo), self.hi) else self.hi)
        lo = fone if near == fzero else _cosh_endpoint(near, p, round_floor)
        # cosh >= 1 everywhere, so the slack never takes lo below 1
        lo = lo if mpf_ge(lo, fone) else fone
        return self._wrap((lo, _cosh_endpoint(far, p, round_ceiling)))

    def asinh(self) -> 'CertifiedScalar':
        p = self.precision_bits
        return self._wrap((_asinh_endpoint(self.lo, p, round_floor), _asinh_endpoint(self.hi, p, round_ceiling)))

    def atanh(self) -> 'CertifiedScalar':
        if mpf_lt(self.lo, fnone):
            raise DomainError("atanh needs lo >= -1", function='atanh', endpoint=self._fmt(self.lo))
        if mpf_gt(self.hi, fone):
            raise DomainError("atanh needs hi <= 1", function='atanh', endpoint=self._fmt(self.hi))
        p = self.precision_bits
        return self._wrap((_atanh_endpoint(self.lo, p, round_floor), _atanh_endpoint(self.hi, p, round_ceiling)))

    def acosh(self) -> 'CertifiedScalar':
        if mpf_lt(self.lo, fone):
            raise DomainError("arccosh needs lo >= 1", function='acosh', endpoint=self._fmt(self.lo))
        p = self.precision_bits
        return self._wrap((_acosh_endpoint(self.lo, p, round_floor), _acosh_endpoint(self.hi, p, round_ceiling)))

    # --- inspection ----------------------------------------------------------------------------------------------

    @property
    def lower(self) -> mp.mpf:
        return mp.make_mpf(self.lo)

    @property
    def upper(self) -> mp.mpf:
        return mp.make_mpf(self.hi)

    @property
    def mid(self) -> Mpf:
        if self.lo == fninf or self.hi == finf:
            return self.hi if self.lo == fninf else self.lo
        return mpf_shift(mpf_add(self.lo, self.hi, self.precision_bits, round_nearest), -1)

    @property
    def width(self) -> mp.mpf:
        return mp.make_mpf(mpf_sub(self.hi, self.lo, self.precision_bits, round_ceiling))

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def is_finite(self) -> bool:
        return self.lo != fninf and self.hi != finf

    def __float__(self) -> float:
        return to_float(self.mid)

    # --- certified comparisons -----------------------------------------------------------------------------------

    def certainly_lt(self, other: Number) -> bool:
        other = self._lift(other)
        return mpf_lt(self.hi, other.lo)

    def certainly_gt(self, other: Number) -> bool:
        other = self._lift(other)
        return mpf_gt(self.lo, other.hi)

    def certainly_le(self, other: Number) -> bool:
        other = self._lift(other)
        return mpf_le(self.hi, other.lo)

    def certainly_ge(self, other: Number) -> bool:
        other = self._lift(other)
        return mpf_ge(self.lo, other.hi)

    def certainly_positive(self) -> bool:
        return mpf_gt(self.lo, fzero)

    def contains(self, value: Union['CertifiedScalar', Fraction, int, str]) -> bool:
        """
        Whether ``value`` lies inside this enclosure. Rationals (``Fraction``, ``int``, ``"p/q"`` text) are compared
        exactly; a :class:`.CertifiedScalar` must be a subset.
        """
        if isinstance(value, CertifiedScalar):
            return value.subset_of(self)
        exact_value = Fraction(value) if not isinstance(value, Fraction) else value
        lo_ok = self.lo == fninf or (self.lo != finf and _to_fraction(self.lo) <= exact_value)
        hi_ok = self.hi == finf or (self.hi != fninf and exact_value <= _to_fraction(self.hi))
        return lo_ok and hi_ok

    def subset_of(self, other: 'CertifiedScalar') -> bool:
        return mpf_le(other.lo, self.lo) and mpf_le(self.hi, other.hi)

    def intersects(self, other: Number) -> bool:
        other = self._lift(other)
        return mpf_le(self.lo, other.hi) and mpf_le(other.lo, self.hi)

    def hull(self, other: 'CertifiedScalar') -> 'CertifiedScalar':
        lo = self.lo if mpf_le(self.lo, other.lo) else other.lo
        hi = self.hi if mpf_ge(self.hi, other.hi) else other.hi
        return CertifiedScalar(lo, hi, self._prec_with(other))

    def intersection(self, other: 'CertifiedScalar') -> Optional['CertifiedScalar']:
        if not self.intersects(other):
            return None
        lo = self.lo if mpf_ge(self.lo, other.lo) else other.lo
        hi = self.hi if mpf_le(self.hi, other.hi) else other.hi
        return CertifiedScalar(lo, hi, self._prec_with(other))

    # --- output --------------------------------------------------------------------------------------------------

    def to_decimal_pair(self, digits: int = None) -> Tuple[str, str]:
        """Decimal strings ``(lo, hi)`` rounded outward, so the printed pair still encloses the value."""
        digits = prec_to_dps(self.precision_bits) if digits is None else digits
        return _directed_decimal(self.lo, digits, ROUND_FLOOR), _directed_decimal(self.hi, digits, ROUND_CEILING)

    def _fmt(self, v: Mpf) -> str:
        return _directed_decimal(v, 20, ROUND_FLOOR)

    def __str__(self):
        lo, hi = self.to_decimal_pair(20)
        return f"[{lo}, {hi}]"

    def __repr__(self):
        return f"CertifiedScalar({str(self)}, precision_bits={self.precision_bits})"


@attr.s(frozen=True, slots=True, repr=False)
class LogScaleValue:
    """
    A positive quantity ``x`` carried by an enclosure of ``ln x``. Used when ``x`` itself is astronomically large or
    small, e.g. ``q = exp(-3^719)``.
    """
    log_value: CertifiedScalar = attr.ib()

    @property
    def representable(self) -> bool:
        limit = _exp_limit()
        lv = self.log_value
        return mpf_le(lv.hi, limit) and mpf_ge(lv.lo, mpf_neg(limit))

    def to_certified(self) -> CertifiedScalar:
        """Expand to a plain enclosure; raises :class:`.RepresentationOverflow` rather than saturating."""
        if not self.representable:
            raise RepresentationOverflow(
                "value is only representable in log scale", log_value=str(self.log_value),
                max_exp_argument=settings.MAX_EXP_ARGUMENT
            )
        return self.log_value.exp()

    def to_hull(self) -> CertifiedScalar:
        """Sound expansion that degrades to one-sided enclosures (``[0, tiny]`` / ``[huge, inf]``) when needed."""
        return self.log_value.exp()

    def __repr__(self):
        return f"LogScaleValue(ln={self.log_value})"


def make_certified(value: Union[str, int, Fraction, float], precision_bits: int = None) -> CertifiedScalar:
    """
    Enclose a decimal or rational ``"p/q"`` literal. Dyadic rationals come back as exact point intervals.

        >>> make_certified('1/2', 64).is_exact
        True
        >>> make_certified('1/3', 64).contains('1/3')
        True

    """
    prec = settings.PRECISION_BITS if precision_bits is None else int(precision_bits)
    if isinstance(value, CertifiedScalar):
        return value
    if isinstance(value, int):
        v = from_int(value)
        return CertifiedScalar(v, v, prec)
    try:
        frac = value if isinstance(value, Fraction) else Fraction(value.strip() if isinstance(value, str) else value)
    except ZeroDivisionError:
        raise SpecParseError("zero denominator in numeric literal", literal=value)
    except (ValueError, TypeError):
        raise SpecParseError("cannot parse numeric literal (expected decimal or p/q)", literal=value)
    return from_fraction(frac, prec)


def from_fraction(frac: Fraction, precision_bits: int) -> CertifiedScalar:
    p, q = frac.numerator, frac.denominator
    return CertifiedScalar(
        from_rational(p, q, precision_bits, round_floor), from_rational(p, q, precision_bits, round_ceiling),
        precision_bits
    )


def exact(v: Mpf, precision_bits: int) -> CertifiedScalar:
    return CertifiedScalar(v, v, precision_bits)


def pi(precision_bits: int) -> CertifiedScalar:
    return CertifiedScalar(mpf_pi(precision_bits, round_floor), mpf_pi(precision_bits, round_ceiling), precision_bits)


def pi_squared(precision_bits: int) -> CertifiedScalar:
    return pi(precision_bits).square()


def ln2(precision_bits: int) -> CertifiedScalar:
    return CertifiedScalar(mpf_ln2(precision_bits, round_floor), mpf_ln2(precision_bits, round_ceiling), precision_bits)


def e(precision_bits: int) -> CertifiedScalar:
    return make_certified(1, precision_bits).exp()


# Module level spellings of the elementary functions.

def sqrt(x: CertifiedScalar) -> CertifiedScalar: return x.sqrt()
def exp(x: CertifiedScalar) -> CertifiedScalar: return x.exp()
def ln(x: CertifiedScalar) -> CertifiedScalar: return x.ln()
def sinh(x: CertifiedScalar) -> CertifiedScalar: return x.sinh()
def cosh(x: CertifiedScalar) -> CertifiedScalar: return x.cosh()
def asinh(x: CertifiedScalar) -> CertifiedScalar: return x.asinh()
def atanh(x: CertifiedScalar) -> CertifiedScalar: return x.atanh()
def acosh(x: CertifiedScalar) -> CertifiedScalar: return x.acosh()


STD_FUNCTIONS = dict(ln=ln, exp=exp, sinh=sinh, cosh=cosh, asinh=asinh, atanh=atanh, acosh=acosh, sqrt=sqrt)


def hull(values: Iterable[CertifiedScalar]) -> CertifiedScalar:
    values = list(values)
    out = values[0]
    for v in values[1:]:
        out = out.hull(v)
    return out


def minimum(a: CertifiedScalar, b: CertifiedScalar) -> CertifiedScalar:
    """Enclosure of ``min(x, y)`` for ``x`` in ``a`` and ``y`` in ``b``."""
    lo = a.lo if mpf_le(a.lo, b.lo) else b.lo
    hi = a.hi if mpf_le(a.hi, b.hi) else b.hi
    return CertifiedScalar(lo, hi, max(a.precision_bits, b.precision_bits))


def maximum(a: CertifiedScalar, b: CertifiedScalar) -> CertifiedScalar:
    lo = a.lo if mpf_ge(a.lo, b.lo) else b.lo
    hi = a.hi if mpf_ge(a.hi, b.hi) else b.hi
    return CertifiedScalar(lo, hi, max(a.precision_bits, b.precision_bits))


def corners(x: CertifiedScalar) -> Tuple[CertifiedScalar, ...]:
    if x.is_exact:
        return (x,)
    return exact(x.lo, x.precision_bits), exact(x.hi, x.precision_bits)


def corner_hull(fn: Callable[..., CertifiedScalar], *args: CertifiedScalar) -> CertifiedScalar:
    """
    Evaluate ``fn`` at every combination of argument endpoints and return the hull.

    Sound whenever ``fn`` is monotone in each argument separately over the boxes involved.
    """
    return hull(fn(*combo) for combo in product(*(corners(a) for a in args)))


def clamp_lower(x: CertifiedScalar, floor_value: Mpf = fzero) -> CertifiedScalar:
    """Intersect ``x`` with ``[floor_value, inf]`` for quantities known to be non-negative."""
    lo = x.lo if mpf_ge(x.lo, floor_value) else floor_value
    hi = x.hi if mpf_ge(x.hi, lo) else lo
    return CertifiedScalar(lo, hi, x.precision_bits)
