"""
Conformal invariants of ring domains.

Normalization: the round annulus ``{1 < |z| < R}`` has modulus ``ln(R) / (2 pi)``, and a ring of modulus ``m`` has a
core geodesic of hyperbolic length ``pi / m``. A ring that sits essentially in a hyperbolic surface gives an upper
bound on the length of the geodesic homotopic to its core.
"""
import logging
from dataclasses import dataclass

from mpmath import mp
from privex.helpers import Dictable

from cantorscan import settings
from cantorscan.exceptions import DomainError, DegenerateGeometry
from cantorscan.numerics import CertifiedScalar, make_certified, pi, clamp_lower

log = logging.getLogger(__name__)

NORMALIZATION = 'mod({1<|z|<R}) = ln(R)/(2*pi), length = pi/mod'


@dataclass(frozen=True)
class RingModulus(Dictable):
    value: CertifiedScalar
    kind: str = 'ring'
    normalization: str = NORMALIZATION

    def core_length(self) -> CertifiedScalar:
        return core_length(self)


def agm(a: CertifiedScalar, b: CertifiedScalar) -> CertifiedScalar:
    """
    Arithmetic-geometric mean of ``0 <= b <= a``. Every iterate pair brackets the limit, so the loop may stop at any
    point; it stops once the bracket is as narrow as the precision allows or stops shrinking.
    """
    prec = max(a.precision_bits, b.precision_bits)
    bracket = CertifiedScalar(b.lo, a.hi, prec)
    for _ in range(settings.AGM_MAX_ITER):
        a, b = (a + b).half(), (a * b).sqrt()
        narrower = CertifiedScalar(b.lo, a.hi, prec)
        if not narrower.width < bracket.width:
            break
        bracket = narrower
        if bracket.width <= mp.ldexp(bracket.upper, 4 - prec):
            break
    else:
        log.debug("AGM stopped at AGM_MAX_ITER=%d with width %s", settings.AGM_MAX_ITER, bracket.width)
    return bracket


def _complement(k: CertifiedScalar) -> CertifiedScalar:
    return clamp_lower(1 - k.square()).sqrt()


def elliptic_K(k: CertifiedScalar) -> CertifiedScalar:
    """
    Complete elliptic integral of the first kind ``K(k) = pi / (2 * AGM(1, sqrt(1 - k^2)))`` for ``0 <= k < 1``.

        >>> elliptic_K(make_certified(0, 64)).to_decimal_pair(10)
        ('1.570796326', '1.570796327')

    """
    if k.lower < 0:
        raise DomainError("elliptic_K needs k >= 0", function='elliptic_K', endpoint=str(k.lower))
    if not k.certainly_lt(1):
        raise DomainError("elliptic_K needs k < 1", function='elliptic_K', endpoint=str(k.upper))
    one = make_certified(1, k.precision_bits)
    return pi(k.precision_bits) / (agm(one, _complement(k)) * 2)


def grotzsch_mu(r: CertifiedScalar) -> CertifiedScalar:
    """``mu(r) = (pi/2) K(sqrt(1 - r^2)) / K(r)``, strictly decreasing on ``(0, 1)``."""
    if not r.certainly_positive() or not r.certainly_lt(1):
        raise DomainError("grotzsch_mu needs 0 < r < 1", function='grotzsch_mu', endpoint=str(r))
    one = make_certified(1, r.precision_bits)
    # K(r') / K(r) = AGM(1, r') / AGM(1, r)
    return pi(r.precision_bits).half() * agm(one, _complement(r)) / agm(one, r)


def round_annulus_modulus(r1: CertifiedScalar, r2: CertifiedScalar) -> RingModulus:
    if not r1.certainly_positive():
        raise DegenerateGeometry("round annulus needs r1 > 0", r1=str(r1))
    if not r1.certainly_lt(r2):
        raise DegenerateGeometry("round annulus needs r1 < r2", r1=str(r1), r2=str(r2))
    prec = max(r1.precision_bits, r2.precision_bits)
    return RingModulus((r2 / r1).ln() / (pi(prec) * 2), kind='round_annulus')


def modulus_from_cross_ratio(lam: CertifiedScalar) -> CertifiedScalar:
    """
    Modulus of the sphere minus two disjoint real slits whose endpoint cross-ratio
    ``(x2-x1)(x4-x3) / ((x3-x1)(x4-x2))`` is ``lam``. The configuration is moved to ``[-1,-k] u [k,1]`` with
    ``k = (1 - sqrt(lam)) / (1 + sqrt(lam))``, whose modulus is ``K(k) / K(k')``.
    """
    prec = lam.precision_bits
    unit = CertifiedScalar(make_certified(0, prec).lo, make_certified(1, prec).hi, prec)
    lam = lam.intersection(unit)
    if lam is None:
        raise DegenerateGeometry("cross-ratio outside (0, 1)")
    s = lam.sqrt()
    k = clamp_lower((1 - s) / (1 + s))
    k_prime = (s.sqrt() * 2) / (1 + s)
    one = make_certified(1, prec)
    return agm(one, k) / agm(one, k_prime)


def two_slit_modulus(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar, d: CertifiedScalar) -> RingModulus:
    """
    Modulus of the ring ``C u {inf}`` minus ``[a, b] u [c, d]`` for ``a < b < c < d``.

        >>> m = two_slit_modulus(*(make_certified(x, 64) for x in ('0', '1/4', '3/4', '1')))
        >>> 0.7816 < float(m.value) < 0.7818
        True

    """
    if not (a.certainly_lt(b) and c.certainly_lt(d)):
        raise DegenerateGeometry("two-slit ring needs a < b and c < d", a=str(a), b=str(b), c=str(c), d=str(d))
    if not b.certainly_lt(c):
        reason = "touching slits" if b.intersects(c) else "slits out of order"
        raise DegenerateGeometry(f"two-slit ring needs b < c ({reason})", b=str(b), c=str(c))
    lam = (b - a) * (d - c) / ((c - a) * (d - b))
    return RingModulus(modulus_from_cross_ratio(lam), kind='two_slit')


def outer_slit_modulus(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar, d: CertifiedScalar) -> RingModulus:
    """
    Modulus of the ring separating the slit ``[b, c]`` from the slit through infinity ``[d, inf] u [-inf, a]``,
    for ``a < b < c < d``.
    """
    if not (a.certainly_lt(b) and b.certainly_lt(c) and c.certainly_lt(d)):
        raise DegenerateGeometry("outer slit ring needs a < b < c < d", a=str(a), b=str(b), c=str(c), d=str(d))
    lam = (c - b) * (d - a) / ((d - b) * (c - a))
    return RingModulus(modulus_from_cross_ratio(lam), kind='two_slit')


def symmetric_gap_modulus(length: CertifiedScalar, gap: CertifiedScalar) -> RingModulus:
    """
    :func:`.outer_slit_modulus` for a slit of ``length`` with a gap of ``gap`` on both sides, i.e. cross-ratio
    ``L(L + 2g) / (L + g)^2``. The modulus grows with the gap, so a lower bound on ``gap`` bounds the modulus from
    below.
    """
    if not length.certainly_positive():
        raise DegenerateGeometry("slit length must be positive", length=str(length))
    g = clamp_lower(gap)
    lam = length * (length + g * 2) / (length + g).square()
    return RingModulus(modulus_from_cross_ratio(lam), kind='two_slit')


def core_length(m: RingModulus) -> CertifiedScalar:
    """Hyperbolic length ``pi / mod`` of the ring's core geodesic; an infinite modulus endpoint gives length 0."""
    value = m.value
    if not value.upper > 0:
        raise DegenerateGeometry("zero modulus has no core geodesic", modulus=str(value))
    return pi(value.precision_bits) / clamp_lower(value)


def best_modulus(*moduli: RingModulus) -> RingModulus:
    """The ring whose core-length bound is smallest (largest modulus lower end)."""
    best = None
    for m in moduli:
        if best is None or m.value.lower > best.value.lower:
            best = m
    return best
