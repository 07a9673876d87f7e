"""
Decision layer: certifies the hypotheses of the uncountability criterion (``q_n > c`` along a subsequence) and the
countability criterion (``q_n * ln ln(1/q_{n+1}) -> inf``), and derives the effective levels past which the
quasiconformal-rigidity argument applies.

Verdicts:

* ``Uncountable``: witnesses found within the horizon AND a certified property of the sequence guarantees
  infinitely many.
* ``CountableEvidence``: the criterion sequence is certified increasing from some index on, and (for the builtin
  families) a closed-form divergence certificate exists. For user closed forms the increase is numerical evidence.
* ``Unknown``: neither.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from privex.helpers import Dictable

from cantorscan import settings
from cantorscan.exceptions import DomainError, InconsistentVerdict, InconsistentBounds, ConfigError
from cantorscan.hyperbolic import CurveId, curve_bounds, uniform_bounds, upper_bound_atanh, \
    atanh_upper, lower_bound_collar, collar_argument, pants_seam_distance, COLLAR
from cantorscan.numerics import CertifiedScalar, make_certified, pi, pi_squared, ln2, from_fraction
from cantorscan.seqspec import SequenceSpec, SpecProperty, RECURRENT, DIVERGENT

log = logging.getLogger(__name__)

UNCOUNTABLE, COUNTABLE_EVIDENCE, UNKNOWN = 'Uncountable', 'CountableEvidence', 'Unknown'
VERDICTS = (UNCOUNTABLE, COUNTABLE_EVIDENCE, UNKNOWN)

CERTIFIED, REFUTED, STRADDLES = 'certified', 'refuted', 'straddles'

BUILTIN_FAMILIES = ('constant', 'alternating_half_power', 'iterated_exponential', 'explicit_with_tail')

Number = Union[CertifiedScalar, Fraction, str, int]


def _scalar(value: Number, prec: int) -> CertifiedScalar:
    return value if isinstance(value, CertifiedScalar) else make_certified(value, prec)


@dataclass(frozen=True)
class WitnessResult(Dictable):
    c: CertifiedScalar
    c_text: str
    witnesses: List[int] = field(default_factory=list)
    certificate: Optional[SpecProperty] = None
    short_geodesic_bound: Optional[CertifiedScalar] = None
    """``pi^2 / atanh(c)``: every witness curve ``gamma_n^1`` is shorter than this."""
    automatic_c: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.certificate is not None and len(self.witnesses) >= settings.MIN_WITNESSES


@dataclass(frozen=True)
class CriterionValue(Dictable):
    n: int
    value: Optional[CertifiedScalar] = None
    defined: bool = True
    negative: bool = False
    """``ln ln(1/q_{n+1}) <= 0`` cannot be excluded (``q_{n+1} >= 1/e`` is possible)."""


@dataclass(frozen=True)
class CriterionTrace(Dictable):
    values: List[CriterionValue] = field(default_factory=list)
    increasing_from: Optional[int] = None
    """Least index from which the trace is certified strictly increasing up to the horizon."""
    certificate: Optional[SpecProperty] = None
    notes: List[str] = field(default_factory=list)
    numerical_only: bool = False
    """True for non-builtin families, where an increasing trace is accepted without a divergence certificate."""

    @property
    def certified(self) -> bool:
        return self.increasing_from is not None and (self.certificate is not None or self.numerical_only)


@dataclass(frozen=True)
class ClassificationReport(Dictable):
    spec_digest: str
    precision_bits: int
    horizon: int
    verdict: str
    witnesses: WitnessResult
    criterion: CriterionTrace
    notes: List[str] = field(default_factory=list)

    @property
    def criterion_values(self) -> List[CriterionValue]:
        return self.criterion.values


@dataclass(frozen=True)
class LevelCertificate(Dictable):
    """``lhs > rhs`` at level ``n`` for threshold ``kind`` (``n1`` or ``n2``)."""
    kind: str
    n: int
    lhs: Optional[CertifiedScalar]
    rhs: CertifiedScalar
    status: str

    @property
    def holds(self) -> bool:
        return self.status == CERTIFIED


@dataclass(frozen=True)
class ThresholdReport(Dictable):
    K: CertifiedScalar
    n1: Optional[int] = None
    n2: Optional[int] = None
    certificates: List[LevelCertificate] = field(default_factory=list)

    @property
    def N(self) -> Optional[int]:
        if self.n1 is None or self.n2 is None:
            return None
        return max(self.n1, self.n2)


@dataclass(frozen=True)
class CensusResult(Dictable):
    c: CertifiedScalar
    bound: CertifiedScalar
    curves: List[Tuple[int, CertifiedScalar]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.curves)


@dataclass(frozen=True)
class HalfTwistResult(Dictable):
    K: CertifiedScalar
    composed: CertifiedScalar
    """``sqrt(K^4 + 1)``, the least dilatation of a full twist along a curve longer than ``pi K^2``."""
    squared: CertifiedScalar
    gap_certified: bool
    length_certified: bool
    twist_bound: Optional[CertifiedScalar] = None

    @property
    def obstruction(self) -> bool:
        """A K-qc half twist would square to a full twist of dilatation at most ``K^2``: impossible here."""
        return self.gap_certified and self.length_certified and self.twist_bound is not None and \
            self.twist_bound.certainly_gt(self.squared)


def _status(lhs: Optional[CertifiedScalar], rhs: CertifiedScalar) -> str:
    if lhs is None:
        return STRADDLES
    if lhs.certainly_gt(rhs):
        return CERTIFIED
    if lhs.certainly_le(rhs):
        return REFUTED
    return STRADDLES


#####
# Uncountability
#####

def _witness_indices(spec: SequenceSpec, horizon: int, c: CertifiedScalar, prec: int) -> List[int]:
    return [n for n in range(1, horizon + 1) if spec.channels(n, prec).q_hull().certainly_gt(c)]


def _recurrent_certificate(spec: SequenceSpec, c: CertifiedScalar, prec: int) -> Optional[SpecProperty]:
    prop = spec.find_property(RECURRENT)
    if prop is not None and from_fraction(prop.value, prec).certainly_gt(c):
        return prop
    return None


def check_uncountable(spec: SequenceSpec, horizon: int, c: Number = None, precision_bits: int = None) -> WitnessResult:
    """
    Witness indices ``n <= horizon`` with certified ``q_n > c``, each giving a curve ``gamma_n^1`` shorter than
    ``pi^2 / atanh(c)``.

    When ``c`` is not backed by a certificate but the sequence spec carries a recurrent lower bound ``v``, the constant
    ``c* = v / (1 + v)`` is used instead (noted in the result).
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    c = settings.WITNESS_C if c is None else c
    c_text = str(c)
    c_val = _scalar(c, prec)
    if not c_val.certainly_positive() or not c_val.certainly_lt(1):
        raise DomainError("witness constant must lie in (0, 1)", function='check_uncountable', endpoint=c_text)

    notes, automatic = [], False
    certificate = _recurrent_certificate(spec, c_val, prec)
    fallback = spec.find_property(RECURRENT)
    if certificate is None and fallback is not None:
        auto = fallback.value / (1 + fallback.value)
        notes.append(
            f"c={c_text} is not backed by a recurrent bound; using c*=v/(1+v)={auto} from v={fallback.value}"
        )
        c_val, c_text, automatic = from_fraction(auto, prec), str(auto), True
        certificate = _recurrent_certificate(spec, c_val, prec)

    witnesses = _witness_indices(spec, horizon, c_val, prec)
    if certificate is not None and certificate.period == 1:
        notes.append(f"q_n >= {certificate.value} for all n >= {certificate.start}: inf q_n > 0")
    if certificate is not None and certificate.period > 1:
        notes.append(
            f"witnesses along n = {certificate.start} + {certificate.period}k, where q_n >= {certificate.value}"
        )
    if certificate is None and witnesses:
        notes.append(f"{len(witnesses)} witness(es) within horizon {horizon} but no certificate for infinitely many")
    if certificate is not None and len(witnesses) < settings.MIN_WITNESSES:
        notes.append(f"only {len(witnesses)} witness(es) within horizon {horizon}, need {settings.MIN_WITNESSES}")

    return WitnessResult(
        c=c_val, c_text=c_text, witnesses=witnesses, certificate=certificate,
        short_geodesic_bound=upper_bound_atanh(c_val), automatic_c=automatic, notes=notes
    )


def short_geodesic_census(spec: SequenceSpec, horizon: int, c: Number = None,
                          precision_bits: int = None) -> CensusResult:
    """Witness curves ``gamma_n^1`` whose certified length is below ``pi^2 / atanh(c)``."""
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    result = check_uncountable(spec, horizon, c, prec)
    bound, curves = result.short_geodesic_bound, []
    for n in result.witnesses:
        lb = curve_bounds(spec, None, CurveId(n, 1), prec)
        if lb.upper is not None and lb.upper.certainly_lt(bound):
            curves.append((n, lb.upper))
    return CensusResult(c=result.c, bound=bound, curves=curves)


#####
# Countability
#####

def check_countable(spec: SequenceSpec, horizon: int, precision_bits: int = None) -> CriterionTrace:
    """
    Enclosures of ``a_n = q_n * ln ln(1/q_{n+1})`` for ``n = 1 .. horizon`` and the least index from which they are
    certified strictly increasing.
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    values, notes = [], []
    for n in range(1, horizon + 1):
        value = spec.criterion(n, prec)
        negative = spec.channels(n + 1, prec).mu_nonpositive_possible
        values.append(CriterionValue(n=n, value=value, defined=value is not None, negative=negative))

    start = None
    for k in range(len(values) - 1, 0, -1):
        cur, prev = values[k], values[k - 1]
        if not (cur.defined and prev.defined) or not cur.value.certainly_gt(prev.value):
            break
        start = prev.n
    if start is not None and horizon - start + 1 < settings.MIN_WITNESSES:
        notes.append(f"increasing run from n={start} is shorter than {settings.MIN_WITNESSES} indices")
        start = None
    if start is not None and not values[-1].value.certainly_positive():
        notes.append("criterion not certified positive at the horizon")
        start = None

    negatives = [v.n for v in values if v.negative]
    if negatives:
        notes.append(f"ln ln(1/q_(n+1)) <= 0 possible at n in {negatives[:10]}{'...' if len(negatives) > 10 else ''}")

    certificate = spec.find_property(DIVERGENT)
    numerical_only = spec.family not in BUILTIN_FAMILIES
    if numerical_only and start is not None:
        notes.append("user closed form: divergence is numerical evidence only")
    return CriterionTrace(
        values=values, increasing_from=start, certificate=certificate, notes=notes, numerical_only=numerical_only
    )


def classify(spec: SequenceSpec, horizon: int = None, c: Number = None,
             precision_bits: int = None) -> ClassificationReport:
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    horizon = settings.HORIZON if horizon is None else horizon
    if horizon < 2:
        raise ConfigError("classification needs horizon >= 2", horizon=horizon)

    witnesses = check_uncountable(spec, horizon, c, prec)
    trace = check_countable(spec, horizon, prec)
    if witnesses.certified and trace.certified:
        raise InconsistentVerdict(
            "spec certified both uncountable and countable", family=spec.family,
            recurrent=witnesses.certificate.canonical(), increasing_from=trace.increasing_from
        )
    if witnesses.certified:
        verdict = UNCOUNTABLE
    elif trace.certified:
        verdict = COUNTABLE_EVIDENCE
    else:
        verdict = UNKNOWN

    notes = list(witnesses.notes) + list(trace.notes)
    if any(spec.channels(n, prec).log_scale for n in (horizon, horizon + 1)):
        notes.append("q_n is only representable in log scale near the horizon")
    log.info("classified %s at horizon %d: %s", spec.family, horizon, verdict)
    return ClassificationReport(
        spec_digest=spec.digest(prec), precision_bits=prec, horizon=horizon, verdict=verdict, witnesses=witnesses,
        criterion=trace, notes=notes
    )


#####
# Quasiconformal distortion
#####

def _dilatation(K: Number, prec: int, function: str) -> CertifiedScalar:
    K = _scalar(K, prec)
    if K.lower < 1:
        raise DomainError("dilatation must be >= 1", function=function, endpoint=str(K))
    return K


def wolpert_range(K: Number, length: Number, precision_bits: int = None) -> Tuple[CertifiedScalar, CertifiedScalar]:
    """
    Admissible lengths ``[length / K, K * length]`` of the image of a geodesic under a ``K``-quasiconformal map.

        >>> lo, hi = wolpert_range('2', '1', 64)
        >>> float(lo), float(hi)
        (0.5, 2.0)

    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    K = _dilatation(K, prec, 'wolpert_range')
    length = _scalar(length, prec)
    if not length.certainly_positive():
        raise DomainError("length must be positive", function='wolpert_range', endpoint=str(length))
    return length / K, length * K


def dehn_twist_min_dilatation(twists: int, length: Number, precision_bits: int = None) -> CertifiedScalar:
    """``sqrt(((2|twists| - 1) * length / pi)^2 + 1)``: no qc map homotopic to the twist has smaller dilatation."""
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    if twists == 0:
        raise DomainError("a Dehn twist needs a nonzero twist count", function='dehn_twist_min_dilatation', endpoint=0)
    length = _scalar(length, prec)
    if length.lower < 0:
        raise DomainError("length must be positive", function='dehn_twist_min_dilatation', endpoint=str(length))
    scaled = length * (2 * abs(twists) - 1) / pi(prec)
    return (scaled.square() + 1).sqrt()


def half_twist_obstruction(K: Number, length: Number, precision_bits: int = None) -> HalfTwistResult:
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    K = _dilatation(K, prec, 'half_twist_obstruction')
    length = _scalar(length, prec)
    squared = K.square()
    composed = (squared.square() + 1).sqrt()
    length_certified = length.certainly_gt(pi(prec) * squared)
    return HalfTwistResult(
        K=K, composed=composed, squared=squared, gap_certified=composed.certainly_gt(squared),
        length_certified=length_certified,
        twist_bound=dehn_twist_min_dilatation(1, length, prec) if length_certified else None
    )


def crossing_contradiction(K: Number, source_length: Number, target_length: Number,
                           precision_bits: int = None) -> bool:
    """Whether ``target_length`` lies certainly outside the Wolpert range of ``source_length``."""
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    lo, hi = wolpert_range(K, source_length, prec)
    target = _scalar(target_length, prec)
    return target.certainly_gt(hi) or target.certainly_lt(lo)


#####
# Effective thresholds
#####

def _n2_certificate(spec: SequenceSpec, n: int, K: CertifiedScalar, prec: int) -> LevelCertificate:
    lower, _ = lower_bound_collar(spec.channels(n, prec))
    rhs = pi(prec) * K.square()
    return LevelCertificate(kind='n2', n=n, lhs=lower, rhs=rhs, status=_status(lower, rhs))


def _n1_certificate(spec: SequenceSpec, n: int, K: CertifiedScalar, prec: int) -> LevelCertificate:
    here, below = uniform_bounds(spec, n, prec), uniform_bounds(spec, n + 1, prec)
    ratio = None
    if here.upper is not None and here.lower.certainly_positive() and below.lower.certainly_positive():
        distance = pants_seam_distance(here.interval, below.interval, below.interval)
        ratio = distance / here.upper
    return LevelCertificate(kind='n1', n=n, lhs=ratio, rhs=K, status=_status(ratio, K))


def _first(certificates: List[LevelCertificate]) -> Optional[int]:
    return next((c.n for c in certificates if c.holds), None)


def threshold_n2(spec: SequenceSpec, K: Number, horizon: int, precision_bits: int = None) -> Optional[int]:
    """Least ``n <= horizon`` whose collar lower bound (valid for every ``gamma_n^i``) exceeds ``pi K^2``."""
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    K = _dilatation(K, prec, 'threshold_n2')
    return _first([_n2_certificate(spec, n, K, prec) for n in range(1, horizon + 1)])


def threshold_n1(spec: SequenceSpec, K: Number, horizon: int, precision_bits: int = None) -> Optional[int]:
    """
    Least ``n <= horizon`` where the distance from ``gamma_n^i`` to the seam of ``P_n^i``, divided by the length of
    ``gamma_n^i``, certainly exceeds ``K`` for every ``i`` (index-uniform bounds only).
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    K = _dilatation(K, prec, 'threshold_n1')
    return _first([_n1_certificate(spec, n, K, prec) for n in range(1, horizon + 1)])


def effective_level(spec: SequenceSpec, K: Number = None, horizon: int = None,
                    precision_bits: int = None) -> ThresholdReport:
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    horizon = settings.HORIZON if horizon is None else horizon
    K = _dilatation(settings.DILATATION_K if K is None else K, prec, 'effective_level')
    n2_certs = [_n2_certificate(spec, n, K, prec) for n in range(1, horizon + 1)]
    n1_certs = [_n1_certificate(spec, n, K, prec) for n in range(1, horizon + 1)]
    report = ThresholdReport(K=K, n1=_first(n1_certs), n2=_first(n2_certs), certificates=n1_certs + n2_certs)
    log.info("thresholds for %s at K=%s: n1=%s n2=%s N=%s", spec.family, K, report.n1, report.n2, report.N)
    return report


#####
# Ratio growth
#####

@dataclass(frozen=True)
class RatioPoint(Dictable):
    n: int
    ratio: CertifiedScalar
    lower_next: CertifiedScalar
    upper_here: CertifiedScalar
    through_criterion: bool = False
    """The ratio was narrowed with :func:`.ratio_through_criterion`."""


def ratio_through_criterion(spec: SequenceSpec, n: int, precision_bits: int = None) -> Optional[CertifiedScalar]:
    """
    ``lower(gamma_{n+1}) / upper(gamma_n)`` rewritten around ``a_n = q_n * mu_{n+1}``, which stays narrow after
    ``q_n`` and ``lambda_{n+1}`` leave the representable range.

    With ``A = lambda_{n+1} - ln 2 + ln(1 + q_{n+1})`` and ``x = pi^2 / A`` the ratio is
    ``2 eta(x) atanh(q_n) / pi^2``. Writing ``atanh(q) = q (1 + tau)`` with ``0 <= tau <= q^2 / (1 - q^2)`` and
    ``eta(x) = ln(4 / x) + w`` with ``-ln cosh(x/2) <= w <= sinh(x/2)^2 / 4`` gives::

        (2 / pi^2) (1 + tau) (a_n + q_n (ln(1 - delta) + ln(4 / pi^2) + w))
        delta = (ln 2 - ln(1 + q_{n+1})) / lambda_{n+1}

    ``None`` when ``a_n`` is undefined or a hypothesis (``q_n < 1``, ``A > 0``, ``delta < 1``) cannot be certified.
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    here, after = spec.channels(n, prec), spec.channels(n + 1, prec)
    a_n = spec.criterion(n, prec)
    q = here.q_hull()
    if a_n is None or not q.certainly_lt(1):
        return None
    arg = collar_argument(after)
    delta = (ln2(prec) - (after.q_hull() + 1).ln()) / after.lam
    if not arg.certainly_positive() or not delta.certainly_lt(1):
        return None
    p2 = pi_squared(prec)
    x = p2 / arg
    w = CertifiedScalar((-x.half().cosh().ln()).lo, (x.half().sinh().square() / 4).hi, prec)
    c = (1 - delta).ln() + (make_certified(4, prec) / p2).ln() + w
    q2 = q.square()
    tau = CertifiedScalar(make_certified(0, prec).lo, (q2 / (1 - q2)).hi, prec)
    return (1 + tau) * (a_n + q * c) * 2 / p2


def length_ratio_trace(spec: SequenceSpec, nmax: int, precision_bits: int = None) -> List[RatioPoint]:
    """
    ``lower(gamma_{n+1}) / upper(gamma_n)`` for ``n = 1 .. nmax - 1``, with the atanh formula as the upper bound.
    The quotient of the two bounds is intersected with :func:`.ratio_through_criterion` whenever the collar bound is
    not trivial.
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    out = []
    for n in range(1, nmax):
        upper, _ = atanh_upper(spec.channels(n, prec))
        lower, method = lower_bound_collar(spec.channels(n + 1, prec))
        ratio, refined = lower / upper, None
        if method == COLLAR:
            refined = ratio_through_criterion(spec, n, prec)
        if refined is not None:
            narrowed = ratio.intersection(refined)
            if narrowed is None:
                raise InconsistentBounds(
                    "length ratio routes disagree", n=n, quotient=str(ratio), criterion=str(refined)
                )
            ratio = narrowed
        out.append(RatioPoint(
            n=n, ratio=ratio, lower_next=lower, upper_here=upper, through_criterion=refined is not None
        ))
    return out


def certified_increase(points: List[RatioPoint]) -> int:
    """Largest ``m`` such that the ratios at ``1 .. m`` are certified strictly increasing."""
    m = 1 if points else 0
    for a, b in zip(points, points[1:]):
        if not b.ratio.certainly_gt(a.ratio):
            break
        m = b.n
    return m
