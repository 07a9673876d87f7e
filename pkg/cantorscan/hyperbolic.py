"""
Hyperbolic length bounds for the curves ``gamma_n^i`` of the natural pants decomposition, and the pants
trigonometry built on top of them.

Two families of bounds are combined per curve:

* formula bounds driven by ``q_n`` alone: the collar lower bound ``2 eta(pi^2 / ln((1+q)/(2q)))`` and the atanh upper
  bound ``pi^2 / atanh(q)``;
* geometry bounds from ring domains around ``I_n^i`` in the built Cantor tree (see :mod:`cantorscan.conformal`).

Pants distances are computed two ways: a closed form obtained by cutting the right-angled hexagon into two
right-angled pentagons, and an explicit realization of the pants group in ``SL(2, R)`` whose geodesic axes are then
measured with :func:`.geodesic_distance`.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from mpmath.libmp import finf, fzero, fone

from privex.helpers import Dictable

from cantorscan import settings
from cantorscan.cantor import CantorTree, LevelGeometry, level_geometry
from cantorscan.conformal import round_annulus_modulus, two_slit_modulus, outer_slit_modulus, core_length, \
    symmetric_gap_modulus
from cantorscan.exceptions import DomainError, InconsistentBounds, HexagonRealizationError, DegenerateGeometry, \
    IndexOutOfRange, NumericsError
from cantorscan.numerics import CertifiedScalar, LogScaleValue, make_certified, pi, pi_squared, ln2, clamp_lower, \
    exact

log = logging.getLogger(__name__)

COLLAR, ATANH, ROUND_ANNULUS, TWO_SLIT, TRIVIAL = 'collar', 'atanh', 'round_annulus', 'two_slit', 'trivial'

Geodesic = Tuple[Optional[CertifiedScalar], Optional[CertifiedScalar]]
"""A complete geodesic of the upper half-plane, given by its two boundary points (``None`` is infinity)."""


@dataclass(frozen=True)
class CurveId(Dictable):
    """``gamma_n^i``; ``i=None`` stands for every curve of level ``n`` (index-uniform bounds)."""
    n: int
    i: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise IndexOutOfRange("curve level must be >= 1", n=self.n)
        if self.i is not None and not 1 <= self.i <= 2 ** self.n:
            raise IndexOutOfRange("curve index out of range", n=self.n, i=self.i)

    @property
    def uniform(self) -> bool:
        return self.i is None

    def __str__(self):
        return f"gamma_{self.n}^{'*' if self.i is None else self.i}"


@dataclass(frozen=True)
class LengthBounds(Dictable):
    """
    Certified two-sided bounds on the length of one curve. ``upper`` is ``None`` when no upper-bound method applies.
    ``candidates`` keeps every upper bound that was computed, keyed by method.
    """
    curve: CurveId
    lower: CertifiedScalar
    upper: Optional[CertifiedScalar] = None
    lower_method: str = COLLAR
    upper_method: Optional[str] = None
    upper_log: Optional[LogScaleValue] = None
    log_scale: bool = False
    candidates: Dict[str, CertifiedScalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.upper is not None and self.lower.certainly_gt(self.upper):
            raise InconsistentBounds(
                "certified lower bound exceeds certified upper bound", curve=str(self.curve),
                lower=str(self.lower), upper=str(self.upper), upper_method=self.upper_method
            )

    @property
    def interval(self) -> CertifiedScalar:
        """Every length compatible with both bounds."""
        hi = self.upper.hi if self.upper is not None else finf
        return CertifiedScalar(self.lower.lo, hi, self.lower.precision_bits)


@dataclass(frozen=True)
class PantsGeometry(Dictable):
    """Pants ``P_n^i`` bounded by ``gamma_n^i``, ``gamma_{n+1}^{2i-1}`` and ``gamma_{n+1}^{2i}``."""
    pants: CurveId
    boundary_lengths: Tuple[CertifiedScalar, CertifiedScalar, CertifiedScalar]
    seam_length: CertifiedScalar
    boundary_to_seam: CertifiedScalar
    within_pants: bool = True


class MobiusTrans:
    """Real Mobius transformation ``z -> (a z + b) / (c z + d)`` with certified coefficients; ``None`` is infinity."""

    def __init__(self, a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar, d: CertifiedScalar):
        self.a, self.b, self.c, self.d = a, b, c, d

    def inverse(self) -> 'MobiusTrans':
        return MobiusTrans(self.d, -self.b, -self.c, self.a)

    def compose(self, other: 'MobiusTrans') -> 'MobiusTrans':
        return MobiusTrans(
            self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d
        )

    def tr(self) -> CertifiedScalar:
        return self.a + self.d

    def det(self) -> CertifiedScalar:
        return self.a * self.d - self.b * self.c

    def geodesic_axis(self) -> Geodesic:
        """Repelling and attracting fixed points of a hyperbolic element with ``c != 0``."""
        disc = self.tr().square() - 4
        if not disc.certainly_positive():
            raise HexagonRealizationError("element is not certainly hyperbolic", trace=str(self.tr()))
        if not (self.c.certainly_positive() or self.c.certainly_lt(0)):
            raise HexagonRealizationError("axis through infinity not supported", c=str(self.c))
        root, ad = disc.sqrt(), self.a - self.d
        return (ad - root) / (self.c * 2), (ad + root) / (self.c * 2)

    def __call__(self, z: Optional[CertifiedScalar]) -> Optional[CertifiedScalar]:
        if z is None:
            return None if self.c.is_exact and self.c.lo == fzero else self.a / self.c
        den = self.c * z + self.d
        if den.is_exact and den.lo == fzero:
            return None
        return (self.a * z + self.b) / den

    def __repr__(self):
        return f"MobiusTrans({self.a}, {self.b}, {self.c}, {self.d})"


#####
# Formula bounds
#####

def collar_eta(x: CertifiedScalar) -> CertifiedScalar:
    """
    ``eta(x) = asinh(1 / sinh(x / 2))``, the half-width of the standard collar around a geodesic of length ``x``.
    Extreme ``x`` in either direction stay sound: an ``x`` enclosure touching 0 gives ``eta`` an infinite upper end.
    """
    if x.lower < 0 or not x.upper > 0:
        raise DomainError("collar function needs x > 0", function='collar_eta', endpoint=str(x))
    return x.half().sinh().reciprocal().asinh()


def upper_bound_atanh(q: CertifiedScalar) -> CertifiedScalar:
    """``pi^2 / atanh(q)`` for ``0 < q < 1``; a ``q`` enclosure reaching 1 gives lower end 0."""
    if not q.certainly_positive() or q.upper > 1:
        raise DomainError("atanh upper bound needs 0 < q <= 1", function='upper_bound_atanh', endpoint=str(q))
    return pi_squared(q.precision_bits) / q.atanh()


def upper_bound_atanh_log(lam: CertifiedScalar, q: CertifiedScalar) -> LogScaleValue:
    """
    ``ln(pi^2 / atanh(q))`` from ``lambda = ln(1/q)``: since ``q <= atanh(q) <= q / (1 - q^2)`` the log lies in
    ``[2 ln pi + lambda + ln(1 - q^2), 2 ln pi + lambda]``.
    """
    prec = lam.precision_bits
    two_ln_pi = pi(prec).ln() * 2
    hi = two_ln_pi + lam
    lo = hi + (1 - q.square()).ln()
    return LogScaleValue(CertifiedScalar(lo.lo, hi.hi, prec))


def collar_argument(channels) -> CertifiedScalar:
    """``ln((1 + q) / (2 q))``, through ``lambda - ln 2 + ln(1 + q)`` when ``q`` is log-scale only."""
    if channels.q is not None:
        return (channels.q.reciprocal() + 1).half().ln()
    prec = channels.lam.precision_bits
    q_hi = channels.q_hull().hi
    return channels.lam - ln2(prec) + CertifiedScalar(fzero, q_hi, prec)


def lower_bound_collar(channels) -> Tuple[CertifiedScalar, str]:
    """
    ``2 eta(pi^2 / ln((1+q)/(2q)))``, valid for every ``gamma_n^i``. Returns the bound and its provenance:
    ``collar``, or ``trivial`` (bound 0) when the logarithm cannot be certified positive.
    """
    prec = channels.lam.precision_bits
    arg = collar_argument(channels)
    if not arg.certainly_positive():
        log.debug("collar bound at n=%d is trivial, ln((1+q)/(2q)) = %s", channels.n, arg)
        return make_certified(0, prec), TRIVIAL
    return clamp_lower(collar_eta(pi_squared(prec) / arg) * 2), COLLAR


def atanh_upper(channels) -> Tuple[CertifiedScalar, Optional[LogScaleValue]]:
    if channels.q is not None:
        return upper_bound_atanh(channels.q), None
    value_log = upper_bound_atanh_log(channels.lam, channels.q_hull())
    return value_log.to_hull(), value_log


#####
# Geometry bounds
#####

def annulus_candidates(tree: CantorTree, curve: CurveId) -> Dict[str, CertifiedScalar]:
    """
    Core-length bounds of the rings built around ``I_n^i``:

    * ``round_annulus``: centred at the midpoint, radii ``|I|/2`` and ``|I|/2 + min(adjacent gaps)``;
    * ``two_slit``: ``I`` against the hull of the rest of the set for the outermost intervals, and ``I`` against the
      slit through infinity bounded by both adjacent gaps otherwise.

    Empty when the level geometry is degenerate.
    """
    lvl = tree.level(curve.n)
    if lvl.degenerate:
        return {}
    l, r = tree.interval(curve.n, curve.i)
    g_left, g_right = tree.gaps(curve.n, curve.i)
    prec = tree.precision_bits
    r1 = lvl.length.half()
    out = {ROUND_ANNULUS: core_length(round_annulus_modulus(r1, r1 + tree.min_adjacent_gap(curve.n, curve.i)))}
    if g_left is None:
        ring = two_slit_modulus(l, r, r + g_right, make_certified(1, prec))
    elif g_right is None:
        ring = two_slit_modulus(make_certified(0, prec), l - g_left, l, r)
    else:
        ring = outer_slit_modulus(l - g_left, l, r, r + g_right)
    out[TWO_SLIT] = core_length(ring)
    return out


def _best(candidates: Dict[str, CertifiedScalar]) -> Tuple[Optional[str], Optional[CertifiedScalar]]:
    best_method, best = None, None
    for method in sorted(candidates):
        value = candidates[method]
        if best is None or value.upper < best.upper:
            best_method, best = method, value
    return best_method, best


def annulus_upper_bound(tree: CantorTree, curve: CurveId) -> Optional[CertifiedScalar]:
    """Smallest ring core length around ``I_n^i``; ``None`` for degenerate levels."""
    return _best(annulus_candidates(tree, curve))[1]


def uniform_annulus_candidates(geometry: LevelGeometry) -> Dict[str, CertifiedScalar]:
    """Ring bounds valid for every ``i`` at once, from the level length and the narrowest gap."""
    if geometry.degenerate:
        return {}
    r1 = geometry.length.half()
    return {
        ROUND_ANNULUS: core_length(round_annulus_modulus(r1, r1 + geometry.min_gap)),
        TWO_SLIT: core_length(symmetric_gap_modulus(geometry.length, geometry.min_gap)),
    }


def _assemble(curve: CurveId, channels, candidates: Dict[str, CertifiedScalar],
              upper_log: Optional[LogScaleValue]) -> LengthBounds:
    lower, lower_method = lower_bound_collar(channels)
    method, upper = _best(candidates)
    return LengthBounds(
        curve=curve, lower=lower, upper=upper, lower_method=lower_method, upper_method=method,
        upper_log=upper_log if method == ATANH else None, log_scale=channels.log_scale, candidates=candidates
    )


def curve_bounds(spec, tree: Optional[CantorTree], curve: CurveId, precision_bits: int = None) -> LengthBounds:
    """
    Bounds for one curve. The atanh bound is attached for ``i = 1``, and for every ``i`` only when the sequence spec
    carries a monotone-decreasing certificate from index 1. Ring bounds are attached whenever ``tree`` covers level
    ``n`` with non-degenerate geometry.
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    channels = spec.channels(curve.n, prec)
    candidates, upper_log = {}, None
    if curve.i == 1 or spec.monotone_from_start:
        candidates[ATANH], upper_log = atanh_upper(channels)
    if tree is not None and curve.n <= tree.depth:
        candidates.update(annulus_candidates(tree, curve))
    return _assemble(curve, channels, candidates, upper_log)


def uniform_bounds(spec, n: int, precision_bits: int = None) -> LengthBounds:
    """Bounds valid for every curve of level ``n`` simultaneously, without building the level."""
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    channels = spec.channels(n, prec)
    candidates, upper_log = {}, None
    if spec.monotone_from_start:
        candidates[ATANH], upper_log = atanh_upper(channels)
    candidates.update(uniform_annulus_candidates(level_geometry(spec, n, prec)))
    return _assemble(CurveId(n), channels, candidates, upper_log)


#####
# Pants trigonometry
#####

def _require_positive(*lengths: CertifiedScalar):
    for x in lengths:
        if not x.certainly_positive():
            raise DomainError("boundary lengths must be positive", function='pants', endpoint=str(x))


def _corner(x: CertifiedScalar, upper: bool) -> CertifiedScalar:
    return exact(x.hi if upper else x.lo, x.precision_bits)


def _between_corners(fn: Callable[..., CertifiedScalar], low_at: Tuple[bool, ...], *args: CertifiedScalar,
                     limit_low=fzero, limit_high=finf) -> CertifiedScalar:
    """
    Enclosure of ``fn`` over the box ``args`` for ``fn`` monotone in each argument: ``low_at[k]`` says whether the
    minimum sits at the upper end of argument ``k``. A corner with an infinite coordinate is replaced by the limit.
    """
    prec = args[0].precision_bits
    low_corner = [_corner(x, up) for x, up in zip(args, low_at)]
    high_corner = [_corner(x, not up) for x, up in zip(args, low_at)]
    lo = limit_low if not all(c.is_finite for c in low_corner) else fn(*low_corner).lo
    hi = limit_high if not all(c.is_finite for c in high_corner) else fn(*high_corner).hi
    return CertifiedScalar(lo, hi, prec)


def _seam_point(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar) -> CertifiedScalar:
    ha, hb, hc = a.half(), b.half(), c.half()
    cosh_s = (ha.cosh() + hb.cosh() * hc.cosh()) / (hb.sinh() * hc.sinh())
    return clamp_lower(cosh_s, fone).acosh()


def _pants_group(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar) -> Tuple[MobiusTrans, MobiusTrans]:
    """
    Generators of the pants group: ``A = diag(e^{b/2}, e^{-b/2})`` and ``B`` with ``tr B = 2 cosh(c/2)`` and
    ``tr AB = -2 cosh(a/2)``. The axis of ``A`` is the imaginary axis.
    """
    y, z = c.half().cosh(), a.half().cosh()
    e_pos, e_neg = b.half().exp(), (-b.half()).exp()
    p = -(z + y * e_neg) / b.half().sinh()
    s = y * 2 - p
    off = (1 - p * s).sqrt()
    zero = make_certified(0, a.precision_bits)
    return MobiusTrans(e_pos, zero, zero, e_neg), MobiusTrans(p, off, -off, s)


def _axis_of_b(mat_b: MobiusTrans) -> Geodesic:
    z1, z2 = mat_b.geodesic_axis()
    if not (z1 * z2).certainly_positive():
        raise HexagonRealizationError("axis of B crosses the axis of A", z1=str(z1), z2=str(z2))
    return z1, z2


def _matrix_seam_point(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar) -> CertifiedScalar:
    # the b-c seam is the common perpendicular of the axes of A and B
    _, mat_b = _pants_group(a, b, c)
    return geodesic_distance((make_certified(0, a.precision_bits), None), _axis_of_b(mat_b))


SEAM_ROUTES = dict(closed_form=_seam_point, matrix=_matrix_seam_point)


def _routed(routes: Dict[str, Callable[..., CertifiedScalar]], low_at: Tuple[bool, ...], route: str,
            a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar) -> CertifiedScalar:
    """
    Evaluate one route of ``routes`` over the box ``(a, b, c)``. ``auto`` intersects the first route with the
    ``matrix`` route, and keeps the first alone when the matrix route cannot certify its sign conditions.
    """
    if route == 'auto':
        primary = next(iter(routes))
        first = _routed(routes, low_at, primary, a, b, c)
        try:
            second = _routed(routes, low_at, 'matrix', a, b, c)
        except (HexagonRealizationError, DegenerateGeometry, NumericsError) as e:
            log.debug("matrix route unavailable for pants (%s, %s, %s): %s", a, b, c, e)
            return first
        both = first.intersection(second)
        if both is None:
            raise HexagonRealizationError(
                f"{primary} and matrix routes disagree", **{primary: str(first), 'matrix': str(second)}
            )
        return both
    if route not in routes:
        raise ValueError(f"unknown route {route!r}, expected one of {', '.join(routes)} or auto")
    return _between_corners(routes[route], low_at, a, b, c)


def hexagon_seam(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar, route: str = 'auto') -> CertifiedScalar:
    """
    Length of the seam joining boundaries ``b`` and ``c`` of the pants ``(a, b, c)``:
    ``cosh s = (cosh(a/2) + cosh(b/2) cosh(c/2)) / (sinh(b/2) sinh(c/2))``.

    ``s`` increases with ``a`` and decreases with ``b`` and ``c``. Unbounded ``b`` or ``c`` push the lower end to 0,
    an unbounded ``a`` the upper end to infinity. ``route`` is ``closed_form``, ``matrix`` (the common perpendicular
    of two generator axes of the pants group) or ``auto``.

    :raises HexagonRealizationError: when the two routes give disjoint enclosures
    """
    _require_positive(a, b, c)
    return _routed(SEAM_ROUTES, (False, True, True), route, a, b, c)


def _pentagon_point(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar) -> CertifiedScalar:
    # the common perpendicular of side a/2 and the b-c seam splits the hexagon into two right-angled pentagons
    A, B, C = a.half().cosh(), b.half().cosh(), c.half().cosh()
    sinh_h = (B.square() + C.square() + A * B * C * 2).sqrt() / a.half().sinh()
    return clamp_lower(sinh_h).asinh()


def _matrix_point(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar) -> CertifiedScalar:
    """
    The b-c seam lies on the circle ``|z| = sqrt(z1 z2)`` through the fixed points of ``B``, and the a-boundary lifts
    to the axis of ``AB``.
    """
    mat_a, mat_b = _pants_group(a, b, c)
    z1, z2 = _axis_of_b(mat_b)
    radius = (z1 * z2).sqrt()
    return geodesic_distance((-radius, radius), mat_a.compose(mat_b).geodesic_axis())


PANTS_ROUTES = dict(pentagon=_pentagon_point, matrix=_matrix_point)


def pants_seam_distance(a: CertifiedScalar, b: CertifiedScalar, c: CertifiedScalar,
                        route: str = 'auto') -> CertifiedScalar:
    """
    Distance, inside the pants ``(a, b, c)``, from boundary ``a`` to the seam joining boundaries ``b`` and ``c``.

    The distance decreases with ``a`` and increases with ``b`` and ``c``. ``route`` is ``pentagon`` (closed form),
    ``matrix`` (explicit realization in ``SL(2, R)``) or ``auto``, which intersects both and falls back to the
    pentagon route alone when the matrix route cannot certify its sign conditions.

    :raises HexagonRealizationError: when the two routes give disjoint enclosures
    """
    _require_positive(a, b, c)
    return _routed(PANTS_ROUTES, (True, False, False), route, a, b, c)


def _normalizer(g: Geodesic) -> MobiusTrans:
    """Mobius map sending the endpoints of ``g`` to ``0`` and infinity."""
    a1, a2 = g
    ref = a1 if a1 is not None else a2
    prec = ref.precision_bits
    one, zero = make_certified(1, prec), make_certified(0, prec)
    if a1 is None:
        return MobiusTrans(zero, one, one, -a2)
    if a2 is None:
        return MobiusTrans(one, -a1, zero, one)
    return MobiusTrans(one, -a1, one, -a2)


def geodesic_distance(g1: Geodesic, g2: Geodesic) -> CertifiedScalar:
    """
    Hyperbolic distance between two complete geodesics of the upper half-plane. After moving ``g1`` to the imaginary
    axis, ``g2`` has endpoints ``u1 < u2`` of one sign and ``cosh d = (u2 + u1) / (u2 - u1)``; endpoints of opposite
    signs mean the geodesics cross (distance 0). Undecidable sign patterns give ``[0, inf]``.

    :raises DegenerateGeometry: when the geodesics share an endpoint (or coincide)
    """
    for p in g1:
        for w in g2:
            if (p is None and w is None) or (p is not None and w is not None and p.is_exact and p == w):
                raise DegenerateGeometry("geodesics share an endpoint")
    ref = next(x for x in (*g1, *g2) if x is not None)
    prec = ref.precision_bits
    m = _normalizer(g1)
    w1, w2 = m(g2[0]), m(g2[1])
    if w1 is None or w2 is None:
        raise DegenerateGeometry("geodesics share an endpoint")
    if (w1.certainly_positive() and w2.certainly_lt(0)) or (w1.certainly_lt(0) and w2.certainly_positive()):
        return make_certified(0, prec)
    if not ((w1.certainly_positive() and w2.certainly_positive()) or (w1.certainly_lt(0) and w2.certainly_lt(0))):
        return CertifiedScalar(fzero, finf, prec)
    u1, u2 = abs(w1), abs(w2)
    if u1.certainly_gt(u2):
        u1, u2 = u2, u1
    elif not u1.certainly_lt(u2):
        # endpoints too close to order: arbitrarily distant
        return CertifiedScalar(fzero, finf, prec)
    return clamp_lower((u2 + u1) / (u2 - u1), fone).acosh()


def pants_geometry(spec, tree: Optional[CantorTree], n: int, i: int, precision_bits: int = None) -> PantsGeometry:
    """
    Seam length and boundary-to-seam distance of ``P_n^i``, from the boundary length intervals (lower bound to upper
    bound, unbounded above when no upper bound applies).
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    a = curve_bounds(spec, tree, CurveId(n, i), prec).interval
    b = curve_bounds(spec, tree, CurveId(n + 1, 2 * i - 1), prec).interval
    c = curve_bounds(spec, tree, CurveId(n + 1, 2 * i), prec).interval
    return PantsGeometry(
        pants=CurveId(n, i), boundary_lengths=(a, b, c), seam_length=hexagon_seam(a, b, c),
        boundary_to_seam=pants_seam_distance(a, b, c)
    )
