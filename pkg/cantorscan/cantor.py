"""
Levels ``E_n`` of the generalized Cantor set: ``E_0 = [0, 1]`` and every interval of ``E_{n-1}`` loses its central
open interval of relative length ``q_n``, leaving two children of length ``|I_{n-1}| (1 - q_n) / 2``.

Levels whose ``q_n`` only exists in log scale are still built (child lengths are tight) but flagged ``degenerate``,
since the removed gap cannot be certified positive.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from privex.helpers import Dictable

from cantorscan import settings
from cantorscan.exceptions import IndexOutOfRange, PrecisionFailure, DegenerateGeometry
from cantorscan.numerics import CertifiedScalar, make_certified, minimum
from cantorscan.seqspec import SequenceSpec

log = logging.getLogger(__name__)

Endpoints = Tuple[CertifiedScalar, CertifiedScalar]


def _gap_level(n: int, i: int) -> int:
    """Level at which the gap between ``I_n^i`` and ``I_n^{i+1}`` was removed."""
    trailing = (i & -i).bit_length() - 1
    return n - trailing


@dataclass(frozen=True)
class CantorLevel(Dictable):
    n: int
    length: CertifiedScalar
    gap: CertifiedScalar
    """Width of the central gap removed from each interval of the previous level."""
    intervals: Tuple[Endpoints, ...] = ()
    gap_after: Tuple[CertifiedScalar, ...] = ()
    degenerate: bool = False

    @property
    def count(self) -> int:
        return len(self.intervals)

    @property
    def max_endpoint_width(self):
        widths = [x.width for pair in self.intervals for x in pair]
        return max(widths) if widths else make_certified(0).width


@dataclass(frozen=True)
class LevelGeometry(Dictable):
    """Index-uniform geometry of level ``n``: the common interval length and the narrowest gap at levels ``<= n``."""
    n: int
    length: CertifiedScalar
    min_gap: CertifiedScalar
    degenerate: bool = False


@dataclass(frozen=True)
class CantorTree(Dictable):
    spec: SequenceSpec
    levels: Tuple[CantorLevel, ...] = field(default_factory=tuple)
    precision_bits: int = 128

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> CantorLevel:
        if not 1 <= n <= self.depth:
            raise IndexOutOfRange("level not built", n=n, depth=self.depth)
        return self.levels[n - 1]

    def _check(self, n: int, i: int) -> CantorLevel:
        lvl = self.level(n)
        if not 1 <= i <= lvl.count:
            raise IndexOutOfRange("interval index out of range", n=n, i=i, count=lvl.count)
        return lvl

    def interval(self, n: int, i: int) -> Endpoints:
        return self._check(n, i).intervals[i - 1]

    def gaps(self, n: int, i: int) -> Tuple[Optional[CertifiedScalar], Optional[CertifiedScalar]]:
        """
        Widths of the removed open intervals directly left and right of ``I_n^i`` (at whatever level they were
        removed). ``None`` stands for the unbounded side of ``I_n^1`` / ``I_n^{2^n}``.
        """
        lvl = self._check(n, i)
        left = lvl.gap_after[i - 2] if i > 1 else None
        right = lvl.gap_after[i - 1] if i < lvl.count else None
        return left, right

    def min_adjacent_gap(self, n: int, i: int) -> CertifiedScalar:
        left, right = self.gaps(n, i)
        if left is None or right is None:
            return right if left is None else left
        return minimum(left, right)

    def is_disjoint(self, n: int) -> bool:
        ivs = self.level(n).intervals
        return all(a[1].certainly_lt(b[0]) for a, b in zip(ivs, ivs[1:]))

    def is_nested(self, n: int) -> bool:
        if n == 1:
            return all(l.certainly_ge(0) and r.certainly_le(1) for l, r in self.level(1).intervals)
        parents = self.level(n - 1).intervals
        for idx, (l, r) in enumerate(self.level(n).intervals):
            pl, pr = parents[idx // 2]
            if not (l.intersects(pl) or l.certainly_gt(pl)) or not (r.intersects(pr) or r.certainly_lt(pr)):
                return False
        return True

    def is_symmetric(self, n: int) -> bool:
        """Whether level ``n`` is invariant under ``x -> 1 - x`` up to enclosure width."""
        ivs = self.level(n).intervals
        return all(ivs[k][0].intersects(1 - ivs[-1 - k][1]) for k in range(len(ivs)))

    def rows(self) -> Iterator[Tuple[int, int, CertifiedScalar, CertifiedScalar]]:
        for lvl in self.levels:
            for i, (l, r) in enumerate(lvl.intervals, start=1):
                yield lvl.n, i, l, r


def _child_intervals(parents: List[Endpoints], length: CertifiedScalar) -> List[Endpoints]:
    out = []
    for l, r in parents:
        out.append((l, l + length))
        out.append((r - length, r))
    return out


def build_levels(spec: SequenceSpec, max_level: int, precision_bits: int = None) -> CantorTree:
    """
    Build ``E_1 .. E_N``. Raises :class:`.PrecisionFailure` when an endpoint enclosure grows wider than
    ``settings.BLOWUP_WIDTH``.

        >>> from cantorscan.seqspec import parse_spec
        >>> tree = build_levels(parse_spec('{"family": "constant", "q": "1/2"}'), 2, 64)
        >>> [x.to_decimal_pair(4) for x in tree.interval(2, 2)]
        [('0.1875', '0.1875'), ('0.25', '0.25')]

    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    if max_level < 1:
        raise IndexOutOfRange("max_level must be >= 1", max_level=max_level)
    blowup = make_certified(settings.BLOWUP_WIDTH, prec)
    one = make_certified(1, prec)
    parents: List[Endpoints] = [(make_certified(0, prec), one)]
    parent_length, gap_widths, levels = one, [], []

    for n in range(1, max_level + 1):
        q = spec.channels(n, prec).q_hull()
        length = (parent_length * (one - q)).half()
        gap = q * parent_length
        degenerate = not gap.certainly_positive()
        if degenerate:
            log.info("level %d of %s is geometry-degenerate (q_n is log-scale only)", n, spec.family)
        gap_widths.append(gap)
        intervals = _child_intervals(parents, length)
        gap_after = tuple(gap_widths[_gap_level(n, i) - 1] for i in range(1, len(intervals)))
        lvl = CantorLevel(
            n=n, length=length, gap=gap, intervals=tuple(intervals), gap_after=gap_after, degenerate=degenerate
        )
        if lvl.max_endpoint_width > blowup.upper:
            raise PrecisionFailure(
                "Cantor endpoint enclosures exceed the blow-up bound", level=n, precision_bits=prec,
                blowup_width=settings.BLOWUP_WIDTH
            )
        levels.append(lvl)
        parents, parent_length = intervals, length

    return CantorTree(spec=spec, levels=tuple(levels), precision_bits=prec)


def level_geometry(spec: SequenceSpec, n: int, precision_bits: int = None) -> LevelGeometry:
    """
    Common interval length ``|I_n|`` and the narrowest gap removed at any level ``<= n``, from the channels alone
    (no ``2^n`` interval lists are built).
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    if n < 1:
        raise IndexOutOfRange("level must be >= 1", n=n)
    one = make_certified(1, prec)
    length, narrowest = one, None
    for k in range(1, n + 1):
        q = spec.channels(k, prec).q_hull()
        gap = q * length
        narrowest = gap if narrowest is None else minimum(narrowest, gap)
        length = (length * (one - q)).half()
    return LevelGeometry(n=n, length=length, min_gap=narrowest, degenerate=not narrowest.certainly_positive())


def interval(tree: CantorTree, n: int, i: int) -> Endpoints:
    return tree.interval(n, i)


def gaps(tree: CantorTree, n: int, i: int) -> Tuple[Optional[CertifiedScalar], Optional[CertifiedScalar]]:
    return tree.gaps(n, i)


def require_geometry(tree: CantorTree, n: int) -> CantorLevel:
    lvl = tree.level(n)
    if lvl.degenerate:
        raise DegenerateGeometry("level geometry is degenerate", level=n, family=tree.spec.family)
    return lvl
