import pytest
from mpmath import mp
from mpmath.libmp import finf

from cantorscan.cantor import build_levels
from cantorscan.exceptions import (
    DomainError, IndexOutOfRange, InconsistentBounds, HexagonRealizationError, DegenerateGeometry
)
from cantorscan.hyperbolic import (
    CurveId, LengthBounds, MobiusTrans, collar_eta, upper_bound_atanh, upper_bound_atanh_log, lower_bound_collar,
    atanh_upper, annulus_candidates, annulus_upper_bound, curve_bounds, uniform_bounds, hexagon_seam,
    pants_seam_distance, geodesic_distance, pants_geometry, ATANH, COLLAR, ROUND_ANNULUS, TWO_SLIT, TRIVIAL
)
from cantorscan.numerics import CertifiedScalar, make_certified
from cantorscan.seqspec import LogChannels
from oracles import encloses, atanh_upper as atanh_oracle, collar_lower as collar_oracle, round_annulus_length


def _c(v, prec=128):
    return make_certified(v, prec)


PANTS_GRID = [
    ('1', '2', '3'), ('1/2', '1/2', '4'), ('5', '1', '2'), ('3', '3', '1/10'), ('1', '1', '1'),
    ('2', '1/4', '3/2'), ('1/3', '2', '2'), ('4', '4', '4'), ('3/2', '5/2', '1/2'), ('6', '1', '1'),
]


class TestCurveId:
    def test_ranges(self):
        assert str(CurveId(2, 3)) == 'gamma_2^3'
        assert CurveId(3).uniform
        with pytest.raises(IndexOutOfRange):
            CurveId(0, 1)
        with pytest.raises(IndexOutOfRange):
            CurveId(1, 3)

    def test_bounds_must_be_consistent(self, prec):
        with pytest.raises(InconsistentBounds):
            LengthBounds(curve=CurveId(1, 1), lower=_c(5, prec), upper=_c(4, prec))
        lb = LengthBounds(curve=CurveId(1, 1), lower=_c(1, prec))
        assert lb.interval.upper == mp.inf


class TestFormulaBounds:
    def test_collar_eta(self, prec):
        # sinh(asinh(1)) = 1, so eta(2 asinh 1) = asinh 1
        x = _c(1, prec).asinh() * 2
        assert encloses(collar_eta(x), mp.asinh(1), tol=1e-30)
        assert collar_eta(x).width < 1e-30
        with pytest.raises(DomainError):
            collar_eta(_c(0, prec))

    def test_atanh_bound_constant_half(self, prec):
        value = upper_bound_atanh(_c('1/2', prec))
        assert 17.96 < float(value) < 17.97
        assert encloses(value, atanh_oracle(mp.mpf(1) / 2))

    def test_atanh_domain(self, prec):
        with pytest.raises(DomainError):
            upper_bound_atanh(_c(0, prec))
        with pytest.raises(DomainError):
            upper_bound_atanh(_c('3/2', prec))

    def test_atanh_log_path_brackets_direct(self, prec):
        q = _c('1/100', prec)
        direct = upper_bound_atanh(q).ln()
        via_log = upper_bound_atanh_log(-q.ln(), q).log_value
        assert direct.subset_of(via_log) or direct.intersects(via_log)
        assert encloses(via_log, mp.log(atanh_oracle(mp.mpf(1) / 100)))

    def test_collar_constant_half(self, constant_half, prec):
        value, method = lower_bound_collar(constant_half.channels(1, prec))
        assert method == COLLAR
        assert 2.0e-5 < float(value) < 2.2e-5
        assert encloses(value, collar_oracle(mp.mpf(1) / 2), tol=1e-30)

    def test_collar_trivial(self, prec):
        value, method = lower_bound_collar(LogChannels.from_q(1, _c(1, prec)))
        assert method == TRIVIAL
        assert value.upper == 0

    @pytest.mark.parametrize('n, lo, hi', [(1, 2.0e-5, 2.2e-5), (2, 1.35e-3, 1.45e-3), (3, 1.85, 1.88),
                                           (4, 1570, 1600)])
    def test_collar_iterated(self, iterated, prec, n, lo, hi):
        value, method = lower_bound_collar(iterated.channels(n, prec))
        assert method == COLLAR
        assert lo < float(value) < hi

    def test_atanh_upper_switches_to_log(self, iterated, prec):
        value, log_value = atanh_upper(iterated.channels(3, prec))
        assert log_value is None
        value, log_value = atanh_upper(iterated.channels(4, prec))
        assert log_value is not None
        # ln(pi^2 / atanh(q_4)) ~ lambda_4 ~ 10^343
        assert log_value.log_value.certainly_gt(10 ** 300)
        assert value.upper == mp.inf


class TestCurveBounds:
    def test_level_one_candidates(self, constant_half, prec):
        tree = build_levels(constant_half, 2, prec)
        lb = curve_bounds(constant_half, tree, CurveId(1, 1), prec)
        assert set(lb.candidates) == {ATANH, ROUND_ANNULUS, TWO_SLIT}
        assert 12.26 < float(lb.candidates[ROUND_ANNULUS]) < 12.27
        assert encloses(lb.candidates[ROUND_ANNULUS], round_annulus_length(mp.mpf(1) / 8, mp.mpf(5) / 8))
        assert 17.96 < float(lb.candidates[ATANH]) < 17.97
        assert 4.018 < float(lb.candidates[TWO_SLIT]) < 4.020
        assert lb.upper_method == TWO_SLIT
        assert lb.lower_method == COLLAR
        assert 2.0e-5 < float(lb.lower) < 2.2e-5

    def test_upper_is_smallest_candidate(self, constant_half, prec):
        tree = build_levels(constant_half, 3, prec)
        for i in range(1, 9):
            lb = curve_bounds(constant_half, tree, CurveId(3, i), prec)
            assert all(lb.upper.upper <= c.upper for c in lb.candidates.values())
            assert lb.lower.certainly_lt(lb.upper)

    def test_symmetric_curves_agree(self, constant_half, prec):
        tree = build_levels(constant_half, 2, prec)
        first = curve_bounds(constant_half, tree, CurveId(2, 1), prec)
        last = curve_bounds(constant_half, tree, CurveId(2, 4), prec)
        assert first.upper.intersects(last.upper)
        second = annulus_upper_bound(tree, CurveId(2, 2))
        third = annulus_upper_bound(tree, CurveId(2, 3))
        assert second.intersects(third)

    def test_no_atanh_without_monotone(self, alternating, prec):
        lb = curve_bounds(alternating, None, CurveId(2, 2), prec)
        assert lb.upper is None
        assert lb.interval.hi == finf
        lb = curve_bounds(alternating, None, CurveId(2, 1), prec)
        assert lb.upper_method == ATANH

    def test_log_scale_curve(self, iterated, prec):
        lb = curve_bounds(iterated, None, CurveId(4, 1), prec)
        assert lb.log_scale
        assert lb.upper_method == ATANH
        assert lb.upper_log is not None
        assert 1570 < float(lb.lower) < 1600

    def test_degenerate_level_has_no_ring(self, iterated, prec):
        tree = build_levels(iterated, 4, prec)
        assert annulus_candidates(tree, CurveId(4, 1)) == {}
        assert annulus_candidates(tree, CurveId(3, 1))

    def test_uniform_bounds(self, constant_half, prec):
        lb = uniform_bounds(constant_half, 1, prec)
        assert lb.curve.uniform
        assert lb.upper_method == TWO_SLIT
        assert 6.5 < float(lb.upper) < 6.7
        # index-uniform bounds never beat the per-curve ones
        tree = build_levels(constant_half, 1, prec)
        assert curve_bounds(constant_half, tree, CurveId(1, 1), prec).upper.certainly_lt(lb.upper)

    def test_lower_below_upper_through_level_eight(self, constant_half, prec):
        tree = build_levels(constant_half, 8, prec)
        curves = [CurveId(n, i) for n in range(1, 9) for i in range(1, 2 ** n + 1)]
        bounds = [curve_bounds(constant_half, tree, curve, prec) for curve in curves]
        assert all(b.upper is not None for b in bounds)
        highest_lower = max(b.lower.upper for b in bounds)
        lowest_upper = min(b.upper.lower for b in bounds)
        assert highest_lower < lowest_upper
        first = bounds[0]
        assert 2.0e-5 < float(first.lower) < 2.2e-5
        assert 12.26 < float(first.candidates[ROUND_ANNULUS]) < 12.27
        assert 17.96 < float(first.candidates[ATANH]) < 17.97


class TestMobius:
    def test_algebra(self, prec):
        m = MobiusTrans(_c(2, prec), _c(1, prec), _c(1, prec), _c(1, prec))
        assert m.det().contains(1)
        assert m.tr().contains(3)
        ident = m.compose(m.inverse())
        assert ident.a.contains(1) and ident.b.contains(0) and ident.c.contains(0) and ident.d.contains(1)
        assert m(_c(1, prec)).contains('3/2')
        assert m(None).contains(2)

    def test_axis(self, prec):
        m = MobiusTrans(_c(2, prec), _c(1, prec), _c(1, prec), _c(1, prec))
        z1, z2 = m.geodesic_axis()
        # fixed points of z -> (2z + 1) / (z + 1): z^2 - z - 1 = 0
        assert encloses(z1, (1 - mp.sqrt(5)) / 2)
        assert encloses(z2, (1 + mp.sqrt(5)) / 2)

    def test_axis_errors(self, prec):
        elliptic = MobiusTrans(_c(0, prec), _c(-1, prec), _c(1, prec), _c(1, prec))
        with pytest.raises(HexagonRealizationError):
            elliptic.geodesic_axis()
        diagonal = MobiusTrans(_c(2, prec), _c(0, prec), _c(0, prec), _c('1/2', prec))
        with pytest.raises(HexagonRealizationError):
            diagonal.geodesic_axis()


class TestGeodesicDistance:
    def test_concentric(self, prec):
        d = geodesic_distance((_c(-1, prec), _c(1, prec)), (_c(-2, prec), _c(2, prec)))
        assert encloses(d, mp.log(2), tol=1e-30)

    def test_crossing(self, prec):
        d = geodesic_distance((_c(-1, prec), _c(1, prec)), (_c(0, prec), None))
        assert d.upper == 0

    def test_shared_endpoint(self, prec):
        with pytest.raises(DegenerateGeometry):
            geodesic_distance((_c(0, prec), _c(1, prec)), (_c(1, prec), _c(2, prec)))
        with pytest.raises(DegenerateGeometry):
            geodesic_distance((_c(0, prec), None), (_c(1, prec), None))

    def test_mobius_invariance(self, prec):
        g1, g2 = (_c(-1, prec), _c(1, prec)), (_c(2, prec), _c(3, prec))
        m = MobiusTrans(_c(2, prec), _c(1, prec), _c(1, prec), _c(3, prec))
        before = geodesic_distance(g1, g2)
        after = geodesic_distance(tuple(m(p) for p in g1), tuple(m(p) for p in g2))
        assert encloses(before, mp.acosh(5), tol=1e-30)
        assert encloses(after, mp.acosh(5), tol=1e-30)
        assert before.intersects(after)

    def test_undecidable_is_unbounded(self, prec):
        fuzzy = _c(-1, prec).hull(_c(1, prec))
        d = geodesic_distance((_c(-1, prec), _c(1, prec)), (fuzzy + 5, _c(10, prec)))
        assert d.lower == 0 and d.upper == mp.inf


class TestPants:
    @pytest.fixture
    def symmetric(self, prec):
        # cosh(a/2) = 2
        return _c(2, prec).acosh() * 2

    def test_symmetric_seam(self, symmetric):
        seam = hexagon_seam(symmetric, symmetric, symmetric)
        assert encloses(seam, mp.acosh(2), tol=1e-25)
        assert 1.3169 < float(seam) < 1.3170

    def test_symmetric_distance_routes(self, symmetric):
        pentagon = pants_seam_distance(symmetric, symmetric, symmetric, 'pentagon')
        matrix = pants_seam_distance(symmetric, symmetric, symmetric, 'matrix')
        assert encloses(pentagon, mp.acosh(3), tol=1e-25)
        assert encloses(matrix, mp.acosh(3), tol=1e-20)
        assert pentagon.intersects(matrix)
        assert abs(float(pentagon) - float(matrix)) < 1e-10
        auto = pants_seam_distance(symmetric, symmetric, symmetric)
        assert auto.subset_of(pentagon)

    def test_symmetric_seam_routes(self, symmetric):
        for route in ('closed_form', 'matrix'):
            seam = hexagon_seam(symmetric, symmetric, symmetric, route)
            assert encloses(seam, mp.acosh(2), tol=1e-10)
            assert seam.width < 1e-10

    @pytest.mark.parametrize('a, b, c', PANTS_GRID)
    def test_seam_routes_agree(self, prec, a, b, c):
        args = (_c(a, prec), _c(b, prec), _c(c, prec))
        closed = hexagon_seam(*args, route='closed_form')
        matrix = hexagon_seam(*args, route='matrix')
        assert closed.intersects(matrix)
        assert abs(float(closed) - float(matrix)) < 1e-10
        assert hexagon_seam(*args).subset_of(closed)

    @pytest.mark.parametrize('a, b, c', PANTS_GRID)
    def test_routes_agree(self, prec, a, b, c):
        args = (_c(a, prec), _c(b, prec), _c(c, prec))
        pentagon = pants_seam_distance(*args, route='pentagon')
        matrix = pants_seam_distance(*args, route='matrix')
        assert pentagon.intersects(matrix)
        assert abs(float(pentagon) - float(matrix)) < 1e-10

    @pytest.mark.parametrize('a, b, c', PANTS_GRID)
    def test_swapping_b_and_c(self, prec, a, b, c):
        a, b, c = _c(a, prec), _c(b, prec), _c(c, prec)
        assert hexagon_seam(a, b, c).intersects(hexagon_seam(a, c, b))
        assert abs(float(hexagon_seam(a, b, c)) - float(hexagon_seam(a, c, b))) < 1e-20
        assert pants_seam_distance(a, b, c).intersects(pants_seam_distance(a, c, b))
        assert abs(float(pants_seam_distance(a, b, c)) - float(pants_seam_distance(a, c, b))) < 1e-20

    def test_monotonicity(self, prec):
        one, two = _c(1, prec), _c(2, prec)
        assert pants_seam_distance(one, one, one).certainly_gt(pants_seam_distance(two, one, one))
        assert pants_seam_distance(one, two, two).certainly_gt(pants_seam_distance(one, one, one))
        assert hexagon_seam(two, one, one).certainly_gt(hexagon_seam(one, one, one))
        assert hexagon_seam(one, two, two).certainly_lt(hexagon_seam(one, one, one))

    def test_unbounded_boundary(self, prec):
        one = _c(1, prec)
        open_ended = CertifiedScalar(one.lo, finf, prec)
        seam = hexagon_seam(one, open_ended, open_ended)
        assert seam.lower == 0
        dist = pants_seam_distance(one, open_ended, open_ended, 'pentagon')
        assert dist.upper == mp.inf
        assert dist.certainly_positive()

    def test_errors(self, prec):
        with pytest.raises(DomainError):
            hexagon_seam(_c(0, prec), _c(1, prec), _c(1, prec))
        with pytest.raises(ValueError):
            pants_seam_distance(_c(1, prec), _c(1, prec), _c(1, prec), route='octagon')
        with pytest.raises(ValueError):
            hexagon_seam(_c(1, prec), _c(1, prec), _c(1, prec), route='pentagon')

    def test_pants_geometry(self, constant_half, prec):
        tree = build_levels(constant_half, 3, prec)
        pg = pants_geometry(constant_half, tree, 1, 1, prec)
        assert str(pg.pants) == 'gamma_1^1'
        assert pg.within_pants
        assert len(pg.boundary_lengths) == 3
        assert pg.seam_length.lower >= 0
        assert pg.boundary_to_seam.certainly_positive()
        twin = pants_geometry(constant_half, tree, 1, 2, prec)
        assert twin.seam_length.intersects(pg.seam_length)
