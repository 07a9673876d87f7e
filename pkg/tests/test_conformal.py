import pytest
from mpmath import mp

from cantorscan.conformal import (
    agm, elliptic_K, grotzsch_mu, round_annulus_modulus, two_slit_modulus, outer_slit_modulus, symmetric_gap_modulus,
    core_length, best_modulus, modulus_from_cross_ratio
)
from cantorscan.exceptions import DomainError, DegenerateGeometry
from cantorscan.numerics import make_certified
from oracles import encloses, series_K, sc_two_slit_modulus, sc_outer_slit_modulus, cross_ratio

TOL = 1e-15


def _c(*values, prec=128):
    return [make_certified(v, prec) for v in values]


class TestElliptic:
    def test_K_at_zero(self, prec):
        assert encloses(elliptic_K(make_certified(0, prec)), mp.pi / 2)

    @pytest.mark.parametrize('k', ['0.05', '0.1', '0.2'])
    def test_K_against_series(self, prec, k):
        assert encloses(elliptic_K(make_certified(k, prec)), series_K(mp.mpf(k)), tol=TOL)

    @pytest.mark.parametrize('k', [(1, 3), (9, 10), (999, 1000)])
    def test_K_against_mpmath(self, prec, k):
        kv = make_certified(f"{k[0]}/{k[1]}", prec)
        assert encloses(elliptic_K(kv), mp.ellipk((mp.mpf(k[0]) / k[1]) ** 2), tol=1e-12)

    def test_agm(self, prec):
        one, half = _c(1, '1/2', prec=prec)
        assert encloses(agm(one, half), mp.agm(1, mp.mpf(1) / 2))

    def test_K_domain(self, prec):
        with pytest.raises(DomainError):
            elliptic_K(make_certified(1, prec))
        with pytest.raises(DomainError):
            elliptic_K(make_certified(-1, prec))

    def test_precision_nesting(self):
        vals = [elliptic_K(make_certified('1/3', p)) for p in (64, 128, 256)]
        assert vals[0].intersects(vals[1]) and vals[1].intersects(vals[2])
        assert vals[2].width < vals[1].width < vals[0].width


class TestGrotzsch:
    @pytest.mark.parametrize('r', [f'{k}/21' for k in range(1, 21)])
    def test_functional_equation(self, prec, r):
        rv = make_certified(r, prec)
        r_prime = (1 - rv.square()).sqrt()
        assert encloses(grotzsch_mu(rv) * grotzsch_mu(r_prime), mp.pi ** 2 / 4, tol=TOL)

    def test_fixed_point(self, prec):
        r = make_certified('1/2', prec).sqrt()
        assert encloses(grotzsch_mu(r), mp.pi / 2, tol=TOL)

    def test_decreasing(self, prec):
        a, b = grotzsch_mu(make_certified('0.2', prec)), grotzsch_mu(make_certified('0.3', prec))
        assert a.certainly_gt(b)

    def test_domain(self, prec):
        with pytest.raises(DomainError):
            grotzsch_mu(make_certified(0, prec))
        with pytest.raises(DomainError):
            grotzsch_mu(make_certified(1, prec))


class TestRings:
    def test_round_annulus(self, prec):
        m = round_annulus_modulus(make_certified(1, prec), make_certified(5, prec))
        assert encloses(m.value, mp.log(5) / (2 * mp.pi))
        assert m.kind == 'round_annulus'
        assert encloses(core_length(m), 2 * mp.pi ** 2 / mp.log(5))

    def test_quarter_slits(self, prec):
        m = two_slit_modulus(*_c('0', '1/4', '3/4', '1', prec=prec))
        assert 0.7816 < float(m.value) < 0.7818
        assert 4.018 < float(core_length(m)) < 4.020

    @pytest.mark.parametrize('config', [
        ('0', '1/4', '3/4', '1'),
        ('0', '1/8', '1/2', '1'),
        ('-1', '-1/3', '1/3', '1'),
        ('0', '1/16', '15/16', '1'),
        ('0', '1/2', '3/4', '1'),
        ('-3', '-1', '1/10', '2'),
    ])
    def test_two_slit_against_schwarz_christoffel(self, prec, config):
        m = two_slit_modulus(*_c(*config, prec=prec))
        assert encloses(m.value, sc_two_slit_modulus(*config), tol=TOL)

    @pytest.mark.parametrize('config', [
        ('0', '1/4', '3/4', '1'),
        ('0', '1/10', '1/2', '3'),
        ('1', '2', '5', '7'),
    ])
    def test_two_slit_mobius_invariance(self, prec, config):
        # z -> 1 / (z + 1) is decreasing on (-1, inf), so it reverses the order of the endpoints
        points = _c(*config, prec=prec)
        images = [1 / (p + 1) for p in reversed(points)]
        before, after = two_slit_modulus(*points), two_slit_modulus(*images)
        assert before.value.intersects(after.value)
        assert abs(float(before.value) - float(after.value)) < 1e-20

    @pytest.mark.parametrize('config', [
        ('-1', '0', '1/4', '1'),
        ('-1/8', '0', '1/4', '3/8'),
        ('0', '1/3', '2/3', '1'),
        ('-10', '1', '2', '3'),
        ('0', '1/100', '2/100', '1'),
    ])
    def test_outer_slit_against_schwarz_christoffel(self, prec, config):
        m = outer_slit_modulus(*_c(*config, prec=prec))
        assert encloses(m.value, sc_outer_slit_modulus(*config), tol=TOL)

    def test_cross_ratio_route(self, prec):
        lam = make_certified('1/9', prec)
        assert encloses(modulus_from_cross_ratio(lam), sc_two_slit_modulus('0', '1/4', '3/4', '1'), tol=TOL)
        assert float(cross_ratio('0', '1/4', '3/4', '1')) == pytest.approx(1 / 9)

    def test_symmetric_gap_matches_outer_slit(self, prec):
        L, g = _c('1/4', '1/8', prec=prec)
        sym = symmetric_gap_modulus(L, g)
        outer = outer_slit_modulus(*_c('-1/8', '0', '1/4', '3/8', prec=prec))
        assert sym.value.intersects(outer.value)

    def test_modulus_grows_with_gap(self, prec):
        L = make_certified('1/4', prec)
        small, large = symmetric_gap_modulus(L, make_certified('1/16', prec)), \
            symmetric_gap_modulus(L, make_certified('1/2', prec))
        assert large.value.certainly_gt(small.value)
        assert core_length(large).certainly_lt(core_length(small))

    def test_best_modulus(self, prec):
        a = round_annulus_modulus(*_c(1, 2, prec=prec))
        b = round_annulus_modulus(*_c(1, 3, prec=prec))
        assert best_modulus(a, b) is b

    def test_degenerate(self, prec):
        with pytest.raises(DegenerateGeometry):
            two_slit_modulus(*_c('0', '1/2', '1/2', '1', prec=prec))
        with pytest.raises(DegenerateGeometry):
            two_slit_modulus(*_c('0', '3/4', '1/2', '1', prec=prec))
        with pytest.raises(DegenerateGeometry):
            round_annulus_modulus(*_c(2, 1, prec=prec))
        with pytest.raises(DegenerateGeometry):
            round_annulus_modulus(*_c(0, 1, prec=prec))
        with pytest.raises(DegenerateGeometry):
            outer_slit_modulus(*_c('0', '1/2', '1/4', '1', prec=prec))
