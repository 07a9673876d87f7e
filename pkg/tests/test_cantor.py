import pytest

from cantorscan import settings
from cantorscan.cantor import build_levels, level_geometry, interval, gaps, require_geometry
from cantorscan.exceptions import IndexOutOfRange, DegenerateGeometry, PrecisionFailure
from cantorscan.seqspec import parse_spec


def _endpoints(pair):
    return tuple(x.to_decimal_pair(6) for x in pair)


def test_constant_half_levels(constant_half, prec):
    tree = build_levels(constant_half, 2, prec)
    assert tree.depth == 2
    assert _endpoints(interval(tree, 1, 1)) == (('0', '0'), ('0.25', '0.25'))
    assert _endpoints(interval(tree, 1, 2)) == (('0.75', '0.75'), ('1', '1'))
    assert _endpoints(interval(tree, 2, 2)) == (('0.1875', '0.1875'), ('0.25', '0.25'))
    assert _endpoints(interval(tree, 2, 3)) == (('0.75', '0.75'), ('0.8125', '0.8125'))
    assert tree.level(2).count == 4
    assert tree.level(2).length.contains('1/16')


def test_gaps_come_from_the_removing_level(constant_half, prec):
    tree = build_levels(constant_half, 3, prec)
    left, right = gaps(tree, 2, 2)
    assert left.contains('1/8')
    assert right.contains('1/2')
    assert gaps(tree, 2, 1)[0] is None
    assert gaps(tree, 2, 4)[1] is None
    assert tree.min_adjacent_gap(2, 2).contains('1/8')
    assert tree.min_adjacent_gap(3, 1).contains('1/32')


def test_structure_checks(constant_half, explicit_tail, prec):
    for spec in (constant_half, explicit_tail):
        tree = build_levels(spec, 4, prec)
        for n in range(1, 5):
            assert tree.is_disjoint(n)
            assert tree.is_nested(n)
            assert tree.is_symmetric(n)
    tree = build_levels(explicit_tail, 1, prec)
    left, right = interval(tree, 1, 1)
    assert left.is_exact and right.contains('1/5')


def test_rows_cover_every_interval(alternating, prec):
    tree = build_levels(alternating, 3, prec)
    rows = list(tree.rows())
    assert len(rows) == 2 + 4 + 8
    assert rows[0][:2] == (1, 1)
    assert rows[-1][:2] == (3, 8)


def test_index_errors(constant_half, prec):
    tree = build_levels(constant_half, 2, prec)
    with pytest.raises(IndexOutOfRange):
        tree.interval(3, 1)
    with pytest.raises(IndexOutOfRange):
        tree.interval(2, 5)
    with pytest.raises(IndexOutOfRange):
        build_levels(constant_half, 0, prec)
    with pytest.raises(IndexOutOfRange):
        level_geometry(constant_half, 0, prec)


def test_log_scale_level_is_degenerate(iterated, prec):
    tree = build_levels(iterated, 4, prec)
    assert not tree.level(3).degenerate
    assert tree.level(4).degenerate
    assert require_geometry(tree, 3).n == 3
    with pytest.raises(DegenerateGeometry):
        require_geometry(tree, 4)
    # child lengths stay tight even though the gap is not certified positive
    assert tree.level(4).length.width < 1e-30


def test_level_geometry_matches_tree(constant_half, prec):
    geo = level_geometry(constant_half, 3, prec)
    assert geo.length.contains('1/64')
    assert geo.min_gap.contains('1/32')
    assert not geo.degenerate
    tree = build_levels(constant_half, 3, prec)
    assert geo.length.intersects(tree.level(3).length)


def test_blowup_guard(monkeypatch, prec):
    monkeypatch.setattr(settings, 'BLOWUP_WIDTH', '0')
    spec = parse_spec({'family': 'constant', 'q': '1/3'}, prec)
    with pytest.raises(PrecisionFailure):
        build_levels(spec, 2, prec)
