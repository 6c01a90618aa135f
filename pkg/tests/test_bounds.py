import math

import pytest

from conftest import random_quadruple
from ffplane.bounds import (
    check_par_mean,
    check_par_mean_all,
    check_par_pair,
    check_par_all_pairs,
    check_rhom_lower,
    check_rhom_relation,
    check_unit_distance,
    extreme_case_reports,
    sweep,
)
from ffplane.errors import InvalidPair, InvalidRadius
from ffplane.field import PrimeFieldCtx
from ffplane.geometry import PointSet, full_plane


def test_unit_distance_fixture(ctx3):
    plane = full_plane(ctx3)
    rep = check_unit_distance(ctx3, plane, plane, 1)
    assert rep.lhs == pytest.approx(9.0)          # |36 - 81/3|
    assert rep.rhs == pytest.approx(2 * math.sqrt(3) * 9)
    assert rep.holds


def test_unit_distance_empty(ctx5):
    empty = PointSet(5, [])
    rep = check_unit_distance(ctx5, empty, empty, 2)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.holds and rep.ratio == 0


def test_unit_distance_rejects_zero_radius(ctx5):
    plane = full_plane(ctx5)
    with pytest.raises(InvalidRadius):
        check_unit_distance(ctx5, plane, plane, 0)


def test_par_mean_fixture(ctx3):
    plane = full_plane(ctx3)
    rep = check_par_mean(ctx3, plane, plane, plane, plane, 1)
    assert rep.lhs == pytest.approx(81.0)         # |324 - 729/3|
    assert rep.rhs == pytest.approx(math.sqrt(3) * 81)
    assert rep.holds
    empty = PointSet(3, [])
    rep = check_par_mean(ctx3, empty, plane, plane, plane, 1)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.holds


def test_par_pairs_full_plane_is_flat(ctx5):
    plane = full_plane(ctx5)
    # all nonzero circles have the same size, so all Par_t agree
    for rep in check_par_all_pairs(ctx5, plane, plane, plane, plane):
        assert rep.lhs == 0 and rep.holds


def test_par_pairs_rejects_bad_radii(ctx5):
    plane = full_plane(ctx5)
    with pytest.raises(InvalidPair):
        check_par_pair(ctx5, plane, plane, plane, plane, 2, 2)
    with pytest.raises(InvalidRadius):
        check_par_pair(ctx5, plane, plane, plane, plane, 0, 2)


def test_rhom_relation_fixture(ctx3):
    plane = full_plane(ctx3)
    rep = check_rhom_relation(ctx3, plane, plane, plane, plane, 1)
    assert rep.lhs == pytest.approx(36.0)         # |144 - 324/3|
    # four directions, each intersection is the whole plane (9 points),
    # so the side is 2*sqrt(3) * 4 * sqrt(9*9)
    assert rep.rhs == pytest.approx(2 * math.sqrt(3) * 36)
    assert rep.holds
    assert rep.extra["rhom_t"] == 144 and rep.extra["par_t"] == 324
    assert rep.extra["sharp_hypothesis"]          # 81*81 >= 27


def test_rhom_relation_empty(ctx3):
    empty = PointSet(3, [])
    rep = check_rhom_relation(ctx3, empty, empty, empty, empty, 1)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.holds


def test_rhom_lower_full_plane(ctx5):
    plane = full_plane(ctx5)
    rep = check_rhom_lower(ctx5, plane, plane, plane, plane, 1)
    # ratio = (|S_t|/q)^2 for the full plane
    st_over_q = (5 - ctx5.eta(-1)) / 5
    assert rep.ratio == pytest.approx(st_over_q**2)
    assert rep.extra["hypothesis"] and rep.holds


def test_rhom_lower_empty(ctx5):
    empty = PointSet(5, [])
    rep = check_rhom_lower(ctx5, empty, empty, empty, empty, 1)
    assert rep.ratio == 0 and not rep.extra["hypothesis"] and rep.holds


@pytest.mark.parametrize("q", [5, 7])
def test_unconditional_checks_hold_on_random_instances(q):
    ctx = PrimeFieldCtx(q)
    for seed in range(10):
        sets = random_quadruple(ctx, seed * 3 + 17)
        for rep in check_par_mean_all(ctx, *sets):
            assert rep.holds, rep
        for rep in check_par_all_pairs(ctx, *sets):
            assert rep.holds, rep
        for t in (1, q - 1):
            assert check_unit_distance(ctx, sets[0], sets[1], t).holds
            assert check_rhom_relation(ctx, *sets, t).holds


def test_sweep_is_reproducible_and_clean(ctx7):
    a = sweep(ctx7, "par-vs-mean", 10, 0.5, 42)
    b = sweep(ctx7, "par-vs-mean", 10, 0.5, 42)
    assert [r.to_json_obj() for r in a] == [r.to_json_obj() for r in b]
    assert all(r.holds for r in a)
    c = sweep(ctx7, "par-vs-mean", 10, 0.5, 43)
    assert [r.to_json_obj() for r in a] != [r.to_json_obj() for r in c]


def test_sweep_drawn_density_records_inputs(ctx5):
    reports = sweep(ctx5, "unit-distance", 5, None, 9)
    assert len(reports) == 5
    for rep in reports:
        assert rep.inputs["seed"] == 9
        assert "trial" in rep.inputs
        assert rep.holds


def test_sweep_rejects_unknown_check(ctx5):
    with pytest.raises(ValueError):
        sweep(ctx5, "nonsense", 1, 0.5, 0)


def test_sweep_pinned_radius(ctx7):
    reports = sweep(ctx7, "rhom-vs-par", 6, 0.5, 4, t=3)
    assert len(reports) == 6
    assert all(r.inputs["t"] == 3 for r in reports)
    with pytest.raises(InvalidRadius):
        sweep(ctx7, "rhom-vs-par", 1, 0.5, 4, t=0)


def test_extreme_cases_all_hold(ctx5):
    for rep in extreme_case_reports(ctx5, 1):
        assert rep.holds, rep
