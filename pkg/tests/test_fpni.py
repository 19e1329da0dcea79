import warnings
from dataclasses import replace

import pytest

from conftest import random_seq
from memrace import config
from memrace.errors import InvalidArgument
from memrace.fpni import (DEFAULT_C_LOAD, FpniParams, NanowirePath, TapFallbackWarning, elmore_ladder,
                          route, select_output, selected_tap, wire_delay)
from memrace.lattice import build_lattice, simulate, tap_output

P = FpniParams()


def test_defaults_match_table():
    table = config.load_fpni_table()
    for name, value in table.items():
        if name == "on_off_ratio":
            # the table only bounds it from below
            assert P.on_off_ratio > value
        else:
            assert getattr(P, name) == value, name
    assert P.r_closed == 24e3 and P.r_nano == 2.53e3 and P.l_nano == 7115
    assert P.c_per_len == 2e-10


def test_params_validation():
    with pytest.raises(InvalidArgument):
        FpniParams(r_closed=0)
    with pytest.raises(InvalidArgument):
        FpniParams(p_nano=-30)
    assert FpniParams(on_off_ratio=150).warnings()
    assert not P.warnings()
    with pytest.raises(InvalidArgument):
        FpniParams.from_mapping({"bogus": 1})


def test_route_lengths():
    assert route(131, 131).length_nm == 30.0
    assert route(1, 131).length_nm == 131 * 30 == 3930
    for t in range(1, 132):
        path = route(t, 131)
        assert path.junctions == 1 and len(path.segments) == 1
        assert path.tap_row == t


def test_route_splits_long_runs():
    path = route(1, 131, geometry_factor=4.0)
    assert path.length_nm == pytest.approx(131 * 30 * 4)
    assert all(seg <= P.l_nano for seg, _ in path.segments)
    assert all(j >= 1 for _, j in path.segments)
    assert len(path.segments) == 3


@pytest.mark.parametrize("tap", [0, 132])
def test_route_rejects(tap):
    with pytest.raises(InvalidArgument):
        route(tap, 131)


def test_elmore_ladder_hand():
    # two sections: R1=1k, C1=1f ; R2=2k, C2=3f ; load 1f
    # R1*(C1+C2+CL) + R2*(C2+CL) = 1e3*5e-15 + 2e3*4e-15 = 1.3e-11
    assert elmore_ladder([(1e3, 1e-15), (2e3, 3e-15)], 1e-15) == pytest.approx(1.3e-11, rel=1e-12)


def test_wire_delay_zero_length_limit():
    path = NanowirePath(segments=((0.0, 1),), tap_row=1)
    assert wire_delay(path, P, c_load=2e-16) == pytest.approx(P.r_closed * 2e-16, rel=1e-12)


def test_wire_delay_full_nanowire_hand_calc():
    # one 7115 nm segment, one via, c_per_len 2e-10 F/m, load 1e-16 F:
    #   C_wire = 2e-10 * 7115e-9             = 1.423e-15
    #   junction: 24e3 * (1.423e-15 + 1e-16) = 3.6552e-11
    #   wire:   2530 * (0.7115e-15 + 1e-16)  = 2.053095e-12
    assert DEFAULT_C_LOAD == 1e-16
    path = NanowirePath(segments=((7115.0, 1),), tap_row=1)
    assert wire_delay(path, P) == pytest.approx(3.8605095e-11, rel=1e-12)


def test_wire_delay_monotone_in_length():
    prev = 0.0
    for length in (0.0, 30.0, 3930.0, 7115.0):
        d = wire_delay(NanowirePath(((length, 1),), 1), P)
        assert d > prev
        prev = d
    short = wire_delay(NanowirePath(((3000.0, 1),), 1), P)
    assert wire_delay(NanowirePath(((6000.0, 1),), 1), P) > short


def test_wire_delay_monotone_in_params():
    path = route(1, 131)
    base = wire_delay(path, P)
    assert wire_delay(path, replace(P, r_closed=30e3)) > base
    assert wire_delay(path, replace(P, c_per_len=3e-10)) > base
    assert wire_delay(path, replace(P, r_nano=3e3)) > base


def test_select_output_identity(rng):
    amap = simulate(build_lattice(12), random_seq(rng, 12), random_seq(rng, 12))
    assert select_output(amap.row_taps, 12) == amap.global_out
    for k in range(1, 13):
        assert select_output(amap.row_taps, k) == tap_output(amap, k)


def test_select_output_fallback(rng):
    amap = simulate(build_lattice(12, taps=[4, 8]), random_seq(rng, 12), random_seq(rng, 12))
    with pytest.warns(TapFallbackWarning):
        v = select_output(amap.row_taps, 5)
    assert v == amap.row_taps[8] == tap_output(amap, 8)
    assert selected_tap(amap.row_taps, 5) == 8
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert select_output(amap.row_taps, 4) == tap_output(amap, 4)


def test_select_output_no_larger_tap():
    with pytest.raises(InvalidArgument):
        select_output({2: 1, 4: 3}, 5)


def test_reconfiguration_free_sweep(rng):
    n = 30
    q, r = random_seq(rng, n), random_seq(rng, n)
    lattice = build_lattice(n)
    amap = simulate(lattice, q, r)
    for k in range(1, n + 1):
        rebuilt = simulate(build_lattice(k), q.prefix(k), r.prefix(k))
        assert select_output(amap.row_taps, k) == rebuilt.global_out
    # the same lattice object serves another input without being rebuilt
    q2, r2 = random_seq(rng, n), random_seq(rng, n)
    again = simulate(lattice, q2, r2)
    for k in (1, 7, n):
        assert select_output(again.row_taps, k) == simulate(build_lattice(k), q2.prefix(k), r2.prefix(k)).global_out
