import math
from dataclasses import replace

import pytest

from conftest import random_seq
from memrace.alignment import ScoringScheme, SeedContext, Sequence, dp_fill
from memrace.cost import (DeviceProfile, area_estimate, area_is_interpolated, dynamic_power,
                          fit_calibration, format_profiles, latency_estimate, load_profiles,
                          logical_latency_units, power_estimate, profiles_from_mapping, speedup_report)
from memrace.config import parse_keyvalue
from memrace.errors import InvalidArgument
from memrace.fpni import FpniParams, route, wire_delay
from memrace.lattice import build_lattice, simulate, tap_output


@pytest.fixture(scope="module")
def defaults():
    return load_profiles()


def test_area_proposed():
    assert f"{area_estimate('proposed', 1):.2E}" == "8.51E+02"
    assert f"{area_estimate('proposed', 2):.2E}" == "3.40E+03"
    assert f"{area_estimate('proposed', 4):.2E}" == "1.36E+04"
    assert area_estimate("proposed", 131) == 851 * 131 ** 2


def test_area_baselines_table_points():
    assert area_estimate("systolic", 4) == 2.34e5
    assert area_estimate("systolic", 1) == 7.34e4
    assert area_estimate("race_cmos", 2) == 2.09e4
    assert not area_is_interpolated("systolic", 4)
    assert area_is_interpolated("race_cmos", 3)


def test_area_interpolation_loglog():
    # between 2 and 4 the systolic curve is a power law through both points
    slope = math.log(2.34e5 / 1.18e5) / math.log(2)
    assert area_estimate("systolic", 3) == pytest.approx(1.18e5 * 1.5 ** slope)
    assert 1.18e5 < area_estimate("systolic", 3) < 2.34e5
    # beyond the table the last segment is extended
    assert area_estimate("race_cmos", 8) == pytest.approx(7.31e4 * 2 ** math.log2(7.31e4 / 2.09e4))


def test_area_rejects():
    with pytest.raises(InvalidArgument):
        area_estimate("proposed", 0)
    with pytest.raises(InvalidArgument):
        area_estimate("gpu", 4)


def test_dynamic_power_examples():
    assert dynamic_power(1.0, 1, 1e-15, 1.0, 1e9) == pytest.approx(5e-7, rel=1e-15)
    base = dynamic_power(0.5, 10, 1e-15, 1.1, 1e8)
    assert dynamic_power(0.5, 10, 1e-15, 2.2, 1e8) == 4 * base


def test_dynamic_power_nanowire_hand_calc():
    # A=0.5, N=131, C = 2e-10 F/m * 7115 nm = 1.423e-15 F, Vdd=1.2, f=1e8
    # 0.5*0.5*131 = 32.75; *1.423e-15 = 4.660325e-14; *1.44 = 6.710868e-14; *1e8
    c = FpniParams().c_per_len * FpniParams().l_nano * 1e-9
    assert dynamic_power(0.5, 131, c, 1.2, 1e8) == pytest.approx(6.710868e-06, rel=1e-12)


@pytest.mark.parametrize("args", [(0, 1, 1, 1, 1), (0.5, 0, 1, 1, 1), (0.5, 1, -1, 1, 1),
                                  (0.5, 1, 1, 0, 1), (0.5, 1, 1, 1, 0), (1.5, 1, 1, 1, 1)])
def test_dynamic_power_rejects(args):
    with pytest.raises(InvalidArgument):
        dynamic_power(*args)


def test_profile_validation():
    with pytest.raises(InvalidArgument):
        DeviceProfile("proposed", unit_delay_s=0, per_cell_area=1, per_cell_cap=1, vdd=1,
                      activity=0.5, freq=1)
    with pytest.raises(InvalidArgument):
        DeviceProfile("proposed", unit_delay_s=1, per_cell_area=1, per_cell_cap=1, vdd=1,
                      activity=1.5, freq=1)
    with pytest.raises(InvalidArgument):
        DeviceProfile("systolic", unit_delay_s=1, per_cell_area=1, per_cell_cap=1, vdd=1,
                      activity=0.5, freq=1)
    with pytest.raises(InvalidArgument):
        profiles_from_mapping({"gpu.vdd": "1"})
    with pytest.raises(InvalidArgument):
        profiles_from_mapping({"proposed.vdd": "abc"})
    with pytest.raises(InvalidArgument):
        profiles_from_mapping({"proposed.vdd": "1"})  # incomplete


def test_profile_roundtrip(defaults):
    profiles, fpni = defaults
    text = format_profiles(profiles, fpni, "round trip")
    again, fpni2 = profiles_from_mapping(parse_keyvalue(text))
    assert again == profiles and fpni2 == fpni


def test_latency_systolic(defaults):
    profiles, _ = defaults
    p = profiles["systolic"]
    for L in (1, 50, 131):
        assert latency_estimate("systolic", L, 131, p) == (2 * 131 - 1) * p.cycle_time_s


def test_latency_race_is_fixed(defaults):
    profiles, _ = defaults
    p = profiles["race_cmos"]
    vals = {latency_estimate("race_cmos", L, 131, p) for L in (1, 2, 64, 131)}
    assert len(vals) == 1
    assert vals.pop() == 132 * p.unit_delay_s


def test_latency_proposed_components(defaults):
    profiles, fpni = defaults
    p = profiles["proposed"]
    for L in (1, 19, 131):
        expect = (L + 1) * p.unit_delay_s + wire_delay(route(L, 131, fpni), fpni)
        assert latency_estimate("proposed", L, 131, p, fpni=fpni) == pytest.approx(expect, rel=1e-12)


def test_latency_with_arrival_map(defaults, rng):
    profiles, fpni = defaults
    p = profiles["proposed"]
    amap = simulate(build_lattice(40), random_seq(rng, 40), random_seq(rng, 40))
    for L in (3, 40):
        t = latency_estimate("proposed", L, 40, p, amap, fpni=fpni)
        assert t == pytest.approx(tap_output(amap, L) * p.unit_delay_s
                                  + wire_delay(route(L, 40, fpni), fpni))
        assert t <= latency_estimate("proposed", L, 40, p, fpni=fpni)


def test_latency_rejects_long_read(defaults):
    profiles, _ = defaults
    with pytest.raises(InvalidArgument):
        latency_estimate("proposed", 132, 131, profiles["proposed"])


def test_all_mismatch_latency_linear(defaults):
    profiles, fpni = defaults
    units = [logical_latency_units("proposed", k, 131) for k in range(1, 132)]
    assert units == [k + 1 for k in range(1, 132)]
    seconds = [latency_estimate("proposed", k, 131, profiles["proposed"], fpni=fpni) for k in (10, 20, 30)]
    assert seconds[2] - seconds[1] == pytest.approx(seconds[1] - seconds[0], rel=1e-3)


def test_flexible_tap_never_slower_logically(defaults):
    profiles, fpni = defaults
    equal = replace(profiles["race_cmos"], unit_delay_s=profiles["proposed"].unit_delay_s)
    for D in (19, 64, 131):
        for L in range(1, D + 1):
            prop = logical_latency_units("proposed", L, D)
            assert prop <= logical_latency_units("race_cmos", L, D)
            full = latency_estimate("proposed", L, D, profiles["proposed"], fpni=fpni)
            wire = wire_delay(route(L, D, fpni), fpni)
            assert full - wire <= latency_estimate("race_cmos", L, D, equal) * (1 + 1e-12)
            assert wire < 0.01 * profiles["proposed"].unit_delay_s


def test_speedup_report_structure(defaults):
    profiles, fpni = defaults
    rep = speedup_report([131, 1, 4], profiles, 131, fpni=fpni)
    assert [(r.kind, r.read_len) for r in rep.rows] == [
        (k, L) for k in ("proposed", "race_cmos", "systolic") for L in (1, 4, 131)]
    for r in rep.rows:
        assert r.speedup > 0
        assert r.speedup == pytest.approx(r.latency_s / rep.row("proposed", r.read_len).latency_s)
    assert all(rep.speedup("proposed", L) == 1 for L in (1, 4, 131))


def test_speedup_monotone(defaults):
    profiles, fpni = defaults
    rep = speedup_report(range(1, 132), profiles, 131, fpni=fpni)
    col = [rep.speedup("race_cmos", L) for L in range(1, 132)]
    assert all(a >= b for a, b in zip(col, col[1:]))


def test_speedup_rejects_empty(defaults):
    profiles, _ = defaults
    with pytest.raises(InvalidArgument):
        speedup_report([], profiles, 131)


def test_power_estimates(defaults):
    profiles, fpni = defaults
    p = profiles["proposed"]
    c_nw = fpni.c_per_len * fpni.l_nano * 1e-9
    expect = 0.5 * p.activity * p.vdd ** 2 * p.freq * (100 * p.per_cell_cap + c_nw)
    assert power_estimate("proposed", 10, 131, p, fpni) == pytest.approx(expect, rel=1e-12)
    r = profiles["race_cmos"]
    assert power_estimate("race_cmos", 10, 131, r, fpni) == pytest.approx(
        0.5 * r.activity * 131 ** 2 * r.per_cell_cap * r.vdd ** 2 * r.freq, rel=1e-12)


def test_fit_calibration_hits_targets(defaults):
    profiles, fpni = defaults
    fitted = fit_calibration(profiles, 131, fpni=fpni, race_short_speedup=300, systolic_speedup=10,
                             power_ratio=50)
    assert fitted["proposed"] == profiles["proposed"]
    rep = speedup_report([1, 131], fitted, 131, fpni=fpni)
    assert rep.speedup("race_cmos", 1) == pytest.approx(300, rel=1e-9)
    assert rep.speedup("systolic", 131) == pytest.approx(10, rel=1e-9)
    assert rep.power_ratio("race_cmos", 131) == pytest.approx(50, rel=1e-9)
    assert rep.power_ratio("systolic", 131) == pytest.approx(50, rel=1e-9)


def test_nondefault_scheme_and_seed():
    scheme, seed = ScoringScheme(1, 3, 2), SeedContext(4)
    units = logical_latency_units("race_cmos", 5, 20, scheme, seed)
    expect = dp_fill(Sequence("A" * 20), Sequence("C" * 20), scheme, seed).local_best[0]
    assert units == expect
