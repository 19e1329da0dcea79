"""
Area, latency and power models for the three designs.

``proposed``   memristor race-logic lattice with a flexible FPNI tap
``race_cmos``  CMOS race logic read out at the fixed lattice boundary
``systolic``   1D systolic array, one anti-diagonal per clock
"""

import math
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from . import config
from .alignment import ScoringScheme, SeedContext
from .errors import InvalidArgument
from .fpni import FpniParams, route, selected_tap, wire_delay
from .lattice import ArrivalMap, tap_output, worst_case_arrival

KINDS = ("proposed", "race_cmos", "systolic")
PROPOSED_CELL_AREA = 851.0


@dataclass(frozen=True)
class DeviceProfile:
    kind: str
    unit_delay_s: float
    per_cell_area: float
    per_cell_cap: float
    vdd: float
    activity: float
    freq: float
    cycle_time_s: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown design kind {self.kind!r}")
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "kind" or v is None:
                continue
            if not (math.isfinite(v) and v > 0):
                raise InvalidArgument(f"{self.kind}.{f.name} must be positive, got {v!r}")
        if self.activity > 1:
            raise InvalidArgument(f"{self.kind}.activity must lie in (0, 1]")
        if self.kind == "systolic" and self.cycle_time_s is None:
            raise InvalidArgument("systolic profile needs cycle_time_s")


def profiles_from_mapping(values: Mapping[str, str]) -> Tuple[Dict[str, DeviceProfile], FpniParams]:
    """Split ``<kind>.<field>`` / ``fpni.<field>`` keys into profile objects."""
    per_kind: Dict[str, Dict[str, float]] = {}
    fpni: Dict[str, float] = {}
    for key, raw in values.items():
        prefix, _, name = key.partition(".")
        if not name:
            raise InvalidArgument(f"profile key {key!r} must look like <kind>.<field>")
        try:
            value = float(raw)
        except ValueError:
            raise InvalidArgument(f"profile value for {key!r} is not a number: {raw!r}") from None
        if prefix == "fpni":
            fpni[name] = value
        elif prefix in KINDS:
            per_kind.setdefault(prefix, {})[name] = value
        else:
            raise InvalidArgument(f"unknown profile section {prefix!r} in key {key!r}")
    allowed = {f.name for f in fields(DeviceProfile)} - {"kind"}
    profiles = {}
    for kind, vals in per_kind.items():
        extra = set(vals) - allowed
        if extra:
            raise InvalidArgument(f"unknown {kind} profile fields: {sorted(extra)}")
        try:
            profiles[kind] = DeviceProfile(kind=kind, **vals)
        except TypeError as exc:
            raise InvalidArgument(f"incomplete {kind} profile: {exc}") from None
    return profiles, FpniParams.from_mapping(fpni)


def load_profiles(paths: Iterable = (), base: str = "default.profile"):
    return profiles_from_mapping(config.merge_profile_files(paths, base))


def format_profiles(profiles: Mapping[str, DeviceProfile], fpni: FpniParams, header: str = "") -> str:
    lines = [f"# {ln}" if ln else "#" for ln in header.splitlines()]
    for kind in KINDS:
        p = profiles[kind]
        lines.append("")
        for f in fields(p):
            v = getattr(p, f.name)
            if f.name != "kind" and v is not None:
                lines.append(f"{kind}.{f.name} = {v!r}")
    lines.append("")
    defaults = FpniParams()
    for f in fields(fpni):
        v = getattr(fpni, f.name)
        if v != getattr(defaults, f.name) or f.name == "c_per_len":
            lines.append(f"fpni.{f.name} = {v!r}")
    return "\n".join(lines) + "\n"


# -- area -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _area_table():
    return config.load_area_table()


def _loglog_interp(points: Mapping[int, float], x: float) -> float:
    xs = sorted(points)
    if x in points:
        return points[x]
    if x < xs[0]:
        lo, hi = xs[0], xs[1]
    elif x > xs[-1]:
        lo, hi = xs[-2], xs[-1]
    else:
        hi = next(v for v in xs if v > x)
        lo = xs[xs.index(hi) - 1]
    slope = math.log(points[hi] / points[lo]) / math.log(hi / lo)
    return points[lo] * (x / lo) ** slope


def area_estimate(kind: str, read_len: int, profile: Optional[DeviceProfile] = None) -> float:
    """
    Area of a ``read_len`` x ``read_len`` matrix in the table's area units.

    The proposed design is counted per cell.  Baselines come from the
    recorded table, piecewise power-law between (and beyond) its points.
    """
    if read_len < 1:
        raise InvalidArgument("read_len must be >= 1")
    if kind == "proposed":
        per_cell = profile.per_cell_area if profile is not None else PROPOSED_CELL_AREA
        return per_cell * read_len * read_len
    if kind not in KINDS:
        raise InvalidArgument(f"unknown design kind {kind!r}")
    return _loglog_interp(_area_table()[kind], read_len)


def area_is_interpolated(kind: str, read_len: int) -> bool:
    return kind != "proposed" and read_len not in _area_table()[kind]


# -- power ------------------------------------------------------------------

def dynamic_power(activity: float, n_wires: float, c_wire: float, vdd: float, freq: float) -> float:
    for name, v in (("activity", activity), ("n_wires", n_wires), ("c_wire", c_wire),
                    ("vdd", vdd), ("freq", freq)):
        if not v > 0:
            raise InvalidArgument(f"{name} must be positive, got {v!r}")
    if activity > 1:
        raise InvalidArgument("activity must lie in (0, 1]")
    # exact product, rounded once
    exact = Fraction(1, 2) * Fraction(activity) * Fraction(n_wires) * Fraction(c_wire) \
        * Fraction(vdd) ** 2 * Fraction(freq)
    return float(exact)


def power_estimate(kind: str, read_len: int, fixed_dim: int, profile: DeviceProfile,
                   fpni: FpniParams = FpniParams()) -> float:
    """
    Switching power.  The proposed lattice toggles the ``read_len`` sub-lattice
    plus one tap nanowire; CMOS race logic toggles the whole fixed lattice;
    the systolic array toggles its ``fixed_dim`` processing elements.
    """
    _check_lengths(read_len, fixed_dim)
    p = profile
    if kind == "proposed":
        cells = dynamic_power(p.activity, read_len * read_len, p.per_cell_cap, p.vdd, p.freq)
        c_nanowire = fpni.c_per_len * fpni.l_nano * 1e-9
        return cells + dynamic_power(p.activity, 1, c_nanowire, p.vdd, p.freq)
    if kind == "race_cmos":
        return dynamic_power(p.activity, fixed_dim * fixed_dim, p.per_cell_cap, p.vdd, p.freq)
    if kind == "systolic":
        return dynamic_power(p.activity, fixed_dim, p.per_cell_cap, p.vdd, p.freq)
    raise InvalidArgument(f"unknown design kind {kind!r}")


# -- latency ----------------------------------------------------------------

def _tap_row(taps, read_len, fixed_dim):
    rows = set(range(1, fixed_dim + 1)) if taps is None else set(taps) | {fixed_dim}
    return selected_tap(rows, read_len)


def _check_lengths(read_len, fixed_dim):
    if not 1 <= read_len <= fixed_dim:
        raise InvalidArgument(f"read_len must be in 1..fixed_dim ({fixed_dim}), got {read_len}")


@lru_cache(maxsize=None)
def _worst_case(k: int, scheme: ScoringScheme, seed: SeedContext) -> int:
    return worst_case_arrival(k, scheme, seed)


def logical_latency_units(kind: str, read_len: int, fixed_dim: int,
                          scheme: ScoringScheme = ScoringScheme(), seed: SeedContext = SeedContext(),
                          arrival: Optional[ArrivalMap] = None, taps=None) -> int:
    """Latency of a race design in delay units, excluding wires."""
    _check_lengths(read_len, fixed_dim)
    if kind == "race_cmos":
        return _worst_case(fixed_dim, scheme, seed)
    if kind == "proposed":
        row = _tap_row(taps, read_len, fixed_dim)
        if arrival is not None:
            return tap_output(arrival, row)
        return _worst_case(row, scheme, seed)
    raise InvalidArgument(f"{kind!r} has no race-logic latency")


def latency_estimate(kind: str, read_len: int, fixed_dim: int, profile: DeviceProfile,
                     arrival: Optional[ArrivalMap] = None, *,
                     scheme: ScoringScheme = ScoringScheme(), seed: SeedContext = SeedContext(),
                     fpni: FpniParams = FpniParams(), taps=None) -> float:
    """
    Seconds from input injection to a valid output.

    Without ``arrival`` the race designs are charged their worst-case tap
    arrival, which is what a fixed read-out schedule has to budget for.
    """
    _check_lengths(read_len, fixed_dim)
    if kind == "systolic":
        return (2 * fixed_dim - 1) * profile.cycle_time_s
    units = logical_latency_units(kind, read_len, fixed_dim, scheme, seed, arrival, taps)
    latency = units * profile.unit_delay_s
    if kind == "proposed":
        row = _tap_row(taps, read_len, fixed_dim)
        latency += wire_delay(route(row, fixed_dim, fpni), fpni)
    return latency


# -- reports ----------------------------------------------------------------

@dataclass(frozen=True)
class CostRow:
    kind: str
    read_len: int
    area: float
    latency_s: float
    power_w: float
    speedup: float  # this design's latency over the proposed design's


@dataclass
class CostReport:
    rows: List[CostRow]
    fixed_dim: int

    def row(self, kind: str, read_len: int) -> CostRow:
        for r in self.rows:
            if r.kind == kind and r.read_len == read_len:
                return r
        raise KeyError((kind, read_len))

    def speedup(self, kind: str, read_len: int) -> float:
        return self.row(kind, read_len).speedup

    def power_ratio(self, kind: str, read_len: int) -> float:
        return self.row(kind, read_len).power_w / self.row("proposed", read_len).power_w


def speedup_report(read_lens: Iterable[int], profiles: Mapping[str, DeviceProfile], fixed_dim: int,
                   *, scheme: ScoringScheme = ScoringScheme(), seed: SeedContext = SeedContext(),
                   fpni: FpniParams = FpniParams(), taps=None, dedicated: bool = False) -> CostReport:
    """
    One row per (kind, read_len), sorted by kind then read_len.

    ``dedicated=True`` sizes every design to the read itself (no fixed
    lattice), the setting of a per-length latency comparison.
    """
    read_lens = sorted(set(read_lens))
    if not read_lens or not profiles:
        raise InvalidArgument("speedup_report needs read lengths and profiles")
    if "proposed" not in profiles:
        raise InvalidArgument("the proposed profile is the speedup baseline and must be present")
    rows = []
    for L in read_lens:
        dim = L if dedicated else fixed_dim
        lat = {k: latency_estimate(k, L, dim, p, scheme=scheme, seed=seed, fpni=fpni,
                                   taps=None if dedicated else taps)
               for k, p in profiles.items()}
        for kind, p in profiles.items():
            rows.append(CostRow(kind=kind, read_len=L, area=area_estimate(kind, L, p),
                                latency_s=lat[kind], power_w=power_estimate(kind, L, dim, p, fpni),
                                speedup=lat[kind] / lat["proposed"]))
    rows.sort(key=lambda r: (r.kind, r.read_len))
    return CostReport(rows=rows, fixed_dim=fixed_dim)


def fit_calibration(profiles: Mapping[str, DeviceProfile], fixed_dim: int = 131, *,
                    fpni: FpniParams = FpniParams(), scheme: ScoringScheme = ScoringScheme(),
                    seed: SeedContext = SeedContext(), short_len: int = 1,
                    race_short_speedup: float = 600.0, systolic_speedup: float = 22.0,
                    power_ratio: Optional[float] = 1e5) -> Dict[str, DeviceProfile]:
    """
    Fit baseline constants to headline speedup/power ratios.

    The proposed profile is kept.  The CMOS race-logic unit delay is set so the
    fixed lattice is ``race_short_speedup`` times slower at ``short_len``; the
    systolic clock so it is ``systolic_speedup`` times slower at full size.
    With ``power_ratio`` both baselines' cell capacitance is scaled to that
    power ratio at full size.
    """
    kw = dict(scheme=scheme, seed=seed, fpni=fpni)
    prop = profiles["proposed"]
    t_short = latency_estimate("proposed", short_len, fixed_dim, prop, **kw)
    t_full = latency_estimate("proposed", fixed_dim, fixed_dim, prop, **kw)
    race_units = logical_latency_units("race_cmos", fixed_dim, fixed_dim, scheme, seed)
    out = dict(profiles)
    out["race_cmos"] = replace(profiles["race_cmos"],
                               unit_delay_s=race_short_speedup * t_short / race_units)
    out["systolic"] = replace(profiles["systolic"],
                              cycle_time_s=systolic_speedup * t_full / (2 * fixed_dim - 1))
    if power_ratio is not None:
        p_prop = power_estimate("proposed", fixed_dim, fixed_dim, prop, fpni)
        for kind in ("race_cmos", "systolic"):
            p = out[kind]
            current = power_estimate(kind, fixed_dim, fixed_dim, p, fpni)
            out[kind] = replace(p, per_cell_cap=p.per_cell_cap * power_ratio * p_prop / current)
    return out
