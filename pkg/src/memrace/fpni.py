"""
Nanowire tap routing and Elmore wire-delay estimation.

Each tap is reached by one dedicated nanowire, joined to the cell's local OR
output through a single via (a closed junction).  Physical lengths are in
nm, resistances in ohm, capacitances in farad, delays in seconds.
"""

import math
import warnings
from dataclasses import dataclass, fields
from typing import Mapping, Sequence, Tuple

from .errors import InvalidArgument

# input load of the selection unit seen at the far end of a tap wire
DEFAULT_C_LOAD = 1e-16


class TapFallbackWarning(UserWarning):
    """The requested read length has no tap; a larger tap was used."""


@dataclass(frozen=True)
class FpniParams:
    p_nano: float = 30.0
    w_nano: float = 15.0
    w_pin: float = 90.0
    w_pinvar: float = 20.0
    w_align: float = 40.0
    w_sep: float = 15.0
    r_closed: float = 24e3
    on_off_ratio: float = 1e3
    rho_nano: float = 8.0  # micro-ohm cm
    l_nano: float = 7115.0
    r_nano: float = 2.53e3
    c_per_len: float = 2e-10  # F/m

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise InvalidArgument(f"FpniParams.{f.name} must be a positive number, got {v!r}")

    def warnings(self):
        out = []
        if self.on_off_ratio <= 200:
            out.append(f"on_off_ratio {self.on_off_ratio:g} is not above 200")
        return out

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> "FpniParams":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise InvalidArgument(f"unknown FPNI parameters: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in values.items()})


@dataclass(frozen=True)
class NanowirePath:
    segments: Tuple[Tuple[float, int], ...]  # (length nm, junction count)
    tap_row: int

    @property
    def length_nm(self) -> float:
        return sum(s[0] for s in self.segments)

    @property
    def junctions(self) -> int:
        return sum(s[1] for s in self.segments)


def route(tap_row: int, lattice_size: int, params: FpniParams = FpniParams(),
          geometry_factor: float = 1.0) -> NanowirePath:
    """
    Wire from the tap at ``tap_row`` to the output edge of the lattice.

    Length is ``(lattice_size - tap_row + 1)`` pitches.  Runs longer than one
    physical nanowire are split, each piece joined by another via.
    """
    if not 1 <= tap_row <= lattice_size:
        raise InvalidArgument(f"tap_row must be in 1..{lattice_size}, got {tap_row}")
    if geometry_factor <= 0:
        raise InvalidArgument("geometry_factor must be positive")
    total = (lattice_size - tap_row + 1) * params.p_nano * geometry_factor
    pieces = max(1, math.ceil(total / params.l_nano))
    seg = total / pieces
    return NanowirePath(segments=tuple((seg, 1) for _ in range(pieces)), tap_row=tap_row)


def elmore_ladder(sections: Sequence[Tuple[float, float]], c_load: float = 0.0) -> float:
    """Elmore delay at the end of an RC ladder of (R series, C to ground) sections."""
    delay = 0.0
    downstream = c_load
    for r, c in reversed(sections):
        downstream += c
        delay += r * downstream
    return delay


def path_sections(path: NanowirePath, params: FpniParams):
    # per segment: junction, then the wire as a pi-section split in two halves
    sections = []
    for length_nm, junctions in path.segments:
        r_wire = params.r_nano * length_nm / params.l_nano
        c_wire = params.c_per_len * length_nm * 1e-9
        sections.append((params.r_closed * junctions, c_wire / 2))
        sections.append((r_wire, c_wire / 2))
    return sections


def wire_delay(path: NanowirePath, params: FpniParams = FpniParams(),
               c_load: float = DEFAULT_C_LOAD) -> float:
    return elmore_ladder(path_sections(path, params), c_load)


def selected_tap(tap_rows, read_len: int) -> int:
    rows = sorted(tap_rows)
    if read_len in rows:
        return read_len
    larger = [t for t in rows if t > read_len]
    if read_len < 1 or not larger:
        raise InvalidArgument(f"no tap at or above read_len {read_len} (taps: {rows})")
    return larger[0]


def select_output(taps: Mapping[int, int], read_len: int):
    """
    Route the score of the ``read_len`` tap to the output.

    Without a tap at ``read_len`` the nearest larger tap is used and a
    ``TapFallbackWarning`` is raised; its latency is pessimistic and its
    score belongs to the larger sub-lattice.
    """
    row = selected_tap(taps.keys(), read_len)
    if row != read_len:
        warnings.warn(f"no tap for read_len {read_len}; using tap {row}", TapFallbackWarning,
                      stacklevel=2)
    return taps[row]
