"""
Event-driven simulation of the memristor race-logic lattice.

A value is the time at which a rising edge reaches a node.  Delay elements
add (series connection) and OR gates take the minimum (first edge wins), so
a cell's firing time is exactly the min-plus recurrence evaluated on its
three predecessors.  Times are integer delay units.
"""

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from .alignment import NUCLEOTIDES, ScoringScheme, SeedContext, Sequence
from .errors import InvalidArgument

MAX_LATTICE = 131

_CODES = {sym: code for code, sym in enumerate(NUCLEOTIDES)}  # A=00 C=01 G=10 T=11


def encode_nucleotide(symbol: str) -> int:
    try:
        return _CODES[symbol]
    except (KeyError, TypeError):
        raise InvalidArgument(f"not a nucleotide: {symbol!r}") from None


def decode_nucleotide(code: int) -> str:
    if code not in range(4):
        raise InvalidArgument(f"not a 2-bit nucleotide code: {code!r}")
    return NUCLEOTIDES[code]


def comparator(a: int, b: int) -> int:
    """Gate-level comparator output: 0 when the two codes are equal."""
    xnor_hi = 1 - (((a >> 1) & 1) ^ ((b >> 1) & 1))
    xnor_lo = 1 - ((a & 1) ^ (b & 1))
    return 1 - (xnor_hi & xnor_lo)  # NAND


def compare_select(a: int, b: int, scheme: ScoringScheme) -> int:
    return scheme.t_match if comparator(a, b) == 0 else scheme.t_mismatch


def delay_element(in_arrival: int, penalty: int) -> int:
    if in_arrival < 0 or penalty < 0:
        raise InvalidArgument("arrival times and penalties must be non-negative")
    return in_arrival + penalty


def or_merge(arrivals: Iterable[int]) -> int:
    arrivals = list(arrivals)
    if not arrivals:
        raise InvalidArgument("or_merge needs at least one input")
    return min(arrivals)


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    preds: Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]  # NW, N, W
    tap_group: int  # the k x k sub-lattice whose output boundary holds this cell


@dataclass
class Lattice:
    size: int
    scheme: ScoringScheme
    taps: Tuple[int, ...]
    cells: Dict[Tuple[int, int], Cell] = field(repr=False)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def boundary_nodes(self):
        n = self.size
        return [(0, j) for j in range(n + 1)] + [(i, 0) for i in range(1, n + 1)]

    def successors(self, i, j):
        n = self.size
        out = []
        if i < n and j < n:
            out.append(((i + 1, j + 1), "diag"))
        if j >= 1 and i < n:
            out.append(((i + 1, j), "vert"))
        if i >= 1 and j < n:
            out.append(((i, j + 1), "horiz"))
        return out


def build_lattice(n: int, scheme: ScoringScheme = ScoringScheme(),
                  taps: Optional[Iterable[int]] = None) -> Lattice:
    """Square lattice of ``n`` x ``n`` basic cells; taps default to every row."""
    if not 1 <= n <= MAX_LATTICE:
        raise InvalidArgument(f"lattice size must be in 1..{MAX_LATTICE}, got {n}")
    if taps is None:
        tap_rows = set(range(1, n + 1))
    else:
        tap_rows = set(int(t) for t in taps)
        bad = [t for t in tap_rows if not 1 <= t <= n]
        if bad:
            raise InvalidArgument(f"tap rows outside 1..{n}: {sorted(bad)}")
        tap_rows.add(n)  # full-dimension output always exists
    cells = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cells[(i, j)] = Cell(i, j, ((i - 1, j - 1), (i - 1, j), (i, j - 1)), max(i, j))
    return Lattice(size=n, scheme=scheme, taps=tuple(sorted(tap_rows)), cells=cells)


@dataclass
class ArrivalMap:
    arrival: np.ndarray
    row_taps: Dict[int, int]
    global_out: int
    fire_count: int
    event_count: int

    @property
    def size(self) -> int:
        return self.arrival.shape[0] - 1


def _boundary_min(arrival: np.ndarray, k: int) -> int:
    return int(min(arrival[k, 1:k + 1].min(), arrival[1:k + 1, k].min()))


def simulate(lattice: Lattice, query: Sequence, reference: Sequence,
             seed: SeedContext = SeedContext()) -> ArrivalMap:
    n = lattice.size
    if len(query) != n or len(reference) != n:
        raise InvalidArgument(
            f"lattice is {n}x{n} but inputs are {len(query)}x{len(reference)}; "
            "use alignment.dp_fill for rectangular inputs")
    scheme = lattice.scheme
    qcode = [encode_nucleotide(s) for s in query.bases]
    rcode = [encode_nucleotide(s) for s in reference.bases]

    # diagonal delay per cell, fixed by the comparator/selector before the race
    diag = [[0] * (n + 1)] + [
        [0] + [compare_select(qcode[i - 1], rcode[j - 1], scheme) for j in range(1, n + 1)]
        for i in range(1, n + 1)]
    gap = scheme.t_gap

    arrival = [[-1] * (n + 1) for _ in range(n + 1)]
    queue = []
    for (i, j) in lattice.boundary_nodes():
        t = seed.w0
        for _ in range(i + j):
            t = delay_element(t, gap)
        queue.append((t, i, j))
    heapq.heapify(queue)

    push, pop = heapq.heappush, heapq.heappop
    fired = 0
    events = 0
    while queue:
        t, i, j = pop(queue)
        events += 1
        row = arrival[i]
        if row[j] >= 0:
            continue  # latched on an earlier edge
        row[j] = t
        if i and j:
            fired += 1
        for (ni, nj), kind in lattice.successors(i, j):
            if arrival[ni][nj] >= 0:
                continue
            push(queue, (t + (diag[ni][nj] if kind == "diag" else gap), ni, nj))

    assert fired == lattice.n_cells, (fired, lattice.n_cells)
    arrival = np.array(arrival, dtype=np.int64)
    taps = {k: _boundary_min(arrival, k) for k in lattice.taps}
    return ArrivalMap(arrival=arrival, row_taps=taps, global_out=taps[n],
                      fire_count=fired, event_count=events)


def tap_output(amap: ArrivalMap, read_len: int) -> int:
    """First arrival on the output boundary of the ``read_len`` sub-lattice."""
    if not 1 <= read_len <= amap.size:
        raise InvalidArgument(f"read_len must be in 1..{amap.size}, got {read_len}")
    return _boundary_min(amap.arrival, read_len)


def worst_case_arrival(k: int, scheme: ScoringScheme = ScoringScheme(),
                       seed: SeedContext = SeedContext()) -> int:
    """
    Latest possible tap arrival for a ``k`` x ``k`` sub-lattice.

    Arrivals are monotone in every edge delay, so the input whose every
    diagonal edge takes the larger substitution penalty bounds all others.
    """
    if scheme.t_mismatch >= scheme.t_match:
        q, r = "A" * k, "C" * k
    else:
        q = r = "A" * k
    amap = simulate(build_lattice(k, scheme, taps=[k]), Sequence(q), Sequence(r), seed)
    return amap.global_out
