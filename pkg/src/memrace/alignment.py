"""
Reference min-plus dynamic programming for the seed-extension kernel.

Scores are edit-distance style: lower is better, every penalty is a
non-negative number of delay units.  ``dp_fill`` is the production path;
``levenshtein_oracle`` is a deliberately naive recursion kept only to
check it.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import InvalidArgument, OracleScaleExceeded, UnfilledMatrixError

NUCLEOTIDES = "ACGT"
UNFILLED = -1
ORACLE_MAX_LEN = 12


@dataclass(frozen=True)
class Sequence:
    bases: str
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.bases, str):
            raise InvalidArgument(f"bases must be a str, got {type(self.bases).__name__}")
        if len(self.bases) < 1:
            raise InvalidArgument("sequence must contain at least one base")
        for pos, sym in enumerate(self.bases):
            if sym not in NUCLEOTIDES:
                raise InvalidArgument(f"illegal nucleotide {sym!r} at position {pos}")

    @property
    def length(self) -> int:
        return len(self.bases)

    def __len__(self):
        return len(self.bases)

    def __str__(self):
        return self.bases

    def prefix(self, k: int) -> "Sequence":
        if not 1 <= k <= len(self.bases):
            raise InvalidArgument(f"prefix length {k} outside 1..{len(self.bases)}")
        return Sequence(self.bases[:k], self.name)


def _check_penalty(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidArgument(f"{name} must be an integer number of delay units, got {value!r}")
    if value < 0:
        raise InvalidArgument(f"{name} must be >= 0 (race logic cannot realize negative delays)")


@dataclass(frozen=True)
class ScoringScheme:
    t_match: int = 0
    t_mismatch: int = 2
    t_gap: int = 1

    def __post_init__(self):
        _check_penalty("t_match", self.t_match)
        _check_penalty("t_mismatch", self.t_mismatch)
        _check_penalty("t_gap", self.t_gap)

    def substitution(self, a: str, b: str) -> int:
        return self.t_match if a == b else self.t_mismatch


@dataclass(frozen=True)
class SeedContext:
    """Score carried in from the exact-match seed; shifts the whole boundary."""

    w0: int = 0

    def __post_init__(self):
        _check_penalty("w0", self.w0)


@dataclass
class DPResult:
    matrix: np.ndarray
    scheme: ScoringScheme
    seed: SeedContext
    local_best: Optional[Tuple[int, int, int]] = None
    global_score: Optional[int] = None
    max_offset: Optional[int] = None

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def filled(self) -> bool:
        return bool((self.matrix[1:, 1:] != UNFILLED).all())


def boundary_value(k: int, scheme: ScoringScheme, seed: SeedContext) -> int:
    return seed.w0 + k * scheme.t_gap


def init_matrix(q_len: int, r_len: int, scheme: ScoringScheme = ScoringScheme(),
                seed: SeedContext = SeedContext()) -> DPResult:
    if q_len < 1 or r_len < 1:
        raise InvalidArgument(f"matrix dimensions must be >= 1, got {q_len}x{r_len}")
    m = np.full((q_len + 1, r_len + 1), UNFILLED, dtype=np.int64)
    m[0, :] = seed.w0 + scheme.t_gap * np.arange(r_len + 1)
    m[:, 0] = seed.w0 + scheme.t_gap * np.arange(q_len + 1)
    return DPResult(matrix=m, scheme=scheme, seed=seed)


def substitution_costs(query: Sequence, reference: Sequence, scheme: ScoringScheme) -> np.ndarray:
    q = np.frombuffer(query.bases.encode(), dtype=np.uint8)
    r = np.frombuffer(reference.bases.encode(), dtype=np.uint8)
    return np.where(q[:, None] == r[None, :], scheme.t_match, scheme.t_mismatch).astype(np.int64)


def dp_fill(query: Sequence, reference: Sequence, scheme: ScoringScheme = ScoringScheme(),
            seed: SeedContext = SeedContext()) -> DPResult:
    res = init_matrix(len(query), len(reference), scheme, seed)
    m = res.matrix
    sub = substitution_costs(query, reference, scheme)
    g = scheme.t_gap
    ramp = g * np.arange(len(reference) + 1, dtype=np.int64)
    for i in range(1, len(query) + 1):
        prev = m[i - 1]
        # best of diagonal and vertical moves; horizontal chains are a
        # running minimum of (cand[k] - k*g) shifted back by j*g
        cand = np.empty_like(prev)
        cand[0] = m[i, 0]
        cand[1:] = np.minimum(prev[:-1] + sub[i - 1], prev[1:] + g)
        m[i] = np.minimum.accumulate(cand - ramp) + ramp
    return _with_outputs(res)


def _with_outputs(res: DPResult) -> DPResult:
    res.local_best, res.global_score, res.max_offset = extract_outputs(res)
    return res


def extract_outputs(result: DPResult):
    """
    Return ``(local_best, global_score, max_offset)``.

    ``local_best`` is ``(score, row, col)``: the minimum over the basic cells of
    the last row and last column, ties to the smallest row then column.
    ``global_score`` is the bottom-right cell.
    """
    if not result.filled:
        raise UnfilledMatrixError("matrix interior has not been filled")
    m = result.matrix
    q, r = m.shape[0] - 1, m.shape[1] - 1
    cells = [(int(m[q, j]), q, j) for j in range(1, r + 1)]
    cells += [(int(m[i, r]), i, r) for i in range(1, q)]
    best = min(cells)
    return best, int(m[q, r]), abs(best[1] - best[2])


def levenshtein_oracle(query: Sequence, reference: Sequence, scheme: ScoringScheme = ScoringScheme(),
                       seed: SeedContext = SeedContext()) -> int:
    """Bottom-right score by memo-free recursion over the three moves. Exponential."""
    if len(query) > ORACLE_MAX_LEN or len(reference) > ORACLE_MAX_LEN:
        raise OracleScaleExceeded(
            f"oracle limited to length {ORACLE_MAX_LEN}, got {len(query)}x{len(reference)}")
    q, r = query.bases, reference.bases
    w0, g = seed.w0, scheme.t_gap
    tm, tx = scheme.t_match, scheme.t_mismatch

    def go(i, j):
        if i == 0:
            return w0 + j * g
        if j == 0:
            return w0 + i * g
        diag = go(i - 1, j - 1) + (tm if q[i - 1] == r[j - 1] else tx)
        return min(diag, go(i - 1, j) + g, go(i, j - 1) + g)

    return go(len(q), len(r))
