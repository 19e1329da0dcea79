"""Experiment drivers behind the command line: align, verify, bench, sweep."""

import csv
import json
import random
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, TextIO

import numpy as np

from . import config
from .alignment import ScoringScheme, SeedContext, Sequence, dp_fill
from .cost import area_is_interpolated, load_profiles, speedup_report
from .errors import InvalidArgument
from .fasta import parse_fasta
from .fpni import select_output
from .lattice import MAX_LATTICE, build_lattice, simulate, tap_output

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

SEED_MIN_LEN = 19
DEFAULT_READ_LENS = (1, 2, 4, 8, 16, 19, 32, 64, 131)
BENCH_COLUMNS = ("kind", "read_len", "score", "latency_s", "area", "power_w", "speedup")
GOLDEN_FILES = ("gattaca_gcatgct.json",)


@dataclass
class RunConfig:
    mode: str
    reads: Optional[str] = None
    ref: Optional[str] = None
    sequences: List[str] = field(default_factory=list)
    scheme: ScoringScheme = ScoringScheme()
    w0: int = 0
    fixed_dim: int = MAX_LATTICE
    allow_any_dim: bool = False
    taps: Optional[List[int]] = None
    profiles: List[str] = field(default_factory=list)
    out: str = "results"
    seed: int = 0
    checks: int = 1000
    read_lens: Optional[List[int]] = None
    oracle_only: bool = False
    show_matrix: bool = False
    inject_fault: bool = False

    def __post_init__(self):
        if self.mode not in ("align", "verify", "bench", "sweep"):
            raise InvalidArgument(f"unknown mode {self.mode!r}")
        lo = 1 if self.allow_any_dim else SEED_MIN_LEN
        if not lo <= self.fixed_dim <= MAX_LATTICE:
            raise InvalidArgument(
                f"fixed_dim must be in {lo}..{MAX_LATTICE} (seed length bounds); "
                "pass --allow-any-dim to go below 19")
        if self.checks < 1:
            raise InvalidArgument("checks must be >= 1")
        SeedContext(self.w0)

    @property
    def seed_ctx(self) -> SeedContext:
        return SeedContext(self.w0)


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{x:.6g}"
    return str(x)


def write_bench_csv(path: Path, records) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(BENCH_COLUMNS)
        for rec in records:
            w.writerow([_fmt(rec[c]) for c in BENCH_COLUMNS])


def _random_bases(rng: random.Random, n: int) -> str:
    return "".join(rng.choice("ACGT") for _ in range(n))


# -- verify -----------------------------------------------------------------

def load_golden(name: str) -> dict:
    return json.loads(config.data_text(f"golden/{name}"))


def check_golden(case: dict, out: TextIO) -> bool:
    q, r = Sequence(case["query"]), Sequence(case["reference"])
    scheme = ScoringScheme(**case["scheme"])
    seed = SeedContext(case["w0"])
    res = dp_fill(q, r, scheme, seed)
    ok = (res.matrix.tolist() == case["matrix"]
          and list(res.local_best) == case["local_best"]
          and res.global_score == case["global_score"]
          and res.max_offset == case["max_offset"])
    if len(q) == len(r):
        amap = simulate(build_lattice(len(q), scheme), q, r, seed)
        ok = ok and amap.arrival.tolist() == case["matrix"] and amap.global_out == case["local_best"][0]
    out.write(f"golden {case['query']}/{case['reference']}: {'ok' if ok else 'MISMATCH'}\n")
    return ok


def run_verify(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    """Seeded lattice-vs-DP equivalence checks plus the golden files."""
    out = out or sys.stdout
    rng = random.Random(cfg.seed)
    passed = 0
    for case in range(cfg.checks):
        n = rng.randint(1, 64)
        q, r = _random_bases(rng, n), _random_bases(rng, n)
        scheme = ScoringScheme(rng.randint(0, 1), rng.randint(1, 4), rng.randint(1, 3))
        w0 = rng.randint(0, 16)
        lattice_scheme = scheme
        if cfg.inject_fault:
            lattice_scheme = ScoringScheme(scheme.t_match, scheme.t_mismatch + 1, scheme.t_gap)
        seq_q, seq_r, seed = Sequence(q), Sequence(r), SeedContext(w0)
        expected = dp_fill(seq_q, seq_r, scheme, seed).matrix
        got = simulate(build_lattice(n, lattice_scheme), seq_q, seq_r, seed).arrival
        if np.array_equal(expected, got):
            passed += 1
            continue
        i, j = map(int, np.argwhere(expected != got)[0])
        out.write(f"MISMATCH case={case} query={q} ref={r} match={scheme.t_match} "
                  f"mismatch={scheme.t_mismatch} gap={scheme.t_gap} w0={w0} "
                  f"cell=({i},{j}) lattice={got[i, j]} dp={expected[i, j]}\n")
    out.write(f"{passed}/{cfg.checks} equivalence checks passed\n")
    golden_ok = all(check_golden(load_golden(name), out) for name in GOLDEN_FILES)
    return EXIT_OK if passed == cfg.checks and golden_ok else EXIT_VERIFY_FAILED


# -- bench / sweep ----------------------------------------------------------

def _bench_inputs(cfg: RunConfig):
    rng = random.Random(cfg.seed)
    q = Sequence(_random_bases(rng, cfg.fixed_dim), "bench_query")
    r = Sequence(_random_bases(rng, cfg.fixed_dim), "bench_ref")
    return q, r


def _records(report, scores):
    return [dict(kind=row.kind, read_len=row.read_len, score=scores[row.read_len],
                 latency_s=row.latency_s, area=row.area, power_w=row.power_w,
                 speedup=row.speedup) for row in report.rows]


def _tap_scores(cfg, read_lens, err: TextIO):
    q, r = _bench_inputs(cfg)
    amap = simulate(build_lattice(cfg.fixed_dim, cfg.scheme, cfg.taps), q, r, cfg.seed_ctx)
    scores = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for L in read_lens:
            scores[L] = select_output(amap.row_taps, L)
    for w in caught:
        err.write(f"warning: {w.message}\n")
    return amap, scores


def _ensure_dir(path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def run_bench(cfg: RunConfig, err: Optional[TextIO] = None) -> List[Path]:
    err = err or sys.stderr
    read_lens = sorted({L for L in (cfg.read_lens or DEFAULT_READ_LENS) if L <= cfg.fixed_dim}
                       | {cfg.fixed_dim})
    profiles, fpni = load_profiles(cfg.profiles)
    _, scores = _tap_scores(cfg, read_lens, err)
    kw = dict(scheme=cfg.scheme, seed=cfg.seed_ctx, fpni=fpni)
    fixed = speedup_report(read_lens, profiles, cfg.fixed_dim, taps=cfg.taps, **kw)
    dedicated = speedup_report(read_lens, profiles, cfg.fixed_dim, dedicated=True, **kw)
    for row in fixed.rows:
        if area_is_interpolated(row.kind, row.read_len):
            err.write(f"note: {row.kind} area at read_len {row.read_len} is interpolated\n")
            break
    out = _ensure_dir(cfg.out)
    files = {
        "latency.csv": _records(dedicated, scores),
        f"speedup_fixed{cfg.fixed_dim}.csv": _records(fixed, scores),
        "power.csv": _records(fixed, scores),
        "area.csv": _records(fixed, scores),
    }
    paths = []
    for name, recs in files.items():
        write_bench_csv(out / name, recs)
        paths.append(out / name)
    return paths


def run_sweep(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    """
    Every read length on one fixed lattice.  Each tap is checked against a
    lattice built for that length alone.
    """
    out = out or sys.stdout
    read_lens = list(range(1, cfg.fixed_dim + 1))
    profiles, fpni = load_profiles(cfg.profiles)
    q, r = _bench_inputs(cfg)
    amap = simulate(build_lattice(cfg.fixed_dim, cfg.scheme), q, r, cfg.seed_ctx)
    scores, bad = {}, []
    for L in read_lens:
        scores[L] = tap_output(amap, L)
        dedicated = simulate(build_lattice(L, cfg.scheme), q.prefix(L), r.prefix(L), cfg.seed_ctx)
        if dedicated.global_out != scores[L]:
            bad.append(L)
            out.write(f"MISMATCH read_len={L} tap={scores[L]} dedicated={dedicated.global_out}\n")
    report = speedup_report(read_lens, profiles, cfg.fixed_dim, scheme=cfg.scheme,
                            seed=cfg.seed_ctx, fpni=fpni)
    write_bench_csv(_ensure_dir(cfg.out) / "sweep.csv", _records(report, scores))
    n_ok = len(read_lens) - len(bad)
    out.write(f"{n_ok}/{len(read_lens)} read lengths match dedicated lattices\n")
    return EXIT_OK if not bad else EXIT_VERIFY_FAILED


# -- align ------------------------------------------------------------------

def _align_pairs(cfg: RunConfig):
    if cfg.sequences:
        if len(cfg.sequences) != 2 or cfg.reads or cfg.ref:
            raise InvalidArgument("give either two sequences or --reads/--ref files")
        a, b = (s.upper() for s in cfg.sequences)
        return [(Sequence(a, "query"), Sequence(b, "reference"))]
    if not (cfg.reads and cfg.ref):
        raise InvalidArgument("align needs two sequences or both --reads and --ref")
    reads, refs = parse_fasta(cfg.reads), parse_fasta(cfg.ref)
    if len(refs) == len(reads):
        return list(zip(reads, refs))
    if len(refs) != 1:
        raise InvalidArgument(f"{len(reads)} reads but {len(refs)} references; "
                              "give one reference or one per read")
    ref = refs[0]
    pairs = []
    for rd in reads:
        if len(rd) > len(ref) and not cfg.oracle_only:
            raise InvalidArgument(f"read {rd.name!r} is longer than the reference")
        window = ref if cfg.oracle_only else ref.prefix(len(rd))
        pairs.append((rd, window))
    return pairs


def run_align(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    seed = cfg.seed_ctx
    for q, r in _align_pairs(cfg):
        if not cfg.oracle_only:
            if len(q) != len(r):
                raise InvalidArgument(
                    f"{q.name}: lengths {len(q)} and {len(r)} differ; the lattice is square "
                    "(use --oracle-only for rectangular alignment)")
            if len(q) > MAX_LATTICE:
                raise InvalidArgument(f"{q.name}: length {len(q)} exceeds the {MAX_LATTICE} lattice "
                                      "(use --oracle-only)")
        res = dp_fill(q, r, cfg.scheme, seed)
        score, row, col = res.local_best
        if not cfg.oracle_only:
            amap = simulate(build_lattice(len(q), cfg.scheme), q, r, seed)
            if not np.array_equal(amap.arrival, res.matrix):
                raise AssertionError(f"{q.name}: lattice disagrees with reference DP")
        out.write(f"{q.name or 'query'}\tscore={score}\trow={row}\tcol={col}\t"
                  f"max_offset={res.max_offset}\tglobal={res.global_score}\n")
        if cfg.show_matrix and max(len(q), len(r)) <= 16:
            for line in res.matrix.tolist():
                out.write("  " + " ".join(f"{v:3d}" for v in line) + "\n")
    return EXIT_OK
