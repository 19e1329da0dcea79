import argparse
import sys

from . import harness
from .alignment import ScoringScheme
from .errors import FastaError, InvalidArgument
from .harness import EXIT_IO, EXIT_OK, EXIT_USAGE, RunConfig


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--match", type=int, default=0, help="match delay (units)")
    common.add_argument("--mismatch", type=int, default=2, help="mismatch delay (units)")
    common.add_argument("--gap", type=int, default=1, help="gap delay (units)")
    common.add_argument("--w0", type=int, default=0, help="seed score added to the boundary")
    common.add_argument("--fixed-dim", type=int, default=131, help="fixed lattice dimension")
    common.add_argument("--allow-any-dim", action="store_true",
                        help="allow --fixed-dim below the 19-base seed minimum")
    common.add_argument("--taps", type=_int_list, default=None,
                        help="comma separated tap rows (default: every row)")
    common.add_argument("--profile", action="append", default=[],
                        help="key = value profile file, applied over the defaults (repeatable)")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", default="results", help="output directory")
    common.add_argument("--reads", help="FASTA file of reads")
    common.add_argument("--ref", help="FASTA file of reference windows")

    p = argparse.ArgumentParser(prog="memrace",
                                description="Race-logic seed-extension simulator and cost models.")
    sub = p.add_subparsers(dest="mode", required=True)

    a = sub.add_parser("align", parents=[common], help="align sequences and print outputs")
    a.add_argument("sequences", nargs="*", help="query and reference given inline")
    a.add_argument("--oracle-only", action="store_true",
                   help="skip the lattice; allows unequal lengths")
    a.add_argument("--show-matrix", action="store_true", help="print the matrix (lengths <= 16)")

    v = sub.add_parser("verify", parents=[common], help="lattice vs DP equivalence suite")
    v.add_argument("--checks", type=int, default=1000, help="number of random cases")
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    b = sub.add_parser("bench", parents=[common], help="write latency/speedup/power/area CSVs")
    b.add_argument("--read-lens", type=_int_list, default=None, help="comma separated read lengths")

    sub.add_parser("sweep", parents=[common], help="every read length on one fixed lattice")
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(
        mode=args.mode,
        reads=args.reads,
        ref=args.ref,
        sequences=getattr(args, "sequences", []),
        scheme=ScoringScheme(args.match, args.mismatch, args.gap),
        w0=args.w0,
        fixed_dim=args.fixed_dim,
        allow_any_dim=args.allow_any_dim,
        taps=args.taps,
        profiles=args.profile,
        out=args.out,
        seed=args.seed,
        checks=getattr(args, "checks", 1000),
        read_lens=getattr(args, "read_lens", None),
        oracle_only=getattr(args, "oracle_only", False),
        show_matrix=getattr(args, "show_matrix", False),
        inject_fault=getattr(args, "inject_fault", False),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.mode == "align":
            return harness.run_align(cfg)
        if cfg.mode == "verify":
            return harness.run_verify(cfg)
        if cfg.mode == "bench":
            for path in harness.run_bench(cfg):
                print(path)
            return EXIT_OK
        return harness.run_sweep(cfg)
    except (InvalidArgument, FastaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
