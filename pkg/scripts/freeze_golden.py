#!/usr/bin/env python3
"""
Freeze golden alignment outputs computed only with the brute-force oracle.

Every matrix cell (i, j) is the oracle score of the i- and j-prefixes; the
location/offset outputs are then read off that matrix with a plain loop, so
nothing here touches dp_fill.
"""

import json
import sys
from pathlib import Path

from memrace.alignment import ScoringScheme, SeedContext, Sequence, levenshtein_oracle

CASES = [("GATTACA", "GCATGCT", ScoringScheme(), 0, "gattaca_gcatgct.json")]
OUT = Path(__file__).resolve().parents[1] / "src" / "memrace" / "data" / "golden"


def oracle_matrix(q, r, scheme, w0):
    seed = SeedContext(w0)
    m = [[w0 + j * scheme.t_gap for j in range(len(r) + 1)]]
    for i in range(1, len(q) + 1):
        row = [w0 + i * scheme.t_gap]
        for j in range(1, len(r) + 1):
            row.append(levenshtein_oracle(Sequence(q[:i]), Sequence(r[:j]), scheme, seed))
        m.append(row)
    return m


def main():
    for q, r, scheme, w0, name in CASES:
        m = oracle_matrix(q, r, scheme, w0)
        Q, R = len(q), len(r)
        best = None
        for i in range(1, Q + 1):
            for j in range(1, R + 1):
                if i != Q and j != R:
                    continue
                if best is None or m[i][j] < best[0]:
                    best = [m[i][j], i, j]  # row-major scan keeps the first minimum
        doc = {
            "query": q, "reference": r,
            "scheme": {"t_match": scheme.t_match, "t_mismatch": scheme.t_mismatch, "t_gap": scheme.t_gap},
            "w0": w0, "matrix": m, "local_best": best,
            "global_score": m[Q][R], "max_offset": abs(best[1] - best[2]),
        }
        path = OUT / name
        path.write_text(json.dumps(doc, indent=1) + "\n")
        print(f"wrote {path}", file=sys.stderr)


if __name__ == "__main__":
    main()
