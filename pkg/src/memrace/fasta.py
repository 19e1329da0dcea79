from pathlib import Path
from typing import List

from .alignment import NUCLEOTIDES, Sequence
from .errors import FastaError


def parse_fasta_text(text: str) -> List[Sequence]:
    """
    Parse FASTA records.  Sequence lines may wrap; symbols are case-insensitive
    and normalized to upper case.
    """
    records = []
    name = None
    chunks: List[str] = []
    header_line = 0

    def flush():
        if name is None:
            return
        if not chunks:
            raise FastaError(f"record {name!r} has no sequence", header_line)
        records.append(Sequence("".join(chunks), name))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            name, chunks, header_line = line[1:].strip(), [], lineno
            continue
        if name is None:
            raise FastaError("sequence data before the first '>' header", lineno)
        seq = line.upper()
        for sym in seq:
            if sym not in NUCLEOTIDES:
                raise FastaError(f"illegal symbol {sym!r}", lineno)
        chunks.append(seq)
    flush()
    if not records:
        raise FastaError("no FASTA records found")
    return records


def parse_fasta(path) -> List[Sequence]:
    return parse_fasta_text(Path(path).read_text())
