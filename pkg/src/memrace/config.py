"""Plain-text config and packaged reference tables."""

from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Union

from .errors import InvalidArgument

PathLike = Union[str, Path]

PACKAGED_PROFILES = {
    "default": "default.profile",
    "calibration": "calibration.profile",
    "calibration.profile": "calibration.profile",
}


def data_text(name: str) -> str:
    return resources.files("memrace").joinpath("data", name).read_text()


def data_path(name: str) -> Path:
    return Path(str(resources.files("memrace").joinpath("data", name)))


def parse_keyvalue(text: str, source: str = "<string>") -> Dict[str, str]:
    """``key = value`` per line; ``#`` starts a comment. Later keys win."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgument(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise InvalidArgument(f"{source}:{lineno}: empty key or value")
        out[key] = value
    return out


def read_keyvalue(path: PathLike) -> Dict[str, str]:
    path = Path(path)
    return parse_keyvalue(path.read_text(), str(path))


def parse_table(text: str) -> List[Dict[str, str]]:
    """Tab separated table with a header row; ``#`` lines are comments."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    header = lines[0].split("\t")
    rows = []
    for ln in lines[1:]:
        cells = ln.split("\t")
        if len(cells) != len(header):
            raise InvalidArgument(f"table row has {len(cells)} cells, header has {len(header)}: {ln!r}")
        rows.append(dict(zip(header, cells)))
    return rows


def load_area_table() -> Dict[str, Dict[int, float]]:
    """``{kind: {read_len: area}}`` from the packaged area table."""
    rows = parse_table(data_text("area_table.tsv"))
    kinds = [k for k in rows[0] if k != "read_len"]
    return {k: {int(r["read_len"]): float(r[k]) for r in rows} for k in kinds}


def load_fpni_table() -> Dict[str, float]:
    return {r["name"]: float(r["value"]) for r in parse_table(data_text("fpni_30nm.tsv"))}


def merge_profile_files(paths: Iterable[PathLike], base: str = "default.profile") -> Dict[str, str]:
    """Defaults overlaid with each file in turn; a bare packaged name also resolves."""
    merged = parse_keyvalue(data_text(base), base)
    for p in paths:
        path = Path(p)
        if not path.exists() and str(p) in PACKAGED_PROFILES:
            path = data_path(PACKAGED_PROFILES[str(p)])
        merged.update(read_keyvalue(path))
    return merged
