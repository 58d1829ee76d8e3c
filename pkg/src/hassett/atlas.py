"""Range tables of divisor reports: build, persist, query.

Stored witnesses are trusted only after re-validation; loading a table
re-checks every row and raises WitnessError on the first mismatch.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .divisors import (
    DEFAULT_FANO_CAP,
    BullesWitness,
    DivisorReport,
    FanoWitness,
    Obstruction,
    classify,
    is_hassett_divisor,
)
from .errors import DomainError, FilterError, HassettError

CSV_COLUMNS = (
    "d",
    "is_divisor",
    "star",
    "star_obstruction",
    "bulles_f",
    "bulles_g",
    "bulles_n",
    "fano1_n",
    "fano1_a",
    "fano2",
    "fm_count",
)


@dataclass(frozen=True)
class Caps:
    fano1_n: int = DEFAULT_FANO_CAP


@dataclass
class AtlasTable:
    d_min: int
    d_max: int
    rows: list[DivisorReport]
    meta: dict = field(default_factory=dict)

    def validate(self) -> "AtlasTable":
        expected = [d for d in range(self.d_min, self.d_max + 1) if is_hassett_divisor(d)]
        got = [r.d for r in self.rows]
        if got != expected:
            raise HassettError(f"rows do not cover the divisors of [{self.d_min}, {self.d_max}]")
        for r in self.rows:
            r.validate()
        return self


def _build_chunk(args: tuple[int, int, int]) -> list[DivisorReport]:
    lo, hi, cap = args
    return [classify(d, cap) for d in range(lo, hi + 1) if is_hassett_divisor(d)]


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    size = max(1, -(-(hi - lo + 1) // parts))
    return [(a, min(hi, a + size - 1)) for a in range(lo, hi + 1, size)]


def build_atlas(
    d_min: int,
    d_max: int,
    caps: Caps = Caps(),
    jobs: int = 1,
    timestamp: Optional[str] = None,
) -> AtlasTable:
    """Classify every Hassett discriminant in [d_min, d_max].

    With ``jobs > 1`` the range is cut into contiguous chunks handed to a
    process pool; results are concatenated in chunk order, so row order
    never depends on scheduling.
    """
    if not 1 <= d_min <= d_max:
        raise DomainError(f"need 1 <= d_min <= d_max, got [{d_min}, {d_max}]")
    if jobs <= 1:
        rows = _build_chunk((d_min, d_max, caps.fano1_n))
    else:
        # several chunks per worker keeps the slow high-d end from idling others
        tasks = [(a, b, caps.fano1_n) for a, b in _chunks(d_min, d_max, jobs * 4)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = [r for part in pool.map(_build_chunk, tasks) for r in part]
    if timestamp is None:
        epoch = os.environ.get("SOURCE_DATE_EPOCH")
        t = time.gmtime(int(epoch)) if epoch else time.gmtime()
        timestamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", t)
    meta = {"version": __version__, "built": timestamp, "caps": {"fano1_n": caps.fano1_n}}
    return AtlasTable(d_min, d_max, rows, meta)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def report_to_csv_row(r: DivisorReport) -> list[str]:
    b = r.bulles or (None, None, None)
    f1 = r.fano1 or (None, None)
    return [
        _cell(r.d),
        _cell(r.is_divisor),
        _cell(r.star),
        _cell(None if r.star_failure is None else str(r.star_failure)),
        *(_cell(x) for x in b),
        *(_cell(x) for x in f1),
        _cell(r.fano2),
        _cell(r.fm_count),
    ]


def export_csv(table: AtlasTable) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in table.rows:
        w.writerow(report_to_csv_row(r))
    return buf.getvalue().encode()


def export_json(table: AtlasTable) -> bytes:
    doc = {
        "d_min": table.d_min,
        "d_max": table.d_max,
        "meta": table.meta,
        "rows": [r.to_dict() for r in table.rows],
    }
    return (json.dumps(doc, indent=1) + "\n").encode()


def export(table: AtlasTable, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        return export_csv(table)
    if fmt == "json":
        return export_json(table)
    raise ValueError(f"unknown format {fmt!r}")


def _parse_bool(s: str) -> bool:
    if s == "true":
        return True
    if s == "false":
        return False
    raise HassettError(f"bad boolean cell {s!r}")


def _opt_int(s: str) -> Optional[int]:
    return int(s) if s != "" else None


def load_csv(data: bytes | str, d_min: Optional[int] = None, d_max: Optional[int] = None) -> AtlasTable:
    """Parse an exported CSV. The range defaults to the first and last row."""
    text = data.decode() if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_COLUMNS:
        raise HassettError(f"unexpected CSV header {header}")
    rows = []
    for cells in reader:
        if not cells:
            continue
        c = dict(zip(CSV_COLUMNS, cells))
        bf, bg, bn = (_opt_int(c[k]) for k in ("bulles_f", "bulles_g", "bulles_n"))
        fn, fa = _opt_int(c["fano1_n"]), _opt_int(c["fano1_a"])
        rows.append(
            DivisorReport(
                d=int(c["d"]),
                is_divisor=_parse_bool(c["is_divisor"]),
                star=_parse_bool(c["star"]),
                star_failure=Obstruction.parse(c["star_obstruction"]) if c["star_obstruction"] else None,
                bulles=None if bf is None else BullesWitness(bf, bg, bn),
                fano1=None if fn is None else FanoWitness(fn, fa),
                fano2=_parse_bool(c["fano2"]),
                fm_count=_opt_int(c["fm_count"]),
            )
        )
    if d_min is None:
        d_min = rows[0].d if rows else 1
    if d_max is None:
        d_max = rows[-1].d if rows else d_min
    return AtlasTable(d_min, d_max, rows).validate()


def load_json(data: bytes | str) -> AtlasTable:
    doc = json.loads(data)
    rows = [DivisorReport.from_dict(r) for r in doc["rows"]]
    return AtlasTable(int(doc["d_min"]), int(doc["d_max"]), rows, doc.get("meta", {})).validate()


def load(path: str | os.PathLike) -> AtlasTable:
    with open(path, "rb") as fh:
        data = fh.read()
    if str(path).endswith(".json"):
        return load_json(data)
    return load_csv(data)


FILTER_FIELDS = ("star", "bulles", "fano1", "fano2", "fm_count", "is_divisor", "d_min", "d_max")


def _match(r: DivisorReport, key: str, want) -> bool:
    if key == "star":
        return r.star == want
    if key == "bulles":
        return (r.bulles is not None) == want
    if key == "fano1":
        return (r.fano1 is not None) == want
    if key == "fano2":
        return r.fano2 == want
    if key == "fm_count":
        return r.fm_count == want
    if key == "is_divisor":
        return r.is_divisor == want
    if key == "d_min":
        return r.d >= want
    if key == "d_max":
        return r.d <= want
    raise FilterError(f"unknown filter field {key!r}")


def query(table: AtlasTable, filters: Optional[dict] = None) -> list[DivisorReport]:
    """Rows satisfying every ``field=value`` filter, in table order.

    ``bulles`` and ``fano1`` test for presence of a witness; ``d_min`` and
    ``d_max`` are inclusive bounds; the rest compare for equality.
    """
    filters = dict(filters or {})
    for key in filters:
        if key not in FILTER_FIELDS:
            raise FilterError(f"unknown filter field {key!r}; known: {', '.join(FILTER_FIELDS)}")
    return [r for r in table.rows if all(_match(r, k, v) for k, v in filters.items())]


def slice_table(table: AtlasTable, lo: int, hi: int) -> list[DivisorReport]:
    return [r for r in table.rows if lo <= r.d <= hi]
