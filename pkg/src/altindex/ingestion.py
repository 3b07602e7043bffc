"""Canonical CSV loading/writing and the mapping-driven upstream importer.

Publications file columns: ``pub_id, scholar_id, year, scholarly_citations``
plus any of the twelve indicator columns (``twitter_mention`` ...). Scholars
file columns: ``scholar_id, display_name`` and optionally
``missing_variables`` (semicolon-separated scholar-level variable names).
Files are UTF-8, comma-delimited, with a mandatory header row.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .domain import (
    DEFAULT_WINDOW,
    INDICATORS,
    Dataset,
    PublicationRecord,
    ScholarRecord,
    validate,
)
from .errors import DataError

log = logging.getLogger(__name__)

PUBLICATION_KEYS = ("pub_id", "scholar_id", "year", "scholarly_citations")
INDICATOR_COLUMNS = tuple(k.value for k in INDICATORS)
PUBLICATION_COLUMNS = PUBLICATION_KEYS + INDICATOR_COLUMNS
SCHOLAR_REQUIRED = ("scholar_id", "display_name")
SCHOLAR_COLUMNS = SCHOLAR_REQUIRED + ("missing_variables",)


@dataclass(frozen=True)
class LoadConfig:
    window: tuple[int, int] = DEFAULT_WINDOW


@dataclass(frozen=True)
class LoadStats:
    rows_read: int
    rows_dropped: int
    total_events: int


def _read_table(path: Path, required, allowed) -> list[tuple[int, dict[str, str]]]:
    """Return ``(line_number, row)`` pairs after checking the header."""
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: cannot read file: {exc.strerror}") from None
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: missing header row")
        header = [h.strip() for h in header]
        for col in required:
            if col not in header:
                raise DataError(f"{path}: missing column: {col}")
        unknown = [h for h in header if h not in allowed]
        if unknown:
            raise DataError(f"{path}: unknown column: {unknown[0]}")
        if len(set(header)) != len(header):
            raise DataError(f"{path}: duplicate column in header")
        rows = []
        for record in reader:
            if not any(cell.strip() for cell in record):
                continue
            if len(record) != len(header):
                raise DataError(f"{path}:{reader.line_num}: expected {len(header)} cells, got {len(record)}")
            rows.append((reader.line_num, dict(zip(header, (c.strip() for c in record)))))
    return rows


def _count(path: Path, line: int, column: str, text: str, blank_zero: bool) -> int:
    if text == "" and blank_zero:
        return 0
    try:
        value = int(text)
    except ValueError:
        raise DataError(f"{path}:{line}: non-numeric value in {column}: {text!r}") from None
    if value < 0:
        raise DataError(f"{path}:{line}: negative value in {column}: {value}")
    return value


def _parse_publication(path: Path, line: int, row: dict[str, str]) -> PublicationRecord:
    for key in ("pub_id", "scholar_id"):
        if not row[key]:
            raise DataError(f"{path}:{line}: empty {key}")
    try:
        year = int(row["year"])
    except ValueError:
        raise DataError(f"{path}:{line}: non-numeric value in year: {row['year']!r}") from None
    counts = {k: _count(path, line, k.value, row.get(k.value, ""), True) for k in INDICATORS}
    return PublicationRecord(
        pub_id=row["pub_id"],
        scholar_id=row["scholar_id"],
        year=year,
        scholarly_citations=_count(path, line, "scholarly_citations", row["scholarly_citations"], False),
        counts=counts,
    )


def _parse_scholar(path: Path, line: int, row: dict[str, str]) -> ScholarRecord:
    if not row["scholar_id"]:
        raise DataError(f"{path}:{line}: empty scholar_id")
    missing = frozenset(v.strip() for v in row.get("missing_variables", "").split(";") if v.strip())
    return ScholarRecord(row["scholar_id"], row["display_name"], missing)


def read_dataset(publications_path, scholars_path, config: LoadConfig = LoadConfig(),
                 strict: bool = True) -> tuple[Dataset, LoadStats]:
    """Parse both files, drop out-of-window rows and return the dataset with load stats.

    Cell-level faults (missing column, non-numeric or negative count) always
    raise. With ``strict`` duplicate ids and dangling scholar references raise
    too; otherwise they are left for :func:`validate` to report.
    """
    pub_path, sch_path = Path(publications_path), Path(scholars_path)
    lo, hi = config.window
    if lo > hi:
        raise DataError(f"invalid year window {lo}-{hi}")

    scholars, first_seen = [], {}
    for line, row in _read_table(sch_path, SCHOLAR_REQUIRED, SCHOLAR_COLUMNS):
        sch = _parse_scholar(sch_path, line, row)
        if strict and sch.scholar_id in first_seen:
            raise DataError(f"{sch_path}: duplicate scholar_id {sch.scholar_id} "
                            f"on rows {first_seen[sch.scholar_id]} and {line}")
        first_seen.setdefault(sch.scholar_id, line)
        scholars.append(sch)

    pubs, pub_rows, dropped, rows_read = [], {}, 0, 0
    for line, row in _read_table(pub_path, PUBLICATION_KEYS, PUBLICATION_COLUMNS):
        pub = _parse_publication(pub_path, line, row)
        rows_read += 1
        if strict and pub.pub_id in pub_rows:
            raise DataError(f"{pub_path}: duplicate pub_id {pub.pub_id} "
                            f"on rows {pub_rows[pub.pub_id]} and {line}")
        pub_rows.setdefault(pub.pub_id, line)
        if strict and pub.scholar_id not in first_seen:
            raise DataError(f"{pub_path}:{line}: unknown scholar_id {pub.scholar_id}")
        if not lo <= pub.year <= hi:
            dropped += 1
            continue
        pubs.append(pub)

    if dropped:
        log.warning("%s: dropped %d row(s) outside %d-%d", pub_path, dropped, lo, hi)
    ds = Dataset(tuple(scholars), tuple(pubs), (lo, hi))
    stats = LoadStats(rows_read, dropped, ds.total_events)
    log.info("%s: %d publication row(s) read, %d kept, %d event(s)",
             pub_path, rows_read, len(pubs), stats.total_events)
    return ds, stats


def load_dataset(publications_path, scholars_path, config: LoadConfig = LoadConfig()) -> Dataset:
    ds, _ = read_dataset(publications_path, scholars_path, config)
    report = validate(ds)
    if not report.ok:
        raise DataError(f"{publications_path}: {report.violations[0]}")
    return ds


def _write_rows(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_dataset(ds: Dataset, publications_path, scholars_path) -> None:
    _write_rows(Path(scholars_path), SCHOLAR_COLUMNS, [
        (s.scholar_id, s.display_name, ";".join(sorted(s.missing_variables)))
        for s in ds.scholars
    ])
    _write_rows(Path(publications_path), PUBLICATION_COLUMNS, [
        (p.pub_id, p.scholar_id, p.year, p.scholarly_citations, *(p.counts[k] for k in INDICATORS))
        for p in ds.publications
    ])


def parse_mapping(text: str, source: str = "<mapping>") -> dict[str, str]:
    """Parse ``canonical_column = source_column`` lines."""
    allowed = set(PUBLICATION_COLUMNS) | set(SCHOLAR_COLUMNS)
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise DataError(f"{source}:{lineno}: expected 'canonical_column = source_column'")
        if key not in allowed:
            raise DataError(f"{source}:{lineno}: unknown canonical column '{key}'")
        if key in mapping:
            raise DataError(f"{source}:{lineno}: duplicate canonical column '{key}'")
        mapping[key] = value
    return mapping


def load_mapping(path) -> dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: cannot read file: {exc.strerror}") from None
    return parse_mapping(text, str(path))


def _read_source(path: Path) -> tuple[list[str], list[dict[str, str]]]:
    try:
        fh = open(path, newline="", encoding="utf-8-sig")
    except OSError as exc:
        raise DataError(f"{path}: cannot read file: {exc.strerror}") from None
    with fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
        header = list(reader.fieldnames or [])
    return header, rows


def _resolve(path: Path, header: list[str], mapping: Mapping[str, str], columns) -> dict[str, str]:
    resolved = {}
    for canonical in columns:
        if canonical not in mapping:
            continue
        source = mapping[canonical]
        if source not in header:
            raise DataError(f"{path}: mapped source column not found: {source}")
        resolved[canonical] = source
    return resolved


def import_upstream(path, mapping: Mapping[str, str], out_dir, scholars_path=None) -> tuple[Path, Path]:
    """Rewrite an upstream publications table (and optional scholars table) canonically.

    Unmapped indicator columns are written as 0 with a warning. When no
    scholars table is given, one row per distinct scholar is derived from the
    publications table, named by the ``display_name`` mapping if present.
    Rows are sorted by scholar_id, then pub_id. Cell values are copied
    verbatim; :func:`load_dataset` does the numeric validation.
    """
    path = Path(path)
    out_dir = Path(out_dir)
    for required in PUBLICATION_KEYS:
        if required not in mapping:
            raise DataError(f"mapping has no source for required column: {required}")

    header, rows = _read_source(path)
    pub_cols = _resolve(path, header, mapping, PUBLICATION_COLUMNS)
    name_col = None
    if scholars_path is None:
        name_col = _resolve(path, header, mapping, ("display_name",)).get("display_name")
    unmapped = [c for c in INDICATOR_COLUMNS if c not in pub_cols]
    if unmapped:
        log.warning("%s: unmapped indicator column(s) default to 0: %s", path, ", ".join(unmapped))

    pub_rows = []
    for row in rows:
        pub_rows.append([row[pub_cols[c]] if c in pub_cols else "0" for c in PUBLICATION_COLUMNS])
    pub_rows.sort(key=lambda r: (r[1], r[0]))

    if scholars_path is not None:
        sch_path = Path(scholars_path)
        sch_header, sch_source = _read_source(sch_path)
        sch_cols = _resolve(sch_path, sch_header, mapping, SCHOLAR_COLUMNS)
        if "scholar_id" not in sch_cols:
            raise DataError("mapping has no source for required column: scholar_id")
        sch_rows = [[row[sch_cols[c]] if c in sch_cols else "" for c in SCHOLAR_COLUMNS]
                    for row in sch_source]
    else:
        names: dict[str, str] = {}
        for row in rows:
            sid = row[pub_cols["scholar_id"]]
            names.setdefault(sid, row[name_col] if name_col else sid)
        sch_rows = [[sid, name, ""] for sid, name in names.items()]
    sch_rows.sort(key=lambda r: r[0])

    out_dir.mkdir(parents=True, exist_ok=True)
    pubs_out, sch_out = out_dir / "publications.csv", out_dir / "scholars.csv"
    _write_rows(pubs_out, PUBLICATION_COLUMNS, pub_rows)
    _write_rows(sch_out, SCHOLAR_COLUMNS, sch_rows)
    return pubs_out, sch_out
