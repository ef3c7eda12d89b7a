"""Compression-ratio benchmarking across codecs, with CSV and markdown reports.

Every reported ratio comes from an encode that was decoded and compared back
to the original; a failed round trip or a codec error turns into an error
marker on the row instead of a number.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .baselines import prlc1_decode, prlc1_encode, prlc2_decode, prlc2_encode
from .codec import CodecParams, compress, decompress
from .errors import OrtcError, ZeroCompressedSize

__all__ = [
    "CorpusItem",
    "BenchRow",
    "CODEC_ORDER",
    "compression_ratio",
    "load_corpus",
    "run_bench",
    "render_report",
]

# Canonical codec ordering: our codec first, then the report column order of
# the flag-based baselines, then the plain stored container.
CODEC_ORDER = ("ort", "prlc2", "prlc1", "stored")

_CSV_HEADER = "index,item,codec,uncompressed,compressed,cr"


@dataclass(frozen=True)
class CorpusItem:
    name: str
    data: bytes


@dataclass(frozen=True)
class BenchRow:
    index: int
    item: str
    codec: str
    uncompressed: int
    compressed: int | None
    ratio: float | None
    error: str | None = None


def compression_ratio(uncompressed: int, compressed: int) -> float:
    """Uncompressed size over compressed size."""
    if compressed <= 0:
        raise ZeroCompressedSize(f"compressed size must be positive, got {compressed}")
    return uncompressed / compressed


def load_corpus(directory: str | Path) -> list[CorpusItem]:
    """All regular files in a directory, as opaque byte streams, sorted by name."""
    root = Path(directory)
    items = [
        CorpusItem(p.name, p.read_bytes())
        for p in sorted(root.iterdir(), key=lambda p: p.name)
        if p.is_file()
    ]
    return items


def _roundtrip(codec: str, data: bytes, params: CodecParams) -> tuple[int, bytes]:
    """Encode + decode with one codec; returns (encoded size, decoded bytes)."""
    if codec == "ort":
        blob = compress(data, params)
        return len(blob), decompress(blob)
    if codec == "stored":
        blob = compress(data, CodecParams(passes=0, min_run=params.min_run))
        return len(blob), decompress(blob)
    if codec == "prlc1":
        flag, body = prlc1_encode(data)
        return 1 + len(body), prlc1_decode(flag, body)  # 1-byte flag header counts
    if codec == "prlc2":
        body = prlc2_encode(data)
        return len(body), prlc2_decode(body)
    raise ValueError(f"unknown codec {codec!r}")


def run_bench(
    corpus: Sequence[CorpusItem],
    codecs: Sequence[str] = CODEC_ORDER,
    params: CodecParams | None = None,
) -> list[BenchRow]:
    """One verified row per (item, codec), in corpus x codec order."""
    if not corpus:
        raise ValueError("corpus is empty")
    for codec in codecs:
        if codec not in CODEC_ORDER:
            raise ValueError(f"unknown codec {codec!r}")
    if params is None:
        params = CodecParams()

    rows: list[BenchRow] = []
    for index, item in enumerate(corpus, start=1):
        for codec in codecs:
            try:
                size, decoded = _roundtrip(codec, item.data, params)
            except OrtcError as exc:
                rows.append(BenchRow(index, item.name, codec, len(item.data), None, None, type(exc).__name__))
                continue
            if decoded != item.data:
                rows.append(BenchRow(index, item.name, codec, len(item.data), size, None, "RoundTripMismatch"))
                continue
            ratio = 1.0 if not item.data else compression_ratio(len(item.data), size)
            rows.append(BenchRow(index, item.name, codec, len(item.data), size, ratio))
    return rows


def _csv_field(text: str) -> str:
    if any(c in text for c in ',"\n\r'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _render_csv(rows: Iterable[BenchRow]) -> str:
    lines = [_CSV_HEADER]
    for row in rows:
        compressed = "" if row.compressed is None else str(row.compressed)
        ratio = row.error if row.error else f"{row.ratio:.3f}"
        lines.append(
            ",".join((str(row.index), _csv_field(row.item), row.codec, str(row.uncompressed), compressed, ratio))
        )
    return "\n".join(lines) + "\n"


def _render_markdown(rows: Sequence[BenchRow]) -> str:
    # Pivot to one row per item, one ratio column per codec, plus a static
    # rule-generated-RLE column we do not implement, reported as absent.
    codecs = [c for c in CODEC_ORDER if any(r.codec == c for r in rows)]
    columns = ["#", "Item"]
    for codec in codecs:
        columns.append(codec)
        if codec == "ort":
            columns.append("DF-RLC")
    if "ort" not in codecs:
        columns.insert(2, "DF-RLC")

    items: list[tuple[int, str]] = []
    cells: dict[tuple[str, str], str] = {}
    for row in rows:
        key = (row.index, row.item)
        if key not in items:
            items.append(key)
        cells[(row.item, row.codec)] = row.error if row.error else f"{row.ratio:.3f}"

    lines = ["| " + " | ".join(columns) + " |"]
    lines.append("|" + "|".join("---:" if c != "Item" else ":---" for c in columns) + "|")
    for index, name in items:
        cols = [str(index), name]
        for codec in columns[2:]:
            cols.append("n/a" if codec == "DF-RLC" else cells.get((name, codec), ""))
        lines.append("| " + " | ".join(cols) + " |")
    return "\n".join(lines) + "\n"


def render_report(rows: Sequence[BenchRow], format: str = "markdown") -> str:
    """Render rows as long-form CSV or a pivoted markdown comparison table."""
    if format == "csv":
        return _render_csv(rows)
    if format == "markdown":
        return _render_markdown(rows)
    raise ValueError(f"unknown report format {format!r}")
