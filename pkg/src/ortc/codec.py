"""Repeat-elimination codec: per-pass dedup against a stride, multi-pass pipeline,
and the container wire format.

One pass scans the input at a fixed stride s: byte p is a *repeat* when it
equals byte p-s and sits in a chain of at least min_run equal bytes spaced s
apart.  Repeats are dropped from the stream; their positions go into a pruned
8-ary bitmap tree (see tree.py) appended after the kept bytes.  A pass that
fails to shrink its input is emitted verbatim in stored mode, so no pass ever
grows its input by more than the frame header.

The full pipeline runs `passes` passes, pass i at stride i, each wrapping the
previous frame.  Wire layout, all integers unsigned little-endian:

  container: magic "ORTC" | version u8 = 1 | flags u8 (bit0 = stored) |
             pass count u8 | min run u8 | original length u64 | payload
  frame:     mode u8 (0 stored / 1 repeat-coded) | stride u8 |
             input length u64 | kept length u64 | kept bytes | tree bytes

The tree carries no length field; it is self-delimiting given the frame's
input length.  A stored container holds the raw input, so compressed size
never exceeds the input by more than the 16-byte container header.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadMagic,
    LengthMismatch,
    MalformedFrame,
    MalformedTree,
    TooManyPasses,
    UnsupportedVersion,
)
from .tree import RepeatBitmap, bitmap_to_tree, parse_tree, serialize_tree, tree_to_bitmap

__all__ = [
    "FrameMode",
    "CodecParams",
    "PassFrame",
    "FrameInfo",
    "ContainerInfo",
    "MAGIC",
    "VERSION",
    "CONTAINER_OVERHEAD",
    "FRAME_OVERHEAD",
    "mark_equalities",
    "encode_pass",
    "decode_pass",
    "parse_frame",
    "compress",
    "decompress",
    "inspect_container",
]

MAGIC = b"ORTC"
VERSION = 1

_CONTAINER_HDR = struct.Struct("<4sBBBBQ")  # magic, version, flags, pass count, min run, orig len
_FRAME_HDR = struct.Struct("<BBQQ")  # mode, stride, input len, kept len
_FLAG_STORED = 0x01

CONTAINER_OVERHEAD = _CONTAINER_HDR.size  # 16
FRAME_OVERHEAD = _FRAME_HDR.size  # 18


class FrameMode(enum.IntEnum):
    STORED = 0
    ORT = 1


@dataclass(frozen=True)
class CodecParams:
    """Pipeline settings: number of recursive passes and minimum chain length."""

    passes: int = 10
    min_run: int = 3

    def __post_init__(self) -> None:
        if self.passes < 0:
            raise ValueError(f"passes must be non-negative, got {self.passes}")
        if self.passes > 255:
            raise TooManyPasses(f"pass count {self.passes} exceeds the u8 header field")
        if not 1 <= self.min_run <= 255:
            raise ValueError(f"min_run must be in 1..255, got {self.min_run}")


@dataclass(frozen=True)
class PassFrame:
    """One pass's output: kept bytes plus the serialized position tree."""

    mode: FrameMode
    stride: int
    input_len: int
    kept: bytes
    tree: bytes

    def __post_init__(self) -> None:
        if not 1 <= self.stride <= 255:
            raise ValueError(f"stride must be in 1..255, got {self.stride}")
        if self.mode == FrameMode.STORED:
            if len(self.kept) != self.input_len or self.tree:
                raise ValueError("stored frame must carry the input verbatim and no tree")
        elif len(self.kept) > self.input_len:
            raise ValueError("kept stream longer than the input")

    @property
    def kept_len(self) -> int:
        return len(self.kept)

    def to_bytes(self) -> bytes:
        header = _FRAME_HDR.pack(int(self.mode), self.stride, self.input_len, len(self.kept))
        return header + self.kept + self.tree


def _chain_run_lengths(link: np.ndarray) -> np.ndarray:
    """Per element, the length of its maximal run of equal values in link."""
    n = link.size
    starts = np.flatnonzero(link[1:] != link[:-1]) + 1
    bounds = np.concatenate(([0], starts, [n]))
    lens = np.diff(bounds)
    return np.repeat(lens, lens)


def _mark_bits(arr: np.ndarray, stride: int, min_run: int) -> np.ndarray:
    n = arr.size
    bits = np.zeros(n, dtype=bool)
    if n == 0 or stride >= n:
        return bits
    eq = np.zeros(n, dtype=bool)
    eq[stride:] = arr[stride:] == arr[:-stride]
    if min_run <= 2:
        # every equality link already sits in a chain of length >= 2
        return eq
    need = min_run - 1  # links per qualifying chain
    for r in range(stride):
        link = eq[r::stride]
        if link.size == 0 or not link.any():
            continue
        bits[r::stride] = link & (_chain_run_lengths(link) >= need)
    return bits


def mark_equalities(data: bytes, stride: int, min_run: int) -> RepeatBitmap:
    """Flag every byte that repeats the byte `stride` positions earlier within
    a maximal equal chain of at least min_run members."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if min_run < 1:
        raise ValueError(f"min_run must be >= 1, got {min_run}")
    return RepeatBitmap(_mark_bits(np.frombuffer(bytes(data), dtype=np.uint8), stride, min_run))


def encode_pass(data: bytes, stride: int, min_run: int) -> PassFrame:
    """Encode one pass; falls back to stored mode unless dedup strictly shrinks."""
    if not 1 <= stride <= 255:
        raise ValueError(f"stride must be in 1..255, got {stride}")
    if not 1 <= min_run <= 255:
        raise ValueError(f"min_run must be in 1..255, got {min_run}")
    data = bytes(data)
    arr = np.frombuffer(data, dtype=np.uint8)
    bits = _mark_bits(arr, stride, min_run)
    kept = arr[~bits].tobytes()
    tree_bytes = serialize_tree(bitmap_to_tree(RepeatBitmap(bits)))
    if len(kept) + len(tree_bytes) < len(data):
        return PassFrame(FrameMode.ORT, stride, len(data), kept, tree_bytes)
    return PassFrame(FrameMode.STORED, stride, len(data), data, b"")


def decode_pass(frame: PassFrame) -> bytes:
    """Rebuild a pass's input from its kept stream and position tree."""
    if frame.mode == FrameMode.STORED:
        return frame.kept

    n = frame.input_len
    if n > len(frame.kept) + 8 * len(frame.tree):
        # every repeat needs a leaf bit and every kept byte is present, so a
        # well-formed frame can never claim more input than this; checked
        # before any length-proportional allocation
        raise MalformedFrame(f"input length {n} unreachable from kept stream and tree")
    try:
        tree, consumed = parse_tree(frame.tree, n)
        if consumed != len(frame.tree):
            raise MalformedTree(f"{len(frame.tree) - consumed} bytes after tree")
        bits = tree_to_bitmap(tree, n).bits
    except MalformedTree as exc:
        raise MalformedFrame(f"bad position tree: {exc}") from exc

    if bool(bits[: frame.stride].any()):
        raise MalformedFrame("repeat flagged before one full stride")
    kept = np.frombuffer(frame.kept, dtype=np.uint8)
    unset = ~bits
    if int(unset.sum()) != kept.size:
        raise MalformedFrame(
            f"kept stream holds {kept.size} bytes, bitmap expects {int(unset.sum())}"
        )

    out = np.empty(n, dtype=np.uint8)
    out[unset] = kept
    if bits.any():
        for r in range(frame.stride):
            lane_bits = bits[r :: frame.stride]
            if not lane_bits.any():
                continue
            # index of the nearest anchor at or before each lane slot
            anchor = np.where(lane_bits, 0, np.arange(lane_bits.size))
            np.maximum.accumulate(anchor, out=anchor)
            lane = out[r :: frame.stride]
            lane[...] = lane[anchor]
    return out.tobytes()


def parse_frame(data: bytes, offset: int = 0) -> tuple[PassFrame, int]:
    """Parse one frame starting at offset; returns the frame and the end offset."""
    view = memoryview(data)
    if len(view) - offset < FRAME_OVERHEAD:
        raise MalformedFrame("truncated frame header")
    mode_byte, stride, input_len, kept_len = _FRAME_HDR.unpack_from(view, offset)
    offset += FRAME_OVERHEAD
    try:
        mode = FrameMode(mode_byte)
    except ValueError:
        raise MalformedFrame(f"unknown frame mode {mode_byte:#04x}") from None
    if stride < 1:
        raise MalformedFrame("frame stride must be >= 1")
    if mode == FrameMode.STORED and kept_len != input_len:
        raise MalformedFrame("stored frame with kept length != input length")
    if mode == FrameMode.ORT and kept_len > input_len:
        raise MalformedFrame("kept length exceeds input length")
    if len(view) - offset < kept_len:
        raise MalformedFrame("truncated kept stream")
    kept = bytes(view[offset : offset + kept_len])
    offset += kept_len

    tree_bytes = b""
    if mode == FrameMode.ORT:
        try:
            _, consumed = parse_tree(view[offset:], input_len)
        except MalformedTree as exc:
            raise MalformedFrame(f"bad position tree: {exc}") from exc
        tree_bytes = bytes(view[offset : offset + consumed])
        offset += consumed
    return PassFrame(mode, stride, input_len, kept, tree_bytes), offset


def compress(data: bytes, params: CodecParams | None = None) -> bytes:
    """Run the multi-pass pipeline and wrap the result in a container.

    Pass i uses stride i.  If the pipeline fails to beat a stored container,
    the input is stored verbatim, bounding the output at len(data) + 16.
    """
    if params is None:
        params = CodecParams()
    data = bytes(data)
    current = data
    for i in range(1, params.passes + 1):
        current = encode_pass(current, i, params.min_run).to_bytes()
    if len(current) < len(data):
        header = _CONTAINER_HDR.pack(MAGIC, VERSION, 0, params.passes, params.min_run, len(data))
        return header + current
    header = _CONTAINER_HDR.pack(MAGIC, VERSION, _FLAG_STORED, 0, params.min_run, len(data))
    return header + data


def _parse_container_header(blob: bytes) -> tuple[int, int, int, int, int]:
    if len(blob) < len(MAGIC) or bytes(blob[: len(MAGIC)]) != MAGIC:
        raise BadMagic("not a repeat-tree container")
    if len(blob) < CONTAINER_OVERHEAD:
        raise MalformedFrame("truncated container header")
    _, version, flags, pass_count, min_run, orig_len = _CONTAINER_HDR.unpack_from(blob, 0)
    if version != VERSION:
        raise UnsupportedVersion(f"container version {version}, expected {VERSION}")
    if flags & ~_FLAG_STORED:
        raise MalformedFrame(f"unknown flag bits {flags:#04x}")
    if flags & _FLAG_STORED and pass_count != 0:
        raise MalformedFrame("stored container with a nonzero pass count")
    return version, flags, pass_count, min_run, orig_len


def decompress(blob: bytes) -> bytes:
    """Invert compress; raises rather than ever returning partial output."""
    _, flags, pass_count, _, orig_len = _parse_container_header(blob)
    payload = bytes(memoryview(blob)[CONTAINER_OVERHEAD:])
    if flags & _FLAG_STORED:
        if len(payload) != orig_len:
            raise LengthMismatch(f"stored payload is {len(payload)} bytes, header says {orig_len}")
        return payload
    buf = payload
    for _ in range(pass_count):
        frame, end = parse_frame(buf)
        if end != len(buf):
            raise MalformedFrame(f"{len(buf) - end} trailing bytes after frame")
        buf = decode_pass(frame)
    if len(buf) != orig_len:
        raise LengthMismatch(f"decoded {len(buf)} bytes, header says {orig_len}")
    return buf


@dataclass(frozen=True)
class FrameInfo:
    """Per-pass summary for inspection; pass 1 is the innermost (first) pass."""

    pass_index: int
    mode: FrameMode
    stride: int
    input_len: int
    kept_len: int
    tree_len: int


@dataclass(frozen=True)
class ContainerInfo:
    version: int
    stored: bool
    pass_count: int
    min_run: int
    orig_len: int
    frames: tuple[FrameInfo, ...]


def inspect_container(blob: bytes) -> ContainerInfo:
    """Decode the container frame by frame, reporting structure instead of data."""
    version, flags, pass_count, min_run, orig_len = _parse_container_header(blob)
    stored = bool(flags & _FLAG_STORED)
    frames: list[FrameInfo] = []
    if not stored:
        buf = bytes(memoryview(blob)[CONTAINER_OVERHEAD:])
        for outer in range(pass_count, 0, -1):
            frame, end = parse_frame(buf)
            if end != len(buf):
                raise MalformedFrame(f"{len(buf) - end} trailing bytes after frame")
            frames.append(
                FrameInfo(outer, frame.mode, frame.stride, frame.input_len, frame.kept_len, len(frame.tree))
            )
            buf = decode_pass(frame)
        if len(buf) != orig_len:
            raise LengthMismatch(f"decoded {len(buf)} bytes, header says {orig_len}")
    elif len(blob) - CONTAINER_OVERHEAD != orig_len:
        raise LengthMismatch(
            f"stored payload is {len(blob) - CONTAINER_OVERHEAD} bytes, header says {orig_len}"
        )
    frames.reverse()
    return ContainerInfo(version, stored, pass_count, min_run, orig_len, tuple(frames))
