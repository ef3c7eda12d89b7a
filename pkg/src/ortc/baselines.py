"""Classic run-length baselines used for benchmark comparison.

Two schemes:

* escape-byte RLE ("prlc1"): a reserved flag byte introduces (value, count-1)
  triples for runs of 3+; everything else is a literal.  The flag is picked as
  the least frequent byte value (ties toward the smaller value) and recorded
  in a one-byte stream header, so inputs using all 256 values still encode:
  literal occurrences of the flag are themselves escaped as triples.  One
  triple covers at most 256 bytes.

* MSB-flag RLE ("prlc2"): byte values are restricted to 0..127; a byte with
  the high bit set says "repeat the previous literal (count-1 & 0x7f) more
  times".  One value/count pair covers at most 128 bytes.  Inputs with any
  byte >= 128 are rejected.
"""

from __future__ import annotations

import numpy as np

from .errors import MalformedStream, UnsupportedAlphabet

__all__ = [
    "PRLC1_MAX_RUN",
    "PRLC2_MAX_RUN",
    "prlc1_encode",
    "prlc1_decode",
    "prlc2_encode",
    "prlc2_decode",
]

PRLC1_MAX_RUN = 256
PRLC2_MAX_RUN = 128
_RUN_THRESHOLD = 3  # shorter runs stay literal


def _runs(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Starts and lengths of maximal equal runs."""
    starts = np.concatenate(([0], np.flatnonzero(arr[1:] != arr[:-1]) + 1))
    lengths = np.diff(np.concatenate((starts, [arr.size])))
    return starts, lengths


def prlc1_encode(data: bytes) -> tuple[int, bytes]:
    """Encode with an escape byte; returns (flag, body)."""
    data = bytes(data)
    if not data:
        return 0, b""
    arr = np.frombuffer(data, dtype=np.uint8)
    flag = int(np.argmin(np.bincount(arr, minlength=256)))  # first minimum = smallest value

    starts, lengths = _runs(arr)
    values = arr[starts]
    special = (lengths >= _RUN_THRESHOLD) | (values == flag)
    out = bytearray()
    copied = 0
    for i in np.flatnonzero(special):
        start, remaining, value = int(starts[i]), int(lengths[i]), int(values[i])
        out += data[copied:start]
        copied = start + remaining
        if value == flag:
            # flag bytes are never emitted bare, whatever the run length
            while remaining > 0:
                chunk = min(remaining, PRLC1_MAX_RUN)
                out += bytes((flag, value, chunk - 1))
                remaining -= chunk
        else:
            while remaining >= _RUN_THRESHOLD:
                chunk = min(remaining, PRLC1_MAX_RUN)
                out += bytes((flag, value, chunk - 1))
                remaining -= chunk
            out += bytes([value]) * remaining
    out += data[copied:]
    return flag, bytes(out)


def prlc1_decode(flag: int, body: bytes) -> bytes:
    """Invert prlc1_encode."""
    body = bytes(body)
    if not 0 <= flag <= 255:
        raise ValueError(f"flag must be a byte value, got {flag}")
    escapes = np.flatnonzero(np.frombuffer(body, dtype=np.uint8) == flag)
    out = bytearray()
    pos = 0
    i = 0
    while i < escapes.size:
        q = int(escapes[i])
        i += 1
        if q < pos:  # flag byte inside an already-consumed triple
            continue
        out += body[pos:q]
        if q + 3 > len(body):
            raise MalformedStream("truncated escape triple")
        out += bytes([body[q + 1]]) * (body[q + 2] + 1)
        pos = q + 3
    out += body[pos:]
    return bytes(out)


def prlc2_encode(data: bytes) -> bytes:
    """Encode 7-bit data with MSB-flagged count bytes."""
    data = bytes(data)
    if not data:
        return b""
    arr = np.frombuffer(data, dtype=np.uint8)
    if bool((arr >= 128).any()):
        offender = int(arr[arr >= 128][0])
        raise UnsupportedAlphabet(f"byte {offender:#04x} needs the high bit reserved for counts")

    starts, lengths = _runs(arr)
    out = bytearray()
    copied = 0
    for i in np.flatnonzero(lengths >= _RUN_THRESHOLD):
        start, remaining, value = int(starts[i]), int(lengths[i]), int(arr[starts[i]])
        out += data[copied:start]
        copied = start + remaining
        while remaining >= _RUN_THRESHOLD:
            chunk = min(remaining, PRLC2_MAX_RUN)
            out += bytes((value, 0x80 | (chunk - 1)))
            remaining -= chunk
        out += bytes([value]) * remaining
    out += data[copied:]
    return bytes(out)


def prlc2_decode(body: bytes) -> bytes:
    """Invert prlc2_encode."""
    body = bytes(body)
    out = bytearray()
    pos = 0
    for q in np.flatnonzero(np.frombuffer(body, dtype=np.uint8) >= 128):
        q = int(q)
        if q == 0:
            raise MalformedStream("count byte at stream start")
        if body[q - 1] >= 128:
            raise MalformedStream("count byte follows another count byte")
        out += body[pos:q]  # literals, including the run's value byte
        out += bytes([body[q - 1]]) * (body[q] & 0x7F)
        pos = q + 1
    out += body[pos:]
    return bytes(out)
