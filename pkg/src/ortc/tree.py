"""Pruned 8-ary repetition tree over a per-position repeat bitmap.

The conceptual complete tree is array-indexed like an 8-ary heap: node 0 is
the root, the k-th child of node r lives at 8r + k, and the parent of r at
floor((r-1)/8).  The serialized form stores only *present* nodes, depth-first
in preorder:

* leaf bytes cover 8 consecutive bitmap positions; bit i (MSB-first) of leaf
  j is bitmap position 8j + i,
* internal bytes are child-presence masks; bit k-1 (MSB-first) says the k-th
  child subtree holds at least one set bit,
* subtrees with no set bits are pruned entirely.  The root byte is always
  written, even when zero, so an empty tree is the single byte 0x00.

Depth is counted in internal levels over 8-bit blocks: numBlocks =
ceil(N / 8) leaves need the smallest d with 8**d >= numBlocks.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadChildOrdinal, BitBeyondLength, ChildOutOfRange, MalformedTree, RootHasNoParent

__all__ = [
    "RepeatBitmap",
    "OrtTree",
    "parent",
    "kth_child",
    "tree_depth",
    "bitmap_to_tree",
    "tree_to_bitmap",
    "serialize_tree",
    "parse_tree",
]

FANOUT = 8

# Depth lookup for the common range; tree_depth() extends past the table on demand.
_DEPTH_THRESHOLDS = tuple(FANOUT**d for d in range(9))


def parent(r: int) -> int:
    """Array index of the parent of node r; node 0 has none."""
    if r == 0:
        raise RootHasNoParent("node 0 is the root")
    if r < 0:
        raise ValueError(f"node index must be non-negative, got {r}")
    return (r - 1) // FANOUT


def kth_child(r: int, k: int, n: int) -> int:
    """Array index of the k-th child (k in 1..8) of node r, bounded by node count n."""
    if not 1 <= k <= FANOUT:
        raise BadChildOrdinal(f"child ordinal must be in 1..8, got {k}")
    if r < 0:
        raise ValueError(f"node index must be non-negative, got {r}")
    c = FANOUT * r + k
    if c > n:
        raise ChildOutOfRange(f"child {k} of node {r} is {c}, past node count {n}")
    return c


def tree_depth(num_blocks: int) -> int:
    """Number of internal levels needed above num_blocks leaf blocks.

    Smallest d >= 0 with 8**d >= num_blocks; 0 means the lone leaf is the root.
    """
    if num_blocks < 1:
        raise ValueError(f"num_blocks must be >= 1, got {num_blocks}")
    d = bisect.bisect_left(_DEPTH_THRESHOLDS, num_blocks)
    if d == len(_DEPTH_THRESHOLDS):
        while FANOUT**d < num_blocks:
            d += 1
    return d


class RepeatBitmap:
    """One bit per input position; a set bit marks a byte dropped as a repeat.

    Wraps an immutable boolean array.  Position p set means the input byte at
    p equals the byte one stride earlier and was elided from the kept stream.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[bool] | np.ndarray):
        arr = np.array(bits, dtype=bool, copy=True)
        if arr.ndim != 1:
            raise ValueError("bitmap must be one-dimensional")
        arr.setflags(write=False)
        self._bits = arr

    @classmethod
    def from_positions(cls, positions: Iterable[int], length: int) -> "RepeatBitmap":
        arr = np.zeros(length, dtype=bool)
        pos = np.fromiter(positions, dtype=np.int64)
        if pos.size:
            if pos.min() < 0 or pos.max() >= length:
                raise ValueError("position outside bitmap length")
            arr[pos] = True
        return cls(arr)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return self._bits.size

    @property
    def count(self) -> int:
        """Number of set bits."""
        return int(self._bits.sum())

    def positions(self) -> list[int]:
        return [int(p) for p in np.flatnonzero(self._bits)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepeatBitmap):
            return NotImplemented
        return self._bits.size == other._bits.size and bool(np.array_equal(self._bits, other._bits))

    def __repr__(self) -> str:
        return f"RepeatBitmap(length={len(self)}, set={self.positions()!r})"


@dataclass(frozen=True)
class OrtTree:
    """Pruned repetition tree in its serialized (preorder) node layout.

    num_blocks: ceil(N/8) leaf blocks the tree spans (0 for an empty bitmap).
    depth: internal levels above the leaves.
    nodes: one byte per present node, depth-first preorder.
    """

    num_blocks: int
    depth: int
    nodes: bytes

    def __post_init__(self) -> None:
        if self.num_blocks < 0:
            raise ValueError("num_blocks must be non-negative")
        if self.depth != (tree_depth(self.num_blocks) if self.num_blocks > 1 else 0):
            raise ValueError(f"depth {self.depth} wrong for {self.num_blocks} blocks")
        if not self.nodes:
            raise ValueError("a tree serializes to at least its root byte")

    @property
    def node_count(self) -> int:
        return len(self.nodes)


def bitmap_to_tree(bitmap: RepeatBitmap) -> OrtTree:
    """Build the pruned presence tree for a repeat bitmap."""
    bits = bitmap.bits
    n = bits.size
    num_blocks = -(-n // 8)
    if num_blocks == 0:
        return OrtTree(0, 0, b"\x00")

    padded = np.zeros(num_blocks * 8, dtype=bool)
    padded[:n] = bits
    levels = [np.packbits(padded)]  # leaf bytes, MSB-first
    while levels[0].size > 1:
        present = levels[0] != 0
        pad = (-present.size) % FANOUT
        if pad:
            present = np.concatenate([present, np.zeros(pad, dtype=bool)])
        levels.insert(0, np.packbits(present))
    depth = len(levels) - 1

    out = bytearray()
    stack = [(0, 0)]
    while stack:
        level, slot = stack.pop()
        byte = int(levels[level][slot])
        out.append(byte)
        if level == depth:
            continue
        for k in range(FANOUT - 1, -1, -1):  # reversed so pops come out in child order
            if byte & (0x80 >> k):
                stack.append((level + 1, FANOUT * slot + k))
    return OrtTree(num_blocks, depth, bytes(out))


def _walk(data: Sequence[int], num_blocks: int, depth: int) -> tuple[list[tuple[int, int]], int]:
    """Walk one preorder tree at the start of data.

    Returns ([(leaf_slot, leaf_byte), ...], bytes consumed).  Raises
    MalformedTree on truncation or a presence bit pointing past num_blocks.
    """
    size = len(data)
    if size == 0:
        raise MalformedTree("empty node stream")
    if num_blocks <= 1:
        # lone leaf doubles as root
        return [(0, data[0])], 1

    covered = [-(-num_blocks // FANOUT ** (depth - lvl)) for lvl in range(depth + 1)]
    leaves: list[tuple[int, int]] = []
    pos = 0
    stack = [(0, 0)]
    while stack:
        level, slot = stack.pop()
        if pos >= size:
            raise MalformedTree("node stream truncated")
        byte = data[pos]
        pos += 1
        if level == depth:
            leaves.append((slot, byte))
            continue
        for k in range(FANOUT - 1, -1, -1):
            if byte & (0x80 >> k):
                child = FANOUT * slot + k
                if child >= covered[level + 1]:
                    raise MalformedTree(
                        f"presence bit for child slot {child} past {covered[level + 1]} blocks"
                    )
                stack.append((level + 1, child))
    return leaves, pos


def tree_to_bitmap(tree: OrtTree, length: int) -> RepeatBitmap:
    """Invert bitmap_to_tree for a bitmap of the given length."""
    num_blocks = -(-length // 8)
    if tree.num_blocks != num_blocks:
        raise MalformedTree(f"tree spans {tree.num_blocks} blocks, length {length} needs {num_blocks}")

    leaves, consumed = _walk(tree.nodes, max(num_blocks, 1), tree.depth)
    if consumed != len(tree.nodes):
        raise MalformedTree(f"{len(tree.nodes) - consumed} trailing node bytes")

    slots = np.array([s for s, _ in leaves], dtype=np.int64)
    values = np.array([v for _, v in leaves], dtype=np.uint8)
    full = np.zeros(max(num_blocks, 1), dtype=np.uint8)
    full[slots] = values
    bits = np.unpackbits(full).astype(bool)
    if bool(bits[length:].any()):
        raise BitBeyondLength(f"set bit past position {length}")
    return RepeatBitmap(bits[:length])


def serialize_tree(tree: OrtTree) -> bytes:
    """Preorder node bytes; already the storage layout, so this is the identity."""
    return tree.nodes


def parse_tree(data: bytes, length: int) -> tuple[OrtTree, int]:
    """Read one tree for an input of `length` bytes from the front of data.

    The tree is self-delimiting given the length; trailing bytes are left for
    the caller.  Returns the tree and the number of bytes consumed.
    """
    num_blocks = -(-length // 8)
    depth = tree_depth(num_blocks) if num_blocks > 1 else 0
    _, consumed = _walk(data, max(num_blocks, 1), depth)
    return OrtTree(num_blocks, depth, bytes(data[:consumed])), consumed
