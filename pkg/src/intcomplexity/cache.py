"""Binary sieve cache.

Layout: ``b"ICX1"``, the limit ``N`` as little-endian uint64, then ``N``
bytes where byte ``i-1`` holds ||i||.
"""

from __future__ import annotations

import os
import struct
from pathlib import Path

import numpy as np

from .engine import ComplexityTable
from .errors import CorruptCacheError

MAGIC = b"ICX1"
HEADER = struct.Struct("<4sQ")


def write_cache(path, table: ComplexityTable) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, table.limit))
        fh.write(table.values[1:].tobytes())
    os.replace(tmp, path)


def read_cache(path, expected_limit: int | None = None) -> ComplexityTable:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(HEADER.size)
        if len(head) < HEADER.size:
            raise CorruptCacheError(f"{path}: truncated header")
        magic, limit = HEADER.unpack(head)
        if magic != MAGIC:
            raise CorruptCacheError(f"{path}: bad magic {magic!r}")
        if expected_limit is not None and limit != expected_limit:
            raise CorruptCacheError(f"{path}: limit {limit}, expected {expected_limit}")
        body = fh.read()
    if len(body) != limit:
        raise CorruptCacheError(f"{path}: expected {limit} entries, found {len(body)}")
    if limit < 1 or body[0] != 1:
        raise CorruptCacheError(f"{path}: entry for n=1 must be 1")
    values = np.empty(limit + 1, dtype=np.uint8)
    values[0] = 0
    values[1:] = np.frombuffer(body, dtype=np.uint8)
    return ComplexityTable(values)
