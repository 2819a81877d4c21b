"""Circulants, the Goethals-Seidel array and bit-packed Hadamard matrices."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .designs import BaseSeqQuad, validate_bs
from .errors import InvalidBS, NotHadamard, PostconditionFailure, ShapeError


def _pack(entries: np.ndarray) -> np.ndarray:
    """Rows of a +-1 matrix as little-endian uint64 words, +1 -> bit 1."""
    n_rows, n_cols = entries.shape
    words = max(1, -(-n_cols // 64))
    bits = np.zeros((n_rows, words * 64), dtype=np.uint8)
    bits[:, :n_cols] = entries > 0
    return np.packbits(bits, axis=1, bitorder="little").view("<u8").reshape(n_rows, words)


def _unpack(packed: np.ndarray, order: int) -> np.ndarray:
    bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")[:, :order]
    return (2 * bits.astype(np.int8) - 1).astype(np.int8)


class HadamardMatrix:
    """Square +-1 matrix stored as bit-packed rows.

    Construction does not check orthogonality; call :func:`is_hadamard`.
    """

    __slots__ = ("order", "packed", "_entries")

    def __init__(self, entries):
        a = np.asarray(entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ShapeError(f"expected a nonempty square matrix, got shape {a.shape}")
        if not np.isin(a, (-1, 1)).all():
            raise ShapeError("entries must be +1 or -1")
        self.order = a.shape[0]
        self._entries = a.astype(np.int8)
        self._entries.setflags(write=False)
        self.packed = _pack(self._entries)
        self.packed.setflags(write=False)

    @classmethod
    def from_packed(cls, packed: np.ndarray, order: int) -> HadamardMatrix:
        return cls(_unpack(np.asarray(packed, dtype="<u8"), order))

    def to_array(self) -> np.ndarray:
        return self._entries

    def __eq__(self, other) -> bool:
        return isinstance(other, HadamardMatrix) and self.order == other.order and bool(
            (self.packed == other.packed).all()
        )

    def __hash__(self) -> int:
        return hash((self.order, self.packed.tobytes()))

    def __repr__(self) -> str:
        return f"HadamardMatrix(order={self.order})"

    def to_raw(self) -> str:
        """Order on the first line, then one row per line over ``+-``."""
        rows = ("".join("+" if v > 0 else "-" for v in row) for row in self._entries)
        return f"{self.order}\n" + "\n".join(rows) + "\n"

    @classmethod
    def from_raw(cls, text: str) -> HadamardMatrix:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        order = int(lines[0])
        rows = [[1 if c == "+" else -1 for c in ln] for ln in lines[1:]]
        if len(rows) != order or any(len(r) != order or set(ln) - {"+", "-"} for r, ln in zip(rows, lines[1:])):
            raise ShapeError("raw matrix text does not match its declared order")
        return cls(np.array(rows, dtype=np.int8))


def circulant(first_row) -> np.ndarray:
    """Row i is the first row cyclically shifted right by i."""
    x = np.asarray(first_row)
    if x.ndim != 1 or len(x) == 0:
        raise ShapeError("circulant needs a nonempty sequence")
    d = len(x)
    idx = (np.arange(d)[None, :] - np.arange(d)[:, None]) % d
    return x[idx]


@lru_cache(maxsize=None)
def _gs_layout(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Gather indices into concat(A, B, C, D) and signs for the 4d x 4d array.

    Block (p, q) is ``sign * Z_k``, ``sign * Z_k R`` (columns reversed) or
    ``sign * R Z_k`` (rows reversed).
    """
    layout = [
        [(0, 1, ""), (1, 1, "ZR"), (2, 1, "ZR"), (3, 1, "ZR")],
        [(1, -1, "ZR"), (0, 1, ""), (3, -1, "RZ"), (2, 1, "RZ")],
        [(2, -1, "ZR"), (3, 1, "RZ"), (0, 1, ""), (1, -1, "RZ")],
        [(3, -1, "ZR"), (2, -1, "RZ"), (1, 1, "RZ"), (0, 1, "")],
    ]
    i = np.arange(d)[:, None]
    j = np.arange(d)[None, :]
    shapes = {"": (j - i) % d, "ZR": (d - 1 - j - i) % d, "RZ": (j - (d - 1 - i)) % d}
    index = np.zeros((4 * d, 4 * d), dtype=np.intp)
    sign = np.zeros((4 * d, 4 * d), dtype=np.int8)
    for p, row in enumerate(layout):
        for q, (k, s, kind) in enumerate(row):
            index[p * d : (p + 1) * d, q * d : (q + 1) * d] = k * d + shapes[kind]
            sign[p * d : (p + 1) * d, q * d : (q + 1) * d] = s
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


def gs_array(q: BaseSeqQuad) -> np.ndarray:
    """The Goethals-Seidel array filled with the circulants of (A; B; C; D), unchecked."""
    if len(set(q.lengths)) != 1:
        raise ShapeError(f"the array needs BS(d, d), got lengths {q.lengths}")
    index, sign = _gs_layout(q.m)
    flat = np.concatenate([np.asarray(x, dtype=np.int8) for x in q])
    return sign * flat[index]


def gs_assemble(q: BaseSeqQuad, check: bool = True) -> HadamardMatrix:
    """BS(d, d) -> H(4d) via the Goethals-Seidel array."""
    if len(set(q.lengths)) != 1:
        raise ShapeError(f"the array needs BS(d, d), got lengths {q.lengths}")
    if check and not validate_bs(q):
        raise InvalidBS(f"{q} is not a base sequence quadruple")
    h = HadamardMatrix(gs_array(q))
    if check and not is_hadamard(h):
        raise PostconditionFailure(f"Goethals-Seidel output of {q} is not Hadamard")
    return h


def is_hadamard(h: HadamardMatrix | np.ndarray) -> bool:
    """Rows pairwise orthogonal: popcount(x XOR y) == order / 2 for distinct rows."""
    if not isinstance(h, HadamardMatrix):
        try:
            h = HadamardMatrix(h)
        except ShapeError:
            return False
    n = h.order
    if n == 1:
        return True
    if n % 2:
        return False
    p = h.packed
    diff = np.bitwise_count(p[:, None, :] ^ p[None, :, :]).sum(axis=2)
    np.fill_diagonal(diff, n // 2)
    return bool((diff == n // 2).all())


def require_hadamard(h: HadamardMatrix) -> HadamardMatrix:
    if not is_hadamard(h):
        raise NotHadamard(f"{h!r} is not a Hadamard matrix")
    return h


def transpose(h: HadamardMatrix) -> HadamardMatrix:
    return HadamardMatrix(h.to_array().T)
