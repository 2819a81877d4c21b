"""Compact encodings of base sequences and the bundled regression tables.

Quad encoding (BS(n+1, n))
    (A; B) is cut into quads ``[[a_i, a_j], [b_i, b_j]]`` with ``j = n + 2 - i``
    plus a central column when n is even; (C; D) into quads with
    ``j = n + 1 - i`` plus a central column when n is odd.  The first (A; B)
    quad always has entry sum 2 mod 4 and takes a primed label 1'..8'; every
    other quad has entry sum 0 mod 4 and takes a label 1..8; central columns
    take labels 0..3.  In table mode the label 3' is written ``0``.

Hex encoding (BS(d, d))
    A, B, C, D are concatenated, -1 becomes bit 0 and +1 bit 1, and the 4d
    bits are read four at a time as hexadecimal digits.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from importlib import resources

from .designs import BaseSeqQuad
from .errors import CorruptData, InvalidQuadLabel, MalformedCode, MalformedHex, ShapeError
from .seqcore import BinarySeq

Quad = tuple[tuple[int, int], tuple[int, int]]

PRIMED_QUADS: dict[int, Quad] = {
    1: ((-1, 1), (1, 1)),
    2: ((1, -1), (1, 1)),
    3: ((1, 1), (1, -1)),
    4: ((1, 1), (-1, 1)),
    5: ((1, -1), (-1, -1)),
    6: ((-1, 1), (-1, -1)),
    7: ((-1, -1), (-1, 1)),
    8: ((-1, -1), (1, -1)),
}
QUADS: dict[int, Quad] = {
    1: ((1, 1), (1, 1)),
    2: ((1, 1), (-1, -1)),
    3: ((-1, 1), (-1, 1)),
    4: ((1, -1), (-1, 1)),
    5: ((-1, 1), (1, -1)),
    6: ((1, -1), (1, -1)),
    7: ((-1, -1), (1, 1)),
    8: ((-1, -1), (-1, -1)),
}
CENTRAL: dict[int, tuple[int, int]] = {0: (1, 1), 1: (1, -1), 2: (-1, 1), 3: (-1, -1)}

_PRIMED_LABEL = {v: k for k, v in PRIMED_QUADS.items()}
_QUAD_LABEL = {v: k for k, v in QUADS.items()}
_CENTRAL_LABEL = {v: k for k, v in CENTRAL.items()}

TABLE_SIZES = {2: 558, 3: 192, 4: 208, 5: 64, 6: 64}


def _shape(n: int) -> tuple[int, int, int]:
    """(quads in (A;B), quads in (C;D), m) for BS(n+1, n)."""
    m = n // 2
    return (m, m, m) if n % 2 == 0 else (m + 1, m, m)


@dataclass(frozen=True)
class QuadCode:
    """Symbol sequences p_1 p_2 ... for (A; B) and q_1 q_2 ... for (C; D).

    ``ab[0]`` is the primed label number (1..8); all other entries are plain
    label numbers, central columns included.
    """

    ab: tuple[int, ...]
    cd: tuple[int, ...]
    n: int

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise MalformedCode("n must be positive")
        ab_quads, cd_quads, _ = _shape(n)
        ab_len = ab_quads + (n % 2 == 0)
        cd_len = cd_quads + (n % 2 == 1)
        if len(self.ab) != ab_len or len(self.cd) != cd_len:
            raise MalformedCode(
                f"n={n} needs {ab_len} (A;B) and {cd_len} (C;D) symbols, got {len(self.ab)} and {len(self.cd)}"
            )
        ab_central = self.ab[ab_quads:]
        cd_central = self.cd[cd_quads:]
        if any(s not in QUADS for s in self.ab[1:ab_quads] + self.cd[:cd_quads]):
            raise InvalidQuadLabel(f"quad labels must be 1..8 in {self}")
        if any(s not in CENTRAL for s in ab_central + cd_central):
            raise InvalidQuadLabel(f"central column labels must be 0..3 in {self}")
        if self.ab[0] not in PRIMED_QUADS:
            raise InvalidQuadLabel(f"first quad label must be 1'..8' in {self}")

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> QuadCode:
        """Parse ``"0165; 6123"`` or ``"3'6142; 1675"``; n is inferred when omitted."""
        parts = text.replace("\\,", " ").split(";")
        if len(parts) != 2:
            raise MalformedCode(f"expected 'AB; CD', got {text!r}")
        ab_text, cd_text = (re.sub(r"\s+", "", p) for p in parts)
        m = re.fullmatch(r"(\d)(')?(\d*)", ab_text)
        if not m or not re.fullmatch(r"\d*", cd_text):
            raise MalformedCode(f"cannot read quad code {text!r}")
        first = int(m.group(1))
        if first == 0 and m.group(2):
            raise InvalidQuadLabel("0' is not a label")
        first = 3 if first == 0 else first
        ab = (first,) + tuple(int(c) for c in m.group(3))
        cd = tuple(int(c) for c in cd_text)
        if len(ab) == len(cd):
            inferred = 2 * len(ab) - 1
        elif len(ab) == len(cd) + 1:
            inferred = 2 * len(cd)
        else:
            raise MalformedCode(f"symbol counts {len(ab)} and {len(cd)} fit no n")
        if n is not None and n != inferred:
            raise MalformedCode(f"code {text!r} encodes n={inferred}, not n={n}")
        return cls(ab, cd, inferred)

    def format(self, strict: bool = False) -> str:
        """Table mode writes 3' as ``0``; strict mode writes every primed label."""
        first = "0" if (self.ab[0] == 3 and not strict) else f"{self.ab[0]}'"
        return first + "".join(map(str, self.ab[1:])) + "; " + "".join(map(str, self.cd))

    def __str__(self) -> str:
        return self.format()


def quad_decode(code: QuadCode | str, n: int | None = None) -> BaseSeqQuad:
    if isinstance(code, str):
        code = QuadCode.parse(code, n)
    n = code.n
    ab_quads, cd_quads, m = _shape(n)
    a, b = [0] * (n + 1), [0] * (n + 1)
    c, d = [0] * n, [0] * n
    for i in range(ab_quads):
        (a[i], a[n - i]), (b[i], b[n - i]) = (PRIMED_QUADS if i == 0 else QUADS)[code.ab[i]]
    if n % 2 == 0:
        a[m], b[m] = CENTRAL[code.ab[-1]]
    for i in range(cd_quads):
        (c[i], c[n - 1 - i]), (d[i], d[n - 1 - i]) = QUADS[code.cd[i]]
    if n % 2 == 1:
        c[m], d[m] = CENTRAL[code.cd[-1]]
    return BaseSeqQuad(BinarySeq(a), BinarySeq(b), BinarySeq(c), BinarySeq(d))


def quad_encode(q: BaseSeqQuad) -> QuadCode:
    if q.m != q.n + 1:
        raise ShapeError(f"quad encoding needs BS(n+1, n), got lengths {q.lengths}")
    n = q.n
    ab_quads, cd_quads, m = _shape(n)
    a, b, c, d = q
    ab, cd = [], []
    for i in range(ab_quads):
        quad = ((a[i], a[n - i]), (b[i], b[n - i]))
        table = _PRIMED_LABEL if i == 0 else _QUAD_LABEL
        if quad not in table:
            raise InvalidQuadLabel(f"quad {i + 1} of (A;B) has no label: {quad}")
        ab.append(table[quad])
    if n % 2 == 0:
        ab.append(_CENTRAL_LABEL[(a[m], b[m])])
    for i in range(cd_quads):
        quad = ((c[i], c[n - 1 - i]), (d[i], d[n - 1 - i]))
        if quad not in _QUAD_LABEL:
            raise InvalidQuadLabel(f"quad {i + 1} of (C;D) has no label: {quad}")
        cd.append(_QUAD_LABEL[quad])
    if n % 2 == 1:
        cd.append(_CENTRAL_LABEL[(c[m], d[m])])
    return QuadCode(tuple(ab), tuple(cd), n)


def quad_sums_hold(q: BaseSeqQuad) -> bool:
    """Quad entry sums: 2 mod 4 for the first (A;B) quad, 0 mod 4 for all others."""
    n = q.n
    ab_quads, cd_quads, _ = _shape(n)
    a, b, c, d = q
    sums = [a[i] + a[n - i] + b[i] + b[n - i] for i in range(ab_quads)]
    cd_sums = [c[i] + c[n - 1 - i] + d[i] + d[n - 1 - i] for i in range(cd_quads)]
    return sums[0] % 4 == 2 and all(s % 4 == 0 for s in sums[1:] + cd_sums)


def hex_decode(text: str) -> BaseSeqQuad:
    """d hexadecimal digits -> a quadruple of four length-d sequences."""
    x = text.strip().lower()
    if not x or not re.fullmatch(r"[0-9a-f]+", x):
        raise MalformedHex(f"not a hexadecimal string: {text!r}")
    bits = [1 if b == "1" else -1 for ch in x for b in format(int(ch, 16), "04b")]
    d = len(x)
    return BaseSeqQuad(*(BinarySeq(bits[k * d : (k + 1) * d]) for k in range(4)))


def hex_encode(q: BaseSeqQuad) -> str:
    if len(set(q.lengths)) != 1:
        raise ShapeError(f"hex encoding needs BS(d, d), got lengths {q.lengths}")
    bits = "".join("1" if t == 1 else "0" for x in q for t in x)
    return "".join(format(int(bits[i : i + 4], 2), "x") for i in range(0, len(bits), 4))


@dataclass(frozen=True)
class Table1Row:
    index: int
    code: QuadCode
    orbit_size: int
    hadamard_count: int


def _read_table(k: int) -> list[str]:
    if k not in range(1, 7):
        raise ValueError("tables are numbered 1..6")
    text = resources.files(__package__).joinpath("tables", f"table{k}.txt").read_text()
    lines = text.splitlines()
    declared = next((ln.split()[2] for ln in lines if ln.startswith("# sha256 ")), None)
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    digest = hashlib.sha256(("\n".join(body) + "\n").encode()).hexdigest()
    if declared != digest:
        raise CorruptData(f"table{k}.txt checksum mismatch")
    return body


def load_table(k: int) -> list:
    """Rows of the bundled table ``k`` in the original order.

    Table 1 yields :class:`Table1Row` records; Tables 2-6 yield hex strings.
    """
    body = _read_table(k)
    if k == 1:
        rows = []
        for line in body:
            idx, code, orbit, had = line.split("\t")
            rows.append(Table1Row(int(idx), QuadCode.parse(code, 7), int(orbit), int(had)))
        if len(rows) != 17:
            raise CorruptData("table 1 must have 17 rows")
        return rows
    if len(body) != TABLE_SIZES[k]:
        raise CorruptData(f"table {k} has {len(body)} entries, expected {TABLE_SIZES[k]}")
    return body
