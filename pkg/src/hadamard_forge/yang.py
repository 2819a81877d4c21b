"""Yang's four multiplication theorems, built block by block.

Every function validates its own output and raises
:class:`~hadamard_forge.errors.PostconditionFailure` instead of returning a
quadruple that fails the defining predicate.

Notation follows the block formulas: for a coefficient sequence X, ``x_k`` is
its k-th term and ``x'_k`` the k-th term of its reversal (1-based), while
``A'`` is the reversed sequence.  A coefficient times a sequence is written
``c*A``; coefficients may be 0 when they come from the ternary G and H.

Two of the printed formulas fail their own predicates and are corrected by
default; the printed form stays reachable for diagnostics:

* third theorem, second row of U_k: the first entry is ``h'_{2k-1}A + g_{2k-1}B``
  (printed with a minus sign); select the printed sign with ``printed=True``.
* fourth theorem, second row of X_k: the last entry is ``-h'_k C`` (printed
  as ``-h_k C``); select the printed index with ``printed=True``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .designs import (
    BaseSeqQuad,
    NearNormalDecomposition,
    NormalDecomposition,
    TSeqQuad,
    nn_decompose,
    ns_decompose,
    pairs_to_ts,
    validate_bs,
    validate_ts,
)
from .errors import InvalidInput, NotNearNormal, NotNormal, PostconditionFailure, SupportMismatch
from .seqcore import TernarySeq, interleave, primed, seq, term

Seg = tuple[int, ...]


@dataclass(frozen=True)
class BlockRow:
    """One row of a block matrix, kept as its list of segments."""

    segments: tuple[Seg, ...] = ()

    @property
    def total_length(self) -> int:
        return sum(len(s) for s in self.segments)

    def __add__(self, other: BlockRow) -> BlockRow:
        return BlockRow(self.segments + other.segments)

    def flatten(self) -> TernarySeq:
        return seq(t for s in self.segments for t in s)


def _row(*segments: Sequence[int]) -> BlockRow:
    return BlockRow(tuple(tuple(s) for s in segments))


def _c(f: int, x: Sequence[int]) -> Seg:
    return tuple(f * t for t in x)


def _lin(f: int, x: Sequence[int], g: int, y: Sequence[int]) -> Seg:
    return tuple(f * a + g * b for a, b in zip(x, y))


def _z(s: int) -> Seg:
    return (0,) * s


def _rev(x: Sequence[int]) -> Seg:
    return tuple(x)[::-1]


def _concat_rows(blocks: Sequence[Sequence[BlockRow]]) -> list[BlockRow]:
    """Place 4-row (or 2-row) blocks side by side."""
    out = list(blocks[0])
    for block in blocks[1:]:
        out = [a + b for a, b in zip(out, block)]
    return out


def _check_bs(bs: BaseSeqQuad) -> BaseSeqQuad:
    if not isinstance(bs, BaseSeqQuad) or not validate_bs(bs):
        raise InvalidInput(f"{bs} is not a valid base sequence quadruple")
    return bs


def _normal(ns) -> NormalDecomposition:
    if isinstance(ns, NormalDecomposition):
        return ns
    try:
        return ns_decompose(_check_bs(ns))
    except NotNormal as exc:
        raise InvalidInput(str(exc)) from exc


def _near_normal(nn) -> NearNormalDecomposition:
    if isinstance(nn, NearNormalDecomposition):
        return nn
    try:
        return nn_decompose(_check_bs(nn))
    except NotNearNormal as exc:
        raise InvalidInput(str(exc)) from exc


def _to_ts(rows: list[BlockRow], d: int, label: str) -> TSeqQuad:
    flat = [r.flatten() for r in rows]
    if any(len(r) != d for r in flat):
        raise PostconditionFailure(f"{label}: rows have lengths {[len(r) for r in flat]}, expected {d}")
    try:
        ts = pairs_to_ts(*flat)
    except SupportMismatch as exc:
        raise PostconditionFailure(f"{label}: paired-support property fails: {exc}") from exc
    if not validate_ts(ts):
        raise PostconditionFailure(f"{label}: output is not a T-sequence quadruple")
    return ts


def _to_bs(rows: list[BlockRow], d: int, label: str) -> BaseSeqQuad:
    flat = [r.flatten() for r in rows]
    if any(len(r) != d or not r.is_binary for r in flat):
        raise PostconditionFailure(f"{label}: rows are not binary of length {d}")
    q = BaseSeqQuad(*flat)
    if not validate_bs(q):
        raise PostconditionFailure(f"{label}: output is not a base sequence quadruple")
    return q


def _first_theorem_block(dec: NormalDecomposition, bs: BaseSeqQuad, k: int) -> list[BlockRow]:
    F, G, H = dec.F, dec.G, dec.H
    A, B, C, D = bs
    f, fp = term(F, k), primed(F, k)
    g, gp = term(G, k), primed(G, k)
    h, hp = term(H, k), primed(H, k)
    return [
        _row(_c(fp, A), _lin(g, C, h, D)),
        _row(_c(fp, B), _lin(-hp, C, gp, D)),
        _row(_lin(gp, A, -h, B), _c(-f, C)),
        _row(_lin(hp, A, g, B), _c(-f, D)),
    ]


def yang1_rows(ns: NormalDecomposition | BaseSeqQuad, bs: BaseSeqQuad) -> list[BlockRow]:
    """Raw rows Q, R, S, T of the first theorem (paired supports, norm sum 2d)."""
    dec, bs = _normal(ns), _check_bs(bs)
    s, t = bs.m, bs.n
    A, B, C, D = bs
    blocks = []
    for k in range(1, dec.n + 1):
        q, r, u, v = _first_theorem_block(dec, bs, k)
        blocks.append([q + _row(_z(s + t)), r + _row(_z(s + t)), _row(_z(s + t)) + u, _row(_z(s + t)) + v])
    blocks.append(
        [
            _row(_c(-1, _rev(B)), _z(t)),
            _row(_rev(A), _z(t)),
            _row(_z(s), _c(-1, _rev(D))),
            _row(_z(s), _rev(C)),
        ]
    )
    return _concat_rows(blocks)


def yang1(ns: NormalDecomposition | BaseSeqQuad, bs: BaseSeqQuad) -> TSeqQuad:
    """NS(n) x BS(s, t) -> TS((2n+1)(s+t))."""
    rows = yang1_rows(ns, bs)
    d = (2 * _normal(ns).n + 1) * (bs.m + bs.n)
    return _to_ts(rows, d, "yang1")


def yang2(ns: NormalDecomposition | BaseSeqQuad, bs: BaseSeqQuad) -> BaseSeqQuad:
    """NS(n) x BS(s, t) -> BS(n(s+t), n(s+t))."""
    dec, bs = _normal(ns), _check_bs(bs)
    blocks = [_first_theorem_block(dec, bs, k) for k in range(1, dec.n + 1)]
    return _to_bs(_concat_rows(blocks), dec.n * (bs.m + bs.n), "yang2")


def yang3_rows(
    nn: NearNormalDecomposition | BaseSeqQuad, bs: BaseSeqQuad, printed: bool = False
) -> list[BlockRow]:
    """Raw rows of the third theorem: Q, R from U_1..U_{m+1}; S, T from V_{m+1}..V_1.

    A decomposition with tail sign -1 is first brought to the displayed form
    by swapping A and B, which negates X.
    """
    dec, bs = _near_normal(nn), _check_bs(bs)
    n = dec.n
    m = n // 2
    G, H = dec.G, dec.H
    X = dec.X if dec.tail_sign == 1 else tuple(-x for x in dec.X)
    Y = dec.Y
    s, t = bs.m, bs.n
    A, B, C, D = bs
    Ar, Br, Cr, Dr = _rev(A), _rev(B), _rev(C), _rev(D)
    sign = -1 if printed else 1
    u_blocks, v_blocks = [], []
    for k in range(1, m + 1):
        g1, g1p, h1, h1p = term(G, 2 * k - 1), primed(G, 2 * k - 1), term(H, 2 * k - 1), primed(H, 2 * k - 1)
        g2, g2p, h2, h2p = term(G, 2 * k), primed(G, 2 * k), term(H, 2 * k), primed(H, 2 * k)
        x, y, yp = term(X, k), term(Y, k), primed(Y, k)
        u_blocks.append(
            [
                _row(_lin(g1p, A, -h1, B), _c(-y, C), _lin(g2p, A, -h2, B), _c(-x, Dr)),
                _row(_lin(h1p, A, sign * g1, B), _c(-y, D), _lin(h2p, A, g2, B), _c(x, Cr)),
            ]
        )
        v_blocks.append(
            [
                _row(_c(-x, B), _lin(g2, Cr, h2, Dr), _c(yp, Ar), _lin(g1, Cr, h1, Dr)),
                _row(_c(x, A), _lin(g2p, Dr, -h2p, Cr), _c(yp, Br), _lin(g1p, Dr, -h1p, Cr)),
            ]
        )
    tail = _z(n * (s + t))
    u_blocks.append([_row(_z(s), _c(-1, Dr), tail), _row(_z(s), Cr, tail)])
    v_last = [_row(tail, _c(-1, B), _z(t)), _row(tail, A, _z(t))]
    return _concat_rows(u_blocks) + _concat_rows([v_last] + v_blocks[::-1])


def yang3(nn: NearNormalDecomposition | BaseSeqQuad, bs: BaseSeqQuad, printed: bool = False) -> TSeqQuad:
    """NN(n) x BS(s, t) -> TS((2n+1)(s+t)) for even n."""
    rows = yang3_rows(nn, bs, printed)
    d = (2 * _near_normal(nn).n + 1) * (bs.m + bs.n)
    return _to_ts(rows, d, "yang3" + (" (printed sign)" if printed else ""))


def yang4(bs1: BaseSeqQuad, bs2: BaseSeqQuad, printed: bool = False) -> BaseSeqQuad:
    """BS(m+1, m) x BS(n+1, n) -> BS(d, d), d = (2m+1)(2n+1).

    ``bs2`` is read as (F; G; H; E).
    """
    bs1, bs2 = _check_bs(bs1), _check_bs(bs2)
    if bs1.m != bs1.n + 1 or bs2.m != bs2.n + 1:
        raise InvalidInput("both factors must have shape BS(k+1, k)")
    A, B, C, D = bs1
    F, G, H, E = bs2
    n = bs2.n
    Ar, Cr, Br, Dr = _rev(A), _rev(C), _rev(B), _rev(D)

    def il(f: int, x: Sequence[int], g: int, y: Sequence[int]) -> Seg:
        return tuple(interleave(_c(f, x), _c(g, y)))

    blocks = []
    for k in range(1, n + 1):
        f, fp, g, gp = term(F, k), primed(F, k), term(G, k), primed(G, k)
        h, hp, e = term(H, k), primed(H, k), term(E, k)
        blocks.append(
            [
                _row(il(fp, A, g, C), il(-e, Br, h, D)),
                _row(il(fp, B, gp, D), il(e, Ar, -(h if printed else hp), C)),
                _row(il(gp, A, -f, C), il(-h, B, -e, Dr)),
                _row(il(g, B, -f, D), il(hp, A, e, Cr)),
            ]
        )
    f1, f1p, g1, g1p = term(F, 1), primed(F, 1), term(G, 1), primed(G, 1)
    blocks.append(
        [
            _row(il(f1, A, g1p, C)),
            _row(il(f1, B, g1, D)),
            _row(il(g1, A, -f1p, C)),
            _row(il(g1p, B, -f1p, D)),
        ]
    )
    d = (2 * bs1.n + 1) * (2 * n + 1)
    return _to_bs(_concat_rows(blocks), d, "yang4" + (" (printed index)" if printed else ""))
