"""Base sequences, T-sequences, normal / near-normal decompositions and the
group action whose orbits are the equivalence classes of BS(n+1, n).
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidBS,
    InvalidTS,
    LengthMismatch,
    NotNearNormal,
    NotNormal,
    ShapeError,
    SupportMismatch,
    TooLarge,
)
from .seqcore import (
    BinarySeq,
    TernarySeq,
    add_wide,
    alternate,
    autocorr,
    concat,
    deinterleave,
    halve,
    interleave,
    negate,
    reverse,
    sub_wide,
    support,
)

MAX_ENUMERATION_BITS = 32


@dataclass(frozen=True, order=True)
class BaseSeqQuad:
    """A quadruple (A; B; C; D) with len(A) == len(B) == m and len(C) == len(D) == n.

    Construction only checks the alphabet and the length pattern; use
    :func:`validate_bs` for the norm condition.
    """

    A: BinarySeq
    B: BinarySeq
    C: BinarySeq
    D: BinarySeq

    def __post_init__(self):
        for name in "ABCD":
            value = getattr(self, name)
            if not isinstance(value, BinarySeq):
                object.__setattr__(self, name, BinarySeq(value))
        if len(self.A) != len(self.B) or len(self.C) != len(self.D):
            raise LengthMismatch(f"shape {self.lengths} is not (m, m, n, n)")

    @classmethod
    def parse(cls, text: str) -> BaseSeqQuad:
        """Parse ``"A;B;C;D"`` written over ``+-`` (commas and spaces ignored)."""
        parts = text.split(";")
        if len(parts) != 4:
            raise ValueError(f"expected four ';'-separated sequences, got {text!r}")
        return cls(*(BinarySeq(p) for p in parts))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.C)

    @property
    def lengths(self) -> tuple[int, int, int, int]:
        return len(self.A), len(self.B), len(self.C), len(self.D)

    def __iter__(self):
        return iter((self.A, self.B, self.C, self.D))

    def __str__(self) -> str:
        return ";".join(str(x) for x in self)


@dataclass(frozen=True)
class TSeqQuad:
    A: TernarySeq
    B: TernarySeq
    C: TernarySeq
    D: TernarySeq

    def __post_init__(self):
        for name in "ABCD":
            value = getattr(self, name)
            if not isinstance(value, TernarySeq):
                object.__setattr__(self, name, TernarySeq(value))
        if len({len(x) for x in self}) != 1:
            raise LengthMismatch("T-sequences must share one length")

    @property
    def n(self) -> int:
        return len(self.A)

    def __iter__(self):
        return iter((self.A, self.B, self.C, self.D))

    def __str__(self) -> str:
        return ";".join(str(x) for x in self)


def _norm_sum(seqs: Iterable[Sequence[int]]) -> list[int]:
    seqs = list(seqs)
    total = [0] * max(len(x) for x in seqs)
    for x in seqs:
        for s, r in enumerate(autocorr(x)):
            total[s] += r
    return total


def validate_bs(q: BaseSeqQuad | Sequence[Sequence[int]], m: int | None = None, n: int | None = None) -> bool:
    """True iff N(A) + N(B) + N(C) + N(D) = 2(m + n) with binary terms."""
    a, b, c, d = q
    if len(a) != len(b) or len(c) != len(d):
        raise LengthMismatch(f"shape {(len(a), len(b), len(c), len(d))} is not (m, m, n, n)")
    if (m is not None and len(a) != m) or (n is not None and len(c) != n):
        raise LengthMismatch(f"expected lengths ({m}, {n}), got ({len(a)}, {len(c)})")
    if any(t not in (1, -1) for x in (a, b, c, d) for t in x):
        return False
    total = _norm_sum((a, b, c, d))
    return total[0] == 2 * (len(a) + len(c)) and not any(total[1:])


def validate_ts(q: TSeqQuad | Sequence[Sequence[int]]) -> bool:
    """True iff the four ternary sequences are pairwise disjoint with norm sum n."""
    xs = list(q)
    length = len(xs[0])
    if any(len(x) != length for x in xs):
        raise LengthMismatch("T-sequences must share one length")
    if any(t not in (1, 0, -1) for x in xs for t in x):
        return False
    # pairwise disjoint with sum of autocorr[0] == n means exactly one nonzero per column
    if any(sum(1 for x in xs if x[i]) != 1 for i in range(length)):
        return False
    total = _norm_sum(xs)
    return total[0] == length and not any(total[1:])


def _require_next_shape(q: BaseSeqQuad) -> int:
    if q.m != q.n + 1:
        raise ShapeError(f"expected BS(n+1, n), got lengths {q.lengths}")
    return q.n


def is_normal(q: BaseSeqQuad) -> bool:
    n = _require_next_shape(q)
    return all(q.B[i] == q.A[i] for i in range(n))


def is_near_normal(q: BaseSeqQuad) -> bool:
    n = _require_next_shape(q)
    return all(q.B[i] == (q.A[i] if i % 2 == 0 else -q.A[i]) for i in range(n))


def _split_cd(c: Sequence[int], d: Sequence[int]) -> tuple[TernarySeq, TernarySeq]:
    return halve(add_wide(c, d)), halve(sub_wide(c, d))


def _join_gh(g: Sequence[int], h: Sequence[int]) -> tuple[BinarySeq, BinarySeq]:
    return BinarySeq(add_wide(g, h)), BinarySeq(sub_wide(g, h))


@dataclass(frozen=True)
class NormalDecomposition:
    """q = (F, e; F, -e; G + H; G - H) with F binary, G and H disjoint."""

    F: BinarySeq
    G: TernarySeq
    H: TernarySeq
    tail_sign: int

    @property
    def n(self) -> int:
        return len(self.F)

    def reassemble(self) -> BaseSeqQuad:
        e = self.tail_sign
        c, d = _join_gh(self.G, self.H)
        return BaseSeqQuad(concat(self.F, (e,)), concat(self.F, (-e,)), c, d)


@dataclass(frozen=True)
class NearNormalDecomposition:
    """q = ((Y, e)/X; (Y, -e)/(-X); G + H; G - H) with len(X) == len(Y) == n/2.

    ``tail_sign`` e is +1 in the displayed form of the multiplication theorem;
    the other half of NN(n) is its image under swapping A and B.
    """

    X: BinarySeq
    Y: BinarySeq
    G: TernarySeq
    H: TernarySeq
    tail_sign: int = 1

    @property
    def n(self) -> int:
        return len(self.G)

    def reassemble(self) -> BaseSeqQuad:
        e = self.tail_sign
        c, d = _join_gh(self.G, self.H)
        a = interleave(concat(self.Y, (e,)), self.X)
        b = interleave(concat(self.Y, (-e,)), negate(self.X))
        return BaseSeqQuad(a, b, c, d)


def ns_decompose(q: BaseSeqQuad) -> NormalDecomposition:
    if not is_normal(q):
        raise NotNormal(f"{q} is not normal")
    n = q.n
    if q.B[n] != -q.A[n]:
        raise NotNormal(f"{q}: last terms of A and B must differ")
    g, h = _split_cd(q.C, q.D)
    return NormalDecomposition(BinarySeq(q.A[:n]), g, h, q.A[n])


def nn_decompose(q: BaseSeqQuad) -> NearNormalDecomposition:
    if not is_near_normal(q) or q.n % 2:
        raise NotNearNormal(f"{q} is not near-normal of even order")
    if q.B[q.n] != -q.A[q.n]:
        raise NotNearNormal(f"{q}: last terms of A and B must differ")
    y_tail, x = deinterleave(q.A)
    g, h = _split_cd(q.C, q.D)
    return NearNormalDecomposition(BinarySeq(x), BinarySeq(y_tail[:-1]), g, h, y_tail[-1])


def ts_to_bs(t: TSeqQuad) -> BaseSeqQuad:
    """(A; B; C; D) -> (A+B+C+D; A+B-C-D; A-B+C-D; A-B-C+D)."""
    if not validate_ts(t):
        raise InvalidTS(f"{t} is not a T-sequence quadruple")
    a, b, c, d = t
    rows = (
        [w + x + y + z for w, x, y, z in zip(a, b, c, d)],
        [w + x - y - z for w, x, y, z in zip(a, b, c, d)],
        [w - x + y - z for w, x, y, z in zip(a, b, c, d)],
        [w - x - y + z for w, x, y, z in zip(a, b, c, d)],
    )
    return BaseSeqQuad(*rows)


def pairs_to_ts(q: Sequence[int], r: Sequence[int], s: Sequence[int], t: Sequence[int]) -> TSeqQuad:
    """Halve sums and differences of two equal-support pairs into a T-sequence quadruple.

    Requires supp(q) == supp(r), supp(s) == supp(t), and the two supports
    partitioning all positions.
    """
    if len({len(q), len(r), len(s), len(t)}) != 1:
        raise LengthMismatch("rows must share one length")
    sq, ss = support(q), support(s)
    if sq != support(r) or ss != support(t):
        raise SupportMismatch("paired rows do not share their support")
    if sq & ss or len(sq | ss) != len(q):
        raise SupportMismatch("pair supports do not partition the positions")
    return TSeqQuad(
        halve(add_wide(q, r)), halve(sub_wide(q, r)), halve(add_wide(s, t)), halve(sub_wide(s, t))
    )


def bs_fold(q: BaseSeqQuad) -> BaseSeqQuad:
    """BS(m, n) -> BS(m+n, m+n): (A; B; C; D) -> (A,C; A,-C; B,D; B,-D)."""
    if not validate_bs(q):
        raise InvalidBS(f"{q} is not a base sequence quadruple")
    return BaseSeqQuad(
        concat(q.A, q.C), concat(q.A, negate(q.C)), concat(q.B, q.D), concat(q.B, negate(q.D))
    )


def quad_permute(q: BaseSeqQuad, perm: Sequence[int]) -> BaseSeqQuad:
    """Reorder components: the i-th output component is ``q[perm[i]]`` (0-based)."""
    if sorted(perm) != [0, 1, 2, 3]:
        raise ValueError(f"{perm} is not a permutation of 0..3")
    parts = tuple(q)
    out = [parts[i] for i in perm]
    if len(out[0]) != len(out[1]) or len(out[2]) != len(out[3]):
        raise ShapeError(f"permutation {tuple(perm)} breaks the (m, m, n, n) shape")
    return BaseSeqQuad(*out)


def _all_binary(length: int) -> np.ndarray:
    codes = np.arange(1 << length)
    bits = (codes[:, None] >> np.arange(length)) & 1
    return (2 * bits - 1).astype(np.int8)


def _tails(rows: np.ndarray, width: int) -> np.ndarray:
    """Nonperiodic autocorrelations at shifts 1..width (zero beyond the length)."""
    length = rows.shape[1]
    out = np.zeros((rows.shape[0], width), dtype=np.int16)
    for s in range(1, min(length, width + 1)):
        out[:, s - 1] = (rows[:, : length - s].astype(np.int16) * rows[:, s:]).sum(axis=1)
    return out


def enumerate_bs(m: int, n: int) -> list[BaseSeqQuad]:
    """Every element of BS(m, n), sorted.

    Meet in the middle: (A, B) pairs are keyed by their joint autocorrelation
    tail and joined against (C, D) pairs keyed by the negated tail.
    """
    if m < 1 or n < 1:
        raise ValueError("lengths must be positive")
    if 2 * (m + n) > MAX_ENUMERATION_BITS:
        raise TooLarge(f"BS({m},{n}) needs 2^{2 * (m + n)} candidates")
    width = max(m, n) - 1
    ab_seqs, cd_seqs = _all_binary(m), _all_binary(n)
    ab_tail, cd_tail = _tails(ab_seqs, width), _tails(cd_seqs, width)
    ab_sum = (ab_tail[:, None, :] + ab_tail[None, :, :]).reshape(len(ab_seqs) ** 2, width)
    cd_sum = (cd_tail[:, None, :] + cd_tail[None, :, :]).reshape(len(cd_seqs) ** 2, width)

    buckets: dict[bytes, list[int]] = defaultdict(list)
    for j, key in enumerate((-cd_sum).astype(np.int16)):
        buckets[key.tobytes()].append(j)
    seqs_m = [BinarySeq(r) for r in ab_seqs.tolist()]
    seqs_n = [BinarySeq(r) for r in cd_seqs.tolist()]
    out = []
    for i, key in enumerate(ab_sum.astype(np.int16)):
        hits = buckets.get(key.tobytes())
        if not hits:
            continue
        a, b = divmod(i, len(seqs_m))
        for j in hits:
            c, d = divmod(j, len(seqs_n))
            out.append(BaseSeqQuad(seqs_m[a], seqs_m[b], seqs_n[c], seqs_n[d]))
    out.sort()
    return out


def normal_set(n: int) -> list[BaseSeqQuad]:
    """NS(n) as a subset of BS(n+1, n)."""
    return [q for q in enumerate_bs(n + 1, n) if is_normal(q)]


def near_normal_set(n: int) -> list[BaseSeqQuad]:
    """NN(n) as a subset of BS(n+1, n)."""
    return [q for q in enumerate_bs(n + 1, n) if is_near_normal(q)]


def _on(index: int, fn: Callable[[BinarySeq], Sequence[int]]) -> Callable[[BaseSeqQuad], BaseSeqQuad]:
    def gen(q: BaseSeqQuad) -> BaseSeqQuad:
        parts = list(q)
        parts[index] = fn(parts[index])
        return BaseSeqQuad(*parts)

    return gen


def _swap(i: int, j: int) -> Callable[[BaseSeqQuad], BaseSeqQuad]:
    def gen(q: BaseSeqQuad) -> BaseSeqQuad:
        parts = list(q)
        parts[i], parts[j] = parts[j], parts[i]
        return BaseSeqQuad(*parts)

    return gen


def _alternate_all(q: BaseSeqQuad) -> BaseSeqQuad:
    return BaseSeqQuad(*(alternate(x) for x in q))


def _reverse_cd_sum_part(q: BaseSeqQuad) -> BaseSeqQuad:
    # (C+D)/2 and (C-D)/2 have reversal-symmetric supports in BS(n+1, n), so
    # reversing only the first keeps C and D binary and preserves the norm sum.
    g, h = _split_cd(q.C, q.D)
    c, d = _join_gh(reverse(g), h)
    return BaseSeqQuad(q.A, q.B, c, d)


GBS_GENERATORS: dict[str, Callable[[BaseSeqQuad], BaseSeqQuad]] = {
    "negate_A": _on(0, negate),
    "negate_B": _on(1, negate),
    "negate_C": _on(2, negate),
    "negate_D": _on(3, negate),
    "reverse_A": _on(0, reverse),
    "reverse_B": _on(1, reverse),
    "reverse_C": _on(2, reverse),
    "reverse_D": _on(3, reverse),
    "swap_AB": _swap(0, 1),
    "swap_CD": _swap(2, 3),
    "alternate_all": _alternate_all,
    "reverse_cd_sum_part": _reverse_cd_sum_part,
}


def gbs_orbit(
    rep: BaseSeqQuad,
    generators: Iterable[Callable[[BaseSeqQuad], BaseSeqQuad]] | None = None,
) -> frozenset[BaseSeqQuad]:
    """Closure of ``{rep}`` under the G_BS generators."""
    _require_next_shape(rep)
    gens = list(GBS_GENERATORS.values() if generators is None else generators)
    seen = {rep}
    stack = [rep]
    while stack:
        q = stack.pop()
        for g in gens:
            r = g(q)
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return frozenset(seen)


def gbs_orbits(quads: Iterable[BaseSeqQuad]) -> list[frozenset[BaseSeqQuad]]:
    """Partition ``quads`` into G_BS orbits, in order of each orbit's least element."""
    remaining = set(quads)
    orbits = []
    for q in sorted(remaining):
        if q in remaining:
            orbit = gbs_orbit(q)
            orbits.append(orbit)
            remaining -= orbit
    return orbits


def format_quads(quads: Iterable[BaseSeqQuad]) -> str:
    return "".join(f"{q}\n" for q in quads)


def parse_quads(text: str, n: int | None = None) -> list[BaseSeqQuad]:
    """Parse one quadruple per line, either as ``+-`` literals or as quad codes.

    Blank lines and ``#`` comments are skipped.
    """
    from .codec import QuadCode, quad_decode

    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count(";") == 3:
            out.append(BaseSeqQuad.parse(line))
        else:
            out.append(quad_decode(QuadCode.parse(line, n)))
    return out

