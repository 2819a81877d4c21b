"""Binary and ternary sequences and their nonperiodic autocorrelation.

Sequences are immutable tuples of ints.  A literal such as ``"+-0+"`` is
accepted anywhere a sequence is expected by :func:`seq`.

Indexing in the helpers :func:`term` and :func:`primed` is 1-based to keep the
block formulas of the multiplication theorems readable: ``primed(x, k)`` is the
k-th term of the reversal of ``x``, i.e. ``x[L - k]`` for ``L = len(x)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import LengthMismatch, RangeOverflow

_CHARS = {"+": 1, "-": -1, "0": 0}
_SYMBOLS = {1: "+", -1: "-", 0: "0"}


class TernarySeq(tuple):
    """Fixed-length sequence over {+1, 0, -1}."""

    _alphabet = frozenset((1, 0, -1))

    def __new__(cls, terms: Iterable[int] | str = ()):
        if isinstance(terms, str):
            try:
                terms = [_CHARS[c] for c in terms if not c.isspace() and c != ","]
            except KeyError as exc:
                raise ValueError(f"bad sequence literal character {exc}") from None
        values = tuple(int(t) for t in terms)
        bad = [t for t in values if t not in cls._alphabet]
        if bad:
            raise ValueError(f"{cls.__name__} terms must lie in {sorted(cls._alphabet)}, got {bad[0]}")
        return super().__new__(cls, values)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def __str__(self) -> str:
        return "".join(_SYMBOLS[t] for t in self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def is_binary(self) -> bool:
        return 0 not in self


class BinarySeq(TernarySeq):
    """Fixed-length sequence over {+1, -1}."""

    _alphabet = frozenset((1, -1))


def seq(value: Iterable[int] | str) -> TernarySeq:
    """Build the narrowest sequence type that holds ``value``."""
    t = TernarySeq(value)
    return BinarySeq(t) if t.is_binary else t


def _like(x: Sequence[int], values: Iterable[int]) -> TernarySeq:
    cls = type(x) if isinstance(x, TernarySeq) else TernarySeq
    return cls(values)


def zeros(s: int) -> TernarySeq:
    """The all-zero block of length ``s``."""
    return TernarySeq((0,) * s)


def autocorr(x: Sequence[int]) -> tuple[int, ...]:
    """Nonperiodic autocorrelation ``r_s = sum_i x_i x_{i+s}`` for ``s = 0..L-1``.

    These are the coefficients of the norm ``X(z) X(1/z)`` at ``z**s``.
    """
    n = len(x)
    if n == 0:
        raise ValueError("autocorrelation of an empty sequence")
    return tuple(sum(x[i] * x[i + s] for i in range(n - s)) for s in range(n))


def reverse(x: Sequence[int]) -> TernarySeq:
    return _like(x, tuple(x)[::-1])


def negate(x: Sequence[int]) -> TernarySeq:
    return _like(x, (-t for t in x))


def scale(f: int, x: Sequence[int]) -> TernarySeq:
    if f not in (1, -1):
        raise ValueError("scale factor must be +1 or -1")
    return _like(x, (f * t for t in x))


def alternate(x: Sequence[int]) -> TernarySeq:
    """Multiply the i-th term (1-based) by (-1)**(i-1)."""
    return _like(x, (t if i % 2 == 0 else -t for i, t in enumerate(x)))


def _check_lengths(*xs: Sequence[int]) -> None:
    if len({len(x) for x in xs}) > 1:
        raise LengthMismatch(f"lengths differ: {[len(x) for x in xs]}")


def add_wide(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """Term-wise sum without range restriction."""
    _check_lengths(x, y)
    return tuple(a + b for a, b in zip(x, y))


def sub_wide(x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    _check_lengths(x, y)
    return tuple(a - b for a, b in zip(x, y))


def _ternary(values: tuple[int, ...]) -> TernarySeq:
    if any(abs(v) > 1 for v in values):
        raise RangeOverflow(f"term-wise result {values} leaves {{-1, 0, +1}}")
    return seq(values)


def add(x: Sequence[int], y: Sequence[int]) -> TernarySeq:
    return _ternary(add_wide(x, y))


def sub(x: Sequence[int], y: Sequence[int]) -> TernarySeq:
    return _ternary(sub_wide(x, y))


def halve(x: Sequence[int]) -> TernarySeq:
    """Exact halving of a sequence over {+-2, 0} (or any even integers)."""
    if any(v % 2 for v in x):
        raise RangeOverflow(f"cannot halve odd terms in {tuple(x)}")
    return _ternary(tuple(v // 2 for v in x))


def interleave(a: Sequence[int], c: Sequence[int]) -> TernarySeq:
    """``a1, c1, a2, c2, ..., am, cm, a(m+1)`` for ``len(a) == len(c) + 1``."""
    if len(a) != len(c) + 1:
        raise LengthMismatch(f"interleave needs len(a) == len(c) + 1, got {len(a)} and {len(c)}")
    out = [0] * (len(a) + len(c))
    out[0::2] = a
    out[1::2] = c
    return seq(out)


def deinterleave(x: Sequence[int]) -> tuple[TernarySeq, TernarySeq]:
    """Inverse of :func:`interleave` for odd-length ``x``."""
    if len(x) % 2 == 0:
        raise LengthMismatch("only odd-length sequences are interlaced")
    return seq(x[0::2]), seq(x[1::2])


def concat(*xs: Sequence[int]) -> TernarySeq:
    return seq(t for x in xs for t in x)


def support(x: Sequence[int]) -> frozenset[int]:
    """0-based positions of the nonzero terms."""
    return frozenset(i for i, t in enumerate(x) if t)


def is_disjoint(g: Sequence[int], h: Sequence[int]) -> bool:
    _check_lengths(g, h)
    return all(not (a and b) for a, b in zip(g, h))


def term(x: Sequence[int], k: int) -> int:
    """x_k with 1-based k."""
    return x[k - 1]


def primed(x: Sequence[int], k: int) -> int:
    """x'_k = x_{L+1-k}, the k-th term of the reversal of x (1-based)."""
    return x[len(x) - k]
