"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's own arithmetic; each oracle is written
from the definitions with plain loops or dense numpy.
"""

import itertools

import numpy as np


def autocorr(x):
    """Nonperiodic autocorrelation by a double loop."""
    n = len(x)
    return [sum(x[i] * x[i + s] for i in range(n - s)) for s in range(n)]


def is_base_quad(a, b, c, d):
    """Sum of the four nonperiodic autocorrelations vanishes off zero."""
    lens = {len(a), len(b)}, {len(c), len(d)}
    if len(lens[0]) != 1 or len(lens[1]) != 1:
        return False
    m = max(len(a), len(c))
    tot = [0] * m
    for x in (a, b, c, d):
        for s, v in enumerate(autocorr(x)):
            tot[s] += v
    return all(v == 0 for v in tot[1:])


def brute_bs(m, n):
    """Every BS(m, n) by scanning all 2^(2m+2n) sign patterns."""
    out = []
    for bits in itertools.product((1, -1), repeat=2 * m + 2 * n):
        a, b = bits[:m], bits[m : 2 * m]
        c, d = bits[2 * m : 2 * m + n], bits[2 * m + n :]
        if is_base_quad(a, b, c, d):
            out.append((a, b, c, d))
    return out


def circ(x):
    d = len(x)
    return np.array([[x[(j - i) % d] for j in range(d)] for i in range(d)])


def back_identity(d):
    return np.fliplr(np.eye(d, dtype=int))


def gs_dense(a, b, c, d):
    """The Goethals-Seidel array written with explicit R and transposes."""
    A, B, C, D = (circ(x) for x in (a, b, c, d))
    R = back_identity(len(a))
    return np.block(
        [
            [A, B @ R, C @ R, D @ R],
            [-B @ R, A, -(R @ D), R @ C],
            [-C @ R, R @ D, A, -(R @ B)],
            [-D @ R, -(R @ C), R @ B, A],
        ]
    )


def is_hadamard_dense(h):
    h = np.asarray(h, dtype=int)
    n = h.shape[0]
    return bool(np.array_equal(h @ h.T, n * np.eye(n, dtype=int)))


def random_signed_perm(n, rng):
    """Dense signed permutation matrix."""
    p = np.zeros((n, n), dtype=int)
    p[np.arange(n), rng.permutation(n)] = rng.choice((-1, 1), size=n)
    return p


def sylvester(k):
    h = np.array([[1]])
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return h


def hex_to_seqs(text):
    """Concatenate the 4-bit expansions, map 0 -> -1, cut into four equal runs."""
    bits = "".join(bin(int(ch, 16))[2:].zfill(4) for ch in text)
    vals = [1 if ch == "1" else -1 for ch in bits]
    d = len(text)
    return tuple(tuple(vals[k * d : (k + 1) * d]) for k in range(4))
