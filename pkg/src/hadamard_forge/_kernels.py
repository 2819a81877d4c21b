"""Numba kernels for the equivalence machinery."""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def quad_profile(packed, order):
    """hist[i, v] = number of row triples {j, k, l} not containing i with
    |sum_c H_ic H_jc H_kc H_lc| == v.

    Packed rows use +1 -> bit 1, so the product of four entries is -1 exactly
    where the XOR of the four bits is 1.
    """
    n, words = packed.shape
    hist = np.zeros((n, order + 1), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(k + 1, n):
                    ones = 0
                    for w in range(words):
                        ones += _popcount(packed[i, w] ^ packed[j, w] ^ packed[k, w] ^ packed[l, w])
                    v = abs(order - 2 * np.int64(ones))
                    hist[i, v] += 1
                    hist[j, v] += 1
                    hist[k, v] += 1
                    hist[l, v] += 1
    return hist
