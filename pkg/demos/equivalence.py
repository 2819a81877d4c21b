"""Canonical certificates and the equivalence search on a few matrices.

Run:  python demos/equivalence.py
"""

import numpy as np

from hadamard_forge import gs_assemble, hex_decode, load_table
from hadamard_forge.equiv import canonical_cert, canonical_form, profile_hash, search_equivalent
from hadamard_forge.gs import HadamardMatrix

rng = np.random.default_rng(1)
h = gs_assemble(hex_decode(load_table(2)[0]))
n = h.order


def signed_perm(n):
    p = np.zeros((n, n), dtype=int)
    p[np.arange(n), rng.permutation(n)] = rng.choice((-1, 1), n)
    return p


# scramble rows and columns, signs included
g = HadamardMatrix(signed_perm(n) @ h.to_array() @ signed_perm(n))
print("same matrix?      ", g == h)
print("same profile hash?", profile_hash(g) == profile_hash(h))
print("same certificate? ", canonical_cert(g) == canonical_cert(h))

P, Q = search_equivalent(h, g)
print("witness reproduces g:", np.array_equal(P.row_matrix() @ h.to_array() @ Q.col_matrix(), g.to_array()))

other = gs_assemble(hex_decode(load_table(2)[1]))
print("\nneighbouring table entry equivalent?", search_equivalent(h, other) is not None)

cf = canonical_form(h)
print("canonical first row:", "".join("+" if v > 0 else "-" for v in cf.matrix.to_array()[0]))
