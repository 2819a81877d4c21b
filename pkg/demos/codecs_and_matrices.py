"""From compact codes to an order-60 Hadamard matrix.

Run:  python demos/codecs_and_matrices.py
"""

from hadamard_forge import gs_assemble, hex_decode, hex_encode, is_hadamard, quad_decode, quad_encode

# A BS(9, 8) written as quads: the primed first label, then the (A;B) and (C;D) quads.
q = quad_decode("3'6142; 1675", 8)
print("decoded  :", q)
print("re-coded :", quad_encode(q).format(strict=True), "/ table style:", quad_encode(q))

# A BS(15, 15) as 15 hex digits (60 bits, -1 -> 0).
x = "0dc41a77adbf5c8"
bs = hex_decode(x)
print()
for name, s in zip("ABCD", bs):
    print(f"  {name} = {s}")
assert hex_encode(bs) == x

h = gs_assemble(bs)
a = h.to_array()
print(f"\nH has order {h.order}; H H^T = {h.order} I: {is_hadamard(h)}")
print("top-left 8x8 corner:")
for row in a[:8, :8]:
    print("  " + "".join("+" if v > 0 else "-" for v in row))
