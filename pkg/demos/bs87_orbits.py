"""All base sequences BS(8, 7), their orbits and how many Hadamard classes each orbit yields.

Run:  python demos/bs87_orbits.py [--store classes.jsonl]
Canonizing all 35584 matrices takes a few minutes on one core.
"""

import argparse
import time

from hadamard_forge import pipelines
from hadamard_forge.codec import load_table
from hadamard_forge.equiv import ClassStore

ap = argparse.ArgumentParser()
ap.add_argument("--store")
args = ap.parse_args()

t = time.perf_counter()
quads, orbits = pipelines.bs87_orbits()
print(f"{len(quads)} quadruples, {len(orbits)} orbits ({time.perf_counter() - t:.1f} s)")

sec = pipelines.run_bs87(ClassStore(args.store))
print(f"\n{'row':>3}  {'code':<12} {'orbit':>6} {'#H':>4}")
for row, size, had in zip(load_table(1), sec["orbit_sizes"], sec["per_row"]):
    print(f"{row.index:>3}  {str(row.code):<12} {size:>6} {had:>4}")
print(f"\n{sec['classes']} classes in {sec['seconds']:.0f} s; per-orbit class sets disjoint: {sec['rows_disjoint']}")
