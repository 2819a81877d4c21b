"""The four multiplication pipelines next to the bundled tables.

Runs the Yang pipelines, compares each class set with its table, then
recomputes the union and transpose pass from the tables alone. The last
pipeline does not reproduce its table (62 classes where 64 are listed); the
table-only figures show that everything downstream depends on that set.

Run:  python demos/yang_and_tables.py [--store classes.jsonl]
"""

import argparse

from hadamard_forge import pipelines
from hadamard_forge.equiv import ClassStore

ap = argparse.ArgumentParser()
ap.add_argument("--store")
args = ap.parse_args()
store = ClassStore(args.store)

for k in (1, 2, 3, 4):
    sec = pipelines.run_yang(k, store)
    print(f"yang{k}: {sec['classes']} classes ({sec['seconds']:.0f} s)")
    for tag, n in sec["units"].items():
        print(f"    {tag:<24} {n}")
    for key in ("printed_sign", "printed_index"):
        if key in sec:
            print(f"    {key} as printed: {sec[key]}")

for pipe, k in pipelines.TABLE_OF.items():
    if pipe == "bs87":
        continue
    table = set(pipelines.table_certs(k))
    mine = store.certs(pipe + ":")
    print(f"table{k}: {len(table)} listed, {len(mine & table)} reproduced, {len(mine - table)} extra")

print("\nfrom the tables alone:", pipelines.table_set_summary())
