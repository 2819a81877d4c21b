"""End-to-end constructions of order-60 Hadamard matrices and their class counts.

Each pipeline feeds matrices into a :class:`~hadamard_forge.equiv.ClassStore`
under provenance tags; every number in a report is read back from the store.
Work is split into named units that are marked done in the store, so a run
with a persistent store resumes where it stopped.

Pipelines and tags:

========  ==========================================  =====================
pipeline  inputs                                       tag
========  ==========================================  =====================
bs87      BS(8,7), folded, one unit per G_BS orbit     ``bs87:row<i>``
yang1     NS(1) x BS(3,2), NS(2) x BS(2,1)             ``yang1:ns1-bs32`` ...
yang2     NS(3) x BS(3,2), NS(5) x BS(2,1)             ``yang2:ns3-bs32`` ...
yang3     NN(2) x BS(2,1)                              ``yang3:nn2-bs21``
yang4     BS(2,1) x BS(3,2) and BS(3,2) x BS(2,1)      ``yang4:bs21-bs32`` ...
========  ==========================================  =====================

Units of the first three theorems come with a ``:swap`` companion holding the
same quadruples with A and B exchanged.
"""

from __future__ import annotations

import json
import sys
import time
from itertools import combinations
from collections.abc import Callable, Iterable
from dataclasses import asdict, dataclass, field
from importlib import resources

from . import codec
from .designs import (
    BaseSeqQuad,
    bs_fold,
    enumerate_bs,
    gbs_orbits,
    near_normal_set,
    normal_set,
    quad_permute,
    ts_to_bs,
)
from .equiv import ClassStore, certify_many
from .errors import PostconditionFailure
from .gs import HadamardMatrix, gs_assemble, transpose
from .yang import yang1, yang2, yang3, yang4

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

PIPELINES = ("bs87", "yang1", "yang2", "yang3", "yang4")
TABLE_OF = {"bs87": 2, "yang1": 3, "yang2": 4, "yang3": 5, "yang4": 6}


def matrix_of(representative: str) -> HadamardMatrix:
    """Rebuild a matrix from a store representative (hex quadruple or raw text)."""
    if "\n" in representative:
        return HadamardMatrix.from_raw(representative)
    return gs_assemble(codec.hex_decode(representative), check=False)


def _insert_quads(store: ClassStore, quads: Iterable[BaseSeqQuad], tag: str, jobs: int) -> None:
    """Goethals-Seidel assemble each BS(15,15), certify, and store under ``tag``."""
    if store.is_done(tag):
        return
    quads = list(dict.fromkeys(quads))
    mats = [gs_assemble(q) for q in quads]
    for q, cert, h in zip(quads, certify_many(mats, jobs), mats):
        store.insert(cert, codec.hex_encode(q), tag, h.order)
    store.mark_done(tag)


# ---------------------------------------------------------------- bs87


def bs87_orbits() -> tuple[list[BaseSeqQuad], list[frozenset[BaseSeqQuad]]]:
    """BS(8,7) and its G_BS orbits listed in the order of the Table 1 rows."""
    quads = enumerate_bs(8, 7)
    orbits = gbs_orbits(quads)
    by_rep = []
    for row in codec.load_table(1):
        rep = codec.quad_decode(row.code)
        by_rep.append(next(o for o in orbits if rep in o))
    if len(orbits) != len(by_rep) or len(set(by_rep)) != len(by_rep):
        raise PostconditionFailure("Table 1 representatives do not pick distinct orbits")
    return quads, by_rep


def run_bs87(store: ClassStore | None = None, jobs: int = 1) -> dict:
    """BS(8,7) -> fold -> Goethals-Seidel -> classes, per G_BS orbit."""
    store = store if store is not None else ClassStore()
    start = time.perf_counter()
    quads, orbits = bs87_orbits()
    enum_time = time.perf_counter() - start
    tags = [f"bs87:row{i}" for i in range(1, len(orbits) + 1)]
    for tag, orbit in zip(tags, orbits):
        _insert_quads(store, (bs_fold(q) for q in sorted(orbit)), tag, jobs)
    row_sets = [_row_certs(store, t) for t in tags]
    per_row = [len(s) for s in row_sets]
    disjoint = sum(len(s) for s in row_sets) == len(set().union(*row_sets))
    return {
        "enumerated": len(quads),
        "orbits": len(orbits),
        "orbit_sizes": [len(o) for o in orbits],
        "per_row": per_row,
        "classes": len(store.certs("bs87:")),
        "rows_disjoint": disjoint,
        "enumeration_seconds": round(enum_time, 2),
        "seconds": round(time.perf_counter() - start, 2),
    }


def _row_certs(store: ClassStore, tag: str) -> set[bytes]:
    return {r.cert for r in store if tag in r.provenance}


# ---------------------------------------------------------------- Yang


def _ts_images(fn: Callable, xs, ys, **kw) -> list[BaseSeqQuad]:
    return [ts_to_bs(fn(x, y, **kw)) for x in xs for y in ys]


def _bs_images(fn: Callable, xs, ys, **kw) -> list[BaseSeqQuad]:
    return [fn(x, y, **kw) for x in xs for y in ys]


def _variant_survey(fn: Callable, xs, ys) -> dict[str, int]:
    """How many inputs the printed (uncorrected) formula handles."""
    ok = 0
    for x in xs:
        for y in ys:
            try:
                fn(x, y, printed=True)
                ok += 1
            except PostconditionFailure:
                pass
    return {"valid": ok, "total": len(xs) * len(ys)}


SWAP = (1, 0, 2, 3)


def _with_companion(tag: str, build: Callable[[], list[BaseSeqQuad]]) -> dict:
    """A unit plus its odd-permutation companion (first two components swapped)."""
    return {tag: build, tag + ":swap": lambda: [quad_permute(q, SWAP) for q in build()]}


def yang_units(k: int) -> dict[str, Callable[[], list[BaseSeqQuad]]]:
    """Named input products of the k-th theorem mapped to their BS(15,15) images.

    For the first three theorems every image is accompanied by its A<->B swap,
    which the Goethals-Seidel array may send to a different class.  The fourth
    theorem runs both factor orders without companions.
    """
    bs21 = lambda: enumerate_bs(2, 1)  # noqa: E731
    bs32 = lambda: enumerate_bs(3, 2)  # noqa: E731
    if k == 1:
        return {
            **_with_companion("yang1:ns1-bs32", lambda: _ts_images(yang1, normal_set(1), bs32())),
            **_with_companion("yang1:ns2-bs21", lambda: _ts_images(yang1, normal_set(2), bs21())),
        }
    if k == 2:
        return {
            **_with_companion("yang2:ns3-bs32", lambda: _bs_images(yang2, normal_set(3), bs32())),
            **_with_companion("yang2:ns5-bs21", lambda: _bs_images(yang2, normal_set(5), bs21())),
        }
    if k == 3:
        return _with_companion("yang3:nn2-bs21", lambda: _ts_images(yang3, near_normal_set(2), bs21()))
    if k == 4:
        return {
            "yang4:bs21-bs32": lambda: _bs_images(yang4, bs21(), bs32()),
            "yang4:bs32-bs21": lambda: _bs_images(yang4, bs32(), bs21()),
        }
    raise ValueError("the multiplication theorems are numbered 1..4")


def run_yang(k: int, store: ClassStore | None = None, jobs: int = 1) -> dict:
    """Images of the k-th multiplication theorem -> Goethals-Seidel -> classes."""
    store = store if store is not None else ClassStore()
    start = time.perf_counter()
    units = yang_units(k)
    for tag, build in units.items():
        if not store.is_done(tag):
            _insert_quads(store, build(), tag, jobs)
    products = [t for t in units if not t.endswith(":swap")]
    section = {
        "units": {tag: len(_row_certs(store, tag)) for tag in units},
        "products": {tag: len(store.certs(tag)) for tag in products},
        "classes": len(store.certs(f"yang{k}:")),
    }
    if k == 3:
        section["printed_sign"] = _variant_survey(yang3, near_normal_set(2), enumerate_bs(2, 1))
    if k == 4:
        section["printed_index"] = {
            "bs21-bs32": _variant_survey(yang4, enumerate_bs(2, 1), enumerate_bs(3, 2)),
            "bs32-bs21": _variant_survey(yang4, enumerate_bs(3, 2), enumerate_bs(2, 1)),
        }
    section["seconds"] = round(time.perf_counter() - start, 2)
    return section


# ---------------------------------------------------------------- full run


@dataclass
class PipelineReport:
    sections: dict = field(default_factory=dict)
    overlaps: dict = field(default_factory=dict)
    union: int | None = None
    transpose_new: int | None = None
    total: int | None = None
    tables: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = []
        for name, sec in self.sections.items():
            lines.append(f"{name}: {sec.get('classes')} classes")
        if self.union is not None:
            lines.append(f"union: {self.union}")
        for key, val in self.overlaps.items():
            lines.append(f"overlap {key}: {val}")
        if self.transpose_new is not None:
            lines.append(f"transpose pass: +{self.transpose_new} -> {self.total}")
        for key, val in self.tables.items():
            lines.append(f"{key}: {val}")
        return "\n".join(lines)


def run_transpose_pass(store: ClassStore, jobs: int = 1) -> int:
    """Certify the transposes of all pipeline classes; returns the number of new classes."""
    pipeline_certs = set().union(*(store.certs(p + ":") for p in PIPELINES))
    if not store.is_done("transpose"):
        reps = [store.get(c).representative for c in sorted(pipeline_certs)]
        mats = [transpose(matrix_of(r)) for r in reps]
        for h, cert in zip(mats, certify_many(mats, jobs)):
            store.insert(cert, h.to_raw(), "transpose", h.order)
        store.mark_done("transpose")
    return len(store.certs("transpose") - pipeline_certs)


def table_certs(k: int, jobs: int = 1) -> list[bytes]:
    mats = [gs_assemble(codec.hex_decode(x)) for x in codec.load_table(k)]
    return certify_many(mats, jobs)


def table_set_summary(jobs: int = 1) -> dict:
    """Union, overlaps and transpose pass computed from the bundled tables alone.

    Isolates disagreements: a count that is right here but wrong for the
    pipelines points at the pipeline class sets, not at the later passes.
    """
    certs = {k: set(table_certs(k, jobs)) for k in TABLE_OF.values()}
    union = set().union(*certs.values())
    mats = [transpose(gs_assemble(codec.hex_decode(x))) for k in certs for x in codec.load_table(k)]
    new = set(certify_many(mats, jobs)) - union
    rest = set().union(*(certs[k] for k in certs if k != 2))
    pairs = {f"table{a}&table{b}": len(certs[a] & certs[b]) for a, b in combinations(sorted(certs), 2)}
    return {
        "union": len(union),
        "overlaps": {**pairs, "table2&rest": len(certs[2] & rest)},
        "transpose_new": len(new),
        "total": len(union) + len(new),
    }


def cross_validate_tables(store: ClassStore, jobs: int = 1) -> dict:
    """Compare each pipeline's class set with the decoded bundled table."""
    out = {}
    for pipe, k in TABLE_OF.items():
        certs = table_certs(k, jobs)
        mine = store.certs(pipe + ":")
        theirs = set(certs)
        first = sorted(mine ^ theirs)
        out[f"table{k}"] = {
            "entries": len(certs),
            "distinct": len(theirs),
            "matches_pipeline": mine == theirs,
            "first_divergent_cert": first[0].hex() if first else None,
        }
    return out


def overlaps(store: ClassStore) -> dict[str, int]:
    sets = {p: store.certs(p + ":") for p in PIPELINES}
    out = {}
    for i, a in enumerate(PIPELINES):
        for b in PIPELINES[i + 1 :]:
            out[f"table{TABLE_OF[a]}&table{TABLE_OF[b]}"] = len(sets[a] & sets[b])
    rest = set().union(*(sets[p] for p in PIPELINES[1:]))
    out["table2&rest"] = len(sets["bs87"] & rest)
    return out


def run_full(
    store: ClassStore | None = None,
    jobs: int = 1,
    pipelines: Iterable[str] = PIPELINES,
    tables: bool = True,
    log: Callable[[str], None] | None = None,
) -> PipelineReport:
    store = store if store is not None else ClassStore()
    start = time.perf_counter()
    report = PipelineReport()
    pipelines = list(pipelines)
    for name in pipelines:
        if log:
            log(f"running {name}")
        report.sections[name] = run_bs87(store, jobs) if name == "bs87" else run_yang(int(name[-1]), store, jobs)
        if log:
            log(f"{name}: {report.sections[name]['classes']} classes")
    if set(pipelines) == set(PIPELINES):
        report.union = len(set().union(*(store.certs(p + ":") for p in PIPELINES)))
        report.overlaps = overlaps(store)
        report.transpose_new = run_transpose_pass(store, jobs)
        report.total = report.union + report.transpose_new
        if tables:
            report.tables = cross_validate_tables(store, jobs)
    store.compact()
    report.seconds = round(time.perf_counter() - start, 2)
    return report


# ---------------------------------------------------------------- acceptance


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: expected {self.expected}, got {self.actual}"


def load_expectations(path: str | None = None) -> dict:
    if path is None:
        text = resources.files(__package__).joinpath("expectations.toml").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return tomllib.loads(text)


def check_report(report: PipelineReport, expected: dict) -> list[Check]:
    """Compare whatever the report contains with the expectations."""
    checks = []
    sec = report.sections
    if "bs87" in sec:
        e = expected["bs87"]
        checks += [
            Check("bs87 enumeration", e["enumerated"], sec["bs87"]["enumerated"]),
            Check("bs87 orbit sizes", e["orbit_sizes"], sec["bs87"]["orbit_sizes"]),
            Check("bs87 classes per row", e["per_row"], sec["bs87"]["per_row"]),
            Check("bs87 classes", e["classes"], sec["bs87"]["classes"]),
        ]
    for k in (1, 2, 3, 4):
        name = f"yang{k}"
        if name in sec:
            checks.append(Check(f"{name} classes", expected[name]["classes"], sec[name]["classes"]))
            for key in ("units", "products"):
                if key in expected[name]:
                    checks.append(Check(f"{name} {key}", expected[name][key], sec[name][key]))
    if report.union is not None:
        e = expected["full"]
        checks += [
            Check("union", e["union"], report.union),
            Check("overlap table4&table3", e["overlap_table4_table3"], report.overlaps["table3&table4"]),
            Check("overlap table4&table5", e["overlap_table4_table5"], report.overlaps["table4&table5"]),
            Check("overlap table2&rest", e["overlap_table2_rest"], report.overlaps["table2&rest"]),
            Check("transpose new classes", e["transpose_new"], report.transpose_new),
            Check("total", e["total"], report.total),
        ]
        for key, val in report.tables.items():
            checks.append(Check(f"{key} matches pipeline", True, val["matches_pipeline"]))
            checks.append(Check(f"{key} pairwise nonequivalent", val["entries"], val["distinct"]))
    return checks
