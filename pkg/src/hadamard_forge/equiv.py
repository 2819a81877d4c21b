"""Signed-permutation equivalence of Hadamard matrices.

Two matrices are equivalent when ``B = P A Q`` for signed permutation matrices
P and Q.  :func:`canonical_form` picks one matrix per class by an
individualization-refinement search over signed rows:

* rows are first colored by their 4-row profile (the multiset of
  ``|sum_c H_ic H_jc H_kc H_lc|`` over row triples), which is invariant under
  every signed permutation;
* individualizing the first row fixes the column signs (that row becomes all
  +1); each further individualized (row, sign) splits the columns by their
  entries on the fixed rows;
* a free row is then described by its +1 counts in each column cell, up to
  complementation.  When the counts differ from their complement the sign
  of the row is forced; such rows split the columns further, and the two
  steps are iterated until nothing changes;
* a leaf is reached when every row sits in its own cell with a forced sign.
  Its matrix has rows in cell order and columns sorted by their full
  vectors.  The largest leaf encoding over the tree is the canonical form.

Branches that an already discovered automorphism maps onto explored branches
are skipped.  Every step depends only on ordered cell data, so equivalent
inputs produce the same set of leaf matrices, hence the same certificate.

This is the usual reduction to a colored graph on 4n vertices (r_i^+-,
c_j^+-, with r_i^e ~ c_j^f iff e f H_ij = +1): a signed row is a row vertex,
and the column cells are the column-vertex cells of that graph.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._kernels import quad_profile
from .errors import NotHadamard, SearchBudgetExceeded
from .gs import HadamardMatrix, is_hadamard, transpose

CERT_VERSION = b"hf1"


@dataclass(frozen=True)
class SignedPerm:
    """``perm[a]`` is the source index of target position a, scaled by ``signs[a]``."""

    perm: np.ndarray
    signs: np.ndarray

    def row_matrix(self) -> np.ndarray:
        """P with (P @ H)[a] = signs[a] * H[perm[a]]."""
        n = len(self.perm)
        p = np.zeros((n, n), dtype=np.int64)
        p[np.arange(n), self.perm] = self.signs
        return p

    def col_matrix(self) -> np.ndarray:
        """Q with (H @ Q)[:, b] = signs[b] * H[:, perm[b]]."""
        return self.row_matrix().T

    def apply_rows(self, a: np.ndarray) -> np.ndarray:
        return a[self.perm] * self.signs[:, None]

    def apply_cols(self, a: np.ndarray) -> np.ndarray:
        return a[:, self.perm] * self.signs[None, :]


def _as_matrix(h) -> HadamardMatrix:
    return h if isinstance(h, HadamardMatrix) else HadamardMatrix(h)


def row_profiles(h: HadamardMatrix) -> np.ndarray:
    """Per-row 4-row profile histograms (see module docstring)."""
    return quad_profile(np.ascontiguousarray(h.packed), h.order)


def profile_hash(h) -> int:
    """64-bit hash of the sorted row and column 4-row profiles.

    Equal for equivalent matrices.  Row triples (rather than quadruples) would
    not do: a column sign flip changes the sign of a triple product.
    """
    h = _as_matrix(h)
    digest = hashlib.blake2b(digest_size=8)
    for m in (h, transpose(h)):
        prof = row_profiles(m)
        digest.update(np.ascontiguousarray(prof[np.lexsort(prof.T[::-1])]).tobytes())
    return int.from_bytes(digest.digest(), "big")


def _ranks(keys: np.ndarray) -> np.ndarray:
    """Dense lexicographic ranks of the rows of ``keys``."""
    rank = np.zeros(len(keys), dtype=np.int64)
    if keys.shape[1] == 0 or len(keys) < 2:
        return rank
    order = np.lexsort(keys.T[::-1])
    ordered = keys[order]
    rank[order] = np.concatenate([[0], np.cumsum((ordered[1:] != ordered[:-1]).any(axis=1))])
    return rank


@dataclass
class _Node:
    free: np.ndarray  # free rows
    rank: np.ndarray  # ordered cell index of each free row
    sign: np.ndarray  # forced sign of each free row (0 = not forced)
    t: np.ndarray  # column signs


class _Canonizer:
    def __init__(self, h: HadamardMatrix, budget: int):
        self.h = h.to_array().astype(np.int64)
        self.n = h.order
        self.color = _ranks(row_profiles(h))
        self.budget = budget
        self.nodes = 0
        self.best: tuple | None = None
        self.first: tuple | None = None
        self.autos: list[tuple[np.ndarray, np.ndarray]] = []

    def refine(self, fixed: list[tuple[int, int]]) -> _Node:
        h, n = self.h, self.n
        t = h[fixed[0][0]]
        ht = h * t
        is_fixed = np.zeros(n, dtype=bool)
        is_fixed[[r for r, _ in fixed]] = True
        free = np.flatnonzero(~is_fixed)
        rows = (ht[free] > 0).astype(np.float32)
        fixed_rows = np.array([s * ht[r] for r, s in fixed[1:]], dtype=np.int64).reshape(-1, n)
        col = _ranks(fixed_rows.T)
        while True:
            cells = col.max() + 1
            onehot = np.zeros((n, cells), dtype=np.float32)
            onehot[np.arange(n), col] = 1
            # float32 products of 0/1 matrices are exact at these sizes and use BLAS
            plus = (rows @ onehot).astype(np.int64)
            comp = np.bincount(col, minlength=cells)[None, :] - plus
            diff = plus - comp
            first = np.argmax(diff != 0, axis=1)
            lead = diff[np.arange(len(free)), first]
            sign = np.where(lead < 0, 1, np.where(lead > 0, -1, 0))
            canon = np.where((sign == -1)[:, None], comp, plus)
            rank = _ranks(np.column_stack([self.color[free], canon]))
            forced = sign != 0
            if not forced.any():
                break
            signed = (rows[forced] == (sign[forced] > 0)[:, None]).astype(np.float32)
            rcells = _ranks(rank[forced][:, None])
            r_onehot = np.zeros((forced.sum(), rcells.max() + 1), dtype=np.float32)
            r_onehot[np.arange(len(rcells)), rcells] = 1
            new_col = _ranks(np.column_stack([col, (signed.T @ r_onehot).astype(np.int64)]))
            if new_col.max() == col.max():
                break
            col = new_col
        return _Node(free, rank, sign, t)

    def leaf(self, fixed: list[tuple[int, int]], node: _Node) -> tuple[bytes, np.ndarray, np.ndarray, np.ndarray]:
        order = np.concatenate([[r for r, _ in fixed], node.free[np.argsort(node.rank)]]).astype(np.int64)
        signs = np.concatenate([[s for _, s in fixed], node.sign[np.argsort(node.rank)]]).astype(np.int64)
        m = self.h[order] * signs[:, None] * node.t[None, :]
        cols = np.lexsort(-m[::-1])
        m = m[:, cols]
        col_signs = node.t[cols]
        cert = CERT_VERSION + self.n.to_bytes(4, "big") + np.packbits(m > 0).tobytes()
        return cert, order, signs, np.stack([cols, col_signs])

    def _orbits(self, fixed: list[tuple[int, int]], candidates: list[tuple[int, int]]) -> dict:
        """Union-find over candidate (row, sign) pairs under automorphisms fixing ``fixed``."""
        parent: dict = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        root_level = not fixed
        anchor = fixed[0][0] if fixed else None
        for perm, rho in self.autos:
            if not root_level:
                c = rho[anchor]
                if any(perm[r] != r or rho[r] != c for r, _ in fixed):
                    continue
            else:
                c = 1
            for x, s in candidates:
                y, sy = int(perm[x]), (1 if root_level else s * int(rho[x]) * int(c))
                a, b = find((x, s)), find((y, sy))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return {cand: find(cand) for cand in candidates}

    def search(self, fixed: list[tuple[int, int]]) -> int | None:
        """Explore the subtree below ``fixed``.

        Returns a depth to jump back to when a leaf turned out to be an
        automorphic image of the first or the best leaf: the whole subtree
        below the common ancestor's current child is then an image of an
        explored one.
        """
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"canonical labeling exceeded {self.budget} nodes")
        depth = len(fixed)
        if fixed:
            node = self.refine(fixed)
            cells: dict[int, list[int]] = defaultdict(list)
            for idx, r in enumerate(node.rank):
                cells[int(r)].append(idx)
            if all(len(c) == 1 for c in cells.values()) and (node.sign != 0).all():
                return self.visit_leaf(fixed, node)
            cost = {
                r: len(c) * (1 if node.sign[c[0]] else 2)
                for r, c in cells.items()
                if len(c) > 1 or not node.sign[c[0]]
            }
            target = min(cost, key=lambda r: (cost[r], r))
            candidates = [
                (int(node.free[i]), s)
                for i in cells[target]
                for s in ((int(node.sign[i]),) if node.sign[i] else (1, -1))
            ]
        else:
            sizes = np.bincount(self.color)
            target = int(np.argmin(sizes))
            candidates = [(int(x), 1) for x in np.flatnonzero(self.color == target)]
        explored: list[tuple[int, int]] = []
        for cand in candidates:
            if explored and self.autos:
                orbit = self._orbits(fixed, candidates)
                if orbit[cand] in {orbit[e] for e in explored}:
                    continue
            explored.append(cand)
            jump = self.search(fixed + [cand])
            if jump is not None and jump < depth:
                return jump
        return None

    def visit_leaf(self, fixed, node) -> int | None:
        cert, order, signs, cols = self.leaf(fixed, node)
        path = list(fixed)
        if self.first is None:
            self.first = (cert, order, signs, path)
        if self.best is None or cert > self.best[0]:
            self.best = (cert, order, signs, cols, path)
            return None
        jump = None
        for ref_cert, ref_order, ref_signs, *rest in (self.first, self.best):
            ref_path = rest[-1]
            if cert != ref_cert or ref_path == path:
                continue
            perm = np.empty(self.n, dtype=np.int64)
            rho = np.empty(self.n, dtype=np.int64)
            perm[ref_order] = order
            rho[ref_order] = ref_signs * signs
            self.autos.append((perm, rho))
            common = 0
            while common < min(len(path), len(ref_path)) and path[common] == ref_path[common]:
                common += 1
            jump = common if jump is None else min(jump, common)
        return jump


@dataclass(frozen=True)
class CanonicalForm:
    cert: bytes
    matrix: HadamardMatrix
    P: SignedPerm
    Q: SignedPerm


DEFAULT_BUDGET = 200_000


def canonical_form(h, budget: int = DEFAULT_BUDGET) -> CanonicalForm:
    """Canonical representative C = P H Q together with its certificate."""
    h = _as_matrix(h)
    if not is_hadamard(h):
        raise NotHadamard(f"{h!r} is not a Hadamard matrix")
    if h.order == 1:
        one = np.ones(1, dtype=np.int64)
        zero = np.zeros(1, dtype=np.int64)
        c = HadamardMatrix(np.ones((1, 1), dtype=np.int8))
        cert = CERT_VERSION + (1).to_bytes(4, "big") + np.packbits(c.to_array() > 0).tobytes()
        return CanonicalForm(cert, c, SignedPerm(zero, one * int(h.to_array()[0, 0])), SignedPerm(zero, one))
    canon = _Canonizer(h, budget)
    canon.search([])
    cert, order, signs, cols, _ = canon.best
    P = SignedPerm(order, signs)
    Q = SignedPerm(cols[0], cols[1])
    return CanonicalForm(cert, HadamardMatrix(Q.apply_cols(P.apply_rows(h.to_array().astype(np.int64)))), P, Q)


def canonical_cert(h, budget: int = DEFAULT_BUDGET) -> bytes:
    return canonical_form(h, budget).cert


def _pair_gram_profile(a: np.ndarray) -> np.ndarray:
    """Row invariant computed from the Gram matrix of all row-pair products."""
    n = len(a)
    pairs = (a[:, None, :] * a[None, :, :]).reshape(n * n, n).astype(np.float32)
    gram = np.abs(pairs @ pairs.T).astype(np.int64).reshape(n, n * n * n)
    return np.stack([np.bincount(g, minlength=n + 1) for g in gram])


def search_equivalent(h1, h2, budget: int = 1_000_000) -> tuple[SignedPerm, SignedPerm] | None:
    """Backtracking search for P, Q with h2 = P h1 Q.

    Row i of h1 may only go to rows of h2 with the same pair-product Gram
    profile; after each placement the multisets of (sign-normalized) column
    patterns on the placed rows must agree.  Returns None only after an
    exhaustive search.  Raises :class:`SearchBudgetExceeded` when the node
    budget runs out (not a proof of inequivalence).
    """
    a = _as_matrix(h1).to_array().astype(np.int64)
    b = _as_matrix(h2).to_array().astype(np.int64)
    n = len(a)
    if len(b) != n:
        return None
    both = _ranks(np.concatenate([_pair_gram_profile(a), _pair_gram_profile(b)]))
    ka, kb = both[:n], both[n:]
    if sorted(ka) != sorted(kb):
        return None
    sizes = np.bincount(ka)
    order = sorted(range(n), key=lambda i: (sizes[ka[i]], ka[i], i))
    nodes = 0

    def patterns(m: np.ndarray, rows: list[int], signs: list[int]) -> np.ndarray:
        """Column patterns on the given signed rows, each column scaled so its first entry is +1."""
        sub = m[rows] * np.array(signs)[:, None]
        return sub * sub[0][None, :]

    def multiset(sub: np.ndarray) -> np.ndarray:
        return sub[:, np.lexsort(sub[::-1])]

    def finish(mapped: list[int], signs: list[int]):
        src = patterns(a, order, [1] * n)
        dst = patterns(b, mapped, signs)
        where = {col.tobytes(): j for j, col in enumerate(dst.T)}
        cols = np.array([where.get(col.tobytes(), -1) for col in src.T])
        if len(where) != n or (cols < 0).any():
            return None
        rows = np.empty(n, dtype=np.int64)
        rsign = np.empty(n, dtype=np.int64)
        rows[mapped] = order
        rsign[mapped] = signs
        col_perm = np.empty(n, dtype=np.int64)
        col_sign = np.empty(n, dtype=np.int64)
        col_perm[cols] = np.arange(n)
        col_sign[cols] = a[order[0]] * b[mapped[0], cols] * signs[0]
        P, Q = SignedPerm(rows, rsign), SignedPerm(col_perm, col_sign)
        return (P, Q) if (Q.apply_cols(P.apply_rows(a)) == b).all() else None

    def extend(mapped: list[int], signs: list[int]):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"equivalence search exceeded {budget} nodes")
        depth = len(mapped)
        if depth == n:
            return finish(mapped, signs)
        x = order[depth]
        target = multiset(patterns(a, order[: depth + 1], [1] * (depth + 1)))
        for y in range(n):
            if y in mapped or kb[y] != ka[x]:
                continue
            for s in (1, -1) if depth else (1,):
                if not (multiset(patterns(b, mapped + [y], signs + [s])) == target).all():
                    continue
                found = extend(mapped + [y], signs + [s])
                if found:
                    return found
        return None

    return extend([], [])


def _rep_key(rep: str) -> tuple[int, str]:
    """Hex quadruple encodings sort before raw matrices, then lexicographically."""
    return ("\n" in rep, rep)


@dataclass
class ClassRecord:
    cert: bytes
    representative: str
    order: int
    provenance: set[str] = field(default_factory=set)
    first_seen: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "cert": self.cert.hex(),
                "representative": self.representative,
                "provenance": sorted(self.provenance),
                "order": self.order,
                "first_seen": self.first_seen,
            }
        )


class ClassStore:
    """One record per certificate, optionally persisted as JSON lines.

    The file is append-only while a run is in progress: class records (merged
    on load) and ``{"unit_done": name}`` markers that let an interrupted run
    skip finished work.  :meth:`compact` rewrites it with one line per class.
    Inserts are serialized by a lock; concurrent inserts of one certificate
    keep the least representative encoding, so the outcome does not depend
    on their order.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._records: dict[bytes, ClassRecord] = {}
        self._done: set[str] = set()
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                obj = json.loads(line)
                if "unit_done" in obj:
                    self._done.add(obj["unit_done"])
                else:
                    self._merge(
                        bytes.fromhex(obj["cert"]), obj["representative"], obj["provenance"], obj["order"], obj.get("first_seen", "")
                    )

    def _merge(self, cert: bytes, rep: str, provenance: Iterable[str], order: int, first_seen: str) -> tuple[bool, ClassRecord]:
        rec = self._records.get(cert)
        if rec is None:
            rec = ClassRecord(cert, rep, order, set(provenance), first_seen)
            self._records[cert] = rec
            return True, rec
        rec.provenance.update(provenance)
        if _rep_key(rep) < _rep_key(rec.representative):
            rec.representative = rep
        return False, rec

    def insert(self, cert: bytes, representative: str, provenance: str | Iterable[str], order: int) -> bool:
        """Add or merge a class; returns True when the certificate is new."""
        tags = [provenance] if isinstance(provenance, str) else list(provenance)
        first = tags[0].split(":")[0] if tags else ""
        with self._lock:
            new, rec = self._merge(cert, representative, tags, order, first)
            if self.path is not None:
                with self.path.open("a") as fh:
                    fh.write(rec.to_json() + "\n")
        return new

    def mark_done(self, unit: str) -> None:
        with self._lock:
            self._done.add(unit)
            if self.path is not None:
                with self.path.open("a") as fh:
                    fh.write(json.dumps({"unit_done": unit}) + "\n")

    def is_done(self, unit: str) -> bool:
        return unit in self._done

    def compact(self) -> None:
        if self.path is None:
            return
        with self._lock:
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            lines = [rec.to_json() for _, rec in sorted(self._records.items())]
            lines += [json.dumps({"unit_done": u}) for u in sorted(self._done)]
            tmp.write_text("".join(line + "\n" for line in lines))
            os.replace(tmp, self.path)

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, cert: bytes) -> bool:
        return cert in self._records

    def __iter__(self) -> Iterator[ClassRecord]:
        return iter(sorted(self._records.values(), key=lambda r: r.cert))

    def get(self, cert: bytes) -> ClassRecord | None:
        return self._records.get(cert)

    def certs(self, tag_prefix: str | None = None) -> set[bytes]:
        """Certificates having at least one provenance tag starting with ``tag_prefix``."""
        if tag_prefix is None:
            return set(self._records)
        return {c for c, r in self._records.items() if any(p.startswith(tag_prefix) for p in r.provenance)}


def _cert_of_packed(args: tuple[bytes, int]) -> bytes:
    packed, order = args
    return canonical_cert(HadamardMatrix.from_packed(np.frombuffer(packed, dtype="<u8").reshape(order, -1), order))


def certify_many(matrices: Iterable[HadamardMatrix], jobs: int = 1) -> list[bytes]:
    """Certificates of many matrices; identical matrices are canonized once."""
    mats = list(matrices)
    keys = [(m.packed.tobytes(), m.order) for m in mats]
    unique = list(dict.fromkeys(keys))
    if jobs > 1 and len(unique) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            certs = list(pool.map(_cert_of_packed, unique, chunksize=64))
    else:
        certs = [_cert_of_packed(k) for k in unique]
    lookup = dict(zip(unique, certs))
    return [lookup[k] for k in keys]


def dedup(
    stream: Iterable[tuple],
    store: ClassStore | None = None,
    jobs: int = 1,
) -> ClassStore:
    """Insert ``(matrix, provenance[, representative])`` items into a store.

    Every distinct matrix is canonized; the certificate alone decides class
    membership.  The 4-row profile behind :func:`profile_hash` is the first
    refinement step of the labeling, so a separate screening pass would only
    repeat work.  Raw matrix text is the representative when none is given.
    """
    store = store if store is not None else ClassStore()
    items = list(stream)
    orders = {item[0].order for item in items}
    if len(orders) > 1:
        raise ValueError(f"dedup needs matrices of one order, got {sorted(orders)}")
    for item in items:
        if not is_hadamard(item[0]):
            raise NotHadamard(f"{item[1]}: not a Hadamard matrix")
    certs = certify_many([item[0] for item in items], jobs)
    for item, cert in zip(items, certs):
        h, prov = item[0], item[1]
        rep = item[2] if len(item) > 2 and item[2] else h.to_raw()
        store.insert(cert, rep, prov, h.order)
    return store
