"""Exhaustive generators and relabel-invariant canonical forms."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded
from .quandle import Quandle, Table, default_labels
from .topological import TopologicalQuandle, _violation
from .topology import Matrix, Topology

GENERATOR_VERSION = "1"

MAX_QUANDLE_N = 6
MAX_QUASIORDER_N = 5
MAX_TQ_N = 5
MAX_CANON_N = 8


def _cap(n: int, cap: int, what: str):
    if n < 0 or n > cap:
        raise CapExceeded(f"{what}: n={n} outside 0..{cap}")


# -- quandles ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def quandle_tables(n: int) -> tuple[Table, ...]:
    """All labelled quandle tables on ``0..n-1`` in backtracking order.

    Columns are chosen left to right among permutations fixing the diagonal
    entry; self-distributivity is checked as soon as the three columns it
    involves are known.
    """
    _cap(n, MAX_QUANDLE_N, "enumerate_quandles")
    candidates = [[p for p in permutations(range(n)) if p[j] == j] for j in range(n)]
    cols: list = [None] * n
    out = []

    def ok(c: int) -> bool:
        # (i◁j)◁k = (i◁k)◁(j◁k), with cols[j][i] = i◁j
        for j in range(c + 1):
            cj = cols[j]
            for k in range(c + 1):
                ck = cols[k]
                m = ck[j]
                if m > c or c not in (j, k, m):
                    continue
                cm = cols[m]
                for i in range(n):
                    if ck[cj[i]] != cm[ck[i]]:
                        return False
        return True

    def extend(c: int):
        if c == n:
            out.append(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))
            return
        for p in candidates[c]:
            cols[c] = p
            if ok(c):
                extend(c + 1)
        cols[c] = None

    extend(0)
    return tuple(out)


def enumerate_quandles(n: int, labels: Sequence[str] | None = None) -> Iterator[Quandle]:
    labels = tuple(labels) if labels is not None else default_labels(n)
    for table in quandle_tables(n):
        yield Quandle(labels, table)


# -- quasi-orders --------------------------------------------------------------------


@lru_cache(maxsize=None)
def quasiorder_matrices(n: int) -> tuple[Matrix, ...]:
    """All quasi-orders on ``0..n-1``, sorted by their bit pattern.

    Built by adding one point at a time: the new point gets a down-set ``D``
    and an up-set ``U`` of the old order with every element of ``D`` below
    every element of ``U``.
    """
    _cap(n, MAX_QUASIORDER_N, "enumerate_quasiorders")
    if n == 0:
        return ((),)
    result = []
    m = n - 1
    for old in quasiorder_matrices(m):
        downsets = [s for s in range(1 << m) if _closed_down(old, s)]
        upsets = [s for s in range(1 << m) if _closed_up(old, s)]
        for d in downsets:
            dl = [i for i in range(m) if d >> i & 1]
            for u in upsets:
                ul = [j for j in range(m) if u >> j & 1]
                if all(old[i][j] for i in dl for j in ul):
                    rows = [old[i] + (bool(d >> i & 1),) for i in range(m)]
                    rows.append(tuple(bool(u >> j & 1) for j in range(m)) + (True,))
                    result.append(tuple(rows))
    result.sort(key=_bits)
    return tuple(result)


def _closed_down(leq: Matrix, s: int) -> bool:
    m = len(leq)
    return all(not leq[i][j] or s >> i & 1 for j in range(m) if s >> j & 1 for i in range(m))


def _closed_up(leq: Matrix, s: int) -> bool:
    m = len(leq)
    return all(not leq[i][j] or s >> j & 1 for i in range(m) if s >> i & 1 for j in range(m))


def _bits(leq: Matrix) -> tuple[bool, ...]:
    return tuple(v for row in leq for v in row)


def enumerate_quasiorders(n: int, labels: Sequence[str] | None = None) -> Iterator[Topology]:
    labels = tuple(labels) if labels is not None else default_labels(n)
    for leq in quasiorder_matrices(n):
        yield Topology(labels, leq)


# -- topological quandles ----------------------------------------------------------------


@lru_cache(maxsize=None)
def tq_pairs(n: int) -> tuple[tuple[Table, Matrix], ...]:
    _cap(n, MAX_TQ_N, "enumerate_topological_quandles")
    orders = quasiorder_matrices(n)
    return tuple(
        (table, leq)
        for table in quandle_tables(n)
        for leq in orders
        if _violation(table, leq) is None
    )


def enumerate_topological_quandles(
    n: int, labels: Sequence[str] | None = None
) -> Iterator[TopologicalQuandle]:
    """Every compatible (quandle, quasi-order) pair on ``n`` labelled points."""
    labels = tuple(labels) if labels is not None else default_labels(n)
    for table, leq in tq_pairs(n):
        yield TopologicalQuandle(Quandle(labels, table), Topology(labels, leq))


# -- canonical forms -------------------------------------------------------------------


def _relabelled_key(table, leq, p) -> tuple:
    """Encoding of the structure after sending index ``i`` to ``p[i]``."""
    n = len(p)
    inv = [0] * n
    for i, v in enumerate(p):
        inv[v] = i
    out = []
    if leq is not None:
        out.extend(int(leq[inv[a]][inv[b]]) for a in range(n) for b in range(n))
    if table is not None:
        out.extend(p[table[inv[a]][inv[b]]] for a in range(n) for b in range(n))
    return tuple(out)


def canonical_form(obj) -> bytes:
    """Minimum encoding of ``obj`` over all relabelings of its ground set.

    Accepts a :class:`Quandle`, :class:`Topology` or
    :class:`TopologicalQuandle`.  Equal forms mean isomorphic structures.
    """
    if isinstance(obj, TopologicalQuandle):
        kind, table, leq = b"QT", obj.quandle.table, obj.topology.leq
    elif isinstance(obj, Quandle):
        kind, table, leq = b"Q", obj.table, None
    elif isinstance(obj, Topology):
        kind, table, leq = b"T", None, obj.leq
    else:
        raise TypeError(f"no canonical form for {type(obj).__name__}")
    n = obj.n
    _cap(n, MAX_CANON_N, "canonical_form")
    best = min(_relabelled_key(table, leq, p) for p in permutations(range(n)))
    return kind + bytes([n]) + bytes(best)


def dedupe(objs: Iterable) -> list:
    """First representative of each isomorphism class, in stream order."""
    seen = set()
    out = []
    for obj in objs:
        form = canonical_form(obj)
        if form not in seen:
            seen.add(form)
            out.append(obj)
    return out
