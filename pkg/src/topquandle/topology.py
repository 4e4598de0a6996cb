"""Finite (Alexandroff) topologies, stored as quasi-orders.

``leq[i][j]`` is true when ``x_i <= x_j``.  Reflexive and transitive, not
necessarily antisymmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import (
    GroundMismatch,
    GroundOverlap,
    MalformedInput,
    NotASubset,
    NotReflexive,
    NotTransitive,
    UnknownLabel,
)

Matrix = tuple[tuple[bool, ...], ...]
Partition = frozenset[frozenset[str]]


@dataclass(frozen=True, eq=False)
class Topology:
    """A quasi-order on an ordered label set.

    Like :class:`~topquandle.quandle.Quandle`, equality ignores the order in
    which the labels are listed.  The constructor checks shape only; see
    :func:`validate_topology`.
    """

    labels: tuple[str, ...]
    leq: Matrix

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise MalformedInput(f"labels are not distinct: {labels}")
        n = len(labels)
        leq = tuple(tuple(bool(v) for v in row) for row in self.leq)
        if len(leq) != n or any(len(r) != n for r in leq):
            raise MalformedInput(f"relation is not {n}x{n}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "leq", leq)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def le(self, a: str, b: str) -> bool:
        return self.leq[self.index(a)][self.index(b)]

    def normalized(self) -> "Topology":
        order = sorted(range(self.n), key=lambda i: self.labels[i])
        if order == list(range(self.n)):
            return self
        return self.reordered(order)

    def reordered(self, order: Sequence[int]) -> "Topology":
        return Topology(
            tuple(self.labels[i] for i in order),
            tuple(tuple(self.leq[i][j] for j in order) for i in order),
        )

    def aligned_to(self, labels: Sequence[str]) -> "Topology":
        """The same topology with labels listed in the order ``labels``."""
        if sorted(labels) != sorted(self.labels):
            raise GroundMismatch(f"{sorted(labels)} != {sorted(self.labels)}")
        order = [self.index(lab) for lab in labels]
        if order == list(range(self.n)):
            return self
        return self.reordered(order)

    @cached_property
    def key(self) -> tuple:
        t = self.normalized()
        return (t.labels, t.leq)

    def __eq__(self, other):
        if not isinstance(other, Topology):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        from .formats import format_relations

        rel = format_relations(self).strip().replace("\n", ", ")
        return f"Topology({' '.join(self.labels)}: {rel or 'discrete'})"


# -- construction ------------------------------------------------------------------


def transitive_closure(leq) -> Matrix:
    """Reflexive-transitive closure by Floyd–Warshall over booleans."""
    n = len(leq)
    m = [[bool(leq[i][j]) or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        mk = m[k]
        for i in range(n):
            if m[i][k]:
                mi = m[i]
                for j in range(n):
                    if mk[j]:
                        mi[j] = True
    return tuple(tuple(r) for r in m)


def find_topology_violation(leq: Matrix):
    n = len(leq)
    for i in range(n):
        if not leq[i][i]:
            return NotReflexive(i)
    for i in range(n):
        for j in range(n):
            if leq[i][j]:
                for k in range(n):
                    if leq[j][k] and not leq[i][k]:
                        return NotTransitive(i, j, k)
    return None


def validate_topology(leq, labels: Sequence[str]) -> Topology:
    t = Topology(tuple(labels), leq)
    err = find_topology_violation(t.leq)
    if err is not None:
        raise err
    return t


def discrete(labels: Sequence[str]) -> Topology:
    labels = tuple(labels)
    n = len(labels)
    return Topology(labels, tuple(tuple(i == j for j in range(n)) for i in range(n)))


def indiscrete(labels: Sequence[str]) -> Topology:
    labels = tuple(labels)
    n = len(labels)
    return Topology(labels, tuple(tuple(True for _ in range(n)) for _ in range(n)))


def from_relations(labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Topology:
    """Smallest quasi-order containing every ``x <= y`` in ``pairs``."""
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    m = [[i == j for j in range(n)] for i in range(n)]
    for x, y in pairs:
        try:
            m[index[x]][index[y]] = True
        except KeyError as exc:
            raise UnknownLabel(exc.args[0]) from None
    return Topology(labels, transitive_closure(m))


def _same_ground(t1: Topology, t2: Topology) -> Topology:
    """Return ``t2`` aligned to ``t1``'s label order."""
    if set(t1.labels) != set(t2.labels):
        raise GroundMismatch(f"{sorted(t1.labels)} != {sorted(t2.labels)}")
    return t2.aligned_to(t1.labels)


# -- relations between topologies ----------------------------------------------------


def is_finer(t_fine: Topology, t: Topology) -> bool:
    """``T' ≺ T``: every ``x <=_{T'} y`` also holds in ``T``."""
    t = _same_ground(t_fine, t)
    return _finer(t_fine.leq, t.leq)


def _finer(a: Matrix, b: Matrix) -> bool:
    n = len(a)
    return all(b[i][j] for i in range(n) for j in range(n) if a[i][j])


def restrict(t: Topology, subset: Iterable[str]) -> Topology:
    """``T_{|Y}``; labels kept in ``t``'s order."""
    subset = set(subset)
    missing = subset - set(t.labels)
    if missing:
        raise NotASubset(f"{sorted(missing)} not in ground")
    order = [i for i, lab in enumerate(t.labels) if lab in subset]
    return t.reordered(order)


def _components(leq: Matrix) -> tuple[frozenset[int], ...]:
    n = len(leq)
    sym = transitive_closure([[leq[i][j] or leq[j][i] for j in range(n)] for i in range(n)])
    return _blocks(sym)


def _classes(leq: Matrix) -> tuple[frozenset[int], ...]:
    n = len(leq)
    return _blocks([[leq[i][j] and leq[j][i] for j in range(n)] for i in range(n)])


def _blocks(equiv) -> tuple[frozenset[int], ...]:
    seen = set()
    out = []
    for i in range(len(equiv)):
        if i in seen:
            continue
        block = frozenset(j for j in range(len(equiv)) if equiv[i][j])
        seen |= block
        out.append(block)
    return tuple(out)


def _to_labels(t: Topology, blocks) -> Partition:
    return frozenset(frozenset(t.labels[i] for i in b) for b in blocks)


def connected_components(t: Topology) -> Partition:
    """Components of the comparability graph of ``t``."""
    return _to_labels(t, _components(t.leq))


def equivalence_classes(t: Topology) -> Partition:
    """Classes of ``x ~ y`` (both ``x <= y`` and ``y <= x``)."""
    return _to_labels(t, _classes(t.leq))


def is_t0(t: Topology) -> bool:
    return all(len(b) == 1 for b in _classes(t.leq))


def _quotient(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return transitive_closure([[a[i][j] or b[j][i] for j in range(n)] for i in range(n)])


def quotient(t: Topology, t_fine: Topology) -> Topology:
    """``T/T'``: closure of ``x <=_T y or y <=_{T'} x``."""
    t_fine = _same_ground(t, t_fine)
    return Topology(t.labels, _quotient(t.leq, t_fine.leq))


def topology_product(t1: Topology, t2: Topology) -> Topology:
    """Disjoint union ``T1 T2``: block diagonal, no relation across blocks."""
    overlap = set(t1.labels) & set(t2.labels)
    if overlap:
        raise GroundOverlap(f"grounds share {sorted(overlap)}")
    n1, n2 = t1.n, t2.n
    rows = [row + (False,) * n2 for row in t1.leq]
    rows += [(False,) * n1 + row for row in t2.leq]
    return Topology(t1.labels + t2.labels, tuple(rows))


# -- the ⊙≺ relation ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _circle_finer(a: Matrix, b: Matrix) -> bool:
    if not _finer(a, b):
        return False
    comps = _components(a)
    for comp in comps:
        for i in comp:
            for j in comp:
                if a[i][j] != b[i][j]:
                    return False
    return set(_classes(_quotient(b, a))) == set(comps)


def is_circle_finer(t_fine: Topology, t: Topology) -> bool:
    """``T' ⊙≺ T``.

    The three conditions: ``T'`` is finer than ``T``; ``T'`` and ``T`` agree
    on every ``T'``-connected subset (it is enough to look at the
    ``T'``-components); and the ``T/T'`` equivalence classes are exactly the
    ``T'``-components.
    """
    t = _same_ground(t_fine, t)
    return _circle_finer(t_fine.leq, t.leq)


@lru_cache(maxsize=None)
def _circle_finer_set(b: Matrix) -> tuple[Matrix, ...]:
    from .enumeration import quasiorder_matrices

    return tuple(a for a in quasiorder_matrices(len(b)) if _finer(a, b) and _circle_finer(a, b))


def circle_finer_set(t: Topology) -> list[Topology]:
    """Every quasi-order ``T'`` on the ground of ``t`` with ``T' ⊙≺ T``."""
    return [Topology(t.labels, a) for a in _circle_finer_set(t.leq)]
