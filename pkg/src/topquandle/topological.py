"""Topological quandles: a quandle plus a compatible quasi-order."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import GroundMismatch, NotCircleFiner, NotCompatible
from .quandle import Quandle, empty_quandle, restrict_quandle
from .topology import (
    Matrix,
    Topology,
    _circle_finer,
    discrete,
    quotient,
    restrict,
)


def _align(q: Quandle, t: Topology) -> Topology:
    if set(q.labels) != set(t.labels):
        raise GroundMismatch(f"{sorted(q.labels)} != {sorted(t.labels)}")
    return t.aligned_to(q.labels)


def _violation(table, leq: Matrix):
    n = len(table)
    pairs = [(i, j) for i in range(n) for j in range(n) if leq[i][j]]
    for x, x2 in pairs:
        row, row2 = table[x], table[x2]
        for y, y2 in pairs:
            if not leq[row[y]][row2[y2]]:
                return (x, x2, y, y2)
    return None


def compatibility_witness(q: Quandle, t: Topology):
    """Smallest ``(x, x', y, y')`` breaking monotonicity, as labels, or ``None``."""
    t = _align(q, t)
    w = _violation(q.table, t.leq)
    return None if w is None else tuple(q.labels[i] for i in w)


def is_compatible(q: Quandle, t: Topology) -> bool:
    """``x <= x'`` and ``y <= y'`` imply ``x◁y <= x'◁y'``."""
    t = _align(q, t)
    return _violation(q.table, t.leq) is None


def _monotone(f, leq: Matrix) -> bool:
    n = len(leq)
    return all(leq[f[i]][f[j]] for i in range(n) for j in range(n) if leq[i][j])


def is_compatible_via_translations(q: Quandle, t: Topology) -> bool:
    """Every ``R_x`` is a homeomorphism and every ``L_x`` is continuous."""
    t = _align(q, t)
    n = q.n
    leq = t.leq
    for x in range(n):
        r = [q.table[i][x] for i in range(n)]
        r_inv = [0] * n
        for i, v in enumerate(r):
            r_inv[v] = i
        if not (_monotone(r, leq) and _monotone(r_inv, leq)):
            return False
        if not _monotone(q.table[x], leq):
            return False
    return True


@dataclass(frozen=True, eq=False)
class TopologicalQuandle:
    """A quandle and a topology on the same labels.

    The topology is stored aligned to the quandle's label order.  The
    constructor does not test compatibility (maps such as ``xi`` may produce
    incompatible pairs on purpose); :func:`make_tq` does.
    """

    quandle: Quandle
    topology: Topology

    def __post_init__(self):
        object.__setattr__(self, "topology", _align(self.quandle, self.topology))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.quandle.labels

    @property
    def n(self) -> int:
        return self.quandle.n

    @property
    def ground(self) -> frozenset[str]:
        return frozenset(self.quandle.labels)

    def normalized(self) -> "TopologicalQuandle":
        q = self.quandle.normalized()
        if q is self.quandle:
            return self
        return TopologicalQuandle(q, self.topology)

    @cached_property
    def key(self) -> tuple:
        q = self.normalized()
        return (q.labels, q.topology.leq, q.quandle.table)

    def is_compatible(self) -> bool:
        return _violation(self.quandle.table, self.topology.leq) is None

    def __eq__(self, other):
        if not isinstance(other, TopologicalQuandle):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"TQ({self.quandle!r}, {self.topology!r})"


def make_tq(q: Quandle, t: Topology | None = None) -> TopologicalQuandle:
    """Pair ``q`` with ``t`` (discrete if omitted), rejecting incompatible pairs."""
    if t is None:
        t = discrete(q.labels)
    t = _align(q, t)
    w = _violation(q.table, t.leq)
    if w is not None:
        raise NotCompatible(tuple(q.labels[i] for i in w))
    return TopologicalQuandle(q, t)


def empty_tq() -> TopologicalQuandle:
    return TopologicalQuandle(empty_quandle(), Topology((), ()))


def restrict_tq(tq: TopologicalQuandle, subset: Iterable[str]) -> TopologicalQuandle:
    """``(Y, T_{|Y}, ◁)`` for a subquandle ``Y``; compatibility is rechecked."""
    subset = frozenset(subset)
    return make_tq(restrict_quandle(tq.quandle, subset), restrict(tq.topology, subset))


def _require_circle_finer(t: Topology, t_fine: Topology) -> Topology:
    t_fine = t_fine.aligned_to(t.labels)
    if not _circle_finer(t_fine.leq, t.leq):
        raise NotCircleFiner("T' is not ⊙≺ T")
    return t_fine


def kebab_forward(q: Quandle, t: Topology, t_fine: Topology) -> bool:
    """Whether ``T/T'`` is ``q``-compatible (expected whenever ``T`` and ``T'`` are)."""
    t = _align(q, t)
    t_fine = _require_circle_finer(t, t_fine)
    return is_compatible(q, quotient(t, t_fine))


def kebab_backward(q: Quandle, t: Topology, t_fine: Topology) -> bool:
    """Whether ``T'`` is ``q``-compatible (expected whenever ``T`` and ``T/T'`` are)."""
    t = _align(q, t)
    t_fine = _require_circle_finer(t, t_fine)
    return is_compatible(q, t_fine)
