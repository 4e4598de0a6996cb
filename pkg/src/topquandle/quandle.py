"""Finite quandles stored as dense operation tables.

A quandle on labels ``x_0 .. x_{n-1}`` is kept as ``table[i][j] = index of
x_i ◁ x_j``, i.e. row ``i`` column ``j`` of the Ho–Nelson matrix.  Labels
only matter at the I/O boundary; every algorithm below works on indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    AxiomViolation,
    GroundOverlap,
    LabelInY,
    MalformedInput,
    NotABijection,
    NotAGroup,
    NotASubquandle,
    UnknownLabel,
)

Table = tuple[tuple[int, ...], ...]


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"x{i}" for i in range(n))


def _check_labels(labels: Sequence[str]) -> tuple[str, ...]:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise MalformedInput(f"labels are not distinct: {labels}")
    return labels


def _check_table(table, n: int) -> Table:
    rows = tuple(tuple(int(v) for v in row) for row in table)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MalformedInput(f"table is not {n}x{n}")
    for r in rows:
        for v in r:
            if not 0 <= v < n:
                raise MalformedInput(f"table entry {v} out of range 0..{n - 1}")
    return rows


@dataclass(frozen=True, eq=False)
class Quandle:
    """Operation table over an ordered label set.

    The constructor only checks shape; use :func:`validate_quandle` to
    check the axioms.  Equality and hashing ignore the order in which labels
    are listed: two objects are equal when they are the same labelled
    structure.
    """

    labels: tuple[str, ...]
    table: Table

    def __post_init__(self):
        labels = _check_labels(self.labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", _check_table(self.table, len(labels)))

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

    def op(self, a: str, b: str) -> str:
        """Return ``a ◁ b`` on labels."""
        return self.labels[self.table[self.index(a)][self.index(b)]]

    @cached_property
    def key(self) -> tuple:
        q = self.normalized()
        return (q.labels, q.table)

    def normalized(self) -> "Quandle":
        """The same structure with labels listed in sorted order."""
        order = sorted(range(self.n), key=lambda i: self.labels[i])
        if order == list(range(self.n)):
            return self
        return _permute(self, order)

    def __eq__(self, other):
        if not isinstance(other, Quandle):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        rows = "/".join(" ".join(self.labels[v] for v in row) for row in self.table)
        return f"Quandle({rows})"


def _permute(q: Quandle, order: Sequence[int]) -> Quandle:
    """Re-list ``q`` so that new position ``p`` holds old element ``order[p]``."""
    pos = {old: new for new, old in enumerate(order)}
    table = tuple(
        tuple(pos[q.table[i][j]] for j in order) for i in order
    )
    return Quandle(tuple(q.labels[i] for i in order), table)


def empty_quandle() -> Quandle:
    return Quandle((), ())


def trivial_quandle(labels: Sequence[str]) -> Quandle:
    labels = tuple(labels)
    n = len(labels)
    return Quandle(labels, tuple(tuple(i for _ in range(n)) for i in range(n)))


# -- axioms -------------------------------------------------------------------


def find_axiom_violation(table: Table) -> AxiomViolation | None:
    """Return the first violated axiom (checked in the order i, ii, iii)."""
    n = len(table)
    for i in range(n):
        if table[i][i] != i:
            return AxiomViolation("Idempotency", (i, i, i))
    for j in range(n):
        seen = {}
        for i in range(n):
            v = table[i][j]
            if v in seen:
                return AxiomViolation("RightBijectivity", (seen[v], i, j))
            seen[v] = i
    for i in range(n):
        row_i = table[i]
        for j in range(n):
            row_ij = table[row_i[j]]
            row_j = table[j]
            for k in range(n):
                if row_ij[k] != table[row_i[k]][row_j[k]]:
                    return AxiomViolation("SelfDistributivity", (i, j, k))
    return None


def is_quandle_table(table: Table) -> bool:
    return find_axiom_violation(table) is None


def validate_quandle(table, labels: Sequence[str]) -> Quandle:
    """Build a quandle, raising :class:`AxiomViolation` if any axiom fails."""
    q = Quandle(tuple(labels), table)
    err = find_axiom_violation(q.table)
    if err is not None:
        raise AxiomViolation(err.which, err.witness, q.labels)
    return q


def check_quandle(q: Quandle) -> Quandle:
    err = find_axiom_violation(q.table)
    if err is not None:
        raise AxiomViolation(err.which, err.witness, q.labels)
    return q


# -- translations --------------------------------------------------------------


def right_translation(q: Quandle, b: str) -> dict[str, str]:
    """``R_b``: a ↦ a ◁ b.  A permutation of the labels."""
    j = q.index(b)
    return {q.labels[i]: q.labels[q.table[i][j]] for i in range(q.n)}


def left_translation(q: Quandle, a: str) -> dict[str, str]:
    """``L_a``: b ↦ a ◁ b.  Not a bijection in general."""
    i = q.index(a)
    return {q.labels[j]: q.labels[q.table[i][j]] for j in range(q.n)}


def right_perm(q: Quandle, j: int) -> tuple[int, ...]:
    """Index form of ``R_{x_j}``."""
    return tuple(row[j] for row in q.table)


def perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = p[k]
            length += 1
        order = math.lcm(order, length)
    return order


def perm_compose(p: Sequence[int], r: Sequence[int]) -> tuple[int, ...]:
    """``p ∘ r``."""
    return tuple(p[x] for x in r)


def perm_power(p: Sequence[int], k: int) -> tuple[int, ...]:
    result = tuple(range(len(p)))
    if k < 0:
        inv = [0] * len(p)
        for i, v in enumerate(p):
            inv[v] = i
        p, k = inv, -k
    for _ in range(k):
        result = tuple(p[x] for x in result)
    return result


# -- subquandles ----------------------------------------------------------------


def _indices(q: Quandle, subset: Iterable[str]) -> frozenset[int]:
    return frozenset(q.index(s) for s in subset)


def _closed(table: Table, idx: Iterable[int]) -> bool:
    idx = tuple(idx)
    members = set(idx)
    return all(table[a][b] in members for a in idx for b in idx)


def is_subquandle(q: Quandle, subset: Iterable[str]) -> bool:
    return _closed(q.table, _indices(q, subset))


def subquandle_indices(q: Quandle, include_trivial: bool = False) -> list[tuple[int, ...]]:
    """All ◁-closed index subsets, by size then lexicographically."""
    n = q.n
    out = []
    for r in range(n + 1):
        if not include_trivial and r in (0, n):
            continue
        for ys in combinations(range(n), r):
            if _closed(q.table, ys):
                out.append(ys)
    return out


def subquandles(q: Quandle, include_trivial: bool = False) -> list[frozenset[str]]:
    """All ◁-closed label subsets; ∅ and the whole set only if ``include_trivial``."""
    return [frozenset(q.labels[i] for i in ys) for ys in subquandle_indices(q, include_trivial)]


def restrict_quandle(q: Quandle, subset: Iterable[str]) -> Quandle:
    """The subquandle on ``subset`` (labels kept in ``q``'s order)."""
    idx = _indices(q, subset)
    if not _closed(q.table, idx):
        raise NotASubquandle(f"{sorted(q.labels[i] for i in idx)} is not closed under ◁")
    order = sorted(idx)
    return _sub_table(q, order, lambda a, b: q.table[a][b])


def _sub_table(q: Quandle, order: Sequence[int], op) -> Quandle:
    pos = {old: new for new, old in enumerate(order)}
    table = tuple(tuple(pos[op(a, b)] for b in order) for a in order)
    return Quandle(tuple(q.labels[i] for i in order), table)


# -- complement quandle ----------------------------------------------------------


def _alpha(q: Quandle, ys: Iterable[int], j: int) -> int:
    ys = tuple(ys)
    perm = right_perm(q, j)
    bound = perm_order(perm)
    current = perm
    for k in range(1, bound + 1):
        if all(current[y] == y for y in ys):
            return k
        current = perm_compose(perm, current)
    raise AssertionError("no power of R_b fixes Y pointwise within the order of R_b")


def alpha(q: Quandle, subset: Iterable[str], b: str) -> int:
    """Least ``k >= 1`` such that ``R_b^k`` fixes every element of ``subset``."""
    idx = _indices(q, subset)
    if not _closed(q.table, idx):
        raise NotASubquandle(f"{sorted(q.labels[i] for i in idx)} is not closed under ◁")
    j = q.index(b)
    if j in idx:
        raise LabelInY(f"{b!r} lies in Y")
    return _alpha(q, idx, j)


def _complement_op(q: Quandle, ys: frozenset[int]):
    alphas = {j: _alpha(q, ys, j) for j in range(q.n) if j not in ys}
    table = q.table

    def op(a, b):
        for _ in range(alphas[b]):
            a = table[a][b]
        return a

    return op


def complement_quandle(q: Quandle, subset: Iterable[str], check: bool = True) -> Quandle:
    """The quandle ``(X∖Y, ◁^{X,Y})`` with ``a ◁^{X,Y} b = R_b^{α(b)}(a)``."""
    ys = _indices(q, subset)
    if not _closed(q.table, ys):
        raise NotASubquandle(f"{sorted(q.labels[i] for i in ys)} is not closed under ◁")
    order = [i for i in range(q.n) if i not in ys]
    result = _sub_table(q, order, _complement_op(q, ys))
    return check_quandle(result) if check else result


# -- product and relabelling -------------------------------------------------------


def quandle_product(q1: Quandle, q2: Quandle, check: bool = True) -> Quandle:
    """Disjoint union with trivial action across the two blocks.

    ``◁`` agrees with ``q1`` on ``X1`` and with ``q2`` on ``X2``; for ``a``
    and ``b`` in different blocks ``a ◁ b = a``.  Labels of the result are
    those of ``q1`` followed by those of ``q2``.  With ``check=False`` the
    operands are used as raw tables and nothing is validated.
    """
    overlap = set(q1.labels) & set(q2.labels)
    if overlap:
        raise GroundOverlap(f"grounds share {sorted(overlap)}")
    n1, n2 = q1.n, q2.n
    rows = [row + tuple([i] * n2) for i, row in enumerate(q1.table)]
    rows += [tuple([n1 + i] * n1) + tuple(n1 + v for v in row) for i, row in enumerate(q2.table)]
    result = Quandle(q1.labels + q2.labels, tuple(rows))
    return check_quandle(result) if check else result


def relabel(q: Quandle, sigma: Mapping[str, str]) -> Quandle:
    """Transport ``q`` along a bijection ``sigma: B -> A`` (new label -> old label).

    The result lives on ``B`` with ``b ◁' b' = σ⁻¹(σ(b) ◁ σ(b'))``.
    """
    if sorted(sigma.values()) != sorted(q.labels) or len(set(sigma.values())) != len(sigma):
        raise NotABijection("sigma is not a bijection onto the ground set")
    new_labels = tuple(sigma)
    old_pos = [q.index(sigma[b]) for b in new_labels]
    inv = {old: new for new, old in enumerate(old_pos)}
    table = tuple(
        tuple(inv[q.table[old_pos[i]][old_pos[j]]] for j in range(len(new_labels)))
        for i in range(len(new_labels))
    )
    return Quandle(new_labels, table)


# -- quandles from groups --------------------------------------------------------


def validate_group(cayley) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Check a Cayley table (index 0 is the identity); return it and the inverse map."""
    try:
        g = _check_table(cayley, len(cayley))
    except MalformedInput as exc:
        raise NotAGroup(str(exc)) from None
    n = len(g)
    if n == 0:
        raise NotAGroup("empty table")
    if any(g[0][x] != x or g[x][0] != x for x in range(n)):
        raise NotAGroup("element 0 is not a two-sided identity")
    inverse = []
    for x in range(n):
        inv = [y for y in range(n) if g[x][y] == 0 and g[y][x] == 0]
        if not inv:
            raise NotAGroup(f"element {x} has no inverse")
        inverse.append(inv[0])
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if g[g[x][y]][z] != g[x][g[y][z]]:
                    raise NotAGroup(f"not associative at {(x, y, z)}")
    return g, tuple(inverse)


def conjugation_quandle(cayley, labels: Sequence[str] | None = None) -> Quandle:
    """``x ◁ y = y⁻¹ x y``."""
    g, inv = validate_group(cayley)
    n = len(g)
    table = tuple(tuple(g[g[inv[y]][x]][y] for y in range(n)) for x in range(n))
    return validate_quandle(table, labels or default_labels(n))


def core_quandle(cayley, labels: Sequence[str] | None = None) -> Quandle:
    """``x ◁ y = y x⁻¹ y``.

    Written the other way round, ``x y⁻¹ x`` is not right-invertible in
    general (on Z/2 it gives ``x ◁ y = y``).
    """
    g, inv = validate_group(cayley)
    n = len(g)
    table = tuple(tuple(g[g[y][inv[x]]][y] for y in range(n)) for x in range(n))
    return validate_quandle(table, labels or default_labels(n))


def cyclic_group(n: int) -> Table:
    return tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
