"""Formal sums of tensor words and the twisted-bialgebra maps on them.

Basis elements are :class:`TensorWord` objects: tuples of topological
quandles with a ``mode`` recording how their grounds fit together.

``external``
    grounds pairwise disjoint (Cauchy product), e.g. the output of ``delta``.
``internal``
    all grounds equal (Hadamard product), e.g. the output of ``gamma``.
``mixed``
    first ground is the union of the others, which are pairwise disjoint;
    the shape of ``QT_X ⊗ (QT ⊗ QT)_X``.
``paired``
    four factors ``(Y)(Y)(X∖Y)(X∖Y)``; the shape of ``(Γ⊗Γ)∘Δ``.

Coefficients are Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import GroundOverlap, NotASubquandleOfFirstFactor, ShapeMismatch
from .quandle import (
    Quandle,
    _closed,
    _complement_op,
    _sub_table,
    check_quandle,
    quandle_product,
    subquandle_indices,
)
from .topological import TopologicalQuandle, _violation, make_tq
from .topology import Topology, _circle_finer_set, _quotient, topology_product

EXTERNAL = "external"
INTERNAL = "internal"
MIXED = "mixed"
PAIRED = "paired"
MODES = (EXTERNAL, INTERNAL, MIXED, PAIRED)


def _check_shape(factors: Sequence[TopologicalQuandle], mode: str):
    grounds = [f.ground for f in factors]
    if mode == EXTERNAL:
        total = sum(len(g) for g in grounds)
        if len(frozenset().union(*grounds)) != total:
            raise ShapeMismatch("external word with overlapping grounds")
    elif mode == INTERNAL:
        if any(g != grounds[0] for g in grounds):
            raise ShapeMismatch("internal word with differing grounds")
    elif mode == MIXED:
        rest = grounds[1:]
        if sum(len(g) for g in rest) != len(grounds[0]) or frozenset().union(*rest) != grounds[0]:
            raise ShapeMismatch("mixed word: trailing grounds do not partition the first")
    elif mode == PAIRED:
        if len(grounds) != 4 or grounds[0] != grounds[1] or grounds[2] != grounds[3]:
            raise ShapeMismatch("paired word must look like (Y)(Y)(Z)(Z)")
        if grounds[0] & grounds[2]:
            raise ShapeMismatch("paired word with overlapping halves")
    else:
        raise ShapeMismatch(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class TensorWord:
    factors: tuple[TopologicalQuandle, ...]
    mode: str = EXTERNAL

    def __post_init__(self):
        factors = tuple(f.normalized() for f in self.factors)
        if not factors:
            raise ShapeMismatch("a tensor word needs at least one factor")
        _check_shape(factors, self.mode)
        object.__setattr__(self, "factors", factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i) -> TopologicalQuandle:
        return self.factors[i]

    @cached_property
    def sort_key(self) -> tuple:
        return (self.mode, len(self.factors), tuple(f.key for f in self.factors))

    def __lt__(self, other: "TensorWord"):
        return self.sort_key < other.sort_key


def word(*factors: TopologicalQuandle, mode: str = EXTERNAL) -> TensorWord:
    return TensorWord(tuple(factors), mode)


class FormalSum:
    """Finite integer combination of tensor words, zero terms dropped.

    Iteration yields ``(word, coefficient)`` in canonical order, so printing
    and serialisation are deterministic.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[TensorWord, int] | Iterable[tuple[TensorWord, int]] = ()):
        acc: dict[TensorWord, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def of(cls, w: TensorWord, coeff: int = 1) -> "FormalSum":
        return cls({w: coeff})

    @classmethod
    def from_words(cls, words: Iterable[TensorWord]) -> "FormalSum":
        return cls((w, 1) for w in words)

    def __iter__(self) -> Iterator[tuple[TensorWord, int]]:
        for w in sorted(self._terms, key=lambda w: w.sort_key):
            yield w, self._terms[w]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __contains__(self, w):
        return w in self._terms

    def coefficient(self, w: TensorWord) -> int:
        return self._terms.get(w, 0)

    def words(self) -> list[TensorWord]:
        return [w for w, _ in self]

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "FormalSum":
        return FormalSum({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __mul__(self, k: int) -> "FormalSum":
        return FormalSum({w: k * c for w, c in self._terms.items()})

    __rmul__ = __mul__

    def positive_part(self) -> "FormalSum":
        return FormalSum({w: c for w, c in self._terms.items() if c > 0})

    def map(self, f: Callable[[TensorWord], Union["FormalSum", TensorWord]]) -> "FormalSum":
        """Linear extension of ``f``."""
        return sum_map(f, self)

    def __repr__(self):
        if not self._terms:
            return "FormalSum(0)"
        return f"FormalSum({len(self._terms)} terms)"


BasisMap = Callable[[TensorWord], Union[FormalSum, TensorWord]]


def sum_map(f: BasisMap, s: FormalSum) -> FormalSum:
    acc: dict[TensorWord, int] = {}
    for w, c in s._terms.items():
        image = f(w)
        if isinstance(image, TensorWord):
            image = FormalSum.of(image)
        for w2, c2 in image._terms.items():
            acc[w2] = acc.get(w2, 0) + c * c2
    return FormalSum(acc)


def compose(*fs: BasisMap) -> Callable[[FormalSum], FormalSum]:
    """``compose(f, g)(s) = f(g(s))`` for linearly extended basis maps."""

    def run(s: FormalSum) -> FormalSum:
        for f in reversed(fs):
            s = sum_map(f, s)
        return s

    return run


FactorMap = Callable[[TopologicalQuandle], Union[FormalSum, TensorWord]]


def identity(tq: TopologicalQuandle) -> TensorWord:
    return TensorWord((tq,), EXTERNAL)


def tensor_map(maps: Sequence[FactorMap], mode: str) -> BasisMap:
    """``f_1 ⊗ ... ⊗ f_k`` acting factor-wise; output words get ``mode``."""

    def apply(w: TensorWord) -> FormalSum:
        if len(w) != len(maps):
            raise ShapeMismatch(f"{len(maps)} maps for a {len(w)}-factor word")
        images = []
        for f, tq in zip(maps, w.factors):
            img = f(tq)
            images.append(list(FormalSum.of(img) if isinstance(img, TensorWord) else img))
        acc: dict[TensorWord, int] = {}
        for choice in cartesian(*images):
            factors = tuple(tq for part, _ in choice for tq in part.factors)
            coeff = 1
            for _, c in choice:
                coeff *= c
            out = TensorWord(factors, mode)
            acc[out] = acc.get(out, 0) + coeff
        return FormalSum(acc)

    return apply


# -- basis maps -------------------------------------------------------------------------


def _make(q: Quandle, t: Topology) -> TopologicalQuandle:
    """A factor produced by one of the maps; fails loudly if incompatible."""
    return make_tq(check_quandle(q), t)


def delta(tq: TopologicalQuandle, include_trivial: bool = False) -> FormalSum:
    """External coproduct: ``Σ_Y (Y, T|Y, ◁) ⊗ (X∖Y, T|X∖Y, ◁^{X,Y})``."""
    q, t = tq.quandle, tq.topology
    acc = {}
    for ys in subquandle_indices(q, include_trivial):
        ys = frozenset(ys)
        inside = [i for i in range(q.n) if i in ys]
        outside = [i for i in range(q.n) if i not in ys]
        left = _sub_table(q, inside, lambda a, b: q.table[a][b])
        right = _sub_table(q, outside, _complement_op(q, ys))
        w = TensorWord(
            (
                _make(left, t.reordered(inside)),
                _make(right, t.reordered(outside)),
            ),
            EXTERNAL,
        )
        acc[w] = acc.get(w, 0) + 1
    return FormalSum(acc)


def gamma(tq: TopologicalQuandle) -> FormalSum:
    """Internal coproduct: ``Σ (X, T', ◁) ⊗ (X, T/T', ◁)`` over compatible ``T' ⊙≺ T``."""
    q, t = tq.quandle, tq.topology
    acc = {}
    for leq in _circle_finer_set(t.leq):
        if _violation(q.table, leq) is not None:
            continue
        left = TopologicalQuandle(q, Topology(q.labels, leq))
        right = _make(q, Topology(q.labels, _quotient(t.leq, leq)))
        w = TensorWord((left, right), INTERNAL)
        acc[w] = acc.get(w, 0) + 1
    return FormalSum(acc)


def product_m(a: TopologicalQuandle, b: TopologicalQuandle) -> TopologicalQuandle:
    """Disjoint union of the topologies and the quandles (trivial cross action)."""
    if a.ground & b.ground:
        raise GroundOverlap(f"grounds share {sorted(a.ground & b.ground)}")
    q = quandle_product(a.quandle, b.quandle)
    t = topology_product(a.topology, b.topology)
    tq = TopologicalQuandle(q, t)
    assert tq.is_compatible(), "product of topological quandles lost compatibility"
    return tq


def split_quandle(q: Quandle, subset: Iterable[str]) -> Quandle:
    """``◁`` on ``Y``, ``◁^{X,Y}`` on ``X∖Y``, and trivial action between them."""
    ys = frozenset(q.index(s) for s in subset)
    if not _closed(q.table, ys):
        raise NotASubquandleOfFirstFactor(
            f"{sorted(q.labels[i] for i in ys)} is not a subquandle of the first factor"
        )
    comp = _complement_op(q, ys)
    table = tuple(
        tuple(
            q.table[a][b] if a in ys and b in ys
            else comp(a, b) if a not in ys and b not in ys
            else a
            for b in range(q.n)
        )
        for a in range(q.n)
    )
    return Quandle(q.labels, table)


def xi(w: TensorWord) -> TensorWord:
    """Replace the first factor's operation by :func:`split_quandle` along ``Y``.

    ``w`` must be a mixed word ``(X) ⊗ (Y) ⊗ (X∖Y)``.  The topology of the
    first factor is left as it is, and its compatibility is not checked.
    """
    if w.mode != MIXED or len(w) != 3:
        raise ShapeMismatch("xi expects a mixed word (X)(Y)(X∖Y)")
    first, middle, last = w.factors
    q = split_quandle(first.quandle, middle.labels)
    return TensorWord((TopologicalQuandle(q, first.topology), middle, last), MIXED)


def m13(w: TensorWord) -> TensorWord:
    """``(Y)(Y)(X∖Y)(X∖Y) -> (X)(Y)(X∖Y)``, multiplying factors 1 and 3."""
    if w.mode != PAIRED or len(w) != 4:
        raise ShapeMismatch("m13 expects a paired 4-factor word")
    f1, f2, f3, f4 = w.factors
    return TensorWord((product_m(f1, f3), f2, f4), MIXED)


def m23(w: TensorWord) -> TensorWord:
    """``a1 ⊗ a2 ⊗ b1 ⊗ b2 -> m(a1, b1) ⊗ m(a2, b2)``.

    An external input gives an external word; a paired one (the shape of
    ``Γ(a) ⊗ Γ(b)``) gives an internal word.
    """
    if len(w) != 4 or w.mode not in (EXTERNAL, PAIRED):
        raise ShapeMismatch("m23 expects an external or paired 4-factor word")
    a1, a2, b1, b2 = w.factors
    mode = INTERNAL if w.mode == PAIRED else EXTERNAL
    return TensorWord((product_m(a1, b1), product_m(a2, b2)), mode)


def _tensor_sums(x: FormalSum, y: FormalSum, mode: str) -> FormalSum:
    return FormalSum(
        (TensorWord(wx.factors + wy.factors, mode), cx * cy) for wx, cx in x for wy, cy in y
    )


# -- identity checks -------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """Both sides of an identity evaluated on one input."""

    name: str
    lhs: FormalSum
    rhs: FormalSum

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.holds

    def diff(self) -> tuple[FormalSum, FormalSum]:
        """Terms only on the left, terms only on the right (with multiplicity)."""
        d = self.lhs - self.rhs
        return d.positive_part(), (-d).positive_part()


def check_coassoc_delta(tq: TopologicalQuandle, include_trivial: bool = True) -> CheckResult:
    d = lambda x: delta(x, include_trivial)  # noqa: E731
    start = delta(tq, include_trivial)
    lhs = sum_map(tensor_map([d, identity], EXTERNAL), start)
    rhs = sum_map(tensor_map([identity, d], EXTERNAL), start)
    return CheckResult("coassociativity of delta", lhs, rhs)


def check_coassoc_gamma(tq: TopologicalQuandle) -> CheckResult:
    start = gamma(tq)
    lhs = sum_map(tensor_map([gamma, identity], INTERNAL), start)
    rhs = sum_map(tensor_map([identity, gamma], INTERNAL), start)
    return CheckResult("coassociativity of gamma", lhs, rhs)


def check_compat_delta_m(
    a: TopologicalQuandle, b: TopologicalQuandle, include_trivial: bool = True
) -> CheckResult:
    lhs = delta(product_m(a, b), include_trivial)
    both = _tensor_sums(delta(a, include_trivial), delta(b, include_trivial), EXTERNAL)
    return CheckResult("delta after m", lhs, sum_map(m23, both))


def check_gamma_multiplicative(a: TopologicalQuandle, b: TopologicalQuandle) -> CheckResult:
    lhs = gamma(product_m(a, b))
    both = _tensor_sums(gamma(a), gamma(b), PAIRED)
    return CheckResult("gamma multiplicativity", lhs, sum_map(m23, both))


def cointeraction_sides(tq: TopologicalQuandle, include_trivial: bool = True):
    """``ξ∘(Id⊗Δ)∘Γ`` and ``m^{1,3}∘(Γ⊗Γ)∘Δ`` evaluated on ``tq``."""
    d = lambda x: delta(x, include_trivial)  # noqa: E731
    lhs = compose(xi, tensor_map([identity, d], MIXED), gamma_word)(FormalSum.of(TensorWord((tq,))))
    rhs = compose(m13, tensor_map([gamma, gamma], PAIRED))(delta(tq, include_trivial))
    return lhs, rhs


def check_cointeraction(tq: TopologicalQuandle, include_trivial: bool = True) -> CheckResult:
    lhs, rhs = cointeraction_sides(tq, include_trivial)
    return CheckResult("cointeraction", lhs, rhs)


def delta_word(w: TensorWord, include_trivial: bool = False) -> FormalSum:
    """Δ applied to a one-factor word."""
    if len(w) != 1:
        raise ShapeMismatch("delta acts on single-factor words")
    return delta(w.factors[0], include_trivial)


def gamma_word(w: TensorWord) -> FormalSum:
    if len(w) != 1:
        raise ShapeMismatch("gamma acts on single-factor words")
    return gamma(w.factors[0])

