import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import ORDER4, THIRD3, TQ3_RELATIONS, TQ4_RELATIONS, mat
from topquandle.enumeration import enumerate_quandles, quasiorder_matrices, tq_pairs
from topquandle.errors import GroundMismatch, NotCircleFiner, NotCompatible
from topquandle.quandle import default_labels, relabel, trivial_quandle
from topquandle.topological import (
    compatibility_witness,
    is_compatible,
    is_compatible_via_translations,
    kebab_backward,
    kebab_forward,
    make_tq,
)
from topquandle.topology import Topology, discrete, from_relations, indiscrete, quotient
from topquandle.verify import sweep_kebab


def test_trivial_quandle_compatible_with_everything():
    labels = default_labels(3)
    q = trivial_quandle(labels)
    assert all(is_compatible(q, Topology(labels, leq)) for leq in quasiorder_matrices(3))


def test_discrete_compatible_with_every_quandle():
    for n in (1, 2, 3, 4):
        for q in enumerate_quandles(n):
            assert is_compatible(q, discrete(q.labels))


def test_worked_examples_construct():
    q3 = mat(THIRD3)
    t3 = from_relations(q3.labels, TQ3_RELATIONS)
    assert is_compatible(q3, t3) and is_compatible_via_translations(q3, t3)
    make_tq(q3, t3)
    q4 = mat(ORDER4)
    make_tq(q4, from_relations(q4.labels, TQ4_RELATIONS))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_two_characterisations_agree_with_naive(n):
    labels = default_labels(n)
    for q in enumerate_quandles(n):
        for leq in quasiorder_matrices(n):
            t = Topology(labels, leq)
            expected = oracles.compatible(q.table, leq)
            assert is_compatible(q, t) == expected
            assert is_compatible_via_translations(q, t) == expected


def test_incompatible_pair_has_smallest_witness():
    labels = default_labels(3)
    found = None
    for q in enumerate_quandles(3):
        for leq in quasiorder_matrices(3):
            if not oracles.compatible(q.table, leq):
                found = q, Topology(labels, leq)
                break
        if found:
            break
    q, t = found
    w = compatibility_witness(q, t)
    x, x2, y, y2 = (q.index(v) for v in w)
    leq = t.leq
    assert leq[x][x2] and leq[y][y2] and not leq[q.table[x][y]][q.table[x2][y2]]
    # nothing lexicographically smaller violates monotonicity
    for cand in sorted(
        (a, b, c, d)
        for a in range(3) for b in range(3) for c in range(3) for d in range(3)
        if (a, b, c, d) < (x, x2, y, y2)
    ):
        a, b, c, d = cand
        assert not (leq[a][b] and leq[c][d] and not leq[q.table[a][c]][q.table[b][d]])
    with pytest.raises(NotCompatible) as exc:
        make_tq(q, t)
    assert exc.value.witness == w


def test_ground_mismatch():
    with pytest.raises(GroundMismatch):
        is_compatible(mat(THIRD3), discrete(("x", "y", "z")))


def test_kebab_helpers(tq3):
    q, t = tq3.quandle, tq3.topology
    comps = from_relations(q.labels, [("b", "c"), ("c", "b")])
    for tf in (t, comps):
        assert kebab_forward(q, t, tf)
        assert kebab_backward(q, t, tf)
    with pytest.raises(NotCircleFiner):
        kebab_forward(q, t, indiscrete(q.labels))


def test_kebab_sweep_up_to_three():
    forward, backward = sweep_kebab(3)
    assert forward.passed and backward.passed
    assert forward.cases > 0 and backward.cases > 0


def test_kebab_premises_are_not_vacuous():
    # somewhere the quotient is compatible although it differs from T
    q = mat(THIRD3)
    t = from_relations(q.labels, TQ3_RELATIONS)
    assert quotient(t, t) != t and is_compatible(q, quotient(t, t))


pairs3 = st.sampled_from(tq_pairs(3))


@settings(max_examples=80, deadline=None)
@given(pairs3, st.permutations("xyz"))
def test_compatibility_survives_relabelling(pair, names):
    table, leq = pair
    labels = default_labels(3)
    q = mat("\n".join(" ".join(labels[v] for v in row) for row in table))
    t = Topology(labels, leq)
    sigma = dict(zip(names, labels))
    q2 = relabel(q, sigma)
    inv = {old: new for new, old in sigma.items()}
    t2 = from_relations(q2.labels, [(inv[a], inv[b]) for a in labels for b in labels if t.le(a, b)])
    assert is_compatible(q2, t2)
