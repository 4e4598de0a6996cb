from functools import lru_cache
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import ORDER3_MATRICES, mat
from topquandle.enumeration import (
    canonical_form,
    dedupe,
    enumerate_quandles,
    enumerate_quasiorders,
    enumerate_topological_quandles,
    quandle_tables,
    quasiorder_matrices,
)
from topquandle.errors import CapExceeded
from topquandle.quandle import Quandle, default_labels, relabel
from topquandle.topological import TopologicalQuandle
from topquandle.topology import Topology, validate_topology


# -- numpy oracles ---------------------------------------------------------------------------


def _sd_mask(t):
    """Rows of the batch ``t`` (shape M×n×n) that are self-distributive."""
    m, n, _ = t.shape
    mi = np.arange(m)[:, None, None, None]
    ks = np.arange(n)[None, None, None, :]
    left = t[mi, t[:, :, :, None], ks]
    right = t[mi, t[:, :, None, :], t[:, None, :, :]]
    return (left == right).reshape(m, -1).all(axis=1)


@lru_cache(maxsize=None)
def quandles_numpy_naive(n, chunk=1 << 20):
    """Filter every idempotent table (n^(n²-n) of them)."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    total = n ** len(off)
    found = []
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        t = np.zeros((len(codes), n, n), dtype=np.int8)
        for i in range(n):
            t[:, i, i] = i
        for pos, (i, j) in enumerate(off):
            t[:, i, j] = (codes // n ** pos) % n
        weight = (1 << t.astype(np.int64)).sum(axis=1)
        ok = (weight == (1 << n) - 1).all(axis=1)
        t = t[ok]
        if len(t):
            found.extend(map(lambda a: tuple(map(tuple, a.tolist())), t[_sd_mask(t)]))
    return tuple(found)


def quandles_numpy_columns(n, chunk=20000):
    """Filter every table whose columns are permutations fixing the diagonal."""
    cols = [np.array([p for p in permutations(range(n)) if p[j] == j], dtype=np.int8) for j in range(n)]
    k = len(cols[0])
    total = k ** n
    count = 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        t = np.empty((len(codes), n, n), dtype=np.int8)
        for j in range(n):
            t[:, :, j] = cols[j][(codes // k ** j) % k]
        count += int(_sd_mask(t).sum())
    return count


def quasiorders_numpy(n):
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    codes = np.arange(1 << len(off), dtype=np.int64)
    r = np.zeros((len(codes), n, n), dtype=bool)
    for i in range(n):
        r[:, i, i] = True
    for pos, (i, j) in enumerate(off):
        r[:, i, j] = (codes >> pos) & 1
    sq = np.einsum("mij,mjk->mik", r.astype(np.int32), r.astype(np.int32)) > 0
    return int((sq <= r).reshape(len(codes), -1).all(axis=1).sum())


# -- quandles -----------------------------------------------------------------------------------


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 1), (3, 5)])
def test_quandle_counts_small(n, count):
    assert len(quandle_tables(n)) == count
    if n:
        assert set(quandle_tables(n)) == set(oracles.quandles_by_filter(n))


def test_quandle_count_n4_against_full_filter():
    tables = quandles_numpy_naive(4)
    assert len(tables) == 36
    assert set(tables) == set(quandle_tables(4))


@pytest.mark.slow
def test_quandle_count_n5_against_column_filter():
    assert quandles_numpy_columns(5) == len(quandle_tables(5)) == 404


@pytest.mark.parametrize("n,classes", [(1, 1), (2, 1), (3, 3), (4, 7), (5, 22)])
def test_isomorphism_classes(n, classes):
    reps = dedupe(enumerate_quandles(n))
    assert len(reps) == classes
    assert oracles.iso_classes(quandle_tables(n)) == classes


def test_order3_classes_match_displayed_matrices():
    reps = dedupe(enumerate_quandles(3))
    forms = {canonical_form(q) for q in reps}
    shown = [canonical_form(mat(text)) for text in ORDER3_MATRICES]
    assert len(set(shown)) == 3 and set(shown) == forms


def test_emitted_quandles_validate():
    for n in range(1, 5):
        for q in enumerate_quandles(n):
            assert oracles.is_quandle(q.table)


def test_stream_is_deterministic():
    assert list(enumerate_quandles(4)) == list(enumerate_quandles(4))


def test_caps():
    with pytest.raises(CapExceeded):
        list(enumerate_quandles(7))
    with pytest.raises(CapExceeded):
        list(enumerate_quasiorders(6))
    with pytest.raises(CapExceeded):
        canonical_form(Quandle(default_labels(9), tuple(tuple(i for _ in range(9)) for i in range(9))))


# -- quasi-orders ---------------------------------------------------------------------------------


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 4), (3, 29), (4, 355)])
def test_quasiorder_counts(n, count):
    got = quasiorder_matrices(n)
    assert len(got) == len(set(got)) == count
    if n:
        assert set(got) == set(oracles.quasiorders_by_filter(n))


def test_quasiorder_count_n5_against_numpy_filter():
    assert len(quasiorder_matrices(5)) == quasiorders_numpy(5) == 6942


def test_emitted_topologies_validate():
    for t in enumerate_quasiorders(4):
        validate_topology(t.leq, t.labels)


# -- topological quandles -------------------------------------------------------------------------


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 46)])
def test_tq_counts_by_double_loop(n, count):
    expected = [
        (table, leq)
        for table in oracles.quandles_by_filter(n)
        for leq in oracles.quasiorders_by_filter(n)
        if oracles.compatible(table, leq)
    ]
    got = [(x.quandle.table, x.topology.leq) for x in enumerate_topological_quandles(n)]
    assert len(got) == len(expected) == count
    assert set(got) == set(expected)


def test_tq_count_n4():
    tables = quandles_numpy_naive(4)
    orders = oracles.quasiorders_by_filter(4)
    expected = sum(oracles.compatible(t, leq) for t in tables for leq in orders)
    assert len(list(enumerate_topological_quandles(4))) == expected == 1022


def test_trivial_quandle_pairs_with_every_order():
    triv = tuple(tuple(i for _ in range(3)) for i in range(3))
    paired = [x.topology.leq for x in enumerate_topological_quandles(3) if x.quandle.table == triv]
    assert len(paired) == 29


# -- canonical forms ---------------------------------------------------------------------------------


def _relabel_tq(x: TopologicalQuandle, names):
    sigma = dict(zip(names, x.labels))
    q = relabel(x.quandle, sigma)
    pos = [x.topology.index(sigma[b]) for b in q.labels]
    t = Topology(q.labels, tuple(tuple(x.topology.leq[i][j] for j in pos) for i in pos))
    return TopologicalQuandle(q, t)


tq_strategy = st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(enumerate_topological_quandles(n))))


@settings(max_examples=100, deadline=None)
@given(tq_strategy, st.permutations("wxyz"))
def test_canonical_form_is_relabel_invariant(x, names):
    y = _relabel_tq(x, names[: x.n])
    assert canonical_form(y) == canonical_form(x)
    assert canonical_form(y.quandle) == canonical_form(x.quandle)
    assert canonical_form(y.topology) == canonical_form(x.topology)


def test_canonical_form_separates_classes_n3():
    objs = list(enumerate_topological_quandles(3))
    for a in objs:
        for b in objs:
            related = any(
                _relabel_tq(a, p) == b for p in permutations(a.labels)
            )
            assert (canonical_form(a) == canonical_form(b)) == related


def test_dedupe_is_relabel_closed():
    reps = dedupe(enumerate_topological_quandles(3))
    forms = {canonical_form(r) for r in reps}
    for x in enumerate_topological_quandles(3):
        for p in permutations(x.labels):
            assert canonical_form(_relabel_tq(x, p)) in forms


def test_kinds_do_not_collide():
    q = mat("a\n")
    t = Topology(("a",), ((True,),))
    assert len({canonical_form(q), canonical_form(t), canonical_form(TopologicalQuandle(q, t))}) == 3
