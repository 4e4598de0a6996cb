"""Exhaustive verification sweeps over small topological quandles."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from .formats import render_sum
from .enumeration import enumerate_quandles, enumerate_topological_quandles, quasiorder_matrices
from .quandle import (
    Quandle,
    _alpha,
    _complement_op,
    _sub_table,
    default_labels,
    perm_compose,
    perm_order,
    perm_power,
    right_perm,
    subquandle_indices,
)
from .species import (
    check_coassoc_delta,
    check_coassoc_gamma,
    check_cointeraction,
    check_compat_delta_m,
    check_gamma_multiplicative,
)
from .topological import TopologicalQuandle, _violation
from .topology import _circle_finer, _circle_finer_set, _quotient

log = logging.getLogger(__name__)


@dataclass
class SweepResult:
    name: str
    max_n: int
    cases: int = 0
    failures: int = 0
    counterexample: object = None
    mode: str = "exhaustive"
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict}  {self.name:<34} n<={self.max_n}  cases={self.cases:<7} "
            f"failures={self.failures:<6} mode={self.mode}  {self.seconds:.1f}s"
        )


# -- case generators -----------------------------------------------------------------


def all_tqs(max_n: int, min_n: int = 1) -> Iterator[TopologicalQuandle]:
    for n in range(min_n, max_n + 1):
        yield from enumerate_topological_quandles(n)


def tq_pairs_on_splits(max_n: int) -> Iterator[tuple[TopologicalQuandle, TopologicalQuandle]]:
    """Every ``(A, B)`` with disjoint grounds splitting ``default_labels(N)``, ``N <= max_n``."""
    for total in range(1, max_n + 1):
        labels = default_labels(total)
        for n1 in range(0, total + 1):
            for left in combinations(labels, n1):
                right = tuple(x for x in labels if x not in left)
                for a in enumerate_topological_quandles(n1, left):
                    for b in enumerate_topological_quandles(total - n1, right):
                        yield a, b


# -- sweeps ------------------------------------------------------------------------------


def _run(name: str, max_n: int, cases, check: Callable, jobs: int = 1, explain=None) -> SweepResult:
    res = SweepResult(name, max_n)
    start = time.perf_counter()
    cases = list(cases)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            verdicts = list(pool.map(check, cases, chunksize=64))
    else:
        verdicts = [check(c) for c in cases]
    for case, ok in zip(cases, verdicts):
        res.cases += 1
        if not ok:
            res.failures += 1
            if res.counterexample is None:
                res.counterexample = case
    if res.counterexample is not None and explain is not None:
        res.details["diff"] = explain(res.counterexample)
    res.seconds = time.perf_counter() - start
    log.info(res.line())
    return res


def _explain(check: Callable):
    def explain(case) -> str:
        args = case if isinstance(case, tuple) else (case,)
        only_lhs, only_rhs = check(*args).diff()
        return (
            "terms only on the left:\n" + render_sum(only_lhs)
            + "terms only on the right:\n" + render_sum(only_rhs)
        )

    return explain


def _coassoc_delta(tq):
    return check_coassoc_delta(tq, True).holds


def _coassoc_gamma(tq):
    return check_coassoc_gamma(tq).holds


def _delta_m(pair):
    return check_compat_delta_m(*pair, include_trivial=True).holds


def _gamma_m(pair):
    return check_gamma_multiplicative(*pair).holds


def _cointeraction(tq):
    return check_cointeraction(tq, True).holds


def sweep_coassoc_delta(max_n: int = 4, jobs: int = 1) -> SweepResult:
    return _run("coassociativity of delta", max_n, all_tqs(max_n), _coassoc_delta, jobs, _explain(check_coassoc_delta))


def sweep_coassoc_gamma(max_n: int = 4, jobs: int = 1) -> SweepResult:
    return _run("coassociativity of gamma", max_n, all_tqs(max_n), _coassoc_gamma, jobs, _explain(check_coassoc_gamma))


def sweep_delta_m(max_n: int = 4, jobs: int = 1) -> SweepResult:
    return _run("delta o m = m23 o (delta x delta)", max_n, tq_pairs_on_splits(max_n), _delta_m, jobs, _explain(check_compat_delta_m))


def sweep_gamma_m(max_n: int = 4, jobs: int = 1) -> SweepResult:
    return _run("gamma multiplicativity", max_n, tq_pairs_on_splits(max_n), _gamma_m, jobs, _explain(check_gamma_multiplicative))


def sweep_cointeraction(max_n: int = 4, jobs: int = 1) -> SweepResult:
    return _run("cointeraction", max_n, all_tqs(max_n), _cointeraction, jobs, _explain(check_cointeraction))


def kebab_triples(max_n: int):
    """``(table, T, T')`` for every quandle, quasi-order T and ``T' ⊙≺ T``."""
    from .enumeration import quandle_tables

    for n in range(1, max_n + 1):
        for table in quandle_tables(n):
            for t in quasiorder_matrices(n):
                for tf in _circle_finer_set(t):
                    yield table, t, tf


def sweep_kebab(max_n: int = 4) -> tuple[SweepResult, SweepResult]:
    """Both implications, over every triple; premises decide which cases count."""
    forward = SweepResult("kebab part 1 (T, T' => T/T')", max_n)
    backward = SweepResult("kebab part 2 (T, T/T' => T')", max_n)
    start = time.perf_counter()
    for table, t, tf in kebab_triples(max_n):
        c_t = _violation(table, t) is None
        if not c_t:
            continue
        c_tf = _violation(table, tf) is None
        c_q = _violation(table, _quotient(t, tf)) is None
        if c_tf:
            forward.cases += 1
            if not c_q:
                forward.failures += 1
                forward.counterexample = forward.counterexample or (table, t, tf)
        if c_q:
            backward.cases += 1
            if not c_tf:
                backward.failures += 1
                backward.counterexample = backward.counterexample or (table, t, tf)
    forward.seconds = backward.seconds = time.perf_counter() - start
    return forward, backward


def sweep_sandwich(max_n: int = 4) -> SweepResult:
    """``T' ↦ T'/T''`` maps ``{T' : T'' ⊙≺ T' ⊙≺ T}`` bijectively onto ``{U : U ⊙≺ T/T''}``."""
    res = SweepResult("sandwich bijection", max_n)
    start = time.perf_counter()
    for n in range(1, max_n + 1):
        orders = quasiorder_matrices(n)
        for t in orders:
            for t2 in _circle_finer_set(t):
                domain = [tp for tp in _circle_finer_set(t) if _circle_finer(t2, tp)]
                image = [_quotient(tp, t2) for tp in domain]
                target = set(_circle_finer_set(_quotient(t, t2)))
                res.cases += 1
                injective = len(set(image)) == len(image)
                if not (injective and set(image) == target):
                    res.failures += 1
                    res.counterexample = res.counterexample or (t, t2)
                res.details["pairs_in_domain"] = res.details.get("pairs_in_domain", 0) + len(domain)
    res.seconds = time.perf_counter() - start
    return res


def commutation_holds(q: Quandle) -> bool:
    """``R_c^n ∘ R_b^m = R_{R_c^n(b)}^m ∘ R_c^n`` for ``1 <= n, m <= 2·(order bound)``."""
    perms = [right_perm(q, j) for j in range(q.n)]
    bound = 2 * max((perm_order(p) for p in perms), default=1)
    for c in range(q.n):
        for b in range(q.n):
            for k in range(1, bound + 1):
                rc_k = perm_power(perms[c], k)
                moved = rc_k[b]
                for m in range(1, bound + 1):
                    lhs = perm_compose(rc_k, perm_power(perms[b], m))
                    rhs = perm_compose(perm_power(perms[moved], m), rc_k)
                    if lhs != rhs:
                        return False
    return True


def alpha_invariance_holds(q: Quandle) -> bool:
    """``α(b) = α(R_c^{α(c)}(b))`` for every subquandle ``Y`` and ``b, c ∉ Y``."""
    for ys in subquandle_indices(q, include_trivial=True):
        if len(ys) == q.n:
            continue
        outside = [i for i in range(q.n) if i not in ys]
        alph = {j: _alpha(q, ys, j) for j in outside}
        for c in outside:
            rc = perm_power(right_perm(q, c), alph[c])
            for b in outside:
                if alph[b] != alph[rc[b]]:
                    return False
    return True


def nesting_coherence_holds(q: Quandle) -> bool:
    """``◁^{Y,Z} = ◁^{X,Z}`` on ``Y∖Z`` and ``◁^{X,Y} = ◁^{X∖Z, Y∖Z}``."""
    n = q.n
    for ys in subquandle_indices(q, True):
        sub_y = _sub_table(q, list(ys), lambda a, b: q.table[a][b])
        comp_xy = _sub_table(q, [i for i in range(n) if i not in ys], _complement_op(q, frozenset(ys)))
        for zl in subquandle_indices(sub_y, True):
            zs = frozenset(ys[i] for i in zl)
            y_minus_z = [i for i in ys if i not in zs]
            op_xz = _complement_op(q, zs)
            in_y = _sub_table(sub_y, [i for i in range(len(ys)) if i not in zl],
                              _complement_op(sub_y, frozenset(zl)))
            by_x = _sub_table(q, y_minus_z, op_xz)
            if in_y.key != by_x.key:
                return False
            rest = [i for i in range(n) if i not in zs]
            x_minus_z = _sub_table(q, rest, op_xz)
            u = frozenset(x_minus_z.index(q.labels[i]) for i in y_minus_z)
            nested = _sub_table(
                x_minus_z, [i for i in range(x_minus_z.n) if i not in u], _complement_op(x_minus_z, u)
            )
            if nested.key != comp_xy.key:
                return False
    return True


def sweep_structural(max_n: int = 5) -> list[SweepResult]:
    results = []
    for name, fn in (
        ("commutation lemma", commutation_holds),
        ("alpha invariance", alpha_invariance_holds),
        ("nesting coherence", nesting_coherence_holds),
    ):
        cases = (q for n in range(1, max_n + 1) for q in enumerate_quandles(n))
        results.append(_run(name, max_n, cases, fn))
    return results


def run_all(max_n: int = 4, jobs: int = 1, structural_n: int | None = None) -> list[SweepResult]:
    """The five identity sweeps, both Kebab implications and the sandwich bijection."""
    results = [
        sweep_coassoc_delta(max_n, jobs),
        sweep_coassoc_gamma(max_n, jobs),
        sweep_delta_m(max_n, jobs),
        sweep_gamma_m(max_n, jobs),
        sweep_cointeraction(max_n, jobs),
    ]
    results.extend(sweep_kebab(max_n))
    results.append(sweep_sandwich(max_n))
    if structural_n:
        results.extend(sweep_structural(structural_n))
    return results
