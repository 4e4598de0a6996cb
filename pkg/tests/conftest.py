import pytest

from topquandle.formats import parse_matrix
from topquandle.topological import TopologicalQuandle, make_tq
from topquandle.topology import discrete, from_relations

TRIVIAL3 = "a a a\nb b b\nc c c\n"
DIHEDRAL3 = "a c b\nc b a\nb a c\n"
THIRD3 = "a a a\nc b b\nb c c\n"
ORDER3_MATRICES = (TRIVIAL3, DIHEDRAL3, THIRD3)
ORDER4 = "a a a a\nb b b c\nc c c b\nd d d d\n"


def mat(text: str, check: bool = True):
    return parse_matrix(text, check=check)


def tq(text: str, relations=(), labels=None):
    q = mat(text)
    t = from_relations(q.labels, relations) if relations else discrete(q.labels)
    return make_tq(q, t)


def raw_tq(q, t):
    return TopologicalQuandle(q, t)


# b and c share a class sitting below a
TQ3_RELATIONS = [("b", "c"), ("c", "b"), ("b", "a")]
# a below both b and c, d on its own
TQ4_RELATIONS = [("a", "b"), ("a", "c")]


@pytest.fixture
def tq3():
    return tq(THIRD3, TQ3_RELATIONS)


@pytest.fixture
def tq4():
    return tq(ORDER4, TQ4_RELATIONS)


# -- acceptance summary ---------------------------------------------------------------

_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(_criteria.items(), key=lambda kv: _criterion_number(kv[0])):
        terminalreporter.write_line(f"{verdict}  {name}")
    passed = sum(v == "PASS" for v in _criteria.values())
    terminalreporter.write_line(f"{passed}/{len(_criteria)} criteria pass")


def _criterion_number(name: str) -> int:
    digits = "".join(ch for ch in name.split("_")[2] if ch.isdigit()) if name.count("_") > 1 else ""
    return int(digits) if digits else 99
