"""Text and JSON encodings of quandles, topologies and formal sums.

Matrix text (Ho–Nelson layout): ``n`` lines of ``n`` labels separated by
single spaces, row ``i`` column ``j`` holding ``x_i ◁ x_j``.  The label
order is read off the diagonal.

Relation text: ``x ~ y`` lines joining each equivalence class to its first
member, then ``x < y`` lines for the covering pairs between classes (written
with class representatives).  A standalone topology starts with a
``points`` line listing every label.  A topological quandle is its matrix,
a blank line, then its relation lines; the blank line and relations are
absent for the discrete topology.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import MalformedInput
from .quandle import Quandle, check_quandle
from .species import FormalSum, TensorWord
from .topological import TopologicalQuandle, make_tq
from .topology import Topology, _classes, discrete, from_relations, validate_topology

# -- matrix text -------------------------------------------------------------------------


def format_matrix(q: Quandle) -> str:
    return "".join(" ".join(q.labels[v] for v in row) + "\n" for row in q.table)


def parse_matrix(text: str, check: bool = True) -> Quandle:
    """Read a Ho–Nelson matrix.  With ``check=False`` the axioms are not checked."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MalformedInput("quandle matrix is not square")
    labels = tuple(rows[i][i] for i in range(n))
    if len(set(labels)) != n:
        raise MalformedInput(f"diagonal {labels} repeats a label, so x◁x = x cannot hold")
    index = {lab: i for i, lab in enumerate(labels)}
    try:
        table = tuple(tuple(index[v] for v in r) for r in rows)
    except KeyError as exc:
        raise MalformedInput(f"entry {exc.args[0]!r} is not a diagonal label") from None
    q = Quandle(labels, table)
    return check_quandle(q) if check else q


# -- relation text ------------------------------------------------------------------------


def format_relations(t: Topology) -> str:
    classes = sorted((sorted(c) for c in _classes(t.leq)), key=lambda c: c[0])
    lines = []
    for c in classes:
        lines.extend(f"{t.labels[c[0]]} ~ {t.labels[i]}" for i in c[1:])
    reps = [c[0] for c in classes]
    covers = []
    for a in reps:
        for b in reps:
            if a == b or not t.leq[a][b] or t.leq[b][a]:
                continue
            between = any(
                c not in (a, b) and t.leq[a][c] and t.leq[c][b] and not t.leq[c][a] and not t.leq[b][c]
                for c in reps
            )
            if not between:
                covers.append((a, b))
    lines.extend(f"{t.labels[a]} < {t.labels[b]}" for a, b in sorted(covers))
    return "".join(line + "\n" for line in lines)


def parse_relations(text: str, labels) -> Topology:
    pairs = []
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 3 or parts[1] not in ("<", "~", "<="):
            raise MalformedInput(f"cannot read relation line {line!r}")
        x, rel, y = parts
        pairs.append((x, y))
        if rel == "~":
            pairs.append((y, x))
    return from_relations(labels, pairs)


def format_topology(t: Topology) -> str:
    return "points " + " ".join(t.labels) + "\n" + format_relations(t)


def parse_topology(text: str) -> Topology:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("points"):
        raise MalformedInput("topology text must start with a 'points' line")
    labels = lines[0].split()[1:]
    return parse_relations("\n".join(lines[1:]), labels)


def format_tq(tq: TopologicalQuandle) -> str:
    rel = format_relations(tq.topology)
    return format_matrix(tq.quandle) + ("\n" + rel if rel else "")


def parse_tq(text: str, check: bool = True) -> TopologicalQuandle:
    lines = text.splitlines()
    while lines and not lines[0].strip():
        lines.pop(0)
    if "" in [line.strip() for line in lines]:
        cut = [line.strip() for line in lines].index("")
        head, tail = lines[:cut], lines[cut + 1:]
    else:
        head, tail = lines, []
    q = parse_matrix("\n".join(head), check=check)
    t = parse_relations("\n".join(tail), q.labels) if tail else discrete(q.labels)
    return make_tq(q, t) if check else TopologicalQuandle(q, t)


# -- JSON -------------------------------------------------------------------------------------


def quandle_to_json(q: Quandle) -> dict:
    return {"labels": list(q.labels), "table": [list(r) for r in q.table]}


def quandle_from_json(d: dict, check: bool = True) -> Quandle:
    try:
        q = Quandle(tuple(d["labels"]), d["table"])
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad quandle JSON: {exc}") from None
    return check_quandle(q) if check else q


def topology_to_json(t: Topology) -> dict:
    return {"labels": list(t.labels), "leq": [list(r) for r in t.leq]}


def topology_from_json(d: dict) -> Topology:
    try:
        return validate_topology(d["leq"], d["labels"])
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad topology JSON: {exc}") from None


def tq_to_json(tq: TopologicalQuandle) -> dict:
    return {"quandle": quandle_to_json(tq.quandle), "topology": topology_to_json(tq.topology)}


def tq_from_json(d: dict, check: bool = True) -> TopologicalQuandle:
    q = quandle_from_json(d["quandle"], check)
    t = topology_from_json(d["topology"])
    return make_tq(q, t) if check else TopologicalQuandle(q, t)


def word_to_json(w: TensorWord) -> dict:
    return {"factors": [tq_to_json(f) for f in w.factors], "mode": w.mode}


def word_from_json(d: dict) -> TensorWord:
    # factors of words (e.g. the first factor after xi) need not be compatible
    return TensorWord(tuple(tq_from_json(f, check=False) for f in d["factors"]), d.get("mode", "external"))


def sum_to_json(s: FormalSum) -> list:
    return [{"coeff": c, **word_to_json(w)} for w, c in s]


def sum_from_json(items: list) -> FormalSum:
    return FormalSum((word_from_json(d), int(d["coeff"])) for d in items)


def dumps(obj) -> str:
    """Deterministic JSON for any supported object."""
    return json.dumps(to_json(obj), sort_keys=True)


def to_json(obj) -> Any:
    if isinstance(obj, FormalSum):
        return sum_to_json(obj)
    if isinstance(obj, TensorWord):
        return word_to_json(obj)
    if isinstance(obj, TopologicalQuandle):
        return tq_to_json(obj)
    if isinstance(obj, Quandle):
        return quandle_to_json(obj)
    if isinstance(obj, Topology):
        return topology_to_json(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def from_json(data) -> Any:
    """Decode by shape: list -> FormalSum, else by the keys present."""
    if isinstance(data, list):
        return sum_from_json(data)
    if "factors" in data:
        return word_from_json(data)
    if "quandle" in data:
        return tq_from_json(data)
    if "table" in data:
        return quandle_from_json(data)
    if "leq" in data:
        return topology_from_json(data)
    raise MalformedInput("unrecognised JSON object")


def loads(text: str, fmt: str | None = None):
    """Read any supported object from text; ``fmt`` is ``json``, ``matrix`` or ``None`` (sniff)."""
    if fmt is None:
        stripped = text.lstrip()
        fmt = "json" if stripped[:1] in ("{", "[") else "matrix"
    if fmt == "json":
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
    if fmt == "matrix":
        if text.lstrip().startswith("points"):
            return parse_topology(text)
        return parse_tq(text)
    raise MalformedInput(f"unknown format {fmt!r}")


# -- pretty printing of sums ---------------------------------------------------------------


def render_factor(tq: TopologicalQuandle) -> list[str]:
    if tq.n == 0:
        return ["∅"]
    lines = ["[" + " ".join(tq.labels[v] for v in row) + "]" for row in tq.quandle.table]
    lines += [line.replace(" ", "") for line in format_relations(tq.topology).splitlines()]
    return lines


def render_word(w: TensorWord) -> list[str]:
    blocks = [render_factor(f) for f in w.factors]
    height = max(len(b) for b in blocks)
    widths = [max(len(line) for line in b) for b in blocks]
    out = []
    for r in range(height):
        cells = [(b[r] if r < len(b) else "").ljust(wd) for b, wd in zip(blocks, widths)]
        sep = " ⊗ " if r == 0 else "   "
        out.append(sep.join(cells).rstrip())
    return out


def render_sum(s: FormalSum) -> str:
    """Plain-text layout: one block per term, factors side by side."""
    if not s:
        return "0\n"
    chunks = []
    for k, (w, c) in enumerate(s):
        sign = "-" if c < 0 else ("+" if k else " ")
        coeff = f"{abs(c)} " if abs(c) != 1 else ""
        lines = render_word(w)
        prefix = f"{sign} {coeff}"
        pad = " " * len(prefix)
        chunks.append("\n".join([prefix + lines[0]] + [pad + line for line in lines[1:]]))
    return "\n".join(chunks) + "\n"
