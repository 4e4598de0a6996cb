"""Exception hierarchy shared by every module of the package."""


class QuandleError(Exception):
    """Base class for all errors raised by topquandle."""


class MalformedInput(QuandleError, ValueError):
    """Input that cannot even be read as a table or relation of the right shape."""


class AxiomViolation(QuandleError):
    """A table fails one of the quandle axioms.

    ``which`` is one of ``"Idempotency"``, ``"RightBijectivity"`` or
    ``"SelfDistributivity"``; ``witness`` is an index triple:

    * Idempotency: ``(i, i, i)`` with ``i ◁ i != i``;
    * RightBijectivity: ``(i, k, j)``, rows ``i`` and ``k`` collide in column ``j``;
    * SelfDistributivity: ``(i, j, k)`` with ``(i◁j)◁k != (i◁k)◁(j◁k)``.
    """

    def __init__(self, which, witness, labels=None):
        self.which = which
        self.witness = tuple(witness)
        self.labels = labels
        shown = self.witness
        if labels is not None:
            shown = tuple(labels[i] for i in self.witness)
        super().__init__(f"{which} violated at {shown}")


class UnknownLabel(QuandleError, KeyError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown label {label!r}")

    def __str__(self):
        return self.args[0]


class NotASubquandle(QuandleError):
    pass


class LabelInY(QuandleError):
    pass


class GroundOverlap(QuandleError):
    pass


class GroundMismatch(QuandleError):
    pass


class NotABijection(QuandleError):
    pass


class NotAGroup(QuandleError):
    pass


class NotASubset(QuandleError):
    pass


class TopologyViolation(QuandleError):
    """A boolean relation is not a quasi-order."""


class NotReflexive(TopologyViolation):
    def __init__(self, i):
        self.witness = (i,)
        super().__init__(f"relation not reflexive at index {i}")


class NotTransitive(TopologyViolation):
    def __init__(self, i, j, k):
        self.witness = (i, j, k)
        super().__init__(f"relation not transitive: {i}<={j}<={k} but not {i}<={k}")


class NotCompatible(QuandleError):
    """Topology does not make the quandle operation monotone.

    ``witness`` is the lexicographically smallest ``(x, x', y, y')`` with
    ``x <= x'``, ``y <= y'`` but not ``x◁y <= x'◁y'`` (label form).
    """

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"topology not compatible with quandle, witness {self.witness}")


class NotCircleFiner(QuandleError):
    pass


class CapExceeded(QuandleError):
    pass


class ShapeMismatch(QuandleError):
    pass


class NotASubquandleOfFirstFactor(QuandleError):
    pass
