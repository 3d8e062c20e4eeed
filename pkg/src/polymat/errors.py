"""Exception hierarchy shared by every module.

Errors that point at a subset carry it as a bitmask (bit ``i-1`` is
element ``i``) and render it as ``{i,j,...}`` in the message.
"""

from ._bits import fmt_set


class PolymatroidError(Exception):
    """Base class for all errors raised by :mod:`polymat`."""


class CapacityExceeded(PolymatroidError):
    def __init__(self, what, size, cap):
        self.what, self.size, self.cap = what, size, cap
        super().__init__(f"{what}: {size} exceeds the enumeration cap {cap}")


class InvalidRankTable(PolymatroidError):
    """A rank table fails one of the polymatroid axioms."""

    axiom = "table"

    def __init__(self, *subsets, detail=""):
        self.subsets = subsets
        shown = ", ".join(fmt_set(s) for s in subsets)
        msg = f"{self.axiom}: {shown}" if shown else self.axiom
        super().__init__(msg + (f" ({detail})" if detail else ""))


class MissingSubset(InvalidRankTable):
    axiom = "missing subset"


class NegativeRank(InvalidRankTable):
    axiom = "negative rank"


class NotInteger(InvalidRankTable):
    axiom = "non-integer rank"


class NotNormalized(InvalidRankTable):
    axiom = "not normalized"


class NotMonotone(InvalidRankTable):
    axiom = "not monotone"


class NotSubmodular(InvalidRankTable):
    axiom = "not submodular"


class OverlappingSets(PolymatroidError):
    pass


class KTooSmall(PolymatroidError):
    def __init__(self, element, value, k):
        self.element = element
        super().__init__(f"element {element} has rank {value} > k = {k}")


class EmptyGroundSet(PolymatroidError):
    pass


class UnknownElement(PolymatroidError):
    pass


class UnknownMatroidElement(UnknownElement):
    pass


class ElementNotInSet(PolymatroidError):
    pass


class ElementNotInGroundSet(UnknownElement):
    pass


class BlockSizeMismatch(PolymatroidError):
    pass


class GroundSetMismatch(PolymatroidError):
    pass


class NotAMatroid(PolymatroidError):
    pass


class NotADecomposition(PolymatroidError):
    def __init__(self, subset, expected, got):
        self.subset = subset
        super().__init__(
            f"sum of matroid ranks on {fmt_set(subset)} is {got}, expected {expected}")


class EmptyFamily(PolymatroidError):
    pass


class NotNonempty(EmptyFamily):
    pass


class BoundsMismatch(PolymatroidError):
    def __init__(self, element, detail):
        self.element = element
        super().__init__(f"bound of element {element}: {detail}")


class AxiomsFailed(PolymatroidError):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__("; ".join(verdict.report_lines()))


class RankDomainMismatch(PolymatroidError):
    pass


class MalformedDiagram(PolymatroidError):
    pass


class UnknownName(PolymatroidError):
    pass


class ParseError(PolymatroidError):
    pass
