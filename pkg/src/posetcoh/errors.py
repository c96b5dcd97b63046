"""Exception hierarchy shared by all modules."""


class PosetCohError(Exception):
    """Base class for every error raised by posetcoh."""


# posets
class UnknownElement(PosetCohError, KeyError):
    def __str__(self):
        return f"unknown element {self.args[0]!r}"


class DuplicateElement(PosetCohError):
    pass


class CycleDetected(PosetCohError):
    pass


class NonCoverPair(PosetCohError):
    """A declared cover (q, p) has an intermediate element r."""

    def __init__(self, q, p, r):
        super().__init__(q, p, r)
        self.q, self.p, self.r = q, p, r

    def __str__(self):
        return f"({self.q!r}, {self.p!r}) is not a cover: {self.r!r} lies strictly between"


class NotBounded(PosetCohError):
    pass


class NotAChain(PosetCohError):
    pass


# linear algebra
class FieldMismatch(PosetCohError):
    pass


class ShapeError(PosetCohError):
    pass


class NoSolution(PosetCohError):
    pass


class NotAComplex(PosetCohError):
    def __init__(self, degree):
        super().__init__(degree)
        self.degree = degree

    def __str__(self):
        return f"differentials do not compose to zero at degree {self.degree}"


class NotChainMap(PosetCohError):
    pass


# functors
class MissingCoverMap(PosetCohError):
    pass


class ShapeMismatch(PosetCohError):
    pass


class NotFunctorial(PosetCohError):
    """Raised when a computation needs a validated functor and gets a bad one."""

    def __init__(self, violations):
        super().__init__(violations)
        self.violations = violations

    def __str__(self):
        head = ", ".join(f"{v.q}<{v.p}" for v in self.violations[:5])
        return f"functor is not path independent on {len(self.violations)} pair(s): {head}"


class NotInduced(PosetCohError):
    pass


class NotBelow(PosetCohError):
    pass


class NotLowerClosed(PosetCohError):
    pass


class VarianceError(PosetCohError):
    pass


# orderings
class NotUnrefinable(PosetCohError):
    pass


class ChainNotToTop(PosetCohError):
    pass


class NotCoatomOf(PosetCohError):
    pass


class SizeGuardExceeded(PosetCohError):
    pass


class OrderingError(PosetCohError):
    """An ordering family does not order the coatoms of some chain correctly."""


# stability and Mobius
class OrderingInvalid(PosetCohError):
    pass


class DegreeOutOfRange(PosetCohError):
    pass


class NotComparable(PosetCohError):
    pass


class NotPure(PosetCohError):
    pass


class HypothesisFailed(PosetCohError):
    def __init__(self, chain, message="hypothesis fails"):
        super().__init__(chain, message)
        self.chain = chain
        self.message = message

    def __str__(self):
        return f"{self.message} at chain {'<'.join(self.chain)}"


class OutOfFormulaDomain(PosetCohError):
    pass


# fixtures and input
class UnknownFixture(PosetCohError, KeyError):
    def __str__(self):
        return f"unknown fixture {self.args[0]!r}"


class FormatError(PosetCohError):
    pass
