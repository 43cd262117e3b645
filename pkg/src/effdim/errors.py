"""Exception types shared across the package."""


class EffdimError(Exception):
    """Base class for all errors raised by this package."""


class TableFormatError(EffdimError):
    """Malformed Cayley table input (shape, entry range, or file syntax)."""


class NotAssociativeError(EffdimError):
    """Table fails associativity; carries a witness triple."""

    def __init__(self, a, b, c):
        self.witness = (a, b, c)
        super().__init__(f"(a*b)*c != a*(b*c) for (a, b, c) = ({a}, {b}, {c})")


class NotGeneratingError(EffdimError):
    """Claimed generating set does not generate the whole semigroup."""


class NotPrimeError(EffdimError):
    pass


class ReduciblePolynomialError(EffdimError):
    pass


class FieldMismatchError(EffdimError):
    """Operands live over different fields."""


class InconsistentSystemError(EffdimError):
    """Linear system has no solution."""


class NotCommutativeInverseError(EffdimError):
    pass


class NotLRBError(EffdimError):
    """Input is not a left regular band (monoid)."""


class NotClosedError(EffdimError):
    """Face set is not closed under the sign product or lacks the identity."""


class NotGGMError(EffdimError):
    pass


class NotAGGMError(EffdimError):
    pass


class NotGroupMappingError(EffdimError):
    pass


class StructureMatrixNotInvertibleError(EffdimError):
    """Rees structure matrix is neither left- nor right-invertible over kG."""


class HypothesisFailedError(EffdimError):
    """A theorem's hypothesis does not hold for the given input/field."""


class NotEffectiveError(EffdimError):
    """Representation collapses two distinct elements; carries the pair."""

    def __init__(self, a, b, msg=None):
        self.pair = (a, b)
        super().__init__(msg or f"representation collapses elements {a} and {b}")


class ActionInconsistentError(EffdimError):
    """Partial action maps do not compose compatibly with the Cayley table."""


class RetriesExhaustedError(EffdimError):
    """Randomized construction failed every retry; enlarge the field."""


class TooLargeError(EffdimError):
    """Requested object exceeds the configured size budget."""


class UnknownFamilyError(EffdimError):
    pass


class NotAcyclicError(EffdimError):
    """Quiver has an oriented cycle where none is allowed."""


class FieldTooSmallError(EffdimError):
    """Field has too few elements for the requested construction."""


class BudgetExceededError(EffdimError):
    """Search node budget exhausted before a definite answer."""

    def __init__(self, nodes, msg=None):
        self.nodes = nodes
        super().__init__(msg or f"search budget exhausted after {nodes} nodes")


class RuleInapplicableError(EffdimError):
    """No exact rule applies to this input over this field."""
