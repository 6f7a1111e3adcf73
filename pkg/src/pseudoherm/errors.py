"""Exception hierarchy.

Errors are split into three families so the CLI can map them to exit codes:
usage/parse problems, numerical ambiguities, and mathematical refusals
(requests that a theorem forbids for the given input).
"""


class PseudohermError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(PseudohermError):
    pass


class NonConvergence(PseudohermError):
    pass


class Singular(PseudohermError):
    pass


class Overflow(PseudohermError):
    pass


class NumericalAmbiguity(PseudohermError):
    """Input cannot be resolved at the requested tolerance."""


class ClusterAmbiguity(NumericalAmbiguity):
    pass


class MathematicalRefusal(PseudohermError):
    """The requested object provably does not exist for this input.

    ``reason`` names the governing result (e.g. "Theorem 1").
    """

    def __init__(self, message, reason=None):
        super().__init__(message)
        self.reason = reason


class NotPaired(MathematicalRefusal):
    pass


class NotDiagonalizableReal(MathematicalRefusal):
    pass


class UnpairedRealBlocks(MathematicalRefusal):
    pass


class SingularMetric(PseudohermError):
    pass


class NonHermitianMetric(PseudohermError):
    pass


class SingularBasis(PseudohermError):
    pass


class SingularOperator(PseudohermError):
    pass


class NotInvolutory(PseudohermError):
    pass


class NotAntiunitary(PseudohermError):
    pass


class NotPseudoHermitian(PseudohermError):
    pass


class IndefiniteMetric(PseudohermError):
    pass


class ZeroLeadingCoefficient(PseudohermError):
    pass
