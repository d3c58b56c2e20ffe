"""Exception types raised across the package.

Every rejection is a subclass of :class:`CodesError` so callers (the CLI in
particular) can catch one type and map it to a usage/validation exit code.
"""


class CodesError(ValueError):
    pass


# galois
class ReducibleModulusError(CodesError):
    pass


class NonPrimitiveError(CodesError):
    pass


class FieldTooLargeError(CodesError):
    pass


class NonDivisorError(CodesError):
    pass


class CharacteristicTwoError(CodesError):
    pass


class MixedContextError(CodesError):
    pass


class DependentConstraintsError(CodesError):
    pass


# cyclotomic
class MixedPrimeError(CodesError):
    pass


class ZeroIndexError(CodesError):
    pass


class RepresentationDependentWarning(UserWarning):
    """Criterion sums at p = 3 depend on the chosen coordinate vector."""


# pfunc
class OddDegreeError(CodesError):
    pass


class ZeroParameterError(CodesError):
    """A parameter that must be nonzero (lambda, t, a, coefficients) was zero."""


class LambdaOutsideSubfieldError(CodesError):
    pass


class DependentLambdasError(CodesError):
    pass


class InverseIdentityHoldsError(CodesError):
    pass


class WConditionError(CodesError):
    pass


class BalancedBaseError(CodesError):
    pass


class NotWeaklyRegularError(CodesError):
    pass


# codes
class AffineFunctionError(CodesError):
    """f coincides with a linear trace function Tr(w x)."""


class BetaOutsideDomainError(CodesError):
    pass


class ConstantForNonAugmentedError(CodesError):
    pass


class TooLargeForEnumerationError(CodesError):
    pass


class NonRationalOrbitSumError(AssertionError):
    """Internal consistency failure: a Galois orbit sum was not a rational multiple of p."""


class WrongCharacteristicError(CodesError):
    """Criterion called for a characteristic it does not cover."""


class DegenerateCodeError(CodesError):
    pass


# theory
class OutOfDomainError(CodesError):
    pass


# search / cli
class ExhaustedBudgetError(CodesError):
    pass


class UnknownPresetError(CodesError):
    pass


class DescriptorError(CodesError):
    pass
