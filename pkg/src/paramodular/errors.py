"""Exception hierarchy shared by every module."""


class ParamodularError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ParamodularError):
    """Malformed or inconsistent user input (documents, tags, arguments)."""


# core arithmetic
class NotSquarefree(ParamodularError):
    pass


class LeadingCoefficientVanishes(ParamodularError):
    pass


class NotFundamental(InputError):
    pass


# quadratic rings
class TagError(InputError):
    pass


class MalformedTag(TagError):
    pass


class NotAPrimeIdeal(TagError):
    pass


class NotSplit(ParamodularError):
    pass


# newform documents
class SchemaError(InputError):
    pass


class OddWeight(InputError):
    pass


class NontrivialCharacter(InputError):
    pass


class UnknownPrime(ParamodularError):
    pass


# curves
class RamifiedPrime(ParamodularError):
    pass


class SingularModel(ParamodularError):
    pass


class InconsistentCounts(ParamodularError):
    pass


class DegenerateParameters(InputError):
    pass


class NonRationalInvariants(ParamodularError):
    pass


# lift
class RamifiedUnsupported(ParamodularError):
    """Spinor factor requested at p | D.

    ``shape`` describes the only information available there: the
    valuation >= 2 factor ``1 - lambda_p x + (p mu_p + p^(k-1)) x^2`` with
    unknown coefficients.
    """

    def __init__(self, p, shape="1 - lambda_p*x + (p*mu_p + p^(k-1))*x^2"):
        super().__init__(f"p = {p} ramifies in K; Euler factor has shape {shape} with unknown coefficients")
        self.p = p
        self.shape = shape


class NonRationalInert(ParamodularError):
    pass


class SymmetryViolation(ParamodularError):
    pass


class NotSimilitude(ParamodularError):
    pass


# Faltings-Serre
class UnexpectedType(ParamodularError):
    pass
