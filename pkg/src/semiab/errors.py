"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
``2`` for malformed input, violated preconditions and exhausted budgets,
``1`` for a failed mathematical postcondition.
"""


class SemiabError(Exception):
    exit_code = 2

    def __init__(self, message="", **witness):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        return {"error": type(self).__name__, "message": str(self),
                "witness": {k: _jsonable(v) for k, v in self.witness.items()}}


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


# -- input / precondition errors -------------------------------------------

class ValidationError(SemiabError):
    pass


class NotAssociative(ValidationError):
    pass


class NoIdentityAtZero(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


class NotSubgroup(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotSurjective(ValidationError):
    pass


class NotChain(ValidationError):
    pass


class NotMono(ValidationError):
    pass


class NotEpi(ValidationError):
    pass


class ImageNotKernel(ValidationError):
    pass


class NotProper(ValidationError):
    def __init__(self, message="", which=None, **witness):
        super().__init__(message, which=which, **witness)
        self.which = which


class NotCommuting(ValidationError):
    pass


class NotEpiRows(ValidationError):
    pass


class CompositeNotZero(ValidationError):
    def __init__(self, message="", n=None, **witness):
        super().__init__(message, n=n, **witness)
        self.n = n


class DegreeOutOfRange(ValidationError):
    pass


class NotDegreewiseExact(ValidationError):
    pass


class IdentityViolated(ValidationError):
    def __init__(self, message="", name=None, n=None, i=None, j=None, **witness):
        super().__init__(message, name=name, n=n, i=i, j=j, **witness)
        self.name, self.n, self.i, self.j = name, n, i, j


class NotSimplicialMorphism(ValidationError):
    pass


class NotAContraction(ValidationError):
    def __init__(self, message="", which=None, **witness):
        super().__init__(message, which=which, **witness)
        self.which = which


class NotOverIdentity(ValidationError):
    pass


class NotCocycle(ValidationError):
    pass


class NotCentral(ValidationError):
    pass


class KernelMismatch(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class NotAnAction(ValidationError):
    pass


class NotEquivariant(ValidationError):
    pass


class PeifferFails(ValidationError):
    pass


class EquationFails(ValidationError):
    def __init__(self, message="", which=None, **witness):
        super().__init__(message, which=which, **witness)
        self.which = which


class NotSubXMod(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class UnresolvedReference(ValidationError):
    pass


class UnknownCommand(ValidationError):
    pass


class UnknownSuite(ValidationError):
    pass


class SearchBudgetExceeded(SemiabError):
    pass


class SizeCapExceeded(SearchBudgetExceeded):
    pass


# -- postcondition failures -------------------------------------------------

class PostconditionFailed(SemiabError):
    exit_code = 1


class FillerPostconditionFailed(PostconditionFailed):
    pass
