"""Exception hierarchy shared by every module of the package."""


class CuspAtlasError(Exception):
    """Base class for all errors raised by cusp_atlas."""


class ComputationError(CuspAtlasError):
    """A computation could not be completed within configured limits."""


class UnfactoredCofactor(ComputationError):
    def __init__(self, n, cofactor, bound):
        super().__init__(
            f"could not factor {n}: cofactor {cofactor} exceeds trial-division bound {bound}"
        )
        self.n = n
        self.cofactor = cofactor
        self.bound = bound


class SearchExhausted(ComputationError):
    """A bounded constructive search found nothing."""


class SingularForm(CuspAtlasError):
    """The symmetric matrix has zero determinant."""


class Infeasible(CuspAtlasError):
    """No quadratic form exists with the requested invariants."""


class Inadmissible(CuspAtlasError):
    """The commensurability class does not admit the requested cusp type."""


class NotAnIsometry(CuspAtlasError):
    pass


class NotUnipotent(CuspAtlasError):
    pass


class WrongDiscriminant(CuspAtlasError):
    pass


class NegativeK(CuspAtlasError):
    pass
