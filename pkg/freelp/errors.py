#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Exceptions raised by the freelp package.

Every error refines a built-in exception type, so code catching
*ValueError* or *RuntimeError* keeps working.
"""


class InvalidLetterError(ValueError):
    """ A letter is 0 or outside the generator range of the ambient group. """
    pass


class RankMismatchError(ValueError):
    """ Words or operators living in free groups of different ranks were combined. """
    pass


class SchemaError(ValueError):
    """ Malformed tensor data: bad shape, index, matrix or file layout. """
    pass


class CapExceededError(RuntimeError):
    """ A configured size cap (dense matrix, word ball, brute force) was exceeded. """
    pass


class BudgetExceededError(CapExceededError):
    """ The moment enumeration visited more nodes than its budget allows. """
    pass


class DuplicateWordError(ValueError):
    """ Two coefficients carry the same group word where distinct words are required. """
    pass


class ConvergenceWarning(UserWarning):
    """ An iterative method stopped before reaching its tolerance. """
    pass
