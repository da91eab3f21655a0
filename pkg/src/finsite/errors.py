"""Exception hierarchy shared by every module.

Every error that points at a concrete defect carries the offending names in
``witness`` so callers (and the CLI) can report them without string parsing.
"""


class FinSiteError(Exception):
    """Base class for all errors raised by finsite."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(FinSiteError, ValueError):
    """A description file is malformed or missing fields."""


class CategoryError(FinSiteError, ValueError):
    """A composition table violates one of the category laws."""


class MissingComposite(CategoryError):
    pass


class DomCodMismatch(CategoryError):
    pass


class IdentityViolation(CategoryError):
    pass


class AssociativityViolation(CategoryError):
    pass


class CategoryMismatch(FinSiteError, ValueError):
    """Two values that must live over the same category do not."""


class WrongCodomain(FinSiteError, ValueError):
    pass


class CodomainMismatch(FinSiteError, ValueError):
    pass


class NotASieve(FinSiteError, ValueError):
    pass


class TopologyAxiomError(FinSiteError, ValueError):
    """A cover assignment fails maximality, stability, transitivity or upward closure."""


class PresheafError(FinSiteError, ValueError):
    pass


class ParentMismatch(FinSiteError, ValueError):
    pass


class ElementNotFound(FinSiteError, KeyError):
    def __str__(self):
        return str(self.args[0])


class NotClosed(FinSiteError, ValueError):
    pass


class NotDense(FinSiteError, ValueError):
    pass


class ObjectNotInSubcategory(FinSiteError, ValueError):
    pass


class TooLarge(FinSiteError):
    """An enumeration oracle was asked to run beyond its size bound."""

__all__ = [
    "FinSiteError",
    "ParseError",
    "CategoryError",
    "MissingComposite",
    "DomCodMismatch",
    "IdentityViolation",
    "AssociativityViolation",
    "CategoryMismatch",
    "WrongCodomain",
    "CodomainMismatch",
    "NotASieve",
    "TopologyAxiomError",
    "PresheafError",
    "ParentMismatch",
    "ElementNotFound",
    "NotClosed",
    "NotDense",
    "ObjectNotInSubcategory",
    "TooLarge",
]
