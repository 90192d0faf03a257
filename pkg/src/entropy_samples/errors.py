class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DataError(ValueError):
    """Input data (a symbol sequence or file) is malformed or out of alphabet."""
