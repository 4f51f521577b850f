"""Exception hierarchy.

Every error raised on purpose by factorlab derives from FactorlabError. The CLI
maps the three families below onto exit codes: InvalidInput -> 2,
ResourceCapExceeded -> 3, AssertionFailed -> 1.
"""


class FactorlabError(Exception):
    pass


class InvalidInput(FactorlabError, ValueError):
    pass


class EmptyGenerators(InvalidInput):
    pass


class ZeroGenerator(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class NotInMonoid(InvalidInput):
    pass


class EmptyTargetSet(InvalidInput):
    pass


class BoundTooSmall(InvalidInput):
    def __init__(self, bound, required):
        super().__init__(f"bound {bound} is below the largest Betti grading {required}")
        self.bound = bound
        self.required = required


class ResourceCapExceeded(FactorlabError):
    pass


class FiberCapExceeded(ResourceCapExceeded):
    pass


class CompletionCapExceeded(ResourceCapExceeded):
    pass


class SearchCapExceeded(ResourceCapExceeded):
    pass


class AssertionFailed(FactorlabError):
    """A proven identity or inequality did not hold; always an implementation bug."""
