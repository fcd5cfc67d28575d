class PrimdivError(Exception):
    pass


class BudgetExceeded(PrimdivError):
    """A configured computational budget (sieve size, search window, exponent) was exhausted."""


class NotAUnit(PrimdivError, ValueError):
    """The element has nonzero valuation at the prime where a unit was required."""


class RootOfUnity(PrimdivError, ValueError):
    pass
