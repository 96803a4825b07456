"""Typed errors: every budget or domain failure is explicit, never silent."""


class DiolabError(Exception):
    pass


class ZeroInputError(DiolabError):
    """Operation undefined at zero (factorization, valuations)."""


class PrimalityRangeError(DiolabError):
    """Input beyond the deterministic-witness certification range."""


class FactorBudgetError(DiolabError):
    """Factorization budget exhausted where a complete answer was required."""


class PrecisionBudgetError(DiolabError):
    """Enclosure refinement hit the hard precision cap before deciding."""


class DomainError(DiolabError):
    """Precondition violated (wrong degree, unsupported branch, bad range)."""


class ConfigError(DiolabError):
    """Scan configuration failed validation."""
