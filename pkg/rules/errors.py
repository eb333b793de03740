"""Exceptions shared by the rule, automaton, square and search apps."""


class ContractViolation(ValueError):
    pass


class NotBipermutiveError(ContractViolation):
    def __init__(self, side: str, message: str):
        super().__init__(message)
        self.side = side


class CatalogError(ContractViolation):
    pass


class ResourceLimitExceeded(RuntimeError):
    def __init__(self, what: str, requested: int, limit: int):
        super().__init__(f"{what}: {requested} exceeds the brute-force cap of {limit}.")
        self.requested = requested
        self.limit = limit
