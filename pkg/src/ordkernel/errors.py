"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: domain and contract problems exit with 3,
resource and budget problems with 4.
"""


class KernelError(Exception):
    exit_code = 3


class DomainError(KernelError):
    """An argument lies outside the domain of the operation."""


class ContractError(KernelError):
    """A caller-supplied object violates the operation's contract."""


class InvalidArity(DomainError):
    pass


class DecodeError(DomainError):
    """An ordinal does not decode to a well-formed program."""


class ValidationError(ContractError):
    """A structure or interpretation is malformed."""


class SignatureError(ContractError):
    pass


class FormulaSyntaxError(KernelError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class SortError(KernelError):
    pass


class ResourceLimitError(KernelError):
    exit_code = 4


class BudgetError(ResourceLimitError):
    """Evaluation ran out of fuel."""
