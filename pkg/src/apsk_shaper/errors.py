"""Exception types and the CLI exit-code contract."""


class DomainError(ValueError):
    """Invalid argument, configuration value, or constellation file."""


class EstimatorError(RuntimeError):
    """An estimate violates a bound it must satisfy (estimator bug sentinel)."""


class ContractError(RuntimeError):
    """A validated design inequality failed during a convergence audit."""


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ESTIMATOR = 3
EXIT_CONTRACT = 4
