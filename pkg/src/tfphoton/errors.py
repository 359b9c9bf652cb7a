"""Exception types shared across the package."""


class SupportGuardError(ValueError):
    """Raised when a state's probability mass leaks too close to the grid edge.

    Every operation that can move support (displacements, chirps, shears,
    time-domain evaluation of moments) checks that no more than 1e-4 of the
    probability mass sits outside the central 80% of the relevant axis, and
    refuses to silently wrap around the grid boundary.
    """


class GridMismatchError(ValueError):
    """Raised when an operation combines states defined on different grids."""


class ConfigError(ValueError):
    """Invalid CLI/run configuration.  Collects every validation problem."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
