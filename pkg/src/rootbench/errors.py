class RootbenchError(Exception):
    pass


class DegenerateDenominator(RootbenchError, ArithmeticError):
    pass


class CoincidentAbscissae(RootbenchError, ValueError):
    pass


class InvalidStarts(RootbenchError, ValueError):
    pass


class MissingDerivative(RootbenchError, ValueError):
    pass


class NonFiniteEvaluation(RootbenchError, ArithmeticError):
    def __init__(self, x: float):
        super().__init__(f"non-finite evaluation at x={x!r}")
        self.x = x


class UnknownFunction(RootbenchError, KeyError):
    def __str__(self):
        return f"unknown function {self.args[0]!r}"


class NoUsableSteps(RootbenchError, ValueError):
    pass


class InsufficientResolution(RootbenchError, ValueError):
    pass


class UnknownMethod(RootbenchError, ValueError):
    pass
