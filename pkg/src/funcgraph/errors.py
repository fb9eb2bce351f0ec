"""Exception types shared across the package."""


class FuncGraphError(Exception):
    """Base class for all errors raised by funcgraph."""


class NotPrime(FuncGraphError, ValueError):
    def __init__(self, p: int, hint: str = ""):
        self.p = p
        self.hint = hint
        msg = f"{p} is not prime"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)


class PreconditionViolated(FuncGraphError, ValueError):
    pass


class BadExponent(PreconditionViolated):
    pass


class GammaNotRootOfUnity(PreconditionViolated):
    pass


class Unsupported(PreconditionViolated):
    pass


class ZeroPolynomial(PreconditionViolated):
    pass


class BothZero(PreconditionViolated):
    pass


class OutOfRange(FuncGraphError, ValueError):
    def __init__(self, index: int, value: int, n: int):
        self.index = index
        super().__init__(f"entry {index} = {value} outside [0, {n})")


class BudgetExceeded(FuncGraphError):
    """A computation would exceed its configured size guard."""


class DegreeBudgetExceeded(BudgetExceeded):
    pass


class ShapeViolation(FuncGraphError):
    """A tree does not have the shape required by quadratic-mode labelling."""


class UnknownFormat(FuncGraphError, ValueError):
    pass
