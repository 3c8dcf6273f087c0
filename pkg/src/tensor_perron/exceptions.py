"""Exception hierarchy shared by every module of the package."""


class TensorPerronError(Exception):
    """Base class for all errors raised by tensor_perron."""


class TensorFormatError(TensorPerronError, ValueError):
    """Malformed tensor or hypergraph input (arity, range, sign, duplicates)."""


class NotWeaklyIrreducibleError(TensorPerronError, ValueError):
    """The tensor digraph is not strongly connected, so no Perron pair exists."""


class NoCircuitError(TensorPerronError, ValueError):
    """The digraph has no circuit (or a vertex without out-neighbors)."""


class ConvergenceError(TensorPerronError, RuntimeError):
    """Power iteration hit its iteration budget or underflowed.

    The best Collatz-Wielandt bracket seen so far is kept on the exception
    (already shifted back to the unshifted tensor).
    """

    def __init__(self, message, bracket=None, iterations=0):
        super().__init__(message)
        self.bracket = bracket
        self.iterations = iterations
