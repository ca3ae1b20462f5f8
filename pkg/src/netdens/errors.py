class ContractError(ValueError):
    """An operation was called outside its precondition."""


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InfeasibleSpecError(ValueError):
    """A generator cannot realise the requested parameters."""


class NotGraphicalError(InfeasibleSpecError):
    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message)


class UndefinedMetricError(ValueError):
    """The metric has no value on this graph (e.g. no nodes, no reachable pairs)."""


class EmptyRegionError(ValueError):
    pass


class DegenerateError(ZeroDivisionError):
    pass
