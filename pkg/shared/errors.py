class SetConjError(Exception):
    """
    Base class for every error raised by setconj
    """


class ContractViolation(SetConjError, ValueError):
    """
    A caller broke an operation's precondition (dimension mismatch, z* outside C^-, negative scale, ...)
    """


class NotAnUpperSetError(ContractViolation):
    """
    A piece does not have every cone generator as a recession direction
    """


class ResourceLimitError(SetConjError, RuntimeError):
    """
    An exact computation outgrew one of the configured caps
    """
    def __init__(self, operation: str, limit: int, size: int):
        self.operation = operation
        self.limit = limit
        self.size = size
        super().__init__("{} exceeded the cap of {} (reached {})".format(operation, limit, size))

    def __reduce__(self):
        return type(self), (self.operation, self.limit, self.size)


class InstanceParseError(SetConjError, ValueError):
    """
    An instance file could not be read; location points at the offending block
    """
    def __init__(self, location: str, message: str):
        self.location = location
        self.message = message
        super().__init__("{}: {}".format(location, message))

    def __reduce__(self):
        return type(self), (self.location, self.message)
