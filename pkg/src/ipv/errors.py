"""Exception hierarchy shared by every ipv module."""


class IPVError(Exception):
    """Base class for all errors raised by ipv."""


class InvalidPermutation(IPVError):
    pass


class OrderExceeded(IPVError):
    pass


class ParseError(IPVError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownGenerator(ParseError):
    pass


class CosetLimitExceeded(IPVError):
    pass


class TableNotClosed(IPVError):
    pass


class ThetaZero(IPVError):
    pass


class NonIntegralGenus(IPVError):
    pass


class NonIntegral(IPVError):
    pass


class OrderMismatch(IPVError):
    def __init__(self, name, expected, actual):
        super().__init__(f"group {name!r}: declared order {expected}, realized {actual}")
        self.name = name
        self.expected = expected
        self.actual = actual


class DuplicateName(IPVError):
    pass


class UnknownGroup(IPVError):
    pass


class CacheCorrupt(IPVError):
    pass


class UnknownCheck(IPVError):
    pass
