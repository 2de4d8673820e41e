"""Exception types shared across the package."""


class NetgramError(Exception):
    pass


class UniverseMismatch(NetgramError, ValueError):
    """Relations or functions combined across different universes."""


class OracleInfeasible(NetgramError):
    """A brute-force enumeration would exceed its configured cap."""


class EndpointMismatch(NetgramError, ValueError):
    pass


class NotInvertible(NetgramError, ValueError):
    pass


class InvalidSubnetwork(NetgramError, ValueError):
    pass


class GenerationFailed(NetgramError):
    """A random generator ran out of retries."""


class ParseError(NetgramError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
