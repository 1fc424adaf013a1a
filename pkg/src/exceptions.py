""" Exception hierarchy for the BTGN toolkit """


class BTGNError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(BTGNError, ValueError):
    """An argument or parameter lies outside the domain of an operation."""


class ConvergenceError(BTGNError, ArithmeticError):
    """An iterative evaluation exhausted its iteration budget."""


class DataError(BTGNError):
    """Input data could not be read or is unusable."""


class FetchError(DataError):
    """Remote data retrieval failed."""


class FetchNetworkError(FetchError):
    """The endpoint could not be reached (or the cache is cold while offline)."""


class FetchStatusError(FetchError):
    """The endpoint answered with a non-success HTTP status."""

    def __init__(self, status_code: int, url: str):
        self.status_code = status_code
        self.url = url
        super().__init__(f"endpoint returned HTTP {status_code} for {url}")


class FetchParseError(FetchError):
    """The response body is not the expected JSON document."""

    def __init__(self, message: str, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class EmptySeriesError(FetchError):
    """The response parsed correctly but carried no observations."""
