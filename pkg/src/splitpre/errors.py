"""Exception types shared across the package."""


class SplitPreError(Exception):
    """Base class for all library errors."""


class BoundExceededError(SplitPreError):
    """An enumeration or function-space sweep would exceed its configured cap."""


class SizeMismatchError(SplitPreError, ValueError):
    """Arrow endpoints do not line up for composition."""


class ParseError(SplitPreError, ValueError):
    """Syntax error in a formula, derivation term, or split-preorder file.

    `position` is a byte offset into the input when known, `line` a
    1-based line number for file-shaped input.
    """

    def __init__(self, message: str, position: int | None = None,
                 line: int | None = None, source: str | None = None):
        self.position = position
        self.line = line
        self.source = source
        prefix = ""
        if source is not None:
            prefix += f"{source}:"
        if line is not None:
            prefix += f"{line}:"
        if position is not None and line is None:
            prefix += f"offset {position}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


class DerivationTypeError(SplitPreError, TypeError):
    """A derivation is ill-typed (endpoints of sub-derivations do not match)."""


class FragmentError(SplitPreError, ValueError):
    """A formula or derivation uses a constructor outside the active fragment."""


class EndpointMismatchError(SplitPreError, ValueError):
    """Two derivations cannot be compared: their endpoint formulas differ."""
