"""Exception hierarchy shared by every module of the package."""


class GroupGameError(ValueError):
    """Base class for all input and compatibility errors."""


class VariantMismatch(GroupGameError):
    """An element, function, measure or bijection does not belong to the group at hand."""


class UnsupportedClass(GroupGameError):
    """The requested computation is not available for this representation class."""


class DocumentError(GroupGameError):
    """A game or profile document failed to parse or validate.

    ``field`` is a dotted path into the document (``"phi[1].period"``) and
    ``line`` the 1-based source line when it can be located.
    """

    def __init__(self, reason, field=None, line=None):
        self.reason = reason
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {reason}" if prefix else reason)
