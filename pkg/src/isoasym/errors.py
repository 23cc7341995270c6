"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An elementary function was evaluated outside its domain."""


class ExprSyntaxError(ValueError):
    """Expression text failed to parse.

    `offset` is the byte offset of the failure in the input string.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifier(ExprSyntaxError):
    """An identifier other than `w`, `pi` or a known function name."""


class DegenerateCurve(ValueError):
    """The curve's velocity vanishes (or nearly so) at the query parameter."""


class FrameUndefined(ValueError):
    """Curvature vanishes; the principal normal / binormal are undefined."""


class DegenerateSurfacePoint(ValueError):
    """The surface partials are parallel; no surface normal at this point."""


class DuplicateEta(ValueError):
    """Two interpolation points share the same eta parameter."""


class EtaEqualsEta0(ValueError):
    """An interpolation point sits on the base parameter line eta = eta0."""


class SingularSystem(ValueError):
    """A linear solve hit a numerically singular matrix.

    Unreachable for inputs satisfying the interpolation preconditions;
    raised as an internal consistency failure.
    """


class ConfigError(ValueError):
    """Scene configuration is malformed; `path` points at the offending key."""

    def __init__(self, message, path=""):
        loc = f" (at {path})" if path else ""
        super().__init__(f"{message}{loc}")
        self.path = path


class RegularityWarning(UserWarning):
    """The surface ribbon collapses along the curve (|b1| below tolerance)."""


class ArcLengthWarning(UserWarning):
    """The curve is not unit-speed; frame formulas still hold, but the
    isoasymptotic construction is stated for arc-length parametrization."""


class EtaDomainWarning(UserWarning):
    """Evaluation outside the declared eta domain (advisory only)."""


class IllConditionedWarning(UserWarning):
    """A coefficient system's condition estimate exceeds 1e12."""
