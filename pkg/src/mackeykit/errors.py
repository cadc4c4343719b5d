"""Exception hierarchy. Every error carries a machine-readable ``code`` used by the CLI."""


class MackeyKitError(Exception):
    code = "error"

    def __init__(self, message: str, **witness):
        super().__init__(message)
        self.witness = witness


class MalformedInput(MackeyKitError, ValueError):
    code = "malformed_input"


class NonAssociative(MalformedInput):
    code = "non_associative"


class NoIdentity(MalformedInput):
    code = "no_identity"


class InverseMissing(MalformedInput):
    code = "inverse_missing"


class GroupTooLarge(MackeyKitError):
    code = "group_too_large"


class TooLarge(MackeyKitError):
    code = "too_large"


class NotNormal(MackeyKitError):
    code = "not_normal"


class NotNested(MackeyKitError):
    code = "not_nested"


class SourceTargetMismatch(MackeyKitError):
    code = "source_target_mismatch"


class ShapeUnsupported(MackeyKitError):
    code = "shape_unsupported"


class FieldRequired(MackeyKitError):
    code = "field_required"


class BadPrime(MackeyKitError):
    code = "bad_prime"


class NotEquivariant(MackeyKitError):
    code = "not_equivariant"
