class OrthologicError(Exception):
    """Base class for library errors."""


class InputError(OrthologicError, ValueError):
    """Malformed or unsupported input; maps to CLI exit code 2."""


class ResourceError(OrthologicError, RuntimeError):
    """A configured resource cap (nodes, variables, assignments) was exceeded."""


class NotGroundError(InputError):
    pass


class NotPreprocessedError(InputError):
    pass


class ShapeError(InputError):
    pass


class ProofError(InputError):
    pass
