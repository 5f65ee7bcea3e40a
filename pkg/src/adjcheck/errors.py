"""Exception types shared across the package.

Each error class maps to a distinct CLI exit code, see cli.EXIT_CODES.
"""


class AdjcheckError(Exception):
    """Base class for all package errors."""


class ConfigError(AdjcheckError):
    """Malformed or inconsistent battery/context configuration."""


class SingularMatrix(AdjcheckError):
    """A matrix expected to be invertible is rank deficient."""


class NotFree(AdjcheckError):
    """The big algebra is not (two-sided) free over the embedded subalgebra."""


class GeneratorsNotClosed(AdjcheckError):
    """Reserved: subgroup generator sets are closed by construction, so this
    is never raised by subgroup_inclusion itself."""


class NotDualizable(AdjcheckError):
    """An object failed a duality zig-zag or rank requirement."""


class NoDualizingObjectFound(AdjcheckError):
    """The search for a dualizing object with an isomorphism witness failed."""


class WitnessMissing(AdjcheckError):
    """A construction that needs an isomorphism witness was handed a missing
    or rank-deficient one."""


class OmegaNotIso(AdjcheckError):
    """The comparison map from coinduction to shifted induction is not an
    isomorphism on the sampled battery, so the shifted right adjoint cannot
    be transported."""


class ExpectedIso(AdjcheckError):
    """A map that is an isomorphism under the stated hypotheses came out
    rank deficient; indicates broken inputs rather than a verdict."""
