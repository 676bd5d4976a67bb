"""Exception types shared across the verification layers."""


class FinisigError(Exception):
    """Base class for all package errors."""


class SingularMatrixError(FinisigError):
    """An inverse enclosure could not be verified (possibly singular)."""


class VerificationError(FinisigError):
    """A rigorous verification step failed; carries the violated condition.

    Raised only when a requested certificate cannot be established.  The
    message names the violated inequality or geometric condition so scenario
    reports can record which stage halted.
    """

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        self.stage = stage


class EnclosureBlowupError(FinisigError):
    """Rough a-priori enclosure could not be validated at some step."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step
