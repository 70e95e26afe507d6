from __future__ import annotations


class VPalError(Exception):
    """Base class for every error raised by the toolkit."""


class PreconditionViolated(VPalError, ValueError):
    pass


class InvalidBase(PreconditionViolated):
    def __init__(self, base: int) -> None:
        super().__init__(f"base must satisfy 2 <= b <= 2**31 - 1, got {base}")
        self.base = base


class UnknownVerdictInRange(VPalError):
    def __init__(self, n: int, base: int) -> None:
        super().__init__(f"verdict for n={n} in base {base} is unknown (factoring budget exhausted)")
        self.n = n
        self.base = base


class SearchCapExceeded(VPalError):
    def __init__(self, base: int, ceiling: int) -> None:
        super().__init__(f"no v-palindrome in base {base} up to the scan ceiling {ceiling}")
        self.base = base
        self.ceiling = ceiling


class NoPeriodFound(VPalError):
    pass


class GcdInconsistency(VPalError):
    pass


class ReconstructionMismatch(VPalError):
    pass


class WitnessVerificationFailed(VPalError):
    pass


class InternalInconsistency(VPalError):
    pass


class BFileParseError(VPalError):
    def __init__(self, lineno: int, line: str, reason: str) -> None:
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno
        self.line = line
