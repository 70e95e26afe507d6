"""Base-b digits, digit reversal and repeated concatenation."""

from __future__ import annotations

from dataclasses import dataclass

from vpal.errors import InvalidBase, PreconditionViolated

MAX_BASE = 2**31 - 1


def check_base(b: int) -> None:
    if not 2 <= b <= MAX_BASE:
        raise InvalidBase(b)


@dataclass(frozen=True)
class BaseDigits:
    """Positional representation, least-significant digit first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.base)
        if not self.digits:
            raise PreconditionViolated("a number has at least one digit")
        if any(not 0 <= d < self.base for d in self.digits):
            raise PreconditionViolated(f"digit out of range for base {self.base}: {self.digits}")
        if self.digits[-1] == 0:
            raise PreconditionViolated(f"leading digit must be nonzero: {self.digits}")

    def __len__(self) -> int:
        return len(self.digits)

    def most_significant_first(self) -> list[int]:
        return list(reversed(self.digits))

    def __str__(self) -> str:
        return ",".join(map(str, self.most_significant_first()))


def to_digits(n: int, b: int) -> BaseDigits:
    check_base(b)
    if n < 1:
        raise PreconditionViolated(f"n must be positive, got {n}")
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    return BaseDigits(b, tuple(out))


def from_digits(d: BaseDigits) -> int:
    n = 0
    for digit in reversed(d.digits):
        n = n * d.base + digit
    return n


def digit_length(n: int, b: int) -> int:
    check_base(b)
    length = 1
    power = b
    while power <= n:
        power *= b
        length += 1
    return length


def reverse(n: int, b: int) -> int:
    """Digit reversal r_b(n); zeros that end up leading are dropped, so reverse(200, 10) == 2."""
    check_base(b)
    if n < 1:
        raise PreconditionViolated(f"n must be positive, got {n}")
    r = 0
    while n:
        n, d = divmod(n, b)
        r = r * b + d
    return r


def repeat_concat(n: int, k: int, b: int) -> int:
    """The number whose base-b digits are k copies of the digits of n."""
    check_base(b)
    if n < 1 or k < 1:
        raise PreconditionViolated(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    block = b ** digit_length(n, b)
    return n * (block**k - 1) // (block - 1)


def format_digits(n: int, b: int) -> str:
    """Comma-separated digits, most significant first, e.g. ``1,0,1,0,1,1,1,1``."""
    return str(to_digits(n, b))
