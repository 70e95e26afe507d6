"""Independent oracles: plain trial division and string-based reversal.

Nothing here imports the library's factoring or digit code.
"""

from __future__ import annotations

import numpy as np
import pytest


def naive_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_v(n: int) -> int:
    return sum(p if e == 1 else p + e for p, e in naive_factor(n).items())


def naive_reverse(n: int, b: int) -> int:
    return int(np.base_repr(n, b)[::-1], b)


def naive_is_vpal(n: int, b: int) -> bool:
    r = naive_reverse(n, b)
    return n % b != 0 and n != r and naive_v(n) == naive_v(r)


@pytest.fixture
def oracle():
    class Oracle:
        factor = staticmethod(naive_factor)
        v = staticmethod(naive_v)
        reverse = staticmethod(naive_reverse)
        is_vpal = staticmethod(naive_is_vpal)

    return Oracle
