"""Moments of the size B_n: limits, exact values and the exact law."""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from ..chains.size import SizeChain
from ..config import get_config
from ..errors import InvariantViolation, ResourceCapExceeded
from .dist import RationalDist
from .statistic import push_forward


def m_k(k: int) -> Fraction:
    """Limit of E[(B_n / n)^k].

    Computed as prod_{i<=k} (1 - 1/i + 2^i/i) and as
    2^{k(k+1)/2} / k! * prod_{i<=k} (1 + (i-1)/2^i); the two must agree.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    direct = Fraction(1)
    for i in range(1, k + 1):
        direct *= 1 - Fraction(1, i) + Fraction(2**i, i)
    other = Fraction(2 ** (k * (k + 1) // 2), factorial(k))
    for i in range(1, k + 1):
        other *= 1 + Fraction(i - 1, 2**i)
    if direct != other:
        raise InvariantViolation(f"closed forms of m_{k} disagree: {direct} != {other}")
    return direct


def _coefficients(k: int) -> list[int]:
    """E[B_{n+1}^k] - E[B_n^k] = sum_l c_l E[B_n^l] + 2^k, for l = 1 .. k-1."""
    return [comb(k - 1, l - 1) + 2**k * comb(k - 1, l) for l in range(1, k)]


def _moment_table(n: int, k: int) -> list[list[int]]:
    """``table[j][l] = E[B_j^l]`` for j <= n, l <= k, by the exact recursion."""
    coeffs = [[]] + [_coefficients(order) for order in range(1, k + 1)]
    row = [1] + [0] * k
    table = [row]
    for _ in range(n):
        nxt = [1]
        for order in range(1, k + 1):
            value = row[order] + 2**order
            for l, c in enumerate(coeffs[order], start=1):
                value += c * row[l]
            nxt.append(value)
        row = nxt
        table.append(row)
    return table


@lru_cache(maxsize=64)
def moment_polynomial(k: int) -> tuple[Fraction, ...]:
    """Coefficients (constant first) of the degree-k polynomial n -> E[B_n^k]."""
    table = _moment_table(k, k)
    points = [(j, table[j][k]) for j in range(k + 1)]
    coeffs = [Fraction(0)] * (k + 1)
    for j, y in points:
        # Lagrange basis polynomial for node j
        basis = [Fraction(1)]
        denom = 1
        for i, _ in points:
            if i == j:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= i * basis[d + 1]
            denom *= j - i
        for d, c in enumerate(basis):
            coeffs[d] += Fraction(y, denom) * c
    return tuple(coeffs)


def exact_moment(n: int, k: int) -> Fraction:
    """E[B_n^k] exactly."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if n <= 4 * k:
        return Fraction(_moment_table(n, k)[n][k])
    return sum((c * n**d for d, c in enumerate(moment_polynomial(k))), Fraction(0))


def float_moment(n: int, k: int) -> float:
    """E[B_n^k] as a float."""
    return float(exact_moment(n, k))


def exact_size_distribution(n: int, cap: int | None = None) -> RationalDist:
    """Exact law of B_n."""
    limit = get_config().caps.size_oracle if cap is None else cap
    if n > limit:
        raise ResourceCapExceeded("size oracle n", n, limit)
    return push_forward(SizeChain(), n)
