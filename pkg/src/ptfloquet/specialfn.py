"""
Bessel functions J_n(x), I_n(x) and factorials.

Integer order, real argument, on the domain |n| <= 200, |x| <= 50:

- |x| <= 12: power series; J exactly in rationals, I with math.fsum and
  lgamma so that high orders do not overflow
- |x| > 12: Miller's downward recurrence, normalised with
  J_0 + 2 sum J_2k = 1 or I_0 + 2 sum I_k = exp(x)

J_n at imaginary argument comes from J_n(iy) = i^n I_n(y).
"""

from __future__ import annotations

import math
from fractions import Fraction

from scipy import special

from ptfloquet.core.constants import BESSEL_DEFAULTS
from ptfloquet.core.errors import DomainExceeded

SERIES_SWITCH = BESSEL_DEFAULTS["series_switch"]
MAX_ORDER = int(BESSEL_DEFAULTS["max_order"])
MAX_ARG = BESSEL_DEFAULTS["max_arg"]

_EXACT_FACTORIAL_LIMIT = 20
_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250
_SERIES_EPS = Fraction(1, 10**18)
_SERIES_FLOOR = Fraction(1, 10**40)


def _check_domain(n: int, x: float) -> None:
    if abs(n) > MAX_ORDER or not abs(x) <= MAX_ARG:
        raise DomainExceeded(
            f"Bessel order/argument outside |n| <= {MAX_ORDER}, |x| <= {MAX_ARG:g}: n={n}, x={x}"
        )


def factorial(n: int) -> int | float:
    """
    n! as an exact int up to 20!, as a float beyond.

    Raises:
        ValueError: n < 0
    """
    if n < 0:
        raise ValueError(f"factorial of negative number: {n}")
    if n <= _EXACT_FACTORIAL_LIMIT:
        return math.factorial(n)
    return float(special.factorial(n, exact=False))


def _series_j(n: int, x: float) -> float:
    """
    sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!) for n >= 0, x > 0.

    Summed in exact rational arithmetic; at x = 12 the terms reach ~1e4.
    """
    half = Fraction(x) / 2
    half_sq = half * half
    term = half**n / math.factorial(n)
    total = term
    k = 0
    while True:
        term = -term * half_sq / ((k + 1) * (k + n + 1))
        total += term
        k += 1
        # terms shrink monotonically once k exceeds x/2
        if k > 0.5 * x and (abs(term) <= _SERIES_EPS * abs(total) or abs(term) < _SERIES_FLOOR):
            break
    return float(total)


def _series_i(n: int, x: float) -> float:
    """sum_k (x/2)^(2k+n) / (k! (k+n)!) for n >= 0, x > 0 (positive terms)."""
    log_half = math.log(0.5 * x)
    terms: list[float] = []
    k = 0
    while True:
        log_term = (2 * k + n) * log_half - math.lgamma(k + 1) - math.lgamma(k + n + 1)
        term = math.exp(log_term)
        terms.append(term)
        if k > 0.5 * x and term <= 1e-17 * terms[0]:
            break
        k += 1
    return math.fsum(terms)


def _miller_start(n: int, x: float) -> int:
    m = int(max(n, x) + 20 + math.sqrt(40.0 * max(n, x)))
    return m + (m % 2)


def _miller_j(n: int, x: float) -> float:
    """J_n(x) for n >= 0, x > 12."""
    m = _miller_start(n, x)
    j_next, j_cur = 0.0, 1e-30
    result = 0.0
    norm = 0.0
    for k in range(m, 0, -1):
        # j_cur holds J_k, compute J_{k-1}
        j_prev = (2.0 * k / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if k - 1 == n:
            result = j_cur
        if (k - 1) > 0 and (k - 1) % 2 == 0:
            norm += 2.0 * j_cur
        if abs(j_cur) > _RESCALE_AT:
            j_cur *= _RESCALE_BY
            j_next *= _RESCALE_BY
            result *= _RESCALE_BY
            norm *= _RESCALE_BY
    norm += j_cur
    return result / norm


def _miller_i(n: int, x: float) -> float:
    """I_n(x) for n >= 0, x > 12."""
    m = _miller_start(n, x)
    i_next, i_cur = 0.0, 1e-30
    result = 0.0
    norm = 0.0
    for k in range(m, 0, -1):
        i_prev = (2.0 * k / x) * i_cur + i_next
        i_next, i_cur = i_cur, i_prev
        if k - 1 == n:
            result = i_cur
        if k - 1 > 0:
            norm += 2.0 * i_cur
        if i_cur > _RESCALE_AT:
            i_cur *= _RESCALE_BY
            i_next *= _RESCALE_BY
            result *= _RESCALE_BY
            norm *= _RESCALE_BY
    norm += i_cur
    return result * (math.exp(x) / norm)


def bessel_j(n: int, x: float) -> float:
    """
    Bessel function of the first kind J_n(x).

    Args:
        n: Integer order, |n| <= 200
        x: Real argument, |x| <= 50

    Returns:
        J_n(x) with absolute error below 1e-12

    Raises:
        DomainExceeded: order or argument outside the supported domain

    Example:
        >>> round(bessel_j(1, 1.0), 10)
        0.4400505857
    """
    _check_domain(n, x)
    order = abs(n)
    sign = -1.0 if (n < 0 and order % 2) else 1.0
    if x < 0:
        sign *= -1.0 if order % 2 else 1.0
        x = -x
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x <= SERIES_SWITCH:
        value = _series_j(order, x)
    else:
        value = _miller_j(order, x)
    return sign * value


def bessel_i(n: int, x: float) -> float:
    """
    Modified Bessel function of the first kind I_n(x).

    I_{-n} = I_n; I_n(-x) = (-1)^n I_n(x). Accuracy is relative,
    1e-12 * max(1, I_n(x)), since I_0(50) is about 3e20.

    Raises:
        DomainExceeded: order or argument outside the supported domain
    """
    _check_domain(n, x)
    order = abs(n)
    sign = 1.0
    if x < 0:
        sign = -1.0 if order % 2 else 1.0
        x = -x
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x <= SERIES_SWITCH:
        value = _series_i(order, x)
    else:
        value = _miller_i(order, x)
    return sign * value


def bessel_j_imaginary(n: int, y: float) -> complex:
    """J_n(iy) = i^n I_n(y), valid for every integer n."""
    phase = (1.0 + 0j, 1j, -1.0 + 0j, -1j)[n % 4]
    return phase * bessel_i(n, y)
