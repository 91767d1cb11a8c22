"""Exact truncated q-expansions and the classical level-one forms.

Coefficients are Python integers throughout. Products of long series go
through Kronecker substitution: both operands are packed into a single big
integer, multiplied once, and unpacked, which is exact and far faster than a
quadratic convolution loop for the 10^3..10^4 term ranges used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Sequence

import numpy as np

try:
    import gmpy2

    _big = gmpy2.mpz
except ImportError:  # pragma: no cover - pure-int fallback
    _big = int


@dataclass(frozen=True)
class QExpansion:
    """Truncated q-expansion sum_{n < prec} a_n q^n of a form of weight ``weight``."""

    weight: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")
        if not self.coeffs:
            raise ValueError("empty q-expansion")

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, prec: int) -> "QExpansion":
        if not 1 <= prec <= self.prec:
            raise ValueError(f"cannot truncate precision {self.prec} to {prec}")
        return QExpansion(self.weight, self.coeffs[:prec])

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return mul(self, other)
        return scale(other, self)

    __rmul__ = __mul__

    def __pow__(self, e):
        return pow(self, e)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.prec > 6 else ""
        return f"QExpansion(weight={self.weight}, prec={self.prec}, [{head}{more}])"


@dataclass(frozen=True)
class ResidueSeries:
    """A q-expansion reduced modulo 2**m, residues normalized to [0, 2**m)."""

    modulus_exponent: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.modulus_exponent < 1:
            raise ValueError("modulus exponent must be positive")
        mod = self.modulus
        if any(not 0 <= r < mod for r in self.residues):
            raise ValueError(f"residues must lie in [0, {mod})")

    @property
    def modulus(self) -> int:
        return 1 << self.modulus_exponent

    @property
    def prec(self) -> int:
        return len(self.residues)

    def __getitem__(self, n):
        return self.residues[n]

    def __len__(self):
        return len(self.residues)

    def __mul__(self, other: "ResidueSeries") -> "ResidueSeries":
        if self.modulus_exponent != other.modulus_exponent:
            raise ValueError("modulus mismatch")
        prec = min(self.prec, other.prec)
        prod = _convolve(self.residues[:prec], other.residues[:prec], prec)
        return ResidueSeries(self.modulus_exponent, tuple(c % self.modulus for c in prod))

    def scaled(self, c: int) -> "ResidueSeries":
        return ResidueSeries(self.modulus_exponent, tuple(c * r % self.modulus for r in self.residues))


# -- sieves -----------------------------------------------------------------


def divisor_power_sums(k: int, prec: int) -> list[int]:
    """sigma_k(n) for 0 <= n < prec by a divisor sieve; index 0 is set to 0."""
    sigma = [0] * prec
    for d in range(1, prec):
        dk = d**k
        for n in range(d, prec, d):
            sigma[n] += dk
    return sigma


def _check_prec(prec: int, minimum: int = 1):
    if not isinstance(prec, int) or prec < minimum:
        raise ValueError(f"precision must be an integer >= {minimum}, got {prec!r}")


# -- arithmetic ---------------------------------------------------------------


def _pack(coeffs: Sequence[int], width: int) -> int:
    # signed digits: store c + 2**(width-1) as an unsigned byte block, then remove the offset
    nbytes = width // 8
    half = 1 << (width - 1)
    blob = b"".join((int(c) + half).to_bytes(nbytes, "little") for c in coeffs)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * len(coeffs), "little")
    return int.from_bytes(blob, "little") - offset


def _unpack(value: int, width: int, count: int) -> list[int]:
    nbytes = width // 8
    half = 1 << (width - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    blob = (value + offset).to_bytes(nbytes * count, "little")
    return [int.from_bytes(blob[i : i + nbytes], "little") - half for i in range(0, len(blob), nbytes)]


def _convolve(a: Sequence[int], b: Sequence[int], prec: int) -> list[int]:
    """First ``prec`` coefficients of the product of two integer sequences."""
    a = list(a[:prec])
    b = list(b[:prec])
    if not a or not b:
        return [0] * prec
    if min(len(a), len(b)) <= 32:
        out = [0] * prec
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[: prec - i]):
                    out[i + j] += x * y
        return out
    bound = max(abs(x) for x in a) * max(abs(y) for y in b) * min(len(a), len(b))
    if bound == 0:
        return [0] * prec
    width = (bound.bit_length() + 2 + 7) // 8 * 8
    prod = int(_big(_pack(a, width)) * _big(_pack(b, width)))
    out = _unpack(prod, width, len(a) + len(b) - 1)[:prec]
    return out + [0] * (prec - len(out))


def add(h1: QExpansion, h2: QExpansion) -> QExpansion:
    if h1.weight != h2.weight:
        raise ValueError(f"cannot add forms of weights {h1.weight} and {h2.weight}")
    prec = min(h1.prec, h2.prec)
    return QExpansion(h1.weight, tuple(x + y for x, y in zip(h1.coeffs[:prec], h2.coeffs[:prec])))


def scale(c: int, h: QExpansion) -> QExpansion:
    return QExpansion(h.weight, tuple(c * x for x in h.coeffs))


def mul(h1: QExpansion, h2: QExpansion) -> QExpansion:
    prec = min(h1.prec, h2.prec)
    return QExpansion(h1.weight + h2.weight, tuple(_convolve(h1.coeffs, h2.coeffs, prec)))


def pow(h: QExpansion, e: int) -> QExpansion:  # noqa: A001 - mirrors the series operation name
    if e < 0:
        raise ValueError("negative exponent")
    result = one(h.prec)
    base = h
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def one(prec: int) -> QExpansion:
    _check_prec(prec)
    return QExpansion(0, (1,) + (0,) * (prec - 1))


# -- classical forms ------------------------------------------------------------


@lru_cache(maxsize=None)
def eisenstein_e4(prec: int) -> QExpansion:
    _check_prec(prec)
    sigma = divisor_power_sums(3, prec)
    return QExpansion(4, (1,) + tuple(240 * s for s in sigma[1:]))


@lru_cache(maxsize=None)
def eisenstein_e6(prec: int) -> QExpansion:
    _check_prec(prec)
    sigma = divisor_power_sums(5, prec)
    return QExpansion(6, (1,) + tuple(-504 * s for s in sigma[1:]))


@lru_cache(maxsize=None)
def euler_product(prec: int) -> tuple[int, ...]:
    """Coefficients of prod_{n>=1} (1 - q^n) below q^prec."""
    _check_prec(prec)
    a = np.zeros(prec, dtype=object)
    a[0] = 1
    for n in range(1, prec):
        a[n:] = a[n:] - a[: prec - n]
    return tuple(int(x) for x in a)


@lru_cache(maxsize=None)
def delta(prec: int) -> QExpansion:
    """The discriminant form q * prod (1 - q^n)^24, coefficients tau(n)."""
    _check_prec(prec, 2)
    eta = QExpansion(0, euler_product(prec - 1))
    body = pow(eta, 24)
    return QExpansion(12, (0,) + body.coeffs)


@lru_cache(maxsize=None)
def build_f(prec: int) -> QExpansion:
    """f = E4^6 * Delta + 2 * Delta^3 in weight 36."""
    _check_prec(prec, 2)
    e4 = eisenstein_e4(prec)
    d = delta(prec)
    return mul(pow(e4, 6), d) + scale(2, pow(d, 3))


def delta_cubed(prec: int) -> QExpansion:
    _check_prec(prec, 2)
    return pow(delta(prec), 3)


def d_form(prec: int) -> QExpansion:
    """(E4 - 1)/16, i.e. 15 * sigma_3(n) for n >= 1.

    Not a modular form; the weight label 4 is nominal, inherited from E4.
    """
    _check_prec(prec)
    e4 = eisenstein_e4(prec)
    return QExpansion(4, (0,) + tuple(c // 16 for c in e4.coeffs[1:]))


FORMS = {
    "e4": eisenstein_e4,
    "e6": eisenstein_e6,
    "delta": delta,
    "f": build_f,
    "delta3": delta_cubed,
    "d-form": d_form,
}


# -- reductions and theta-type series ----------------------------------------


def reduce(h: QExpansion, m: int) -> ResidueSeries:
    """Reduce every coefficient of ``h`` modulo 2**m."""
    if m < 1:
        raise ValueError("modulus exponent must be positive")
    mod = 1 << m
    return ResidueSeries(m, tuple(c % mod for c in h.coeffs))


def theta_odd_squares(prec: int) -> ResidueSeries:
    """sum_{m >= 0} q^((2m+1)^2) as a series mod 2."""
    _check_prec(prec, 2)
    res = [0] * prec
    k = 1
    while k * k < prec:
        res[k * k] = 1
        k += 2
    return ResidueSeries(1, tuple(res))


def jacobi_theta_side(prec: int) -> list[int]:
    """sum over m = 1 (mod 4) of m * q^((m^2 - 1)/8), truncated below q^prec."""
    out = [0] * prec
    # (m^2 - 1)/8 < prec  <=>  |m| <= isqrt(8*prec - 7)
    limit = isqrt(8 * prec)
    for m in range(-limit - 3, limit + 4):
        if m % 4 != 1:
            continue
        e = (m * m - 1) // 8
        if e < prec:
            out[e] += m
    return out


def eta_cubed_identity_check(prec: int) -> tuple[bool, int | None]:
    """Compare prod (1-q^n)^3 with Jacobi's theta series exactly.

    Returns (passed, first mismatching index or None).
    """
    _check_prec(prec, 2)
    prod = pow(QExpansion(0, euler_product(prec)), 3).coeffs
    theta = jacobi_theta_side(prec)
    for n, (x, y) in enumerate(zip(prod, theta)):
        if x != y:
            return False, n
    return True, None
