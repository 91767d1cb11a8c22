"""Jacobi symbols, counts of representations by three squares, and the
prime-coefficient rule for f modulo 4."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def odd_primes_up_to(n: int) -> list[int]:
    return [p for p in primes_up_to(n) if p != 2]


def _require_odd_prime(ell: int):
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"{ell} is not an odd prime")


def jacobi(r: int, n: int) -> int:
    """Jacobi symbol (r/n) for odd n >= 1, by quadratic reciprocity."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    r %= n
    sign = 1
    while r:
        while r % 2 == 0:
            r //= 2
            if n % 8 in (3, 5):
                sign = -sign
        r, n = n, r
        if r % 4 == 3 and n % 4 == 3:
            sign = -sign
        r %= n
    return sign if n == 1 else 0


def legendre(a: int, ell: int) -> int:
    return jacobi(a, ell)


def r3_closed(n: int) -> int:
    """r_3(n) from the Eisenstein-Dirichlet character-sum formula, n = 1, 3 (mod 4)."""
    if n < 1 or n % 4 not in (1, 3):
        raise ValueError(f"closed form only covers n = 1, 3 (mod 4), got {n}")
    factor, span = (24, n // 4) if n % 4 == 1 else (8, n // 2)
    total = 0
    d = 1
    while d * d <= n:
        if n % (d * d) == 0:
            m = n // (d * d)
            total += sum(jacobi(r, m) for r in range(1, span + 1))
        d += 1
    return factor * total


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(n % (d * d) for d in range(2, isqrt(n) + 1))


def r3_closed_valid(n: int) -> bool:
    """Whether the closed form is a theorem at n: squarefree n > 1 with n = 1 (mod 4) or n = 3 (mod 8).

    Outside this set the displayed formula is wrong in general: it gives 0 at
    n = 1, a nonzero value at every n = 7 (mod 8) where r_3 vanishes, and
    miscounts at many non-squarefree n such as 9.
    """
    return n > 1 and is_squarefree(n) and (n % 4 == 1 or n % 8 == 3)


def r3_brute(n: int) -> int:
    """Number of (x, y, z) in Z^3 with x^2 + y^2 + z^2 = n, by enumeration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = isqrt(n)
    count = 0
    for x in range(-s, s + 1):
        rx = n - x * x
        for y in range(-s, s + 1):
            rest = rx - y * y
            if rest < 0:
                continue
            z = isqrt(rest)
            if z * z == rest:
                count += 1 if z == 0 else 2
    return count


def q3_brute(n: int) -> int:
    """Ordered triples of positive odd integers with x^2 + y^2 + z^2 = n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = isqrt(n)
    count = 0
    for x in range(1, s + 1, 2):
        for y in range(1, s + 1, 2):
            rest = n - x * x - y * y
            if rest <= 0:
                continue
            z = isqrt(rest)
            if z * z == rest and z % 2 == 1:
                count += 1
    return count


@dataclass(frozen=True)
class ResidueTally:
    ell: int
    residues: int
    nonresidues: int

    @property
    def difference(self) -> int:
        return self.residues - self.nonresidues


def residue_tally(ell: int) -> ResidueTally:
    """Quadratic residues and nonresidues mod ell lying in [1, (ell-1)/2]."""
    _require_odd_prime(ell)
    half = (ell - 1) // 2
    squares = {x * x % ell for x in range(1, ell)}
    r = sum(1 for a in range(1, half + 1) if a in squares)
    return ResidueTally(ell, r, half - r)


def f_mod4_rule(ell: int) -> int:
    """a_ell(f) mod 4 predicted from ell mod 8: 2 for 1, 3, 5 and 0 for 7 (and ell = 2)."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    return 2 if ell % 8 in (1, 3, 5) else 0


def kolberg_residue(ell: int) -> int:
    """The predicted residue of tau(ell) mod 4 for odd primes: 1 + ell^11."""
    _require_odd_prime(ell)
    return (1 + pow(ell, 11, 4)) % 4
