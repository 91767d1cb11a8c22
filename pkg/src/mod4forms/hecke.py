"""Level-one Hecke operators and congruence verdicts modulo powers of two."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from . import qseries
from .qseries import QExpansion


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def hecke_apply(h: QExpansion, n: int) -> QExpansion:
    """T_n h at level 1 via a_m(T_n h) = sum_{d | (m, n)} d^(k-1) a_{mn/d^2}(h).

    The result carries floor(prec/n) coefficients; nothing is padded.
    """
    if n < 1:
        raise ValueError("Hecke index must be positive")
    if h.prec < n:
        raise ValueError(f"precision {h.prec} too small for T_{n}")
    k = h.weight
    a = h.coeffs
    out = []
    for m in range(h.prec // n):
        out.append(sum(d ** (k - 1) * a[m * n // (d * d)] for d in divisors(gcd(m, n))))
    return QExpansion(k, tuple(out))


@dataclass
class WeakEigenformReport:
    modulus_exponent: int
    operators: tuple[int, ...]
    coefficients_checked: int
    witnesses: dict[int, list[int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.witnesses.values())


def weak_eigenform_check(h: QExpansion, m: int, operators: Iterable[int], bound: int) -> WeakEigenformReport:
    """Check T_n h = a_n(h) h (mod 2**m) on the first ``bound`` coefficients.

    Each witness list holds the first mismatching coefficient index (at most one).
    """
    ops = tuple(sorted(set(operators)))
    if not ops or min(ops) < 1:
        raise ValueError("operator indices must be positive")
    if h.prec < 2 or h[1] != 1:
        raise ValueError("weak eigenform check needs a normalized form (a_1 = 1)")
    if h.prec < bound * max(ops):
        raise ValueError(f"precision {h.prec} below {bound} * {max(ops)} required")
    mod = 1 << m
    report = WeakEigenformReport(m, ops, bound)
    for n in ops:
        th = hecke_apply(h, n)
        an = h[n]
        report.witnesses[n] = []
        for j in range(bound):
            if (th[j] - an * h[j]) % mod:
                report.witnesses[n].append(j)
                break
    return report


@dataclass
class CongruenceReport:
    modulus_exponent: int
    bound: int
    mismatch: tuple[int, int, int] | None = None  # (index, residue 1, residue 2)

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def coefficients_upto(source, bound: int) -> list[int]:
    """a_1..a_bound from a QExpansion or any object exposing ``coefficient(n)`` and ``bound``."""
    if isinstance(source, QExpansion):
        if source.prec <= bound:
            raise ValueError(f"series precision {source.prec} does not reach index {bound}")
        return list(source.coeffs[1 : bound + 1])
    if source.bound < bound:
        raise ValueError(f"coefficient source stops at {source.bound} < {bound}")
    return [source.coefficient(n) for n in range(1, bound + 1)]


def congruence_check(h1, h2, m: int, bound: int) -> CongruenceReport:
    mod = 1 << m
    c1 = coefficients_upto(h1, bound)
    c2 = coefficients_upto(h2, bound)
    for n, (x, y) in enumerate(zip(c1, c2), start=1):
        if (x - y) % mod:
            return CongruenceReport(m, bound, (n, x % mod, y % mod))
    return CongruenceReport(m, bound)


def leading_term(h: QExpansion) -> tuple[int, int] | None:
    for n, c in enumerate(h.coeffs):
        if c:
            return n, c
    return None


def s36_basis(prec: int) -> tuple[QExpansion, QExpansion, QExpansion]:
    e4 = qseries.eisenstein_e4(prec)
    d = qseries.delta(prec)
    e4_cubed = qseries.pow(e4, 3)
    return (
        qseries.mul(qseries.mul(e4_cubed, e4_cubed), d),
        qseries.mul(e4_cubed, qseries.pow(d, 2)),
        qseries.pow(d, 3),
    )


def s36_basis_triangularity_check(prec: int = 4) -> bool:
    """E4^6 Delta, E4^3 Delta^2, Delta^3 lead with 1*q, 1*q^2, 1*q^3."""
    if prec < 4:
        raise ValueError("need at least 4 coefficients")
    basis = s36_basis(prec)
    return [leading_term(b) for b in basis] == [(1, 1), (2, 1), (3, 1)]


# generators of the one-dimensional spaces S_k(1): Delta * E4^a * E6^b
HATADA_GENERATORS = {16: (1, 0), 18: (0, 1), 20: (2, 0), 22: (1, 1), 26: (2, 1)}


def hatada_generator(weight: int, prec: int) -> QExpansion:
    if weight not in HATADA_GENERATORS:
        raise ValueError(f"weight {weight} is not one of {sorted(HATADA_GENERATORS)}")
    a, b = HATADA_GENERATORS[weight]
    h = qseries.delta(prec)
    h = qseries.mul(h, qseries.pow(qseries.eisenstein_e4(prec), a))
    return qseries.mul(h, qseries.pow(qseries.eisenstein_e6(prec), b))


def hatada_consistency_check(weights: Iterable[int], bound: int, m: int = 2) -> dict[int, CongruenceReport]:
    """Each one-dimensional cusp space generator against Delta mod 2**m up to ``bound``."""
    d = qseries.delta(bound + 1)
    return {k: congruence_check(hatada_generator(k, bound + 1), d, m, bound) for k in sorted(set(weights))}
