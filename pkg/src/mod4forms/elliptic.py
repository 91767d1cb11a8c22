"""Curves y^2 = x^3 + a2 x^2 + a4 x + a6 over exact fields, point counts,
and the weight-2 newform attached to E: y^2 = x^3 + x^2 + x + 1.

Coefficients and coordinates may be ints, Fractions, prime-field elements,
F_{p^2} elements or tower-field elements; the group law only uses +, -, *, /
and ==.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt

from . import squares
from .fields import PrimeField, QuadraticExtension
from .tower import TowerSpec, build_K


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    a2: object
    a4: object
    a6: object
    name: str = ""

    def __post_init__(self):
        if self.discriminant() == 0:
            raise CurveError(f"singular curve {self}")

    def discriminant(self):
        b2 = 4 * self.a2
        b4 = 2 * self.a4
        b6 = 4 * self.a6
        b8 = 4 * self.a2 * self.a6 - self.a4 * self.a4
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, P) -> bool:
        return P is INFINITY or P.y * P.y == self.rhs(P.x)

    def point(self, x, y) -> "Point":
        P = Point(x, y)
        if not self.contains(P):
            raise CurveError(f"({x}, {y}) is not on {self}")
        return P

    def base_change(self, convert) -> "WeierstrassCurve":
        return WeierstrassCurve(convert(self.a2), convert(self.a4), convert(self.a6), self.name)

    def __str__(self):
        return self.name or f"y^2 = x^3 + ({self.a2})x^2 + ({self.a4})x + ({self.a6})"


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "O"


INFINITY = _Infinity()


@dataclass(frozen=True)
class Point:
    x: object
    y: object


E = WeierstrassCurve(1, 1, 1, "E: y^2 = x^3 + x^2 + x + 1")

# the only datum taken from outside the computation: E has conductor 128
E_LEVEL = 128


# -- group law ------------------------------------------------------------------


def _check(C, *points):
    for P in points:
        if not C.contains(P):
            raise CurveError(f"{P} is not on {C}")


def _neg(C, P):
    return P if P is INFINITY else Point(P.x, -P.y)


def _div(a, b):
    # keep rational arithmetic exact; int / int would give a float
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _add(C, P, Q):
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        lam = _div(3 * P.x * P.x + 2 * C.a2 * P.x + C.a4, 2 * P.y)
    else:
        lam = _div(Q.y - P.y, Q.x - P.x)
    x3 = lam * lam - C.a2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(x3, y3)


def _mul(C, k, P):
    if k < 0:
        return _mul(C, -k, _neg(C, P))
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = _add(C, result, addend)
        k >>= 1
        if k:
            addend = _add(C, addend, addend)
    return result


def point_neg(C: WeierstrassCurve, P):
    _check(C, P)
    return _neg(C, P)


def point_add(C: WeierstrassCurve, P, Q):
    _check(C, P, Q)
    return _add(C, P, Q)


def point_double(C: WeierstrassCurve, P):
    _check(C, P)
    return _add(C, P, P)


def scalar_mul(C: WeierstrassCurve, k: int, P):
    _check(C, P)
    return _mul(C, k, P)


def point_order(C: WeierstrassCurve, P, limit: int = 64) -> int:
    _check(C, P)
    Q = P
    for n in range(1, limit + 1):
        if Q is INFINITY:
            return n
        Q = _add(C, Q, P)
    raise CurveError(f"order of {P} exceeds {limit}")


# -- the 4-torsion of E over K -------------------------------------------------------


def torsion_points(K: TowerSpec | None = None) -> tuple[WeierstrassCurve, dict[str, Point]]:
    """E over K with the 2-torsion Q_j and chosen halves P_j (2 P_j = Q_j)."""
    if K is None:
        K = build_K()[0]
    i, s2, g = K.gens()
    EK = E.base_change(K.scalar)
    pts = {
        "Q1": (-i, 0 * i),
        "Q2": (K.scalar(-1), K.zero()),
        "Q3": (i, K.zero()),
        "P1": (-i - i * s2 * g, -2 * i - s2 * g - i * s2 * g),
        "P2": (-1 + s2, g + i * g - i * s2 * g),
        "P3": (i - g - i * g, 2 * i - 2 * i * g),
    }
    return EK, {name: EK.point(x, y) for name, (x, y) in pts.items()}


def four_torsion_combinations(EK: WeierstrassCurve, P1, P2) -> dict[tuple[int, int], object]:
    """a P1 + b P2 for a, b in Z/4."""
    multiples1 = [_mul(EK, a, P1) for a in range(4)]
    multiples2 = [_mul(EK, b, P2) for b in range(4)]
    return {(a, b): _add(EK, multiples1[a], multiples2[b]) for a, b in product(range(4), range(4))}


@dataclass
class TorsionReport:
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def torsion_verify() -> TorsionReport:
    report = TorsionReport()
    try:
        EK, pts = torsion_points()
    except CurveError as exc:
        report.checks[f"on-curve: {exc}"] = False
        return report
    for name in pts:
        report.checks[f"{name} on E"] = True
    for j in (1, 2, 3):
        P, Q = pts[f"P{j}"], pts[f"Q{j}"]
        report.checks[f"2*P{j} == Q{j}"] = _add(EK, P, P) == Q
        report.checks[f"2*Q{j} == O"] = _add(EK, Q, Q) is INFINITY
    report.checks["P1 + P2 == P3"] = _add(EK, pts["P1"], pts["P2"]) == pts["P3"]
    report.checks["order(P1) == 4"] = point_order(EK, pts["P1"]) == 4
    report.checks["order(P2) == 4"] = point_order(EK, pts["P2"]) == 4
    combos = four_torsion_combinations(EK, pts["P1"], pts["P2"])
    report.checks["<P1, P2> has 16 elements"] = len(set(combos.values())) == 16
    return report


# -- point counting ----------------------------------------------------------------


def _reduce_mod(c, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise CurveError(f"coefficient {c} is not integral at {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def _good_reduction(C: WeierstrassCurve, ell: int):
    if ell == 2:
        raise CurveError("p = 2 is excluded: the short model has bad reduction there")
    if _reduce_mod(C.discriminant(), ell) == 0:
        raise CurveError(f"{C} has bad reduction at {ell}")


def count_points_prime(ell: int, C: WeierstrassCurve = E) -> int:
    """#C(F_ell) = ell + 1 + sum_x chi(x^3 + a2 x^2 + a4 x + a6), point at infinity included."""
    if ell == 2 or not squares.is_prime(ell):
        raise CurveError(f"{ell} is not an odd prime")
    _good_reduction(C, ell)
    a2, a4, a6 = (_reduce_mod(c, ell) for c in (C.a2, C.a4, C.a6))
    chi = [-1] * ell
    chi[0] = 0
    for y in range(1, (ell + 1) // 2):
        chi[y * y % ell] = 1
    total = 0
    for x in range(ell):
        total += chi[(((x + a2) * x + a4) * x + a6) % ell]
    return ell + 1 + total


def count_points_brute(ell: int, C: WeierstrassCurve = E) -> int:
    """Exhaustive count over all (x, y) in F_ell^2 plus infinity."""
    _good_reduction(C, ell)
    a2, a4, a6 = (_reduce_mod(c, ell) for c in (C.a2, C.a4, C.a6))
    affine = sum(
        1 for x in range(ell) for y in range(ell) if (y * y - (((x + a2) * x + a4) * x + a6)) % ell == 0
    )
    return affine + 1


@lru_cache(maxsize=None)
def trace_a(ell: int, C: WeierstrassCurve = E) -> int:
    """a_ell = ell + 1 - #C(F_ell)."""
    return ell + 1 - count_points_prime(ell, C)


def _traces_chunk(primes):
    return [trace_a(p) for p in primes]


def traces(primes: list[int], jobs: int = 1) -> dict[int, int]:
    """a_ell(E) for each prime in ``primes``; identical output for any ``jobs``."""
    if jobs <= 1 or len(primes) < 64:
        return {p: trace_a(p) for p in primes}
    chunks = [primes[k::jobs] for k in range(jobs)]
    out: dict[int, int] = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk, values in zip(chunks, pool.map(_traces_chunk, chunks)):
            out.update(zip(chunk, values))
    return {p: out[p] for p in primes}


@dataclass(frozen=True)
class NewformCoefficients:
    """a_1..a_bound of the newform attached to E (index 0 unused)."""

    bound: int
    values: tuple[int, ...]
    level: int = E_LEVEL

    def coefficient(self, n: int) -> int:
        if not 1 <= n <= self.bound:
            raise IndexError(f"index {n} outside 1..{self.bound}")
        return self.values[n]

    def __getitem__(self, n):
        return self.coefficient(n)


def _smallest_prime_factors(n: int) -> list[int]:
    spf = list(range(n + 1))
    for p in range(2, isqrt(n) + 1):
        if spf[p] == p:
            for m in range(p * p, n + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def g_coefficients(bound: int, jobs: int = 1) -> NewformCoefficients:
    """Coefficients from point counts at odd primes, a_{2^k} = 0, the Hecke
    recursion a_{p^(k+1)} = a_p a_{p^k} - p a_{p^(k-1)}, and multiplicativity."""
    if bound < 1:
        raise ValueError("bound must be positive")
    a = [0] * (bound + 1)
    a[1] = 1
    ap = traces(squares.odd_primes_up_to(bound), jobs)
    spf = _smallest_prime_factors(bound)
    for n in range(2, bound + 1):
        p = spf[n]
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        if m > 1:
            a[n] = a[m] * a[n // m]
        elif p == 2:
            a[n] = 0
        elif k == 1:
            a[n] = ap[p]
        else:
            a[n] = ap[p] * a[n // p] - p * a[n // (p * p)]
    return NewformCoefficients(bound, tuple(a))


# -- twists and F_{ell^2} --------------------------------------------------------------

TWIST_DISCRIMINANTS = (-1, 2, -2)


def quadratic_twist(C: WeierstrassCurve, D: int) -> WeierstrassCurve:
    """y^2 = x^3 + D a2 x^2 + D^2 a4 x + D^3 a6; D = 1 returns C."""
    if D == 1:
        return C
    if D not in TWIST_DISCRIMINANTS:
        raise CurveError(f"unsupported twist {D}; expected one of {TWIST_DISCRIMINANTS}")
    return WeierstrassCurve(D * C.a2, D * D * C.a4, D**3 * C.a6, f"twist of E by {D}")


F_ELL_SQUARED_GUARD = 61


def count_points_quadratic(ell: int, C: WeierstrassCurve = E, guard: int = F_ELL_SQUARED_GUARD) -> int:
    """#C(F_{ell^2}) by enumerating every x and y in F_ell[t]/(t^2 - nu)."""
    if ell > guard:
        raise CurveError(f"ell = {ell} exceeds the enumeration guard {guard}")
    if ell == 2 or not squares.is_prime(ell):
        raise CurveError(f"{ell} is not an odd prime")
    _good_reduction(C, ell)
    F = QuadraticExtension(ell)
    CF = C.base_change(lambda c: F(_reduce_mod(c, ell)))
    square_counts: dict = {}
    for y in F.elements():
        v = y * y
        square_counts[v] = square_counts.get(v, 0) + 1
    return 1 + sum(square_counts.get(CF.rhs(x), 0) for x in F.elements())


@dataclass
class FrobeniusSquareReport:
    ell: int
    count: int
    expected: int
    divisible_by_16: bool

    @property
    def passed(self) -> bool:
        if self.count != self.expected:
            return False
        # E cannot carry a rational 4-torsion structure over F_{ell^2} when ell = 3 mod 8
        return not (self.ell % 8 == 3 and self.divisible_by_16)


def frobenius_square_identity(ell: int, C: WeierstrassCurve = E, guard: int = F_ELL_SQUARED_GUARD) -> FrobeniusSquareReport:
    """Compare #C(F_{ell^2}) with (ell + 1)^2 - a_ell^2."""
    count = count_points_quadratic(ell, C, guard)
    a = ell + 1 - count_points_prime(ell, C)
    return FrobeniusSquareReport(ell, count, (ell + 1) ** 2 - a * a, count % 16 == 0)


def prime_field_curve(ell: int, C: WeierstrassCurve = E) -> WeierstrassCurve:
    F = PrimeField(ell)
    _good_reduction(C, ell)
    return C.base_change(lambda c: F(_reduce_mod(c, ell)))


def affine_points(C: WeierstrassCurve, field_elements) -> list[Point]:
    elems = list(field_elements)
    return [Point(x, y) for x in elems for y in elems if y * y == C.rhs(x)]
