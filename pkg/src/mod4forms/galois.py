"""The dihedral group of order 8, its two embeddings into GL_2(Z/4), and
Frobenius classes for the fields K = Q(i, sqrt2, sqrt(1+i)) and L = Q(i, 2^(1/4)).

Frobenius classes are read off from residue symbols: the three quadratic
subfields decide the class up to the centre {1, r^2}, and for L the quartic
character of 2 separates 1 from r^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import elliptic, squares
from .tower import FieldAutomorphism, build_K, compose


@dataclass(frozen=True, order=True)
class D4Element:
    """s^a r^b with a in {0, 1}, b in Z/4."""

    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % 2)
        object.__setattr__(self, "b", self.b % 4)

    def __mul__(self, other: "D4Element") -> "D4Element":
        return d4_mul(self, other)

    def __str__(self):
        s = "s" if self.a else ""
        r = {0: "", 1: "r", 2: "r^2", 3: "r^3"}[self.b]
        return (s + r) or "1"

    __repr__ = __str__


ONE = D4Element(0, 0)
R = D4Element(0, 1)
S = D4Element(1, 0)
D4 = tuple(D4Element(a, b) for a in (0, 1) for b in range(4))


def d4_mul(g: D4Element, h: D4Element) -> D4Element:
    # r^b s = s r^-b
    sign = -1 if h.a else 1
    return D4Element(g.a + h.a, sign * g.b + h.b)


def d4_inv(g: D4Element) -> D4Element:
    return g if g.a else D4Element(0, -g.b)


def d4_word(word: str) -> D4Element:
    """Evaluate a word in r and s, e.g. 'srs'."""
    x = ONE
    for ch in word:
        x = d4_mul(x, {"r": R, "s": S}[ch])
    return x


@dataclass(frozen=True)
class Mat2Z4:
    """2x2 matrix over Z/4, row-major ((a, b), (c, d))."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % 4)

    @classmethod
    def from_rows(cls, rows) -> "Mat2Z4":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, o: "Mat2Z4") -> "Mat2Z4":
        return Mat2Z4(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __pow__(self, e: int) -> "Mat2Z4":
        result = IDENTITY
        for _ in range(e):
            result = result * self
        return result

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % 4

    def trace(self) -> int:
        return (self.a + self.d) % 4

    def order(self) -> int:
        x, n = self, 1
        while x != IDENTITY:
            x, n = x * self, n + 1
            if n > 48:  # |GL_2(Z/4)| = 96; any element order divides it and is at most 12
                raise ValueError(f"{self} is not invertible")
        return n

    def __str__(self):
        return str(self.rows())


IDENTITY = Mat2Z4(1, 0, 0, 1)


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class GaloisRepresentation:
    name: str
    image_r: Mat2Z4
    image_s: Mat2Z4

    def __post_init__(self):
        images = [self(g) for g in D4]
        if len(set(images)) != 8:
            raise RepresentationError(f"{self.name} is not injective")
        for g, h in product(D4, D4):
            if self(g * h) != self(g) * self(h):
                raise RepresentationError(f"{self.name} fails to be multiplicative at {g}, {h}")
        if any(m.det() % 2 == 0 for m in images):
            raise RepresentationError(f"{self.name} has a non-invertible image")

    def __call__(self, g: D4Element) -> Mat2Z4:
        return self.image_s**g.a * self.image_r**g.b


def build_rho() -> GaloisRepresentation:
    return GaloisRepresentation("rho", Mat2Z4(1, 2, 1, 1), Mat2Z4(-1, 2, 2, -1))


def build_rho_prime() -> GaloisRepresentation:
    return GaloisRepresentation("rho'", Mat2Z4(1, 2, 1, 1), Mat2Z4(1, 0, 1, -1))


@dataclass(frozen=True)
class FrobeniusClass:
    field: str
    elements: frozenset[D4Element]

    def __post_init__(self):
        for x in self.elements:
            for g in D4:
                if d4_mul(d4_mul(g, x), d4_inv(g)) not in self.elements:
                    raise ValueError(f"{sorted(self.elements)} is not stable under conjugation")

    def __str__(self):
        return "{" + ", ".join(str(x) for x in sorted(self.elements)) + "}"


def _cls(field, *words) -> FrobeniusClass:
    return FrobeniusClass(field, frozenset(d4_word(w) if w != "1" else ONE for w in words))


def _require_odd_prime(ell):
    if ell == 2 or not squares.is_prime(ell):
        raise ValueError(f"{ell} is not an odd prime (2 ramifies)")


def frobenius_class_K(ell: int) -> FrobeniusClass:
    """Class of Frob_ell in Gal(K/Q) from the splitting in Q(i), Q(sqrt-2), Q(sqrt2).

    Fixed fields: Q(i) <-> <s, r^2>, Q(sqrt-2) <-> <r>, Q(sqrt2) <-> <sr, r^2>.
    """
    _require_odd_prime(ell)
    split_i = squares.legendre(-1, ell) == 1
    split_2 = squares.legendre(2, ell) == 1
    split_m2 = squares.legendre(-2, ell) == 1
    if split_i and split_2 and split_m2:
        cls = _cls("K", "1", "rr")
    elif split_m2:
        cls = _cls("K", "r", "rrr")
    elif split_i:
        cls = _cls("K", "s", "srr")
    else:
        cls = _cls("K", "sr", "srrr")
    by_residue = {1: ("1", "rr"), 3: ("r", "rrr"), 5: ("s", "srr"), 7: ("sr", "srrr")}[ell % 8]
    if cls != _cls("K", *by_residue):
        raise AssertionError(f"symbol and residue classifications disagree at {ell}")
    return cls


def frobenius_class_L(ell: int) -> FrobeniusClass:
    """Class of Frob_ell in Gal(L/Q).

    Fixed fields in L: Q(i) <-> <r>, Q(sqrt2) <-> <s, r^2>, Q(sqrt-2) <-> <sr, r^2>.
    For ell = 1 (mod 8), Frob_ell = 1 iff x^4 - 2 splits mod ell, i.e. 2 is a quartic residue.
    """
    _require_odd_prime(ell)
    split_i = squares.legendre(-1, ell) == 1
    split_2 = squares.legendre(2, ell) == 1
    split_m2 = squares.legendre(-2, ell) == 1
    if split_i and split_2 and split_m2:
        if pow(2, (ell - 1) // 4, ell) == 1:
            return _cls("L", "1")
        return _cls("L", "rr")
    if split_i:
        return _cls("L", "r", "rrr")
    if split_2:
        return _cls("L", "s", "srr")
    return _cls("L", "sr", "srrr")


def trace_mod4(rep: GaloisRepresentation, cls: FrobeniusClass) -> int:
    traces = {rep(g).trace() for g in cls.elements}
    if len(traces) != 1:
        raise RepresentationError(f"trace of {rep.name} not constant on {cls}: {sorted(traces)}")
    return traces.pop()


# character of the faithful 2-dimensional complex representation of D4
_IRREP_CHARACTER = {g: (2 if g.b == 0 else -2 if g.b == 2 else 0) if g.a == 0 else 0 for g in D4}


def complex_irrep_trace(cls: FrobeniusClass) -> int:
    """Character value on the class; on {1, r^2} (values 2, -2, equal mod 4) returns the value at 1."""
    values = [_IRREP_CHARACTER[g] for g in sorted(cls.elements)]
    if len(set(values)) == 1:
        return values[0]
    if len({v % 4 for v in values}) == 1:
        return values[0]
    raise RepresentationError(f"character not determined mod 4 on {cls}")


def torsion_matrices() -> tuple[Mat2Z4, Mat2Z4]:
    """Matrices of r and s on E[4] in the basis (P1, P2), acting on column vectors."""
    K, r, s = build_K()
    return tuple(automorphism_matrix(sigma) for sigma in (r, s))


def automorphism_matrix(sigma: FieldAutomorphism) -> Mat2Z4:
    EK, pts = elliptic.torsion_points(sigma.tower)
    combos = elliptic.four_torsion_combinations(EK, pts["P1"], pts["P2"])
    lookup = {pt: ab for ab, pt in combos.items()}
    columns = []
    for name in ("P1", "P2"):
        P = pts[name]
        image = elliptic.Point(sigma(P.x), sigma(P.y))
        if image not in lookup:
            raise RepresentationError(f"{sigma.name}({name}) is not in <P1, P2>")
        columns.append(lookup[image])
    (a, c), (b, d) = columns
    return Mat2Z4(a, b, c, d)


@dataclass
class Weight1Report:
    max_prime: int
    primes_checked: int
    exceptions: list[int]

    @property
    def passed(self) -> bool:
        return not self.exceptions


def weight1_noncongruence_check(max_prime: int) -> Weight1Report:
    """At every prime ell = 3, 5 (mod 8) the complex dihedral character differs from a_ell(f) mod 4."""
    if max_prime < 3:
        raise ValueError("max_prime must be at least 3")
    exceptions = []
    checked = 0
    for ell in squares.odd_primes_up_to(max_prime):
        if ell % 8 not in (3, 5):
            continue
        checked += 1
        if complex_irrep_trace(frobenius_class_K(ell)) % 4 == squares.f_mod4_rule(ell):
            exceptions.append(ell)
    return Weight1Report(max_prime, checked, exceptions)


def d4_isomorphism(r: FieldAutomorphism, s: FieldAutomorphism) -> dict[D4Element, FieldAutomorphism]:
    """Map s^a r^b to the automorphism s^a o r^b."""
    out = {}
    for g in D4:
        sigma = r**g.b
        if g.a:
            sigma = compose(s, sigma)
        out[g] = sigma
    return out
