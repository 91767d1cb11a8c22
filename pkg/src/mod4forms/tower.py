"""Degree-8 number fields built as towers of three quadratic extensions.

An element is a vector of 8 rationals over the product basis
g1^a g2^b g3^c (a, b, c in {0, 1}), stored at index a + 2b + 4c. Level j
adjoins g_j with g_j^2 = D_j, where D_j lives in the tower below it.

Two towers are provided:

* K = Q(i, sqrt2, sqrt(1+i)), with D = -1, 2, 1+i
* L = Q(i, sqrt2, 2^(1/4)),   with D = -1, 2, sqrt2
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class TowerError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TowerSpec:
    """Generator labels and the defining squares, each given as coordinates at its own depth."""

    name: str
    labels: tuple[str, ...]
    squares: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        for j, sq in enumerate(self.squares):
            if len(sq) != 1 << j:
                raise TowerError(f"defining square of level {j + 1} must have {1 << j} coordinates")

    @property
    def depth(self) -> int:
        return len(self.labels)

    @property
    def degree(self) -> int:
        return 1 << self.depth

    def element(self, coords: Sequence) -> "TowerElement":
        return TowerElement(self, tuple(Fraction(c) for c in coords))

    def zero(self) -> "TowerElement":
        return self.element([0] * self.degree)

    def one(self) -> "TowerElement":
        return self.scalar(1)

    def scalar(self, c) -> "TowerElement":
        return self.element([c] + [0] * (self.degree - 1))

    def gen(self, label: str) -> "TowerElement":
        j = self.labels.index(label)
        coords = [0] * self.degree
        coords[1 << j] = 1
        return self.element(coords)

    def gens(self) -> tuple["TowerElement", ...]:
        return tuple(self.gen(lbl) for lbl in self.labels)

    def basis(self) -> list["TowerElement"]:
        out = []
        for k in range(self.degree):
            coords = [0] * self.degree
            coords[k] = 1
            out.append(self.element(coords))
        return out

    def basis_label(self, k: int) -> str:
        parts = [lbl for j, lbl in enumerate(self.labels) if k >> j & 1]
        return "*".join(parts) or "1"

    def random_element(self, rng: random.Random, nonzero: bool = False) -> "TowerElement":
        """Coordinates n/d with n in [-9, 9], d in [1, 4]."""
        while True:
            x = self.element([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(self.degree)])
            if not (nonzero and x.is_zero()):
                return x

    def __repr__(self):
        return f"TowerSpec({self.name}: {', '.join(self.labels)})"


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _neg(x):
    return tuple(-a for a in x)


def _mul(x, y, squares):
    """Product at depth len(squares); (x0 + x1 g)(y0 + y1 g) = (x0 y0 + D x1 y1) + (x0 y1 + x1 y0) g."""
    if not squares:
        return (x[0] * y[0],)
    h = len(x) // 2
    lower = squares[:-1]
    x0, x1, y0, y1 = x[:h], x[h:], y[:h], y[h:]
    a = _mul(x0, y0, lower)
    b = _mul(_mul(x1, y1, lower), squares[-1], lower)
    c = _add(_mul(x0, y1, lower), _mul(x1, y0, lower))
    return _add(a, b) + c


def _inv(x, squares):
    """(x0 + x1 g)^-1 = (x0 - x1 g) * (x0^2 - D x1^2)^-1, the norm inverted one level down."""
    if not squares:
        if x[0] == 0:
            raise ZeroDivisionError("inverse of zero in tower field")
        return (1 / x[0],)
    h = len(x) // 2
    lower = squares[:-1]
    x0, x1 = x[:h], x[h:]
    norm = _sub(_mul(x0, x0, lower), _mul(_mul(x1, x1, lower), squares[-1], lower))
    ninv = _inv(norm, lower)
    return _mul(x0, ninv, lower) + _neg(_mul(x1, ninv, lower))


class TowerElement:
    __slots__ = ("tower", "coords")

    def __init__(self, tower: TowerSpec, coords: tuple[Fraction, ...]):
        if len(coords) != tower.degree:
            raise TowerError(f"expected {tower.degree} coordinates, got {len(coords)}")
        self.tower = tower
        self.coords = coords

    def _coerce(self, other) -> "TowerElement":
        if isinstance(other, TowerElement):
            if other.tower is not self.tower:
                raise TowerError(f"tower mismatch: {self.tower.name} vs {other.tower.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower.scalar(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TowerElement(self.tower, _add(self.coords, other.coords))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TowerElement(self.tower, _sub(self.coords, other.coords))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TowerElement(self.tower, _neg(self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TowerElement(self.tower, tuple(other * c for c in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TowerElement(self.tower, _mul(self.coords, other.coords, self.tower.squares))

    __rmul__ = __mul__

    def inverse(self) -> "TowerElement":
        return TowerElement(self.tower, _inv(self.coords, self.tower.squares))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in tower field")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.tower.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coords == other.coords

    def __hash__(self):
        return hash((id(self.tower), self.coords))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                lbl = self.tower.basis_label(k)
                terms.append(str(c) if lbl == "1" else f"({c})*{lbl}")
        return " + ".join(terms) or "0"


def _embed(coords: Sequence[Fraction], tower: TowerSpec) -> TowerElement:
    return tower.element(list(coords) + [0] * (tower.degree - len(coords)))


class FieldAutomorphism:
    """An automorphism fixed by the images of the tower generators.

    Construction checks the defining relations, image(g_j)^2 = sigma(D_j),
    and then the full multiplication table on basis products.
    """

    def __init__(self, tower: TowerSpec, images: Sequence[TowerElement], name: str = "", _trusted: bool = False):
        if len(images) != tower.depth:
            raise TowerError(f"need {tower.depth} generator images, got {len(images)}")
        for img in images:
            if img.tower is not tower:
                raise TowerError("generator image lives in a different tower")
        self.tower = tower
        self.images = tuple(images)
        self.name = name
        # images of basis products, as coordinate rows
        basis_images = []
        for k in range(tower.degree):
            x = tower.one()
            for j, img in enumerate(images):
                if k >> j & 1:
                    x = x * img
            basis_images.append(x)
        self._basis_images = basis_images
        if _trusted:
            return
        for j, img in enumerate(images):
            target = self(_embed(tower.squares[j], tower))
            if img * img != target:
                raise TowerError(
                    f"{tower.labels[j]} -> {img} is inconsistent: its square {img * img} != image of "
                    f"{_embed(tower.squares[j], tower)} = {target}"
                )
        basis = tower.basis()
        for a in basis:
            for b in basis:
                if self(a * b) != self(a) * self(b):
                    raise TowerError("map is not multiplicative on the product basis")

    def __call__(self, a: TowerElement) -> TowerElement:
        return apply(self, a)

    def __eq__(self, other):
        return isinstance(other, FieldAutomorphism) and other.tower is self.tower and other.images == self.images

    def __hash__(self):
        return hash(tuple(img.coords for img in self.images))

    def __mul__(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        return compose(self, other)

    def __pow__(self, e: int) -> "FieldAutomorphism":
        result = identity(self.tower)
        for _ in range(e % order(self)):
            result = compose(self, result)
        return result

    def is_identity(self) -> bool:
        return all(img == g for img, g in zip(self.images, self.tower.gens()))

    def __repr__(self):
        body = ", ".join(f"{lbl} -> {img}" for lbl, img in zip(self.tower.labels, self.images))
        return f"FieldAutomorphism({self.name or self.tower.name}: {body})"


def make_automorphism(tower: TowerSpec, images: Sequence[TowerElement], name: str = "") -> FieldAutomorphism:
    return FieldAutomorphism(tower, images, name)


def apply(sigma: FieldAutomorphism, a: TowerElement) -> TowerElement:
    if a.tower is not sigma.tower:
        raise TowerError(f"tower mismatch: {sigma.tower.name} vs {a.tower.name}")
    coords = [Fraction(0)] * sigma.tower.degree
    for c, img in zip(a.coords, sigma._basis_images):
        if c:
            coords = [x + c * y for x, y in zip(coords, img.coords)]
    return TowerElement(sigma.tower, tuple(coords))


def compose(sigma: FieldAutomorphism, tau: FieldAutomorphism) -> FieldAutomorphism:
    """sigma o tau: apply tau first."""
    if sigma.tower is not tau.tower:
        raise TowerError("cannot compose automorphisms of different towers")
    # a composite of validated automorphisms needs no re-validation
    return FieldAutomorphism(sigma.tower, [sigma(img) for img in tau.images], _trusted=True)


def identity(tower: TowerSpec) -> FieldAutomorphism:
    return FieldAutomorphism(tower, tower.gens(), "id", _trusted=True)


def order(sigma: FieldAutomorphism) -> int:
    power = sigma
    e = 1
    while not power.is_identity():
        power = compose(sigma, power)
        e += 1
        if e > sigma.tower.degree:
            raise TowerError("automorphism order exceeds the field degree")
    return e


def generated_group(gens: Sequence[FieldAutomorphism]) -> list[FieldAutomorphism]:
    tower = gens[0].tower
    group = [identity(tower)]
    frontier = list(group)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in group:
                    group.append(y)
                    new.append(y)
        frontier = new
    return group


def _spec(name, labels, squares) -> TowerSpec:
    return TowerSpec(name, labels, tuple(tuple(Fraction(c) for c in sq) for sq in squares))


def build_K() -> tuple[TowerSpec, FieldAutomorphism, FieldAutomorphism]:
    """K = Q(i, sqrt2, sqrt(1+i)) and its automorphisms r, s."""
    K = _spec("K", ("i", "sqrt2", "sqrt(1+i)"), [(-1,), (2, 0), (1, 1, 0, 0)])
    i, s2, g = K.gens()
    # r(g) = (1 - i)/sqrt2 * g = (1 - i) * sqrt2 / 2 * g
    r = make_automorphism(K, [-i, -s2, (1 - i) * s2 * g / 2], "r")
    s = make_automorphism(K, [i, -s2, g], "s")
    return K, r, s


def build_L() -> tuple[TowerSpec, FieldAutomorphism, FieldAutomorphism]:
    """L = Q(i, sqrt2, t) with t^2 = sqrt2, so t = 2^(1/4)."""
    L = _spec("L", ("i", "sqrt2", "2^(1/4)"), [(-1,), (2, 0), (0, 0, 1, 0)])
    i, s2, t = L.gens()
    r = make_automorphism(L, [i, -s2, i * t], "r")
    s = make_automorphism(L, [-i, s2, t], "s")
    return L, r, s
