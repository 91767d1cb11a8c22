"""Prime fields F_p and their quadratic extensions F_p[t]/(t^2 - nu)."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __call__(self, value) -> "Fp":
        return Fp(self, int(value) % self.p)

    def elements(self):
        return (Fp(self, a) for a in range(self.p))

    def __repr__(self):
        return f"F_{self.p}"


class Fp:
    __slots__ = ("field", "value")

    def __init__(self, field: PrimeField, value: int):
        self.field = field
        self.value = value

    def _lift(self, other):
        if isinstance(other, Fp):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, v):
        return Fp(self.field, v % self.field.p)

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __neg__(self):
        return self._new(-self.value)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.field}")
        return self._new(pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        return self._new(self._lift(other)) * self.inverse()

    def __pow__(self, e: int):
        return self._new(pow(self.value, e, self.field.p))

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return (self.value - o) % self.field.p == 0

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


def smallest_nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise ValueError(f"no quadratic nonresidue mod {p}")


@dataclass(frozen=True)
class QuadraticExtension:
    """F_{p^2} as F_p[t]/(t^2 - nu) with nu the smallest nonresidue."""

    p: int
    nu: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "nu", smallest_nonresidue(self.p))

    def __call__(self, a, b=0) -> "Fp2":
        return Fp2(self, int(a) % self.p, int(b) % self.p)

    def elements(self):
        return (Fp2(self, a, b) for a in range(self.p) for b in range(self.p))

    def __repr__(self):
        return f"F_{self.p}^2"


class Fp2:
    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadraticExtension, a: int, b: int):
        self.field = field
        self.a = a
        self.b = b

    def _lift(self, other):
        if isinstance(other, Fp2):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.a, other.b
        if isinstance(other, int):
            return other, 0
        return NotImplemented

    def _new(self, a, b):
        p = self.field.p
        return Fp2(self.field, a % p, b % p)

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self._new(self.a + o[0], self.b + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self._new(self.a - o[0], self.b - o[1])

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return self._new(-self.a, -self.b)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        c, d = o
        return self._new(self.a * c + self.field.nu * self.b * d, self.a * d + self.b * c)

    __rmul__ = __mul__

    def inverse(self):
        p = self.field.p
        norm = (self.a * self.a - self.field.nu * self.b * self.b) % p
        if norm == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.field}")
        ninv = pow(norm, -1, p)
        return self._new(self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * self._new(*o).inverse()

    def __rtruediv__(self, other):
        return self._new(*self._lift(other)) * self.inverse()

    def __pow__(self, e: int):
        result = self._new(1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        p = self.field.p
        return (self.a - o[0]) % p == 0 and (self.b - o[1]) % p == 0

    def __hash__(self):
        return hash((self.field.p, self.a, self.b))

    def __repr__(self):
        return f"{self.a} + {self.b}*t (mod {self.field.p}, t^2 = {self.field.nu})"
