"""Prime-field arithmetic."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not is_prime(self.p):
            raise NotPrime(f"{self.p!r} is not prime")

    @property
    def order(self) -> int:
        return self.p

    def reduce(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        _, x, _ = egcd(a, self.p)
        return x % self.p

    def pow(self, a: int, k: int) -> int:
        return pow(a % self.p, k, self.p)

    def multiplicative_order(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 is not a unit")
        k, x = 1, a
        while x != 1:
            x = x * a % self.p
            k += 1
        return k

    def primitive_root(self) -> int:
        """Smallest generator of the multiplicative group."""
        for g in range(1, self.p):
            if self.multiplicative_order(g) == self.p - 1:
                return g
        raise AssertionError("unreachable for prime p")


def make_prime_field(p: int) -> PrimeField:
    return PrimeField(p)
