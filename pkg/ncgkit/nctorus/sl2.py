"""
SL(2, Z) Matrices
Integer matrices of determinant one acting on theta by fractional-linear maps
"""

from dataclasses import dataclass
from typing import Tuple

from ..errors import InvariantViolation


@dataclass(frozen=True)
class SL2Mat:
    """[[a, b], [c, d]] with ad - bc = 1; the degree of the matrix is c."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise InvariantViolation(f"determinant of [[{self.a},{self.b}],[{self.c},{self.d}]] is not 1")

    @classmethod
    def identity(cls) -> 'SL2Mat':
        return cls(1, 0, 0, 1)

    @property
    def degree(self) -> int:
        return self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: 'SL2Mat') -> 'SL2Mat':
        return SL2Mat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def power(self, n: int) -> 'SL2Mat':
        if n < 0:
            raise InvariantViolation("only nonnegative powers are supported")
        result = SL2Mat.identity()
        for _ in range(n):
            result = result @ self
        return result

    def inverse(self) -> 'SL2Mat':
        return SL2Mat(self.d, -self.b, -self.c, self.a)

    def as_rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"
