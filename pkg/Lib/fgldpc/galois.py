"""Arithmetic in GF(2^m) through log/antilog tables.

Elements are integers whose bit i is the coefficient of x^i in the
polynomial basis. Zero has no logarithm.
"""
import numpy as np

from fgldpc.constants import PRIMITIVE_POLYNOMIALS


class GaloisField:
    def __init__(self, m: int, modulus: int = None):
        if m not in PRIMITIVE_POLYNOMIALS and modulus is None:
            raise ValueError(f"No primitive polynomial known for degree {m}")
        self.m = m
        self.modulus = PRIMITIVE_POLYNOMIALS[m] if modulus is None else modulus
        if self.modulus >> m != 1:
            raise ValueError(
                f"Modulus {self.modulus:#x} does not have degree {m}"
            )
        self.order = (1 << m) - 1
        self._init_tables()

    def __repr__(self):
        return f"GaloisField(m={self.m}, modulus={self.modulus:#x})"

    def _init_tables(self):
        size = 1 << self.m
        # Antilog table is doubled so that log sums never need reducing
        self.antilog_table = np.zeros(2 * self.order, dtype=np.int64)
        self.log_table = np.full(size, -1, dtype=np.int64)
        x = 1
        for i in range(self.order):
            if self.log_table[x] != -1:
                raise ValueError(
                    f"{self.modulus:#x} is not primitive: x has order {i}"
                )
            self.antilog_table[i] = x
            self.log_table[x] = i
            x <<= 1
            if x & size:
                x ^= self.modulus
        if x != 1:
            raise ValueError(f"{self.modulus:#x} is not primitive")
        self.antilog_table[self.order :] = self.antilog_table[: self.order]

    def antilog(self, exponent: int) -> int:
        return int(self.antilog_table[exponent % self.order])

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("Zero has no logarithm")
        return int(self.log_table[x])

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.antilog_table[self.log_table[x] + self.log_table[y]])

    def div(self, x: int, y: int) -> int:
        if y == 0:
            raise ZeroDivisionError("Division by zero in " + repr(self))
        if x == 0:
            return 0
        return self.antilog((self.log_table[x] - self.log_table[y]))

    def subfield(self, degree: int) -> list:
        """Elements of the subfield GF(2^degree), zero first.

        The nonzero subfield elements are the powers of alpha^((2^m-1)/(2^degree-1)).
        """
        if degree < 1 or self.m % degree:
            raise ValueError(f"GF(2^{degree}) is not a subfield of GF(2^{self.m})")
        step = self.order // ((1 << degree) - 1)
        return [0] + [self.antilog(j * step) for j in range((1 << degree) - 1)]
