"""Prime-field context: modular arithmetic, characters, and the Gauss sum.

Field elements are plain Python ints in canonical residue form 0..q-1.
A ``PrimeFieldCtx`` owns the modulus and two precomputed character tables:

* ``chi_table[a] = exp(2*pi*i*a/q)`` -- the additive character,
* ``eta_table[a]`` in ``{-1, 0, +1}`` -- the quadratic character
  (``+1`` for nonzero squares, ``-1`` for non-squares, ``0`` at zero).

Tables are built once per context because the counters evaluate the
additive character up to q^4 times.  The context is immutable after
construction and safe to share between threads.
"""

import cmath

from .errors import ZeroInverse


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeFieldCtx:
    __slots__ = ("q", "chi_table", "eta_table")

    def __init__(self, q: int):
        if not isinstance(q, int) or not is_prime(q) or q < 3:
            raise ValueError(f"q must be an odd prime >= 3, got {q!r}")
        self.q = q
        # chi(0) must be exactly 1+0j; cmath.exp(0) already guarantees it.
        self.chi_table = tuple(cmath.exp(2j * cmath.pi * a / q) for a in range(q))
        half = (q - 1) // 2
        eta = [0] * q
        for a in range(1, q):
            eta[a] = 1 if pow(a, half, q) == 1 else -1
        self.eta_table = tuple(eta)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def inv(self, a: int) -> int:
        """Multiplicative inverse via Fermat: a^(q-2) mod q."""
        a %= self.q
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return pow(a, self.q - 2, self.q)

    def arith(self, a: int, b: int, op: str) -> int:
        """Dispatch form of add/sub/mul, handy for table-driven tests."""
        if op == "add":
            return self.add(a, b)
        if op == "sub":
            return self.sub(a, b)
        if op == "mul":
            return self.mul(a, b)
        raise ValueError(f"unknown op {op!r}")

    # -- characters ---------------------------------------------------------

    def chi(self, a: int) -> complex:
        """Additive character exp(2*pi*i*a/q)."""
        return self.chi_table[a % self.q]

    def eta(self, a: int) -> int:
        """Quadratic character: +1 on nonzero squares, -1 otherwise, 0 at 0."""
        return self.eta_table[a % self.q]

    def gauss_sum(self) -> complex:
        """G = sum_a eta(a) * chi(a); satisfies G^2 = eta(-1) * q."""
        return sum(self.eta_table[a] * self.chi_table[a] for a in range(1, self.q))

    def __repr__(self):
        return f"PrimeFieldCtx(q={self.q})"
