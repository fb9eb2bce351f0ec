"""Prime field arithmetic and power-residue helpers.

Field elements are plain Python ints in ``[0, p)``; a :class:`FieldSpec`
carries the modulus and the residue machinery (roots of unity, power
residue tests, coset representatives) that the rest of the package needs.
"""

from __future__ import annotations

import functools
import math
from typing import List

from .errors import NotPrime

MAX_MODULUS = 1 << 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd and composite
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


def factorize(n: int) -> dict:
    """Prime factorisation of a positive integer as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_brent(m)
        stack.extend((f, m // f))
    return dict(sorted(out.items()))


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def _integer_root(n: int, k: int) -> int:
    r = int(round(n ** (1.0 / k)))
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def prime_power_base(n: int):
    """Return ``(r, k)`` with ``n == r**k``, r prime and k >= 2, else None."""
    for k in range(2, n.bit_length() + 1):
        r = _integer_root(n, k)
        if r >= 2 and r ** k == n and is_prime(r):
            return r, k
    return None


def largest_odd_divisor(n: int) -> int:
    while n and n % 2 == 0:
        n //= 2
    return n


class FieldSpec:
    """The prime field F_p.

    Instances are immutable; the residue caches are filled lazily through
    module-level ``lru_cache`` functions keyed by ``p``.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or p >= MAX_MODULUS or not is_prime(p):
            hint = ""
            if p >= 4:
                pp = prime_power_base(p)
                if pp is not None:
                    hint = (f"{p} = {pp[0]}^{pp[1]} is a prime power; "
                            "extension fields are not supported")
            raise NotPrime(p, hint)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __repr__(self):
        return f"FieldSpec(p={self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __reduce__(self):
        return (FieldSpec, (self.p,))

    # -- element arithmetic ---------------------------------------------

    def elt(self, x: int) -> int:
        return int(x) % self.p

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
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(a % self.p, k, self.p)

    # -- residue machinery ----------------------------------------------

    def roots_of_unity(self, e: int) -> List[int]:
        """Sorted list of all gamma with gamma**e == 1."""
        if e < 1:
            raise ValueError("e must be >= 1")
        return list(_roots_of_unity(self.p, math.gcd(e, self.p - 1)))

    def is_eth_power(self, x: int, e: int) -> bool:
        """True iff z**e == x is solvable; 0 is always a power (z = 0)."""
        if e < 1:
            raise ValueError("e must be >= 1")
        x %= self.p
        if x == 0:
            return True
        m = math.gcd(e, self.p - 1)
        return pow(x, (self.p - 1) // m, self.p) == 1

    def power_coset_representatives(self, m: int) -> List[int]:
        """One representative per coset of the m-th powers in F_p^*.

        Greedy in ascending order: each representative is the smallest
        element of its coset.
        """
        if m < 1:
            raise ValueError("m must be >= 1")
        return list(_coset_reps(self.p, math.gcd(m, self.p - 1)))


@functools.lru_cache(maxsize=None)
def field(p: int) -> FieldSpec:
    """Cached :class:`FieldSpec` constructor."""
    return FieldSpec(p)


@functools.lru_cache(maxsize=1024)
def _roots_of_unity(p: int, m: int) -> tuple:
    if m == 1:
        return (1,)
    primes = list(factorize(m))
    cofactor = (p - 1) // m
    for x in range(2, p):
        y = pow(x, cofactor, p)
        if all(pow(y, m // q, p) != 1 for q in primes):
            break
    else:  # pragma: no cover - a generator always exists
        raise ArithmeticError("no element of full order found")
    roots, z = [], 1
    for _ in range(m):
        roots.append(z)
        z = z * y % p
    return tuple(sorted(roots))


@functools.lru_cache(maxsize=1024)
def _coset_reps(p: int, m: int) -> tuple:
    # x and y share a coset of H_m iff x^((p-1)/m) == y^((p-1)/m)
    if m == 1:
        return (1,)
    cofactor = (p - 1) // m
    seen, reps = set(), []
    x = 1
    while len(reps) < m:
        key = pow(x, cofactor, p)
        if key not in seen:
            seen.add(key)
            reps.append(x)
        x += 1
    return tuple(reps)
