"""Dense univariate polynomials over F_p, plus instance checks of the
identities satisfied by the iteration polynomials F_k and G_{k,gamma}.

A polynomial a_0 + a_1 X + ... + a_n X^n is stored as the tuple
``(a_0, ..., a_n)`` with a_n != 0; the zero polynomial is ``()``.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (BothZero, DegreeBudgetExceeded, GammaNotRootOfUnity,
                     PreconditionViolated, ZeroPolynomial)
from .field import FieldSpec

DEGREE_BUDGET = 1 << 20

# below this operand length schoolbook beats Kronecker packing
_KRONECKER_MIN = 48


def _strip(coeffs: List[int]) -> Tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _mul_coeffs(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return [c % p for c in out]
    # Kronecker substitution: evaluate at 2^(8*nb), multiply big ints, unpack
    bound = min(len(a), len(b)) * (p - 1) ** 2
    nb = (bound.bit_length() + 8) // 8
    ia = int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in a), "little")
    ib = int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in b), "little")
    n = len(a) + len(b) - 1
    raw = (ia * ib).to_bytes(n * nb, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") % p for i in range(n)]


class Poly:
    """Immutable polynomial over a prime field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        p = field.p
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _strip([int(c) % p for c in coeffs]))

    @classmethod
    def _raw(cls, field: FieldSpec, coeffs: Tuple[int, ...]) -> "Poly":
        # coeffs already reduced and stripped
        obj = cls.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.field, self.coeffs))

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls._raw(field, (0, 1))

    @classmethod
    def const(cls, field: FieldSpec, c: int) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: FieldSpec, k: int, c: int = 1) -> "Poly":
        return cls(field, [0] * k + [c])

    # -- basic properties -----------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip([other % self.p])
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return f"Poly(0 over F_{self.p})"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return f"Poly({' + '.join(terms)} over F_{self.p})"

    # -- evaluation -----------------------------------------------------

    def __call__(self, x: int) -> int:
        p = self.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    eval = __call__

    # -- ring operations ------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly(self.field, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self.coeffs, other.coeffs, self.p
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return Poly._raw(self.field, _strip(out))

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(self.field, tuple(-c % p for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Poly":
        c %= self.p
        if c == 0:
            return Poly._raw(self.field, ())
        p = self.p
        return Poly._raw(self.field, tuple(a * c % p for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, _strip(_mul_coeffs(self.coeffs, other.coeffs, self.p)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly._raw(self.field, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other) -> Tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        m = len(other.coeffs) - 1
        if len(rem) - 1 < m:
            return Poly._raw(self.field, ()), self
        div = other.coeffs
        inv_lc = pow(div[-1], -1, p)
        quot = [0] * (len(rem) - m)
        low = div[:-1]
        for i in range(len(rem) - 1, m - 1, -1):
            c = rem[i] % p
            if not c:
                continue
            c = c * inv_lc % p
            quot[i - m] = c
            base = i - m
            for j, dj in enumerate(low):
                if dj:
                    rem[base + j] -= c * dj
            rem[i] = 0
        return (Poly._raw(self.field, _strip(quot)),
                Poly._raw(self.field, _strip([c % p for c in rem[:m]])))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        p = self.p
        return Poly._raw(self.field,
                         _strip([i * c % p for i, c in enumerate(self.coeffs)][1:]))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(pow(self.lc, -1, self.p))


# ---------------------------------------------------------------------------
# gcd and perfect powers


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor by Euclid's algorithm."""
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _pth_root(f: Poly) -> Poly:
    # f = Q(X^p); over F_p every coefficient is its own p-th root
    p = f.p
    return Poly._raw(f.field, f.coeffs[::p])


def squarefree_decomposition(f: Poly) -> List[Tuple[Poly, int]]:
    """Squarefree factors with multiplicities: f = lc * prod g_i^m_i.

    Each returned g_i is monic, squarefree and of positive degree, and the
    g_i are pairwise coprime.
    """
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of 0")
    f = f.monic()
    if f.degree <= 0:
        return []
    p = f.p
    out: List[Tuple[Poly, int]] = []
    df = f.derivative()
    if df.is_zero():
        c, w = f, Poly._raw(f.field, (1,))
    else:
        c = poly_gcd(f, df)
        w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w, c = y, c // y
        i += 1
    if c.degree > 0:
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def is_perfect_eth_power_poly(P: Poly, e: int) -> bool:
    """True iff P = Q^e for some Q over the algebraic closure of F_p."""
    if P.is_zero():
        raise ZeroPolynomial("perfect power test of 0")
    if e < 1:
        raise ValueError("e must be >= 1")
    return all(m % e == 0 for _, m in squarefree_decomposition(P))


# ---------------------------------------------------------------------------
# iteration polynomials


def _check_degree(d: int, k: int) -> None:
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    if d > 1 and k * math.log2(d) > 20 + 1e-9:
        raise DegreeBudgetExceeded(f"deg F_k = {d}^{k} exceeds {DEGREE_BUDGET}")


@functools.lru_cache(maxsize=256)
def _iterate_F_cached(p: int, d: int, k: int) -> Poly:
    F = FieldSpec(p)
    if k == 0:
        return Poly.x(F)
    return _iterate_F_cached(p, d, k - 1) ** d + Poly.x(F)


def iterate_F(F: FieldSpec, d: int, k: int) -> Poly:
    """F_0 = X, F_k = F_{k-1}^d + X; so F_k(a) is the k-th iterate of
    X^d + a started at a."""
    _check_degree(d, k)
    return _iterate_F_cached(F.p, d, k)


def G_poly(F: FieldSpec, d: int, k: int, gamma: int) -> Poly:
    """G_{k,gamma} = gamma * F_k - X for gamma an e-th root of unity,
    e = gcd(d, p - 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    e = math.gcd(d, F.p - 1)
    gamma %= F.p
    if pow(gamma, e, F.p) != 1 or gamma == 0:
        raise GammaNotRootOfUnity(f"{gamma} is not in Gamma_{e} over F_{F.p}")
    return iterate_F(F, d, k).scale(gamma) - Poly.x(F)


# ---------------------------------------------------------------------------
# lemma instance checks


@dataclass
class LemmaReport:
    name: str
    passed: bool
    checks: int
    counterexample: Optional[dict] = None
    params: dict = dc_field(default_factory=dict)


def verify_congruence_lemma(F: FieldSpec, d: int, K: int, H: int) -> LemmaReport:
    """Check G_{k+h,g} == G_{h,g} (mod G_{k,delta}) for 1<=k<=K, 1<=h<=H and
    all g, delta in Gamma_e."""
    _check_degree(d, K + H)
    e = math.gcd(d, F.p - 1)
    gammas = F.roots_of_unity(e)
    params = dict(p=F.p, d=d, K=K, H=H, e=e)
    checks = 0
    for k in range(1, K + 1):
        for delta in gammas:
            modulus = G_poly(F, d, k, delta)
            for h in range(1, H + 1):
                for gamma in gammas:
                    diff = G_poly(F, d, k + h, gamma) - G_poly(F, d, h, gamma)
                    checks += 1
                    if not (diff % modulus).is_zero():
                        return LemmaReport("congruence", False, checks,
                                           dict(d=d, q=F.p, k=k, h=h, gamma=gamma, delta=delta),
                                           params)
    return LemmaReport("congruence", True, checks, None, params)


def verify_gcd_lemma(F: FieldSpec, d: int, K: int) -> LemmaReport:
    """Check monic gcd(G_{k,g}, G_{m,g}) == monic G_{gcd(k,m),g}."""
    _check_degree(d, K)
    e = math.gcd(d, F.p - 1)
    gammas = F.roots_of_unity(e)
    params = dict(p=F.p, d=d, K=K, e=e)
    checks = 0
    for gamma in gammas:
        for k in range(1, K + 1):
            for m in range(1, K + 1):
                g = poly_gcd(G_poly(F, d, k, gamma), G_poly(F, d, m, gamma))
                checks += 1
                if g != G_poly(F, d, math.gcd(k, m), gamma).monic():
                    return LemmaReport("gcd", False, checks,
                                       dict(d=d, q=F.p, k=k, m=m, gamma=gamma), params)
    return LemmaReport("gcd", True, checks, None, params)


def verify_not_square_lemma(F: FieldSpec, M: int) -> LemmaReport:
    """Check that no product of distinct G_{j,-1}, j in a non-empty subset of
    {1..M}, is a square (d = e = 2)."""
    if F.p == 2:
        raise PreconditionViolated("needs odd p")
    if (1 << (M + 1)) > DEGREE_BUDGET:
        raise DegreeBudgetExceeded(f"M = {M} gives degree > {DEGREE_BUDGET}")
    factors = [G_poly(F, 2, j, -1) for j in range(1, M + 1)]
    params = dict(p=F.p, M=M)
    checks = 0
    for r in range(1, M + 1):
        for J in itertools.combinations(range(M), r):
            prod = Poly._raw(F, (1,))
            for j in J:
                prod = prod * factors[j]
            checks += 1
            if is_perfect_eth_power_poly(prod, 2):
                return LemmaReport("notsquare", False, checks,
                                   dict(q=F.p, J=[j + 1 for j in J]), params)
    return LemmaReport("notsquare", True, checks, None, params)


def verify_not_eth_power_lemma(F: FieldSpec, d: int, J: int, samples: int,
                               seed: int, exhaustive: Optional[bool] = None) -> LemmaReport:
    """Check prod_{j=2..J} prod_{g != 1} G_{j,g}^alpha_{j,g} is not an e-th
    power for sampled non-zero exponent collections alpha in {0..e-1}.

    The all-ones collection is always checked. With ``exhaustive`` (default:
    only when e == 2 and J <= 4) every non-zero collection is checked
    instead of a random sample.
    """
    p = F.p
    e = math.gcd(d, p - 1)
    if d < 3 or e < 2 or math.gcd(d - 1, p) != 1:
        raise PreconditionViolated(
            f"need d >= 3, e = gcd(d, p-1) >= 2, gcd(d-1, p) = 1 (d={d}, p={p}, e={e})")
    if J < 2:
        raise PreconditionViolated("J must be >= 2")
    _check_degree(d, J)
    gammas = [g for g in F.roots_of_unity(e) if g != 1]
    slots = [(j, g) for j in range(2, J + 1) for g in gammas]
    total_deg = (e - 1) * sum(d ** j for j, _ in slots)
    if total_deg > DEGREE_BUDGET:
        raise DegreeBudgetExceeded(f"product degree {total_deg} exceeds {DEGREE_BUDGET}")
    G = {s: G_poly(F, d, s[0], s[1]) for s in slots}
    if exhaustive is None:
        exhaustive = e == 2 and J <= 4

    collections: List[Tuple[int, ...]] = [tuple([1] * len(slots))]
    if exhaustive:
        collections += [a for a in itertools.product(range(e), repeat=len(slots))
                        if any(a) and a != collections[0]]
    else:
        rng = random.Random(seed)
        while len(collections) < samples + 1:
            a = tuple(rng.randrange(e) for _ in slots)
            if any(a):
                collections.append(a)

    params = dict(p=p, d=d, J=J, e=e, samples=samples, seed=seed, exhaustive=exhaustive)
    checks = 0
    for alpha in collections:
        prod = Poly._raw(F, (1,))
        for s, a in zip(slots, alpha):
            if a:
                prod = prod * G[s] ** a
        checks += 1
        if is_perfect_eth_power_poly(prod, e):
            return LemmaReport("notethpower", False, checks,
                               dict(d=d, q=p, alpha={f"{j},{g}": a for (j, g), a in zip(slots, alpha)}),
                               params)
    return LemmaReport("notethpower", True, checks, None, params)
