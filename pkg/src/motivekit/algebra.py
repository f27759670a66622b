"""Exact univariate integer polynomials in ``t`` and the small number theory
helpers the rest of the package leans on.

A :class:`Polynomial` is an immutable coefficient tuple in ascending powers of
``t`` with trailing zeros stripped, so the zero polynomial is ``()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable

from .errors import NotDivisible


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        n = len(c)
        while n and c[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", c[:n])

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> Polynomial:
        return cls((0,) * power + (coeff,))

    @classmethod
    def constant(cls, c: int) -> Polynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return Polynomial(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "t" if i == 1 else f"t^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}


def _lift(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial((x,))
    return NotImplemented


ZERO = Polynomial()
ONE = Polynomial((1,))
T = Polynomial((0, 1))


def t_power_minus_one(a: int) -> Polynomial:
    """``t^a - 1``."""
    return Polynomial.monomial(a) - 1


def t_power_plus_one(a: int) -> Polynomial:
    """``t^a + 1``."""
    return Polynomial.monomial(a) + 1


def product(polys: Iterable[Polynomial]) -> Polynomial:
    out = ONE
    for p in polys:
        out = out * p
    return out


def divmod_poly(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division over the integers.

    Raises :class:`NotDivisible` if a leading coefficient of ``q`` fails to
    divide the running remainder, since then no integer quotient exists.
    """
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.coeffs)
    dq, lead = q.degree, q.coeffs[-1]
    if len(rem) - 1 < dq:
        return ZERO, p
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        if c % lead:
            raise NotDivisible(f"({p}) is not divisible by ({q}) over the integers")
        f = c // lead
        quot[i - dq] = f
        for j, b in enumerate(q.coeffs):
            rem[i - dq + j] -= f * b
    return Polynomial(tuple(quot)), Polynomial(tuple(rem))


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``r`` with ``q * r == p``; raise :class:`NotDivisible` otherwise."""
    quot, rem = divmod_poly(p, q)
    if rem:
        raise NotDivisible(f"({p}) / ({q}) leaves remainder {rem}")
    return quot


def substitute_power(p: Polynomial, m: int) -> Polynomial:
    """``p(t^m)``."""
    if m < 1:
        raise ValueError("substitution exponent must be positive")
    if m == 1 or p.degree <= 0:
        return p
    out = [0] * (p.degree * m + 1)
    for i, c in enumerate(p.coeffs):
        out[i * m] = c
    return Polynomial(tuple(out))


def is_palindromic(p: Polynomial) -> bool:
    return p.coeffs == p.coeffs[::-1]


@dataclass(frozen=True)
class RationalProduct:
    """``prod (t^a - 1) * prod (t^b + 1)`` over a product of the same shape.

    Fields are multisets of exponents stored as sorted tuples.
    """

    num_minus: tuple[int, ...] = ()
    num_plus: tuple[int, ...] = ()
    den_minus: tuple[int, ...] = ()
    den_plus: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("num_minus", "num_plus", "den_minus", "den_plus"):
            vals = tuple(sorted(int(a) for a in getattr(self, name)))
            if any(a < 1 for a in vals):
                raise ValueError(f"{name}: exponents must be >= 1")
            object.__setattr__(self, name, vals)

    def numerator(self) -> Polynomial:
        return product(t_power_minus_one(a) for a in self.num_minus) * product(
            t_power_plus_one(a) for a in self.num_plus
        )

    def denominator(self) -> Polynomial:
        return product(t_power_minus_one(a) for a in self.den_minus) * product(
            t_power_plus_one(a) for a in self.den_plus
        )

    def __mul__(self, other: RationalProduct) -> RationalProduct:
        return RationalProduct(
            self.num_minus + other.num_minus,
            self.num_plus + other.num_plus,
            self.den_minus + other.den_minus,
            self.den_plus + other.den_plus,
        )


def expand_rational_product(rp: RationalProduct) -> Polynomial:
    # One division at the end: pairing factors early can leave the integers,
    # e.g. (t^4 + 1) / (t + 1).
    return exact_div(rp.numerator(), rp.denominator())


def p_valuation(n: int, p: int) -> int:
    if n < 1:
        raise ValueError("p-adic valuation needs a positive integer")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def binom_nonzero_mod_p(n: int, k: int, p: int) -> bool:
    """Whether ``C(n, k)`` is prime to ``p``, digit by digit (Lucas)."""
    if k < 0 or k > n:
        return False
    while n or k:
        if k % p > n % p:
            return False
        n //= p
        k //= p
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_power_of(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def floor_log2(num: int, den: int = 1) -> int:
    """``[log_2(num/den)]`` computed exactly, for ``num/den >= 1``."""
    if num < den:
        raise ValueError(f"log2 of {num}/{den} is negative")
    k = 0
    while den << (k + 1) <= num:
        k += 1
    return k
