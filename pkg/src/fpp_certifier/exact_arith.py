"""Exact rationals and cyclotomic fields Q(zeta_l) for an odd prime l.

Elements of Q(zeta_l) are stored as coefficient vectors of length l-1 in the
power basis 1, zeta, ..., zeta^(l-2).  Reduction uses

    zeta^l = 1   and   zeta^(l-1) = -(1 + zeta + ... + zeta^(l-2)),

so every element has exactly one representative and equality is plain
coefficient comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "CyclotomicElement",
    "is_prime",
    "zeta_power",
    "cyc_inv_one_minus_zeta",
    "cyc_eval_sum",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_order(l: int) -> None:
    if not isinstance(l, int) or l < 3 or not is_prime(l):
        raise ValueError(f"cyclotomic order must be an odd prime, got {l!r}")


# --- dense polynomials over Q, lowest degree first -------------------------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(_trim(num)) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
    return _trim(q), num


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _poly_sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] -= b
    return _trim(out)


@lru_cache(maxsize=None)
def _cyclotomic_poly(l: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) for _ in range(l))


def _reduce(l: int, coeffs: Iterable[Number]) -> tuple[Fraction, ...]:
    """Fold an arbitrary-length coefficient list into canonical form."""
    folded = [Fraction(0)] * l
    for i, c in enumerate(coeffs):
        if c:
            folded[i % l] += c
    top = folded[l - 1]
    return tuple(folded[i] - top for i in range(l - 1))


class CyclotomicElement:
    """Immutable element of Q(zeta_l) in canonical reduced form.

    >>> w = CyclotomicElement.zeta(3)
    >>> (w * w + w + 1).is_zero()
    True
    >>> (1 - w).inverse() * (1 - w) == 1
    True
    """

    __slots__ = ("_l", "_c", "_hash")

    def __init__(self, l: int, coeffs: Iterable[Number] = ()):
        _check_order(l)
        self._l = l
        self._c = _reduce(l, coeffs)
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, l: int) -> "CyclotomicElement":
        return cls(l)

    @classmethod
    def one(cls, l: int) -> "CyclotomicElement":
        return cls(l, [1])

    @classmethod
    def rational(cls, l: int, value: Number) -> "CyclotomicElement":
        return cls(l, [Fraction(value)])

    @classmethod
    def zeta(cls, l: int, k: int = 1) -> "CyclotomicElement":
        c = [0] * l
        c[k % l] = 1
        return cls(l, c)

    @property
    def order(self) -> int:
        return self._l

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c[0]

    def _coerce(self, other) -> "CyclotomicElement":
        if isinstance(other, CyclotomicElement):
            if other._l != self._l:
                raise ValueError("cannot mix cyclotomic orders "
                                 f"{self._l} and {other._l}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.rational(self._l, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self._l, [a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self._l, [-a for a in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        l = self._l
        prod = [Fraction(0)] * l
        for i, a in enumerate(self._c):
            if not a:
                continue
            for j, b in enumerate(other._c):
                if b:
                    prod[(i + j) % l] += a * b
        return CyclotomicElement(l, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        """Inverse by the extended Euclidean algorithm against Phi_l."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        l = self._l
        r0, r1 = list(_cyclotomic_poly(l)), _trim(list(self._c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is now a nonzero constant since Phi_l is irreducible
        c = r1[0]
        return CyclotomicElement(l, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = CyclotomicElement.one(self._l), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._c[0] == other
        if isinstance(other, CyclotomicElement):
            return self._l == other._l and self._c == other._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._l, self._c))
        return self._hash

    def __complex__(self):
        import cmath
        z = cmath.exp(2j * cmath.pi / self._l)
        return sum(complex(c) * z ** i for i, c in enumerate(self._c))

    def to_json(self) -> dict:
        return {"l": self._l, "coefficients": [str(c) for c in self._c]}

    def __repr__(self):
        return f"CyclotomicElement({self._l}, {[str(c) for c in self._c]})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self._c):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def zeta_power(l: int, k: int) -> CyclotomicElement:
    return CyclotomicElement.zeta(l, k)


@lru_cache(maxsize=None)
def cyc_inv_one_minus_zeta(l: int, k: int) -> CyclotomicElement:
    """Return 1/(1 - zeta_l^k).  Raises ZeroDivisionError when l | k."""
    _check_order(l)
    if k % l == 0:
        raise ZeroDivisionError(f"1 - zeta^{k} vanishes for l={l}")
    return (1 - CyclotomicElement.zeta(l, k)).inverse()


def _check_units(l: int, exps: Sequence[int]) -> None:
    for e in exps:
        if not 1 <= e <= l - 1:
            raise ValueError(f"exponent {e} not a unit in 1..{l - 1}")


def cyc_eval_sum(l: int, fixed_exponents: Sequence[int],
                 eigen_exponents: Sequence[int]) -> CyclotomicElement:
    """sum_i 1/(1 - zeta^eta_i) + sum_j zeta^xi_j, exactly."""
    _check_order(l)
    _check_units(l, fixed_exponents)
    _check_units(l, eigen_exponents)
    total = CyclotomicElement.zero(l)
    for e in fixed_exponents:
        total = total + cyc_inv_one_minus_zeta(l, e)
    for e in eigen_exponents:
        total = total + CyclotomicElement.zeta(l, e)
    return total
