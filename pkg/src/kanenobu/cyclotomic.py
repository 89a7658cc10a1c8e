"""
Exact arithmetic in cyclotomic fields Q(zeta_m) and in group rings Q[Z/N].

A field element is a coefficient vector in the power basis
1, zeta, ..., zeta^(phi(m)-1), always reduced modulo the m-th cyclotomic
polynomial.  Q[Z/N] splits as the product of Q(zeta_d) over the divisors d
of N; :func:`character_map` projects onto one factor and
:func:`assemble_from_characters` glues the factors back together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import divisors as _divisors, mobius, totient


class ModulusMismatch(ValueError):
    pass


def divisors(n: int) -> list[int]:
    return [int(d) for d in _divisors(n)]


def euler_phi(n: int) -> int:
    return int(totient(n))


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d < m:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds x^j mod Phi_m in the power basis, for 0 <= j < m."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by x, then fold the overflow coefficient back
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


def _reduce_cyclic(m: int, cyc: list) -> tuple[Fraction, ...]:
    """Map sum cyc[j] x^j (j < m) into Q[x]/Phi_m."""
    table = _power_table(m)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    for j, c in enumerate(cyc):
        if c:
            for i, t in enumerate(table[j]):
                if t:
                    out[i] += c * t
    return tuple(out)


@dataclass(frozen=True)
class CyclotomicNumber:
    """Element of Q(zeta_m) as exact power-basis coordinates."""

    m: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.m):
            raise ValueError(f"expected {euler_phi(self.m)} coefficients for m={self.m}")

    @classmethod
    def from_int(cls, m: int, value) -> CyclotomicNumber:
        c = [Fraction(0)] * euler_phi(m)
        c[0] = Fraction(value)
        return cls(m, tuple(c))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CyclotomicNumber:
        """zeta_m ** k for any integer k."""
        return cls(m, tuple(Fraction(x) for x in _power_table(m)[k % m]))

    @classmethod
    def from_cyclic(cls, m: int, cyc) -> CyclotomicNumber:
        """sum_j cyc[j] * zeta^j, for an arbitrary-length sequence (indices taken mod m)."""
        acc = [Fraction(0)] * m
        for j, c in enumerate(cyc):
            acc[j % m] += Fraction(c)
        return cls(m, _reduce_cyclic(m, acc))

    def _check(self, other) -> CyclotomicNumber:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_int(self.m, other)
        if other.m != self.m:
            raise ModulusMismatch(f"Q(zeta_{self.m}) vs Q(zeta_{other.m})")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CyclotomicNumber(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.m, tuple(a * other for a in self.coeffs))
        other = self._check(other)
        m = self.m
        acc = [Fraction(0)] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        acc[(i + j) % m] += a * b
        return CyclotomicNumber(m, _reduce_cyclic(m, acc))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        r0 = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        r1 = _trim(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # Phi_m is irreducible, so the last remainder is a nonzero constant
        _, inv = _poly_divmod([x / r1[0] for x in s1], _phi_fractions(self.m))
        return CyclotomicNumber(self.m, tuple(inv + [Fraction(0)] * (euler_phi(self.m) - len(inv))))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CyclotomicNumber(self.m, tuple(a / other for a in self.coeffs))
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNumber.from_int(self.m, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> CyclotomicNumber:
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        return self.galois(-1)

    def galois(self, a: int) -> CyclotomicNumber:
        """Image under the automorphism zeta -> zeta^a, gcd(a, m) = 1."""
        if gcd(a, self.m) != 1:
            raise ValueError("exponent must be a unit mod m")
        acc = [Fraction(0)] * self.m
        for j, c in enumerate(self.coeffs):
            acc[(a * j) % self.m] += c
        return CyclotomicNumber(self.m, _reduce_cyclic(self.m, acc))

    def trace(self) -> Fraction:
        """Trace down to Q, from Ramanujan sums Tr(zeta^j) = c_m(j)."""
        return sum((c * ramanujan_sum(self.m, j) for j, c in enumerate(self.coeffs) if c), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_int(self.m, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*z^{j}")
        return f"Q(z{self.m})[{' + '.join(terms) or '0'}]"


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(num, den):
    num = _trim(num)
    den = _trim(den)
    if len(num) < len(den):
        return [Fraction(0)], num
    num = list(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] / lead
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return q, _trim(num[: len(den) - 1] or [Fraction(0)])


def _phi_fractions(m: int) -> list[Fraction]:
    return [Fraction(c) for c in cyclotomic_polynomial(m)]


def ramanujan_sum(m: int, j: int) -> int:
    """Sum of zeta^j over the primitive m-th roots of unity."""
    g = gcd(m, j % m) if j % m else m
    t = m // g
    return int(mobius(t)) * euler_phi(m) // euler_phi(t)


def is_real(a: CyclotomicNumber) -> bool:
    return a == a.conjugate()


def cyclo_arith(a: CyclotomicNumber, b: CyclotomicNumber, op: str) -> CyclotomicNumber:
    """Dispatch '+', '-', '*' or '/' on two elements of the same field."""
    if a.m != b.m:
        raise ModulusMismatch(f"Q(zeta_{a.m}) vs Q(zeta_{b.m})")
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class GroupRingElement:
    """sum_k coeffs[k] * g^k in Q[Z/N] for a fixed generator g."""

    N: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.N:
            raise ValueError("need exactly N coefficients")

    @classmethod
    def zero(cls, N: int) -> GroupRingElement:
        return cls(N, (Fraction(0),) * N)

    @classmethod
    def monomial(cls, N: int, k: int, c=1) -> GroupRingElement:
        v = [Fraction(0)] * N
        v[k % N] = Fraction(c)
        return cls(N, tuple(v))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElement.monomial(self.N, 0, other)
        if other.N != self.N:
            raise ModulusMismatch("group orders differ")
        return GroupRingElement(self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.N, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingElement(self.N, tuple(a * other for a in self.coeffs))
        if other.N != self.N:
            raise ModulusMismatch("group orders differ")
        N = self.N
        out = [Fraction(0)] * N
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % N] += a * b
        return GroupRingElement(N, tuple(out))

    __rmul__ = __mul__

    def augmentation(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def shift(self, k: int) -> GroupRingElement:
        """Multiply by g^k."""
        N = self.N
        return GroupRingElement(N, tuple(self.coeffs[(i - k) % N] for i in range(N)))

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [str(c) for c in self.coeffs]}


def character_map(e: GroupRingElement, d: int) -> CyclotomicNumber:
    """Ring map Q[Z/N] -> Q(zeta_d) sending g to zeta_d; d = 1 is the augmentation."""
    if e.N % d:
        raise ValueError(f"{d} does not divide {e.N}")
    return CyclotomicNumber.from_cyclic(d, e.coeffs)


@lru_cache(maxsize=None)
def _assembly_inverse(N: int) -> tuple[tuple[Fraction, ...], ...]:
    # Columns of the forward map are the images of g^k stacked over all d | N.
    rows = []
    for d in divisors(N):
        table = _power_table(d)
        for i in range(euler_phi(d)):
            rows.append([Fraction(table[k % d][i]) for k in range(N)])
    return tuple(tuple(r) for r in _invert(rows))


def _invert(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [r[n:] for r in aug]


def assemble_from_characters(N: int, components: dict[int, CyclotomicNumber]) -> GroupRingElement:
    """The unique e in Q[Z/N] with character_map(e, d) == components[d] for every d | N."""
    ds = divisors(N)
    if set(components) != set(ds):
        raise ValueError(f"need one component per divisor of {N}: {ds}")
    rhs = []
    for d in ds:
        c = components[d]
        if c.m != d:
            raise ModulusMismatch(f"component for d={d} lives in Q(zeta_{c.m})")
        rhs.extend(c.coeffs)
    inv = _assembly_inverse(N)
    return GroupRingElement(N, tuple(sum((a * b for a, b in zip(row, rhs) if a and b), Fraction(0)) for row in inv))


def decompose(e: GroupRingElement) -> dict[int, CyclotomicNumber]:
    return {d: character_map(e, d) for d in divisors(e.N)}
