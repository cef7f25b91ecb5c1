"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are coordinate vectors over the power basis 1, z, ..., z^(phi(N)-1)
of Q[x]/Phi_N(x), with arbitrary-precision rational coordinates (gmpy2.mpq).
No floating point is used anywhere.
"""
from __future__ import annotations

import re
from gmpy2 import mpq

QQ = mpq

_ZERO = mpq(0)
_ONE = mpq(1)


class FieldMismatchError(ValueError):
    """Raised when combining elements of fields with different N."""


class FieldZeroDivision(ZeroDivisionError):
    """Raised on inversion of the zero element."""


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (den monic up to sign of lead)."""
    num = list(num)
    q = [0] * max(0, len(num) - len(den) + 1)
    dlead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c % dlead != 0:
            raise ArithmeticError("non-exact polynomial division")
        f = c // dlead
        q[k] = f
        if f:
            for i, d in enumerate(den):
                num[k + i] -= f * d
    return q, _poly_trim(num)


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficient list of Phi_n, low degree first, monic."""
    if n < 1:
        raise ValueError("order must be positive")
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_int(num, cyclotomic_polynomial(d))
            if rem:
                raise AssertionError("cyclotomic division left a remainder")
    return num


def _euler_phi(n: int) -> int:
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            out *= p - 1
            m //= p
            while m % p == 0:
                out *= p
                m //= p
        p += 1
    if m > 1:
        out *= m - 1
    return out


_FIELDS: dict[int, "CyclotomicField"] = {}


class CyclotomicField:
    """Q(zeta_N) presented as Q[x]/Phi_N(x); construct via CyclotomicField.get."""

    def __init__(self, order: int):
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        assert self.degree == _euler_phi(order)
        # reduction rows: coordinates of x^k for k = degree .. 2*degree - 2
        rows = []
        row = [mpq(-c) for c in self.modulus[:-1]]
        rows.append(tuple(row))
        for _ in range(self.degree - 2):
            shifted = [_ZERO] + row[:-1]
            top = row[-1]
            if top:
                shifted = [shifted[i] + top * rows[0][i] for i in range(self.degree)]
            row = shifted
            rows.append(tuple(row))
        self._reduction = rows
        self._power_cache: dict[int, tuple] = {}
        self._zero = FieldElem(self, (_ZERO,) * self.degree)
        self._one = FieldElem(self, (_ONE,) + (_ZERO,) * (self.degree - 1))

    @staticmethod
    def get(order: int) -> "CyclotomicField":
        f = _FIELDS.get(order)
        if f is None:
            f = _FIELDS[order] = CyclotomicField(order)
        return f

    def __repr__(self):
        return f"Q(zeta_{self.order})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("CyclotomicField", self.order))

    # -- constructors -------------------------------------------------
    def zero(self) -> "FieldElem":
        return self._zero

    def one(self) -> "FieldElem":
        return self._one

    def rational(self, p, q=1) -> "FieldElem":
        c = mpq(p, q) if q != 1 else mpq(p)
        return FieldElem(self, (c,) + (_ZERO,) * (self.degree - 1))

    def from_coeffs(self, coeffs) -> "FieldElem":
        coeffs = [mpq(c) for c in coeffs]
        if len(coeffs) > self.degree:
            raise ValueError("too many coordinates")
        coeffs += [_ZERO] * (self.degree - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def zeta(self, k: int | None = None) -> "FieldElem":
        """Primitive k-th root of unity (k must divide N); default k = N."""
        if k is None:
            k = self.order
        if k <= 0 or self.order % k:
            raise ValueError(f"no primitive {k}-th root in Q(zeta_{self.order})")
        return self.zeta_power(self.order // k)

    def zeta_power(self, m: int) -> "FieldElem":
        """zeta_N ** m as a field element."""
        m %= self.order
        cached = self._power_cache.get(m)
        if cached is None:
            if m < 2 * self.degree - 1:
                v = [_ZERO] * (2 * self.degree - 1)
                v[m] = _ONE
                cached = self._reduce(v)
            else:
                cached = (self.zeta_power(2 * self.degree - 2) * self.zeta_power(m - (2 * self.degree - 2))).coeffs
            self._power_cache[m] = cached
        return FieldElem(self, cached)

    def _reduce(self, v) -> tuple:
        """Reduce a coefficient list of length <= 2*degree-1 modulo Phi_N."""
        d = self.degree
        for k in range(len(v) - 1, d - 1, -1):
            c = v[k]
            if c:
                v[k] = _ZERO
                row = self._reduction[k - d]
                for i in range(d):
                    if row[i]:
                        v[i] += c * row[i]
        return tuple(v[:d])

    def galois_map(self, j: int) -> list["FieldElem"]:
        """Images of the power basis under zeta |-> zeta^j (gcd(j, N) = 1)."""
        from math import gcd

        if gcd(j, self.order) != 1:
            raise ValueError("not a Galois automorphism")
        return [self.zeta_power(i * j) for i in range(self.degree)]

    # -- parsing ------------------------------------------------------
    _TOKEN = re.compile(r"[+-]|[0-9]+(?:/[0-9]+)?(?:\*z(?:\^[0-9]+)?)?|z(?:\^[0-9]+)?")

    def parse(self, text: str) -> "FieldElem":
        """Parse the textual form, e.g. "1/2 + 1/2*z^2" (whitespace-insensitive)."""
        s = re.sub(r"\s+", "", text)
        if not s:
            raise ValueError("empty field element")
        pos = 0
        coeffs = [_ZERO] * self.degree
        sign = 1
        expect_term = True
        while pos < len(s):
            m = self._TOKEN.match(s, pos)
            if not m:
                raise ValueError(f"bad field element syntax at {s[pos:]!r}")
            tok = m.group(0)
            pos = m.end()
            if tok == "+" or tok == "-":
                if expect_term and tok == "-":
                    sign = -sign
                elif expect_term:
                    pass
                else:
                    sign = 1 if tok == "+" else -1
                    expect_term = True
                continue
            if not expect_term:
                raise ValueError(f"missing operator before {tok!r}")
            if "z" in tok:
                if "*" in tok:
                    rat, _, zp = tok.partition("*")
                    c = mpq(rat)
                else:
                    c, zp = _ONE, tok
                exp = int(zp[2:]) if "^" in zp else 1
            else:
                c, exp = mpq(tok), 0
            term = self.zeta_power(exp).coeffs if exp else None
            if term is None:
                coeffs[0] += sign * c
            else:
                sc = sign * c
                for i in range(self.degree):
                    if term[i]:
                        coeffs[i] += sc * term[i]
            sign = 1
            expect_term = False
        if expect_term:
            raise ValueError("dangling operator in field element")
        return FieldElem(self, tuple(coeffs))


class FieldElem:
    """Immutable element of a CyclotomicField."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- predicates ---------------------------------------------------
    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        c = self.coeffs
        for i in range(1, len(c)):
            if c[i]:
                return False
        return True

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------
    def _check(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field.order != self.field.order:
                raise FieldMismatchError(
                    f"mixed cyclotomic orders {self.field.order} and {other.field.order}"
                )
            return other
        if isinstance(other, (int, type(_ONE))):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        d = self.field.degree
        # scalar fast paths cover most arithmetic in practice
        if not any(a[1:]):
            s = a[0]
            if not s:
                return self.field.zero()
            return FieldElem(self.field, tuple(s * x for x in b))
        if not any(b[1:]):
            s = b[0]
            if not s:
                return self.field.zero()
            return FieldElem(self.field, tuple(s * x for x in a))
        prod = [_ZERO] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return FieldElem(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if not self:
            raise FieldZeroDivision("inverse of zero in " + repr(self.field))
        if self.is_rational():
            return self.field.rational(1 / self.coeffs[0])
        # extended Euclid for (a, Phi) over Q[x]
        r0 = [mpq(c) for c in self.field.modulus]
        r1 = list(self.coeffs)
        _poly_trim(r1)
        s0, s1 = [], [_ONE]
        while True:
            # divide r0 by r1
            q = [_ZERO] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            lead = r1[-1]
            for k in range(len(r0) - len(r1), -1, -1):
                c = rem[k + len(r1) - 1]
                if c:
                    f = c / lead
                    q[k] = f
                    for i, d1 in enumerate(r1):
                        rem[k + i] -= f * d1
            _poly_trim(rem)
            s_new = list(s0)
            s_new += [_ZERO] * (len(q) + len(s1) - 1 - len(s_new))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        if sj:
                            s_new[i + j] -= qi * sj
            _poly_trim(s_new)
            if not rem:
                # r1 is the gcd, a nonzero constant times unit
                if len(r1) != 1:
                    raise ArithmeticError("modulus not coprime with element")
                inv = [c / r1[0] for c in s1]
                inv += [_ZERO] * (self.field.degree - len(inv))
                return FieldElem(self.field, tuple(inv[: self.field.degree]))
            r0, r1 = r1, rem
            s0, s1 = s1, s_new

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self, j: int) -> "FieldElem":
        """Galois conjugate zeta |-> zeta^j; j = -1 is complex conjugation."""
        images = self.field.galois_map(j % self.field.order)
        out = self.field.zero()
        for c, img in zip(self.coeffs, images):
            if c:
                out = out + img * c
        return out

    def conjugates(self) -> list["FieldElem"]:
        from math import gcd

        n = self.field.order
        return [self.conjugate(j) for j in range(1, n) if gcd(j, n) == 1]

    # -- comparisons / hashing ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, type(_ONE))):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field.order == other.field.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.order, self.coeffs))
        return self._hash

    def sort_key(self):
        """Total order key on coordinates; not a field order, just deterministic."""
        return tuple((c.numerator, c.denominator) for c in self.coeffs)

    # -- formatting ----------------------------------------------------
    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"<{self} in {self.field!r}>"


DEFAULT_ORDER = 24


def default_field() -> CyclotomicField:
    """The session default field; order overridable via PARCOMOD_FIELD_N."""
    import os

    n = int(os.environ.get("PARCOMOD_FIELD_N", DEFAULT_ORDER))
    return CyclotomicField.get(n)
