"""Exact arithmetic in GF(p^e) and polynomials over it.

Elements are encoded as integers ``0 .. q-1`` whose base-``p`` digits are
the coordinates in the polynomial basis ``1, x, ..., x^(e-1)``.  So in
GF(4) = GF(2)[x]/(x^2 + x + 1) the encoding 2 is ``x`` and 3 is ``x + 1``.
The same integer labels are used for prime and extension fields, which
keeps JSON fixtures uniform.

Multiplication goes through log/antilog tables built once per field.
Fields above :data:`TABLE_LIMIT` fall back to direct reduction.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DegreeTooSmall,
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    TooLarge,
    ZeroLeading,
)

DEFAULT_CEILING = 1 << 16
TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 1 << 10

# degree of the zero polynomial; compares below every integer
NEG_INF = float("-inf")


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


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q == p**e``; raise NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime(f"q={q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
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


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


class Field:
    """The finite field GF(p^e).

    For ``e > 1`` the modulus is the lexicographically smallest monic
    irreducible polynomial of degree ``e`` over GF(p), comparing
    coefficient vectors from the constant term upward.  ``modulus`` is a
    tuple of GF(p) coefficients, constant term first; for prime fields it
    is the placeholder ``(0, 1)`` and never used.
    """

    def __init__(self, p: int, e: int = 1, ceiling: int = DEFAULT_CEILING):
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got e={e}")
        q = p**e
        if q > ceiling:
            raise TooLarge(f"q={p}^{e}={q} exceeds the field ceiling {ceiling}")
        self.p = p
        self.e = e
        self.q = q
        self._pows = tuple(p**i for i in range(e))
        self.modulus = (0, 1) if e == 1 else _smallest_irreducible(p, e)

        self._log = self._exp = None
        self.generator = None
        if q <= TABLE_LIMIT:
            self._build_tables()
        self._add_table = None
        if e > 1 and p != 2 and q <= ADD_TABLE_LIMIT:
            a = np.arange(q)
            self._add_table = self._add_digits(a[:, None], a[None, :])

    # -- construction helpers -------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        # g generates the multiplicative group iff g^((q-1)/r) != 1 for every prime r | q-1
        cofactors = [(q - 1) // r for r in _prime_factors(q - 1)]
        g = next(
            g for g in range(1, q) if all(self._raw_pow(g, c) != 1 for c in cofactors)
        )
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            log[x] = i
            x = self._raw_mul(x, g)
        self.generator = g
        self._exp, self._log = exp, log

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _from_digits(self, digits: Sequence[int]) -> int:
        return sum(d * w for d, w in zip(digits, self._pows))

    def _raw_pow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            n >>= 1
        return result

    def _raw_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return a * b % p
        if p == 2:
            return self._raw_mul_binary(a, b)
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for deg in range(2 * e - 2, e - 1, -1):
            c = prod[deg]
            if c:
                for i in range(e + 1):
                    prod[deg - e + i] = (prod[deg - e + i] - c * mod[i]) % p
        return self._from_digits(prod[:e])

    def _raw_mul_binary(self, a: int, b: int) -> int:
        # carry-less product, then reduce by the modulus bit pattern
        prod = 0
        while b:
            if b & 1:
                prod ^= a
            a <<= 1
            b >>= 1
        mod = sum(c << i for i, c in enumerate(self.modulus))
        for deg in range(prod.bit_length() - 1, self.e - 1, -1):
            if prod >> deg & 1:
                prod ^= mod << (deg - self.e)
        return prod

    def _add_digits(self, a, b, sign: int = 1):
        out = 0
        for w in self._pows:
            out = out + ((a // w % self.p + sign * (b // w % self.p)) % self.p) * w
        return out

    # -- scalar arithmetic on encodings ----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._add_digits(a, b)

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._add_digits(a, b, -1)

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is None:
            return self._raw_mul(a, b)
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        if self._log is None:
            return self.pow(a, self.q - 2)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    # -- vectorised arithmetic (numpy integer arrays) ---------------------

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._add_digits(np.asarray(a), np.asarray(b))

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if self.e == 1:
            return a * b % self.p
        if self._log is None:
            return np.vectorize(self.mul, otypes=[np.int64])(a, b)
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    # -- elements ----------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not belong to {self!r}")
            return value
        return FieldElement(self, value)

    def encode(self, value) -> int:
        """Canonical integer of an element given as int or FieldElement."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not belong to {self!r}")
            return value.value
        v = int(value)
        if not 0 <= v < self.q:
            raise ValueError(f"{v} is not a canonical element encoding of {self!r}")
        return v

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def __iter__(self) -> Iterator[FieldElement]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.q

    def __eq__(self, other) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    base = GF(p)
    # product() yields the lower coefficients in lex order, constant term most significant
    for low in itertools.product(range(p), repeat=e):
        f = Polynomial(base, low + (1,))
        if is_irreducible(f):
            return f.coeffs
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


@lru_cache(maxsize=None)
def GF(q_or_p: int, e: int | None = None) -> Field:
    """Cached field constructor.  ``GF(9)`` and ``GF(3, 2)`` are the same field."""
    if e is None:
        p, e = prime_power(q_or_p)
    else:
        p = q_or_p
    return Field(p, e)


def field_from_order(q: int, ceiling: int = DEFAULT_CEILING) -> Field:
    p, e = prime_power(q)
    if q > ceiling:
        raise TooLarge(f"q={q} exceeds the field ceiling {ceiling}")
    return GF(p, e) if ceiling == DEFAULT_CEILING else Field(p, e, ceiling)


def enumerate_elements(field: Field) -> list[FieldElement]:
    """All elements in ascending encoding order (0 and 1 first)."""
    return field.elements()


class FieldElement:
    """An element of a specific field.  Ints are accepted as canonical encodings."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        value = int(value)
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is out of range for {field!r}")
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self!r} with {other!r}")
            return other.value
        if isinstance(other, int):
            return self.field.encode(other)
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __neg__(self) -> FieldElement:
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int) -> FieldElement:
        return self._wrap(self.field.pow(self.value, n))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


# free-function spellings of the field operations
def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def ff_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def ff_neg(a: FieldElement) -> FieldElement:
    return -a


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


class Polynomial:
    """Polynomial over a field, coefficients stored constant term first.

    ``coeffs`` holds canonical integer encodings with trailing zeros
    trimmed, so the zero polynomial has ``coeffs == ()`` and degree
    :data:`NEG_INF`.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        vals = [field.encode(c) for c in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        self.field = field
        self.coeffs = tuple(vals)

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff=1) -> Polynomial:
        return cls(field, [0] * degree + [coeff])

    @classmethod
    def from_index(cls, field: Field, index: int, length: int) -> Polynomial:
        """Message polynomial whose base-q digits (constant term fastest) are ``index``."""
        digits = []
        for _ in range(length):
            index, d = divmod(index, field.q)
            digits.append(d)
        return cls(field, digits)

    def index(self) -> int:
        """Inverse of :meth:`from_index`."""
        return sum(c * self.field.q**i for i, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FieldElement:
        return FieldElement(self.field, self.coeffs[-1] if self.coeffs else 0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coeffs)

    def eval_int(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __call__(self, x) -> FieldElement:
        return FieldElement(self.field, self.eval_int(self.field.encode(x)))

    def _check(self, other: Polynomial) -> None:
        if other.field != self.field:
            raise FieldMismatch(f"polynomials over {self.field!r} and {other.field!r}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return Polynomial(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> Polynomial:
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, a) -> Polynomial:
        F = self.field
        a = F.encode(a)
        return Polynomial(F, [F.mul(a, c) for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Polynomial(F, out)

    __rmul__ = __mul__

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        inv_lead = F.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = F.mul(rem[i], inv_lead)
            if c:
                quot[i - d] = c
                for j, g in enumerate(other.coeffs):
                    rem[i - d + j] = F.sub(rem[i - d + j], F.mul(c, g))
        return Polynomial(F, quot), Polynomial(F, rem[:d])

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Polynomial({self.field!r}, 0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return f"Polynomial({self.field!r}, {' + '.join(terms)})"


def poly_eval(f: Polynomial, x) -> FieldElement:
    """Horner evaluation of ``f`` at ``x``."""
    return f(x)


def poly_from_roots(field: Field, leading, roots: Sequence = ()) -> Polynomial:
    """Expand ``leading * prod(x - r)``.  Repeated roots are allowed."""
    lead = field.encode(leading)
    if lead == 0:
        raise ZeroLeading("leading coefficient must be nonzero")
    # coefficients of the monic product, constant term first
    out = [1]
    for r in roots:
        neg_r = field.neg(field.encode(r))
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] = field.add(nxt[i + 1], c)
            nxt[i] = field.add(nxt[i], field.mul(c, neg_r))
        out = nxt
    return Polynomial(field, [field.mul(lead, c) for c in out])


def monic_polynomials(field: Field, degree: int) -> Iterator[Polynomial]:
    """All monic polynomials of exactly ``degree``, lower coefficients as base-q counters."""
    for low in itertools.product(range(field.q), repeat=degree):
        yield Polynomial(field, tuple(reversed(low)) + (1,))


def has_root(f: Polynomial) -> bool:
    return any(f.eval_int(x) == 0 for x in range(f.field.q))


def is_irreducible(f: Polynomial) -> bool:
    """Irreducibility over the coefficient field.

    Degrees 2 and 3 reduce to root absence; higher degrees use trial
    division by every monic polynomial of degree up to ``deg // 2``, which
    is only sensible at small scale.
    """
    deg = f.degree
    if deg < 1:
        raise DegreeTooSmall(f"irreducibility is undefined for constants ({f!r})")
    if deg == 1:
        return True
    if deg <= 3:
        return not has_root(f)
    for d in range(1, deg // 2 + 1):
        for g in monic_polynomials(f.field, d):
            if (f % g).is_zero():
                return False
    return True


def count_monic_irreducible(q: int, n: int) -> int:
    """Number of monic irreducible degree-``n`` polynomials over GF(q), via the Mobius sum."""
    prime_power(q)
    if n < 1:
        raise ValueError(f"degree must be >= 1, got n={n}")
    total = sum(mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0)
    count, rem = divmod(total, n)
    assert rem == 0
    return count
