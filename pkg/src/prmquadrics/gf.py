"""Exact arithmetic in GF(p**e) for small prime powers.

Elements are plain Python ints in ``range(q)``: the base-p digits of the
integer are the coefficients of the polynomial-basis representation, digit
``i`` being the coefficient of ``z**i`` where ``z`` is a root of the field
modulus.  All arithmetic goes through precomputed q-by-q tables, which keeps
the exhaustive census loops fast and allocation-free.

The modulus is the lexicographically least monic irreducible polynomial of
the requested degree (coefficient lists compared constant term first), found
by exhaustive trial division.  Elements carry a canonical total order:
lexicographic on the coefficient vector, again constant term first.  Every
enumeration in the package (points, forms, codewords) derives from this
order, so all outputs are bit-for-bit reproducible.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class GFError(Exception):
    """Base class for field construction errors."""


class NonPrime(GFError):
    """Requested characteristic is not a prime number."""


class DegreeOutOfRange(GFError):
    """Requested extension degree is outside the supported range."""


class NotPrimePower(GFError):
    """Requested field order is not a prime power."""


MAX_DEGREE = 4


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of polynomial division over GF(p); coefficients ascending."""
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        f = (c * inv_lead) % p
        for j in range(dd + 1):
            num[i - dd + j] = (num[i - dd + j] - f * den[j]) % p
    return num[:dd] if dd > 0 else []


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]
            rem = _poly_mod(poly, den, p)
            if not any(rem):
                return False
    return True


def _canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """Least monic irreducible of degree e, lex on ascending coefficients."""
    if e == 1:
        # Prime field: reduction is plain mod-p, kept as x for uniformity.
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        poly = list(tail) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise GFError(f"no irreducible polynomial of degree {e} over GF({p})")


class Field:
    """GF(p**e) with table-based arithmetic and a canonical element order.

    Use :func:`field_create` (cached) rather than constructing directly, so
    equal parameters share one instance and downstream caches stay warm.
    """

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise NonPrime(f"characteristic {p} is not prime")
        if not 1 <= e <= MAX_DEGREE:
            raise DegreeOutOfRange(f"extension degree {e} not in 1..{MAX_DEGREE}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = _canonical_modulus(p, e)
        self.zero = 0
        self.one = 1
        self._build_tables()
        # Canonical order: lex on the coefficient vector, constant term first.
        self.elements: tuple[int, ...] = tuple(
            sorted(range(self.q), key=self.coeffs)
        )
        self._order_index = [0] * self.q
        for rank, x in enumerate(self.elements):
            self._order_index[x] = rank

    # -- representation ------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Polynomial-basis coefficient vector of x, constant term first."""
        out = []
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + c % self.p
        return x

    def order_index(self, x: int) -> int:
        """Rank of x in the canonical element order."""
        return self._order_index[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def render(self, x: int) -> str:
        """Render as a polynomial in z; prime-field elements as integers."""
        if self.e == 1:
            return str(x)
        cs = self.coeffs(x)
        terms = []
        for k in range(self.e - 1, -1, -1):
            c = cs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                zpow = "z" if k == 1 else f"z^{k}"
                terms.append(zpow if c == 1 else f"{c}*{zpow}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):  # pragma: no cover
        return f"Field(p={self.p}, e={self.e})"

    # -- arithmetic ------------------------------------------------------

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        if e == 1:
            self._add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            red = self.modulus

            def mul_poly(a: int, b: int) -> int:
                ca, cb = self.coeffs(a), self.coeffs(b)
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(ca):
                    if x:
                        for j, y in enumerate(cb):
                            prod[i + j] = (prod[i + j] + x * y) % p
                rem = _poly_mod(prod, list(red), p)
                rem += [0] * (e - len(rem))
                return self.from_coeffs(rem)

            self._add = [
                [
                    self.from_coeffs(
                        (x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))
                    )
                    for b in range(q)
                ]
                for a in range(q)
            ]
            self._mul = [[mul_poly(a, b) for b in range(q)] for a in range(q)]
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = next(b for b in range(1, q) if self._mul[a][b] == 1)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            n >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def from_int(self, n: int) -> int:
        """Embed an integer via repeated addition of 1 (reduces mod p)."""
        return n % self.p

    # -- derived operations ----------------------------------------------

    def trace_to_prime(self, x: int) -> int:
        """Tr(x) = x + x**p + ... + x**(p**(e-1)), an element of GF(p)."""
        acc, cur = 0, x
        for _ in range(self.e):
            acc = self._add[acc][cur]
            cur = self.frobenius(cur)
        return acc

    def is_square(self, x: int) -> bool:
        """True iff x is a square; in characteristic 2 every element is."""
        if self.p == 2:
            return True
        return x == 0 or self.pow(x, (self.q - 1) // 2) == 1


@lru_cache(maxsize=None)
def field_create(p: int, e: int) -> Field:
    """Construct (and cache) GF(p**e) with the canonical modulus."""
    return Field(p, e)


def field_from_order(q: int) -> Field:
    """Resolve a prime-power order q = p**e to the shared field instance."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next((d for d in range(2, q + 1) if q % d == 0), q)
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return field_create(p, e)


def irreducible_binary_constants(field: Field) -> tuple[int, int]:
    """Constants (alpha, d) of the anisotropic binary form.

    The form ``X0^2 + alpha*X0*X1 + d*X1^2`` has no nonzero rational zero.
    In odd characteristic alpha = 0 and d is the least element (canonical
    order) making the form anisotropic; in characteristic 2 alpha = 1 and d
    is the least element of trace 1.  Anisotropy is re-checked by exhaustive
    enumeration before returning.
    """
    if field.p == 2:
        alpha = 1
        d = next(x for x in field.elements if field.trace_to_prime(x) == 1)
    else:
        alpha = 0
        d = next(
            x
            for x in field.elements
            if x != 0 and not field.is_square(field.neg(x))
        )
    for a in range(field.q):
        for b in range(field.q):
            if a == 0 and b == 0:
                continue
            v = field.add(
                field.mul(a, a),
                field.add(
                    field.mul(alpha, field.mul(a, b)), field.mul(d, field.mul(b, b))
                ),
            )
            if v == 0:
                raise GFError("binary constants failed the anisotropy check")
    return alpha, d
