"""Finite field towers GF(p) < GF(q) < GF(q^m) with integer-encoded elements.

An element of a degree-``e`` extension of a field with ``Q`` elements is
stored as the integer ``sum(c[i] * Q**i)``, where ``c`` is its coefficient
vector in the polynomial basis (constant term first).  The encoding nests:
the base-``p`` digits of an element of GF(q^m) are the concatenated base-``p``
digits of its GF(q) coefficients, so addition is digitwise mod ``p`` at every
level of the tower.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

DEFAULT_CAP = 1 << 20
CAP_ENV = "CRCODES_CAP"

# Full add/mul tables are materialised below this order.
_TABLE_ORDER = 256


class FieldError(ValueError):
    """Invalid field parameters or operands."""


class CapExceeded(ValueError):
    """A desk-scale size cap was exceeded."""


def desk_cap() -> int:
    """Size cap for enumerations, overridable through ``CRCODES_CAP``."""
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


def _digits(x: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        x, d = divmod(x, base)
        out.append(d)
    return out


def _undigits(ds: Iterable[int], base: int) -> int:
    x, place = 0, 1
    for d in ds:
        x += d * place
        place *= base
    return x


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class _Field:
    """Shared arithmetic; subclasses provide ``order``, ``char`` and ``_mul``."""

    order: int
    char: int

    def _init_tables(self) -> None:
        self._add_t = None
        self._mul_t = None
        if self.order <= _TABLE_ORDER:
            els = range(self.order)
            self._add_t = [[self._add(a, b) for b in els] for a in els]
            self._mul_t = [[self._mul(a, b) for b in els] for a in els]

    def _add(self, a: int, b: int) -> int:
        p = self.char
        if p == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * place
            place *= p
        return out

    def _neg(self, a: int) -> int:
        p = self.char
        if p == 2:
            return a
        out, place = 0, 1
        while a:
            a, d = divmod(a, p)
            out += ((p - d) % p) * place
            place *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._add(a, b)

    def neg(self, a: int) -> int:
        return self._neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_t is not None:
            return self._mul_t[a][b]
        return self._mul(a, b)

    def _mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def element(self, a: int) -> int:
        """Validate an encoded element of this field."""
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of a field of order {self.order}")
        return a

    def elements(self) -> range:
        return range(self.order)


class PrimeField(_Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = self.char = self.order = p
        self._init_tables()

    def _add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def _neg(self, a: int) -> int:
        return -a % self.p

    def _mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def __repr__(self) -> str:
        return f"GF({self.p})"


class ExtensionField(_Field):
    """Degree-``e`` extension of ``base`` defined by a monic irreducible ``modulus``.

    Multiplication goes through discrete log/exp tables, built on first use.
    """

    def __init__(self, base: _Field, modulus: Sequence[int]):
        modulus = tuple(modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.char = base.char
        self.order = base.order**self.degree
        self._init_tables()

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def coeffs(self, a: int) -> list[int]:
        return _digits(a, self.base.order, self.degree)

    def from_coeffs(self, cs: Iterable[int]) -> int:
        return _undigits(cs, self.base.order)

    def _mul_poly(self, a: int, b: int) -> int:
        B, e = self.base, self.degree
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        mod = self.modulus
        for t in range(2 * e - 2, e - 1, -1):
            c = prod[t]
            if c:
                for s in range(e):
                    prod[t - e + s] = B.sub(prod[t - e + s], B.mul(c, mod[s]))
                prod[t] = 0
        return self.from_coeffs(prod[:e])

    def _pow_poly(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    @cached_property
    def _logexp(self) -> tuple[list[int], list[int]]:
        n = self.order - 1
        factors = _prime_factors(n)
        for g in range(1, self.order):
            if all(self._pow_poly(g, n // f) != 1 for f in factors):
                break
        else:  # pragma: no cover - a finite field always has a generator
            raise FieldError("no primitive element found; modulus is not irreducible")
        exp = [1] * n
        for i in range(1, n):
            exp[i] = self._mul_poly(exp[i - 1], g)
        log = [0] * self.order
        for i, x in enumerate(exp):
            log[x] = i
        if len(set(exp)) != n:
            raise FieldError("modulus is not irreducible")
        return exp, log

    @property
    def generator(self) -> int:
        exp = self._logexp[0]
        return exp[1] if len(exp) > 1 else 1

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp, log = self._logexp
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        exp, log = self._logexp
        return exp[-log[a] % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if e else 1
        exp, log = self._logexp
        return exp[log[a] * e % (self.order - 1)]

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a ** (Q**i)`` where ``Q`` is the base field order."""
        return self.pow(a, self.base.order**i)


# -- polynomials over a field, coefficient lists with constant term first --


def _poly_rem(F: _Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``b``."""
    a = list(a)
    db = len(b) - 1
    for t in range(len(a) - 1, db - 1, -1):
        c = a[t]
        if c:
            for s in range(db + 1):
                a[t - db + s] = F.sub(a[t - db + s], F.mul(c, b[s]))
    return a[:db]


def is_irreducible(F: _Field, poly: Sequence[int]) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(poly) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for idx in range(F.order**deg):
            divisor = _digits(idx, F.order, deg) + [1]
            if not any(_poly_rem(F, poly, divisor)):
                return False
    return True


@lru_cache(maxsize=None)
def _first_irreducible_cached(field_key: tuple, degree: int) -> tuple[int, ...]:
    F = _field_from_key(field_key)
    for idx in range(F.order**degree):
        cand = _digits(idx, F.order, degree) + [1]
        if is_irreducible(F, cand):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {degree} over {F}")  # pragma: no cover


def first_irreducible(F: _Field, degree: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of ``degree`` over ``F``.

    Candidates are ordered by the integer encoding of their non-leading
    coefficients, constant term least significant.
    """
    return _first_irreducible_cached(_field_key(F), degree)


def _field_key(F: _Field) -> tuple:
    if isinstance(F, PrimeField):
        return ("prime", F.p)
    return ("ext", _field_key(F.base), F.modulus)


@lru_cache(maxsize=None)
def _field_from_key(key: tuple) -> _Field:
    if key[0] == "prime":
        return PrimeField(key[1])
    return ExtensionField(_field_from_key(key[1]), key[2])


@lru_cache(maxsize=None)
def _tower(p: int, irred_q: tuple[int, ...], irred_qm: tuple[int, ...]) -> tuple[_Field, ExtensionField]:
    Fp = _field_from_key(("prime", p))
    if len(irred_q) == 2:
        Fq: _Field = Fp
    else:
        Fq = _field_from_key(("ext", ("prime", p), irred_q))
    Fqm = _field_from_key(("ext", _field_key(Fq), irred_qm))
    return Fq, Fqm  # type: ignore[return-value]


@dataclass(frozen=True)
class FieldSpec:
    """The tower GF(p) < GF(q) < GF(q^m) together with a GF(q)-basis of GF(q^m).

    ``irred_q`` defines GF(q) over GF(p) (``x`` when ``k == 1``); ``irred_qm``
    defines GF(q^m) over GF(q).  ``basis`` lists GF(q^m) elements in the
    integer encoding.
    """

    p: int
    k: int
    m: int
    irred_q: tuple[int, ...]
    irred_qm: tuple[int, ...]
    basis: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if len(self.irred_q) != self.k + 1 or len(self.irred_qm) != self.m + 1:
            raise FieldError("irreducible polynomial degrees do not match k, m")
        Fp = PrimeField(self.p)
        if not is_irreducible(Fp, self.irred_q):
            raise FieldError(f"irred_q {self.irred_q} is reducible")
        if not is_irreducible(self.Fq, self.irred_qm):
            raise FieldError(f"irred_qm {self.irred_qm} is reducible")
        if len(self.basis) != self.m or any(not 0 <= b < self.order for b in self.basis):
            raise FieldError("basis must list m elements of GF(q^m)")
        self._basis_inverse  # noqa: B018 - raises if the basis is dependent

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        return self.q**self.m

    @property
    def Fq(self) -> _Field:
        return _tower(self.p, self.irred_q, self.irred_qm)[0]

    @property
    def Fqm(self) -> ExtensionField:
        return _tower(self.p, self.irred_q, self.irred_qm)[1]

    @property
    def is_polynomial_basis(self) -> bool:
        return self.basis == tuple(self.q**i for i in range(self.m))

    @cached_property
    def _basis_inverse(self) -> list[list[int]] | None:
        if self.is_polynomial_basis:
            return None
        from .linalg import MatrixQ, inverse

        cols = [_digits(b, self.q, self.m) for b in self.basis]
        P = MatrixQ.from_rows(self.Fq, [[cols[j][i] for j in range(self.m)] for i in range(self.m)])
        try:
            return [list(row) for row in inverse(P).entries]
        except ValueError:
            raise FieldError("basis is not linearly independent over GF(q)") from None

    def expand(self, x: int) -> tuple[int, ...]:
        """Coordinates of ``x`` over GF(q) in this spec's basis."""
        c = _digits(x, self.q, self.m)
        Binv = self._basis_inverse
        if Binv is None:
            return tuple(c)
        F = self.Fq
        out = []
        for row in Binv:
            acc = 0
            for a, b in zip(row, c):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def contract(self, col: Sequence[int]) -> int:
        """Inverse of :meth:`expand`."""
        if len(col) != self.m:
            raise FieldError(f"expected {self.m} coordinates, got {len(col)}")
        if self.is_polynomial_basis:
            return _undigits(col, self.q)
        F = self.Fqm
        acc = 0
        for c, b in zip(col, self.basis):
            if c:
                acc = F.add(acc, F.mul(c, b))
        return acc

    def with_basis(self, basis: Sequence[int]) -> FieldSpec:
        return FieldSpec(self.p, self.k, self.m, self.irred_q, self.irred_qm, tuple(basis))

    def random_basis(self, rng: random.Random) -> FieldSpec:
        """A copy of this spec with a uniformly random GF(q)-basis."""
        from .linalg import MatrixQ, rank

        F = self.Fq
        while True:
            rows = [[rng.randrange(self.q) for _ in range(self.m)] for _ in range(self.m)]
            if rank(MatrixQ.from_rows(F, rows)) == self.m:
                break
        return self.with_basis(_undigits(row, self.q) for row in rows)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "m": self.m,
            "irred_q": list(self.irred_q),
            "irred_qm": list(self.irred_qm),
            "basis": list(self.basis),
        }

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        return cls(
            int(obj["p"]),
            int(obj["k"]),
            int(obj["m"]),
            tuple(obj["irred_q"]),
            tuple(obj["irred_qm"]),
            tuple(obj["basis"]),
        )


@lru_cache(maxsize=None)
def make_field(p: int, k: int, m: int, cap: int | None = None) -> FieldSpec:
    """Build GF(p^k)^m's tower with lexicographically first irreducibles.

    >>> make_field(2, 1, 2).irred_qm
    (1, 1, 1)
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1 or m < 1:
        raise FieldError("k and m must be positive")
    cap = desk_cap() if cap is None else cap
    q = p**k
    if q**m > cap:
        raise CapExceeded(f"q^m = {q**m} exceeds the desk-scale cap {cap}")
    Fp = PrimeField(p)
    irred_q = first_irreducible(Fp, k)
    Fq = Fp if k == 1 else _field_from_key(("ext", ("prime", p), irred_q))
    irred_qm = first_irreducible(Fq, m)
    return FieldSpec(p, k, m, irred_q, irred_qm, tuple(q**i for i in range(m)))


def field_for(q: int, m: int, cap: int | None = None) -> FieldSpec:
    p, k = prime_power(q)
    return make_field(p, k, m, cap)


def expand(x: int, spec: FieldSpec) -> tuple[int, ...]:
    return spec.expand(x)


def contract(col: Sequence[int], spec: FieldSpec) -> int:
    return spec.contract(col)
