"""Exact finite field arithmetic with discrete-log tables and cyclotomic classes.

Elements of GF(p^m) are stored as integer encodings: the element with
polynomial-basis coefficients (c_0, ..., c_{m-1}) is encoded as
sum(c_i * p**i).  For prime fields the encoding is just the residue.
Every field builds a full exp/log table at construction (fields in scope
are small; discrete logs are the workhorse of all cyclotomic reasoning),
so dlog, multiplication and cyclotomic class lookups are O(1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "FiniteField",
    "FieldElement",
    "CyclotomicIndexer",
    "make_field",
    "least_primitive_root",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def least_primitive_root(p: int) -> int:
    """Smallest positive primitive root mod p (p prime), by direct order check."""
    phi = p - 1
    # distinct prime factors of p-1
    facs = []
    n = phi
    f = 2
    while f * f <= n:
        if n % f == 0:
            facs.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        facs.append(n)
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in facs):
            return g
    raise ArithmeticError(f"no primitive root found mod {p}")


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    """Multiply coefficient vectors mod (modulus, p).  modulus is monic of degree m."""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: x^m = -(modulus[0] + ... + modulus[m-1] x^{m-1})
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j in range(m):
                prod[deg - m + j] = (prod[deg - m + j] - c * modulus[j]) % p
    out = prod[:m]
    out += [0] * (m - len(out))
    return out


class FiniteField:
    """GF(p^m) with a fixed primitive polynomial and primitive element.

    The generator is the residue class of x when m > 1 (a root of the
    primitive modulus), and the least primitive root mod p when m == 1.
    """

    def __init__(self, p: int, m: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.q = p**m
        if m == 1:
            if modulus is not None:
                mod = [x % p for x in modulus]
                if len(mod) != 2 or mod[1] != 1:
                    raise ValueError("prime-field modulus must be monic linear")
            self.modulus = (0, 1)
            g = least_primitive_root(p) if p > 2 else 1
            self.generator = g
            self._build_prime_tables(g)
        else:
            if modulus is None:
                modulus = _default_primitive_poly(p, m)
            mod = [x % p for x in modulus]
            if len(mod) != m + 1 or mod[m] != 1:
                raise ValueError(f"modulus must be monic of degree {m}")
            self.modulus = tuple(mod)
            self._build_ext_tables()
            if self._log is None:
                raise ValueError("modulus is not primitive over GF(%d)" % p)
            self.generator = self.p  # encoding of x

    # -- table construction -------------------------------------------------

    def _build_prime_tables(self, g: int) -> None:
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = x * g % q
        if x != 1 or np.any(log[1:] < 0):
            raise ArithmeticError(f"{g} is not primitive mod {q}")
        self._exp = exp
        self._log = log

    def _build_ext_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        gen = [0, 1] + [0] * (m - 2)  # x
        cur = [1] + [0] * (m - 1)
        for i in range(q - 1):
            enc = 0
            for j in reversed(range(m)):
                enc = enc * p + cur[j]
            if log[enc] >= 0:
                self._log = None  # reducible or imprimitive: cycle shorter than q-1
                return
            exp[i] = enc
            log[enc] = i
            cur = _poly_mul_mod(cur, gen, self.modulus, p)
        if cur != [1] + [0] * (m - 1):
            self._log = None
            return
        self._exp = exp
        self._log = log

    # -- element encoding ---------------------------------------------------

    def encode(self, coeffs: Sequence[int]) -> int:
        enc = 0
        for c in reversed(list(coeffs)):
            enc = enc * self.p + (c % self.p)
        return enc

    def decode(self, enc: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(enc % self.p)
            enc //= self.p
        return tuple(out)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.owner is not self:
                raise ValueError("element from a different field")
            return value
        if isinstance(value, (int, np.integer)):
            if self.m == 1:
                return FieldElement(self, int(value) % self.p)
            if not 0 <= value < self.q:
                raise ValueError("encoding out of range")
            return FieldElement(self, int(value))
        return FieldElement(self, self.encode(value))

    # -- arithmetic on encodings (vectorised over numpy arrays) -------------

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        da = self._digits(a)
        db = self._digits(b)
        return self._undigits((da + db) % self.p)

    def sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        da = self._digits(a)
        db = self._digits(b)
        return self._undigits((da - db) % self.p)

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        return self._undigits((-self._digits(a)) % self.p)

    def mul(self, a, b):
        za = np.asarray(a) == 0
        zb = np.asarray(b) == 0
        la = self._log[a]
        lb = self._log[b]
        out = self._exp[(la + lb) % (self.q - 1)]
        if out.ndim == 0:
            return 0 if (za or zb) else int(out)
        out = np.where(za | zb, 0, out)
        return out

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow_generator(self, k: int) -> int:
        return int(self._exp[k % (self.q - 1)])

    def dlog(self, a) -> int:
        """Discrete log base the field generator; total on nonzero elements."""
        if isinstance(a, FieldElement):
            a = a.encoding
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("zero has no discrete log")
        out = self._log[a]
        return int(out) if out.ndim == 0 else out

    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (self.m,), dtype=np.int64)
        for j in range(self.m):
            out[..., j] = a % self.p
            a = a // self.p
        return out

    def _undigits(self, d):
        out = np.zeros(d.shape[:-1], dtype=np.int64)
        for j in reversed(range(self.m)):
            out = out * self.p + d[..., j]
        if out.ndim == 0:
            return int(out)
        return out

    def nonzero_encodings(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64) if self.m == 1 else self._exp.copy()

    def elements(self) -> Iterable["FieldElement"]:
        for enc in range(self.q):
            yield FieldElement(self, enc)

    # -- misc ---------------------------------------------------------------

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus),
            "generator": list(self.decode(self.generator)),
        }

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
            and self.generator == other.generator
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus, self.generator))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


@lru_cache(maxsize=None)
def _default_primitive_poly(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least primitive monic polynomial of degree m over GF(p),
    compared by the ascending coefficient list (c0, c1, ..., c_{m-1})."""
    if (p, m) == (5, 2):
        # x^2 - x + 2, the polynomial all GF(25) catalog data is written in
        return (2, 4, 1)
    for enc in range(p**m):
        coeffs = []
        e = enc
        for _ in range(m):
            coeffs.append(e % p)
            e //= p
        cand = tuple(coeffs) + (1,)
        try:
            f = FiniteField(p, m, cand)
        except ValueError:
            continue
        del f
        return cand
    raise ArithmeticError(f"no primitive polynomial of degree {m} over GF({p})")


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1, modulus: Optional[tuple] = None) -> FiniteField:
    """Build (and cache) GF(p^m).  A supplied modulus must be primitive."""
    return FiniteField(p, m, modulus)


@dataclass(frozen=True)
class FieldElement:
    """A field element: owner plus integer encoding of its coefficient vector."""

    owner: FiniteField
    encoding: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.owner.decode(self.encoding)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.owner, self.owner.add(self.encoding, other.encoding))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.owner, self.owner.sub(self.encoding, other.encoding))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.owner, self.owner.neg(self.encoding))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.owner, int(self.owner.mul(self.encoding, other.encoding)))

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.owner is not self.owner:
            raise ValueError("operands belong to different fields")

    def __repr__(self):
        return f"{self.owner!r}:{self.encoding}"


class CyclotomicIndexer:
    """Cyclotomic class bookkeeping for a fixed field and class count e | q-1.

    class_of(x) is dlog(x) mod e; the e classes partition the nonzero
    elements into cosets of the subgroup of e-th powers, each of size
    (q-1)/e.
    """

    def __init__(self, field: FiniteField, e: int):
        if (field.q - 1) % e != 0:
            raise ValueError(f"e={e} does not divide q-1={field.q - 1}")
        self.field = field
        self.e = e

    def class_of(self, x) -> int:
        return self.field.dlog(x) % self.e

    def classes_of(self, xs) -> np.ndarray:
        xs = np.asarray(xs)
        if np.any(xs == 0):
            raise ZeroDivisionError("zero has no cyclotomic class")
        return self.field._log[xs] % self.e

    def class_members(self, i: int) -> np.ndarray:
        k = (self.field.q - 1) // self.e
        idx = (i % self.e) + self.e * np.arange(k)
        return self.field._exp[idx]

    def is_transversal(self, elems, lam: int) -> bool:
        """True iff every class contains exactly lam members of elems
        (with multiplicity).  Members must be nonzero."""
        elems = np.asarray(list(elems) if not isinstance(elems, np.ndarray) else elems)
        if elems.size != lam * self.e:
            return False
        counts = np.bincount(self.classes_of(elems), minlength=self.e)
        return bool(np.all(counts == lam))
