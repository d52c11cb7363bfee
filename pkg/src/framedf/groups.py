"""Finite abelian groups: cyclic groups, additive field groups, direct products.

A group is described by a descriptor tree (Cyclic(n) | AdditiveField(field) |
Product(...)) and its elements are integer encodings 0..order-1 in mixed
radix over the flattened tree leaves.  Addition is componentwise modular
addition on the leaf digits; all operations accept plain ints or numpy
arrays of encodings and are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .fields import FiniteField

__all__ = ["AbelianGroup", "GroupElement", "CrtIsomorphism", "crt_iso"]


class AbelianGroup:
    """Use the factory classmethods cyclic / additive / product."""

    def __init__(self, kind: str, *, n: int = 0, field: Optional[FiniteField] = None,
                 factors: Sequence["AbelianGroup"] = ()):
        self.kind = kind
        self.n = n
        self.field = field
        self.factors = tuple(factors)
        if kind == "cyclic":
            if n < 1:
                raise ValueError("cyclic order must be >= 1")
            self._radices = (n,)
            self._moduli = (n,)
        elif kind == "field":
            assert field is not None
            self._radices = (field.p,) * field.m
            self._moduli = (field.p,) * field.m
        elif kind == "product":
            if not factors:
                raise ValueError("empty product")
            self._radices = tuple(r for f in self.factors for r in f._radices)
            self._moduli = self._radices
        else:
            raise ValueError(f"unknown group kind {kind}")
        self.order = math.prod(self._radices)
        # mixed-radix weights, least significant leaf first
        w = []
        acc = 1
        for r in self._radices:
            w.append(acc)
            acc *= r
        self._weights = tuple(w)

    # -- factories -----------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls("cyclic", n=n)

    @classmethod
    def additive(cls, field: FiniteField) -> "AbelianGroup":
        return cls("field", field=field)

    @classmethod
    def product(cls, *factors: "AbelianGroup") -> "AbelianGroup":
        return cls("product", factors=factors)

    # -- digit helpers --------------------------------------------------------

    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (len(self._radices),), dtype=np.int64)
        for j, r in enumerate(self._radices):
            out[..., j] = a % r
            a = a // r
        return out

    def _undigits(self, d):
        out = np.zeros(d.shape[:-1], dtype=np.int64)
        for j in reversed(range(len(self._radices))):
            out = out * self._radices[j] + d[..., j]
        return int(out) if out.ndim == 0 else out

    # -- group law -------------------------------------------------------------

    def add(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._undigits((da + db) % np.array(self._radices))

    def sub(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._undigits((da - db) % np.array(self._radices))

    def neg(self, a):
        return self._undigits((-self._digits(a)) % np.array(self._radices))

    @property
    def zero(self) -> int:
        return 0

    def enumerate(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def element_order(self, a) -> int:
        digits = self._digits(int(a))
        out = 1
        for dg, r in zip(digits, self._radices):
            out = math.lcm(out, r // math.gcd(int(dg), r))
        return out

    def element(self, coords) -> "GroupElement":
        if isinstance(coords, GroupElement):
            if coords.owner is not self:
                raise ValueError("element from a different group")
            return coords
        if isinstance(coords, (int, np.integer)):
            if not 0 <= coords < self.order:
                raise ValueError("encoding out of range")
            return GroupElement(self, int(coords))
        arr = np.asarray([c % r for c, r in zip(coords, self._radices)])
        return GroupElement(self, self._undigits(arr))

    # -- product structure ------------------------------------------------------

    def pack(self, *parts) -> int:
        """Encode an element of a product group from per-factor encodings."""
        if self.kind != "product":
            raise ValueError("pack only applies to product groups")
        enc = 0
        for fac, part in reversed(list(zip(self.factors, parts))):
            enc = enc * fac.order + int(part)
        return enc

    def pack_arrays(self, *parts) -> np.ndarray:
        if self.kind != "product":
            raise ValueError("pack only applies to product groups")
        enc = np.zeros_like(np.asarray(parts[0], dtype=np.int64))
        for fac, part in reversed(list(zip(self.factors, parts))):
            enc = enc * fac.order + np.asarray(part, dtype=np.int64)
        return enc

    def unpack(self, enc):
        if self.kind != "product":
            raise ValueError("unpack only applies to product groups")
        enc = np.asarray(enc, dtype=np.int64)
        out = []
        for fac in self.factors:
            out.append(enc % fac.order if enc.ndim else int(enc % fac.order))
            enc = enc // fac.order
        return tuple(out)

    def factor_slice_subgroup(self, index: int) -> np.ndarray:
        """Encodings of factor_index x {0} x ... inside a product group."""
        if self.kind != "product":
            raise ValueError("subgroup slice only applies to product groups")
        fac = self.factors[index]
        weight = math.prod(f.order for f in self.factors[:index])
        return (np.arange(fac.order, dtype=np.int64) * weight)

    # -- misc ---------------------------------------------------------------------

    def descriptor(self) -> dict:
        if self.kind == "cyclic":
            return {"type": "cyclic", "n": self.n}
        if self.kind == "field":
            return {"type": "field", "field": self.field.descriptor()}
        return {"type": "product", "factors": [f.descriptor() for f in self.factors]}

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(repr(self.descriptor()))

    def __repr__(self):
        if self.kind == "cyclic":
            return f"Z{self.n}"
        if self.kind == "field":
            return f"{self.field!r}+"
        return " x ".join(repr(f) for f in self.factors)


@dataclass(frozen=True)
class GroupElement:
    owner: AbelianGroup
    encoding: int

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.owner._digits(self.encoding))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.owner != self.owner:
            raise ValueError("operands belong to different groups")
        return GroupElement(self.owner, int(self.owner.add(self.encoding, other.encoding)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.owner, int(self.owner.neg(self.encoding)))

    def __repr__(self):
        return f"{self.owner!r}:{self.encoding}"


class CrtIsomorphism:
    """Bijective homomorphism from a product of coprime cyclic pieces to Z_n."""

    def __init__(self, group: AbelianGroup):
        if group.kind == "cyclic":
            leaf_orders = [group.n]
        else:
            leaf_orders = []
            for fac in (group.factors if group.kind == "product" else (group,)):
                if fac.kind == "cyclic":
                    leaf_orders.append(fac.n)
                elif fac.kind == "field" and fac.field.m == 1:
                    leaf_orders.append(fac.field.p)
                else:
                    raise ValueError(f"factor {fac!r} is not cyclic")
        for i in range(len(leaf_orders)):
            for j in range(i + 1, len(leaf_orders)):
                if math.gcd(leaf_orders[i], leaf_orders[j]) != 1:
                    raise ValueError("factor orders are not pairwise coprime")
        self.source = group
        self.n = math.prod(leaf_orders)
        self.target = AbelianGroup.cyclic(self.n)
        # CRT weights: w_i = 1 mod n_i, 0 mod n_j (j != i); leaf radices equal orders here
        ws = []
        for i, ni in enumerate(leaf_orders):
            rest = self.n // ni
            ws.append(rest * pow(rest, -1, ni) % self.n)
        self._weights = np.array(ws, dtype=np.int64)
        self._orders = leaf_orders

    def apply(self, a):
        digits = self.source._digits(a)
        out = (digits * self._weights).sum(axis=-1) % self.n
        return int(out) if out.ndim == 0 else out

    def invert(self, x):
        x = np.asarray(x, dtype=np.int64)
        digits = np.stack([x % ni for ni in self._orders], axis=-1)
        return self.source._undigits(digits)


def crt_iso(group: AbelianGroup) -> CrtIsomorphism:
    """Isomorphism (with inverse) from a coprime product onto Cyclic(n)."""
    return CrtIsomorphism(group)
