"""Sparse linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Hashable, Iterable, Iterator, Mapping


class LinComb:
    """Finite map ``key -> Fraction`` with zero coefficients dropped.

    Subclasses fix the key type and define the product of two basis keys
    in :meth:`_mul_keys`; everything else is shared.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]] | None = None) -> None:
        acc: dict[Hashable, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for key, c in items:
            key = self._canon(key)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self.terms = {k: v for k, v in acc.items() if v != 0}

    @staticmethod
    def _canon(key: Any) -> Hashable:
        return key

    @staticmethod
    def _mul_keys(a: Any, b: Any) -> Mapping[Hashable, Any]:
        raise NotImplementedError

    @classmethod
    def one(cls) -> LinComb:
        raise NotImplementedError

    @classmethod
    def basis(cls, key: Any) -> LinComb:
        return cls({key: 1})

    def _new(self, terms: Mapping[Hashable, Fraction]) -> LinComb:
        out = object.__new__(type(self))
        out.terms = {k: v for k, v in terms.items() if v != 0}
        return out

    def __getitem__(self, key: Any) -> Fraction:
        return self.terms.get(self._canon(key), Fraction(0))

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self):
        return self.terms.items()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return type(self) is type(other) and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == ({} if other == 0 else {self._unit_key(): Fraction(other)})
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def _unit_key(self) -> Hashable:
        (key,) = self.one().terms
        return key

    def __add__(self, other: LinComb) -> LinComb:
        if isinstance(other, (int, Rational)):
            other = self.one() * other
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return self._new(acc)

    __radd__ = __add__

    def __neg__(self) -> LinComb:
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: LinComb) -> LinComb:
        if isinstance(other, (int, Rational)):
            other = self.one() * other
        return self + (-other)

    def __rsub__(self, other: Any) -> LinComb:
        return (-self) + other

    def __mul__(self, other: Any) -> LinComb:
        if isinstance(other, (int, Rational)):
            c = Fraction(other)
            return self._new({k: v * c for k, v in self.terms.items()})
        if type(other) is not type(self):
            return NotImplemented
        acc: dict[Hashable, Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                for kc, m in self._mul_keys(ka, kb).items():
                    acc[kc] = acc.get(kc, Fraction(0)) + va * vb * m
        return self._new(acc)

    def __rmul__(self, other: Any) -> LinComb:
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> LinComb:
        out = self.one()
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{v}*{k}" for k, v in sorted(self.terms.items(), key=lambda kv: repr(kv[0])))
        return f"{type(self).__name__}({body})"


def tensor_mul(a: Mapping, b: Mapping, mul_keys) -> dict:
    """Legwise product of two tensors stored as ``{(k_1, .., k_r): coeff}``."""
    acc: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            legs = [mul_keys(x, y) for x, y in zip(ka, kb)]
            coeff = va * vb
            for key in _product_keys(legs):
                k, m = key
                acc[k] = acc.get(k, Fraction(0)) + coeff * m
    return {k: v for k, v in acc.items() if v != 0}


def _product_keys(legs):
    # legs: list of {key: mult}; yields (tuple_of_keys, combined mult)
    out = [((), 1)]
    for leg in legs:
        out = [(t + (k,), m * c) for t, m in out for k, c in leg.items()]
    return out
