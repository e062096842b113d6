"""Symmetric functions in the elementary basis, quasi-symmetric functions, and the map Phi.

Sym is stored as polynomials in ``e_1, e_2, ...``; a monomial is an integer
partition (weakly decreasing tuple) listing the indices of its factors.
``h_n`` and ``p_n`` are expansions in that basis.  QSym is stored in the
monomial basis ``M_c`` indexed by compositions, multiplied by quasi-shuffle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from . import nclat
from ._lincomb import LinComb, tensor_mul
from .errors import DomainError
from .hopfy import YElement
from .series import OneVarSeries, format_rational, onevar_reciprocal

Partition = tuple[int, ...]
Composition = tuple[int, ...]


class SymPoly(LinComb):
    """Polynomial in the elementary symmetric functions."""

    __slots__ = ()

    @staticmethod
    def _canon(key) -> Partition:
        key = tuple(int(i) for i in key)
        if any(i < 1 for i in key):
            raise DomainError(f"partition parts must be positive, got {key}")
        return tuple(sorted(key, reverse=True))

    @staticmethod
    def _mul_keys(a: Partition, b: Partition) -> dict:
        return {tuple(sorted(a + b, reverse=True)): 1}

    @classmethod
    def one(cls) -> SymPoly:
        return cls({(): 1})

    def to_json(self) -> list:
        return [
            {"partition": list(lam), "value": format_rational(c)}
            for lam, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        ]


class QSymPoly(LinComb):
    """Quasi-symmetric function in the monomial basis ``M_c``."""

    __slots__ = ()

    @staticmethod
    def _canon(key) -> Composition:
        key = tuple(int(i) for i in key)
        if any(i < 1 for i in key):
            raise DomainError(f"composition parts must be positive, got {key}")
        return key

    @staticmethod
    def _mul_keys(a: Composition, b: Composition) -> dict:
        return _quasi_shuffle(a, b)

    @classmethod
    def one(cls) -> QSymPoly:
        return cls({(): 1})

    def to_json(self) -> list:
        return [
            {"composition": list(c), "value": format_rational(v)}
            for c, v in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        ]


@lru_cache(maxsize=None)
def _quasi_shuffle(a: Composition, b: Composition) -> dict:
    # Interleave the parts of a and b, optionally merging a head of each.
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out: dict = {}
    for head, rest_a, rest_b in ((a[0], a[1:], b), (b[0], a, b[1:]), (a[0] + b[0], a[1:], b[1:])):
        for tail, c in _quasi_shuffle(rest_a, rest_b).items():
            key = (head,) + tail
            out[key] = out.get(key, 0) + c
    return out


def qsym_quasi_shuffle(a: QSymPoly, b: QSymPoly) -> QSymPoly:
    return a * b


def sym_mul(a: SymPoly, b: SymPoly) -> SymPoly:
    return a * b


def e(n: int) -> SymPoly:
    """Elementary symmetric function ``e_n`` (``e_0 = 1``)."""
    if n < 0:
        raise DomainError(f"e_n needs n >= 0, got {n}")
    return SymPoly.one() if n == 0 else SymPoly({(n,): 1})


def partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Integer partitions of ``n`` as weakly decreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def sym_basis(max_deg: int) -> list[Partition]:
    return [lam for n in range(max_deg + 1) for lam in partitions(n)]


def sym_dimension(n: int) -> int:
    return sum(1 for _ in partitions(n))


def _series_reciprocal(a: Sequence[SymPoly]) -> list[SymPoly]:
    # a[0] must be 1; returns b with a*b = 1 through len(a) - 1.
    if a[0] != 1:
        raise DomainError("series must start with 1")
    b = [SymPoly.one()]
    for n in range(1, len(a)):
        acc = SymPoly()
        for i in range(1, n + 1):
            acc = acc + a[i] * b[n - i]
        b.append(-acc)
    return b


def _series_log(a: Sequence[SymPoly]) -> list[SymPoly]:
    # log a for a[0] = 1, via a' = a * (log a)'.
    if a[0] != 1:
        raise DomainError("series must start with 1")
    q = [SymPoly()]
    for n in range(1, len(a)):
        acc = a[n] * n
        for i in range(1, n):
            acc = acc - q[i] * a[n - i] * i
        q.append(acc * Fraction(1, n))
    return q


def _e_series(max_deg: int) -> list[SymPoly]:
    return [e(n) for n in range(max_deg + 1)]


def h_from_e(max_deg: int) -> list[SymPoly]:
    """``[h_0, h_1, ..., h_N]`` in the e-basis, from ``1 + sum (-1)^n h_n z^n = 1/e(z)``."""
    if max_deg < 1:
        raise DomainError(f"degree must be positive, got {max_deg}")
    inv = _series_reciprocal(_e_series(max_deg))
    return [c * (-1) ** n for n, c in enumerate(inv)]


def p_from_e(max_deg: int) -> list[SymPoly]:
    """``[0, p_1, ..., p_N]`` in the e-basis, from ``sum (-1)^(n+1) p_n z^n / n = log e(z)``."""
    if max_deg < 1:
        raise DomainError(f"degree must be positive, got {max_deg}")
    lg = _series_log(_e_series(max_deg))
    return [SymPoly()] + [c * ((-1) ** (n + 1) * n) for n, c in enumerate(lg) if n]


def e_from_h(h: Sequence[SymPoly]) -> list[SymPoly]:
    """Invert :func:`h_from_e`: ``e(z) = 1 / (1 + sum (-1)^n h_n z^n)``."""
    return _series_reciprocal([c * (-1) ** n for n, c in enumerate(h)])


def e_from_p(p: Sequence[SymPoly]) -> list[SymPoly]:
    """Exponentiate ``sum (-1)^(n+1) p_n z^n / n`` back to ``e(z)``."""
    q = [SymPoly()] + [c * Fraction((-1) ** (n + 1), n) for n, c in enumerate(p) if n]
    out = [SymPoly.one()]
    for n in range(1, len(q)):
        acc = SymPoly()
        for i in range(1, n + 1):
            acc = acc + q[i] * out[n - i] * i
        out.append(acc * Fraction(1, n))
    return out


def _e_block_product(sizes: Sequence[int]) -> SymPoly:
    return SymPoly({tuple(sizes): 1})


@lru_cache(maxsize=None)
def _y_elem(n: int) -> SymPoly:
    acc: dict = {}
    for p in nclat.enumerate_nc(n - 1):
        key = tuple(sorted(p.block_sizes, reverse=True))
        acc[key] = acc.get(key, 0) + 1
    return SymPoly(acc)


def y_elem(n: int) -> SymPoly:
    """``y_n``: sum over NC(n-1) of the products ``e_{|A_1|} ... e_{|A_q|}``; ``y_1 = 1``."""
    if n < 1:
        raise DomainError(f"y_n needs n >= 1, got {n}")
    return SymPoly.one() if n == 1 else _y_elem(n)


def compositions(n: int, parts: int) -> Iterator[Composition]:
    """Compositions of ``n`` into exactly ``parts`` positive parts."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _y_recursive(n: int) -> SymPoly:
    if n == 1:
        return SymPoly.one()
    out = SymPoly()
    for m in range(2, n + 1):
        inner = SymPoly()
        for comp in compositions(n - 1, m - 1):
            term = SymPoly.one()
            for part in comp:
                term = term * _y_recursive(part)
            inner = inner + term
        out = out + e(m - 1) * inner
    return out


def y_recursive(n: int) -> SymPoly:
    """``y_n`` from the recursion in ``e_{m-1}`` and compositions of ``n - 1``."""
    if n < 1:
        raise DomainError(f"y_n needs n >= 1, got {n}")
    return _y_recursive(n)


def y_of_partition(p: nclat.NcPartition) -> SymPoly:
    """``y_p``: product of ``y_{|A|}`` over the blocks of ``p``."""
    out = SymPoly.one()
    for size in p.block_sizes:
        out = out * y_elem(size)
    return out


def sym_to_qsym(a: SymPoly) -> QSymPoly:
    """Substitute ``e_n = M_(1,...,1)`` and expand products by quasi-shuffle."""
    out = QSymPoly()
    for lam, c in a.items():
        term = QSymPoly.one()
        for part in lam:
            term = term * QSymPoly({(1,) * part: 1})
        out = out + term * c
    return out


def y_via_chains(n: int) -> tuple[QSymPoly, int]:
    """Chain expansion of ``y_n`` in QSym and the number of chains summed.

    Each chain ``0 = p_0 < ... < p_l = 1`` in NC(n) contributes
    ``M`` of the composition of block-count drops.
    """
    if n < 2:
        raise DomainError(f"chain expansion needs n >= 2, got {n}")
    acc: dict = {}
    count = 0
    for g in nclat.iter_chains(n):
        comp = tuple(len(a) - len(b) for a, b in zip(g.elements, g.elements[1:]))
        acc[comp] = acc.get(comp, 0) + 1
        count += 1
    return QSymPoly(acc), count


def _mul_partitions(a: Partition, b: Partition) -> dict:
    return {tuple(sorted(a + b, reverse=True)): 1}


@lru_cache(maxsize=None)
def _delta_e_monomial(lam: Partition) -> dict:
    out: dict = {((), ()): Fraction(1)}
    for part in lam:
        gen = {
            (tuple([i]) if i else (), tuple([part - i]) if part - i else ()): Fraction(1)
            for i in range(part + 1)
        }
        out = tensor_mul(out, gen, _mul_partitions)
    return out


def delta_sym(a: SymPoly) -> dict:
    """Coproduct ``Delta(e_n) = sum e_i (x) e_(n-i)``, extended multiplicatively.

    The result maps pairs of partitions to coefficients.
    """
    out: dict = {}
    for lam, c in a.items():
        for key, v in _delta_e_monomial(lam).items():
            out[key] = out.get(key, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


def sym_tensor(a: SymPoly, b: SymPoly) -> dict:
    """The pure tensor ``a (x) b`` in the same representation as :func:`delta_sym`."""
    out: dict = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            out[(la, lb)] = out.get((la, lb), Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def add_tensors(*ts: dict) -> dict:
    out: dict = {}
    for t in ts:
        for k, v in t.items():
            out[k] = out.get(k, Fraction(0)) + v
    return {k: v for k, v in out.items() if v}


def phi(p: YElement) -> SymPoly:
    """The algebra map Y^(1) -> Sym with ``Y_n -> y_n``."""
    out = SymPoly()
    for m, c in p.items():
        term = SymPoly.one()
        for w in m:
            if any(letter != 1 for letter in w):
                raise DomainError(f"phi is defined on Y^(1) only; got generator for word {w}")
            term = term * y_elem(len(w))
        out = out + term * c
    return out


@dataclass(frozen=True, eq=False)
class SymFunctional:
    """Linear functional on Sym, known on e-monomials of degree at most ``degree``."""

    degree: int
    values: Mapping[Partition, Fraction]

    def __post_init__(self) -> None:
        clean = {}
        for lam, v in self.values.items():
            lam = SymPoly._canon(lam)
            if sum(lam) > self.degree:
                raise DomainError(f"partition {lam} beyond degree bound {self.degree}")
            clean[lam] = Fraction(v)
        clean.setdefault((), Fraction(0))
        object.__setattr__(self, "values", clean)

    def __call__(self, a: SymPoly) -> Fraction:
        out = Fraction(0)
        for lam, c in a.items():
            if sum(lam) > self.degree:
                raise DomainError(f"partition {lam} beyond degree bound {self.degree}")
            out += c * self.values.get(lam, Fraction(0))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymFunctional):
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return self.degree == other.degree and all(
            self.values.get(k, 0) == other.values.get(k, 0) for k in keys
        )

    def __add__(self, other: SymFunctional) -> SymFunctional:
        _check_degrees(self, other)
        keys = set(self.values) | set(other.values)
        return SymFunctional(self.degree, {k: self.values.get(k, 0) + other.values.get(k, 0) for k in keys})

    def __neg__(self) -> SymFunctional:
        return SymFunctional(self.degree, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: SymFunctional) -> SymFunctional:
        return self + (-other)

    def scale(self, c) -> SymFunctional:
        c = Fraction(c)
        return SymFunctional(self.degree, {k: c * v for k, v in self.values.items()})

    def is_multiplicative(self) -> bool:
        one_part = lambda lam: self.values.get(lam, Fraction(0))  # noqa: E731
        return one_part(()) == 1 and all(
            one_part(lam) == math.prod((one_part((i,)) for i in lam), start=Fraction(1))
            for lam in sym_basis(self.degree)
            if len(lam) >= 2
        )

    def is_infinitesimal(self) -> bool:
        return self.values.get((), 0) == 0 and all(
            self.values.get(lam, 0) == 0 for lam in sym_basis(self.degree) if len(lam) >= 2
        )


def _check_degrees(x: SymFunctional, y: SymFunctional) -> None:
    if x.degree != y.degree:
        raise DomainError(f"functionals have different degree bounds {x.degree} and {y.degree}")


def sym_character(max_deg: int, e_values: Sequence) -> SymFunctional:
    """Character with ``e_n -> e_values[n - 1]``."""
    vals = [Fraction(v) for v in e_values]
    if len(vals) < max_deg:
        raise DomainError(f"need {max_deg} values, got {len(vals)}")
    return SymFunctional(
        max_deg,
        {lam: math.prod((vals[i - 1] for i in lam), start=Fraction(1)) for lam in sym_basis(max_deg)},
    )


def sym_epsilon(max_deg: int) -> SymFunctional:
    return SymFunctional(max_deg, {(): 1})


def theta_from_s(s: OneVarSeries, max_deg: int | None = None) -> SymFunctional:
    """Character with ``e_n -> gamma_n``, where ``1/S = 1 + sum gamma_n z^n``.

    Equivalently ``h_n -> (-1)^n beta_n`` for ``S = 1 + sum beta_n z^n``.
    """
    if s[0] != 1:
        raise DomainError(f"S-transform must have constant term 1, got {s[0]}")
    if max_deg is None:
        max_deg = s.degree
    if max_deg > s.degree:
        raise DomainError(f"S known through degree {s.degree}, asked for {max_deg}")
    t = onevar_reciprocal(s)
    return sym_character(max_deg, [t[n] for n in range(1, max_deg + 1)])


def zeta_sym(max_deg: int) -> SymFunctional:
    """Character with ``e_1 -> 1`` and ``e_n -> 0`` for ``n >= 2``."""
    return sym_character(max_deg, [1] + [0] * (max_deg - 1))


def sym_convolve(x: SymFunctional, y: SymFunctional) -> SymFunctional:
    _check_degrees(x, y)
    out = {}
    for lam in sym_basis(x.degree):
        s = Fraction(0)
        for (a, b), c in _delta_e_monomial(lam).items():
            va = x.values.get(a)
            if va:
                vb = y.values.get(b)
                if vb:
                    s += c * va * vb
        if s:
            out[lam] = s
    return SymFunctional(x.degree, out)


def sym_log(x: SymFunctional) -> SymFunctional:
    """``-sum_{l>=1} (1/l) (eps - x)^l``; terminates in every degree."""
    if x.values.get((), 0) != 1:
        raise DomainError("log needs value 1 on the unit")
    d = sym_epsilon(x.degree) - x
    out = SymFunctional(x.degree, {})
    cur = sym_epsilon(x.degree)
    for l in range(1, x.degree + 1):
        cur = sym_convolve(cur, d)
        out = out - cur.scale(Fraction(1, l))
    return out


def zeta_check(max_deg: int) -> bool:
    """Whether ``zeta_Sym(y_n) = 1`` for ``2 <= n <= max_deg + 1``."""
    z = zeta_sym(max_deg)
    return all(z(y_elem(n)) == 1 for n in range(2, max_deg + 2))
