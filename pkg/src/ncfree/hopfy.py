"""The Hopf algebra of words Y^(k) and the convolution algebra of its functionals.

Y^(k) is the commutative polynomial algebra on generators ``Y_w`` for words
``w`` of length at least 2 over ``1..k`` (``Y_w = 1`` when ``|w| = 1``), graded
by ``deg Y_w = |w| - 1``.  A monomial is a canonically sorted tuple of words.
Comultiplication sends ``Y_w`` to the sum over ``p`` in NC(|w|) of
``Y_{w;p} (x) Y_{w;K(p)}``.

Nothing here uses the chain formulas of :mod:`ncfree.freeprob`; the two
modules are meant to check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import nclat
from ._lincomb import LinComb, tensor_mul
from .errors import DomainError
from .series import NcSeries, Word, format_rational, restrict_word, words

YMonomial = tuple[Word, ...]
YTensor = dict  # {(m_1, ..., m_l): Fraction}

UNIT: YMonomial = ()
DEFAULT_DEGREE = {1: 7, 2: 5}


def _word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def monomial(ws: Iterable[Sequence[int]]) -> YMonomial:
    """Canonical monomial for a product of generators; words of length 1 are dropped."""
    kept = [tuple(w) for w in ws if len(w) >= 2]
    return tuple(sorted(kept, key=_word_key))


def degree(m: YMonomial) -> int:
    return sum(len(w) - 1 for w in m)


def y_pi(w: Sequence[int], p: nclat.NcPartition) -> YMonomial:
    """The monomial ``Y_{w;p}``: one generator per block of ``p``, restricted to that block."""
    return monomial(restrict_word(w, b) for b in p.blocks)


class YElement(LinComb):
    """Element of Y^(k) as a sparse combination of monomials."""

    __slots__ = ()

    @staticmethod
    def _canon(key) -> YMonomial:
        return monomial(key)

    @staticmethod
    def _mul_keys(a: YMonomial, b: YMonomial) -> dict:
        return {monomial(a + b): 1}

    @classmethod
    def one(cls) -> YElement:
        return cls({UNIT: 1})

    @classmethod
    def gen(cls, w: Sequence[int]) -> YElement:
        """The generator ``Y_w``; equals 1 for a one-letter word."""
        w = tuple(w)
        if not w:
            raise DomainError("the empty word has no generator")
        return cls({monomial([w]): 1})

    @property
    def max_degree(self) -> int:
        return max((degree(m) for m in self.terms), default=0)


def _mul_monomials(a: YMonomial, b: YMonomial) -> dict:
    return {monomial(a + b): 1}


@lru_cache(maxsize=None)
def _delta_generator(w: Word) -> dict:
    lat = nclat._lattice(len(w))
    out: dict = {}
    for j, p in enumerate(lat.parts):
        key = (y_pi(w, p), y_pi(w, lat.parts[lat.rel(j, lat.top)]))
        out[key] = out.get(key, Fraction(0)) + 1
    return out


def delta_generator(w: Sequence[int]) -> YTensor:
    """Comultiplication of ``Y_w`` as ``{(left, right): coeff}``."""
    w = tuple(w)
    if len(w) < 2:
        raise DomainError(f"generators need |w| >= 2, got {w}")
    return dict(_delta_generator(w))


@lru_cache(maxsize=None)
def _delta_monomial(m: YMonomial) -> dict:
    out: dict = {(UNIT, UNIT): Fraction(1)}
    for w in m:
        out = tensor_mul(out, _delta_generator(w), _mul_monomials)
    return out


def delta_monomial(m: Sequence[Sequence[int]]) -> YTensor:
    return dict(_delta_monomial(monomial(m)))


def delta_element(p: YElement) -> YTensor:
    """Comultiplication extended as a unital algebra homomorphism."""
    out: dict = {}
    for m, c in p.items():
        for key, v in _delta_monomial(m).items():
            out[key] = out.get(key, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


def delta_relative(w: Sequence[int], rho: nclat.NcPartition) -> YTensor:
    """``sum_{p <= rho} Y_{w;p} (x) Y_{w;K_rho(p)}``, the direct form for ``Y_{w;rho}``."""
    w = tuple(w)
    if rho.n != len(w):
        raise DomainError(f"partition of {rho.n} points does not fit a word of length {len(w)}")
    lat = nclat._lattice(len(w))
    i = lat.index[rho]
    out: dict = {}
    for j in lat.below[i]:
        key = (y_pi(w, lat.parts[j]), y_pi(w, lat.parts[lat.rel(j, i)]))
        out[key] = out.get(key, Fraction(0)) + 1
    return out


def delta_iter(p: YElement, l: int) -> YTensor:
    """Iterated comultiplication ``(Delta (x) id (x) ... (x) id) o Delta^(l-1)``, as l-tuples."""
    if l < 1:
        raise DomainError(f"iteration order must be positive, got {l}")
    cur: dict = {(m,): c for m, c in p.items()}
    for _ in range(l - 1):
        nxt: dict = {}
        for key, c in cur.items():
            head, rest = key[0], key[1:]
            for (a, b), v in _delta_monomial(head).items():
                k2 = (a, b) + rest
                nxt[k2] = nxt.get(k2, Fraction(0)) + c * v
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def multichain_tensor(w: Sequence[int], l: int) -> tuple[YTensor, int]:
    """Multichain sum for ``Delta^l(Y_w)`` and the number of multichains summed.

    Each multichain ``0 = p_0 <= ... <= p_l = 1`` contributes the tensor of
    relative complements ``Y_{w;K_{p_j}(p_{j-1})}``.
    """
    w = tuple(w)
    out: dict = {}
    chains = nclat.enumerate_multichains(len(w), l)
    for g in chains:
        key = tuple(y_pi(w, q) for q in g.complements())
        out[key] = out.get(key, Fraction(0)) + 1
    return out, len(chains)


def flip(t: YTensor) -> YTensor:
    return {(b, a): v for (a, b), v in t.items()}


def tensor_to_json(t: YTensor) -> list:
    """Sorted, JSON-ready dump of a tensor for fixture diffs."""
    rows = [
        {"legs": [[list(w) for w in m] for m in key], "value": format_rational(v)}
        for key, v in t.items()
    ]
    rows.sort(key=lambda r: repr(r["legs"]))
    return rows


def _generators(k: int, max_deg: int) -> list[Word]:
    return [w for n in range(2, max_deg + 2) for w in words(k, n)]


@lru_cache(maxsize=None)
def basis(k: int, max_deg: int) -> tuple[YMonomial, ...]:
    """All monomials of degree at most ``max_deg``, sorted by degree then canonically."""
    if k < 1 or max_deg < 0:
        raise DomainError(f"need k >= 1 and degree >= 0, got k={k}, degree={max_deg}")
    gens = sorted(_generators(k, max_deg), key=_word_key)
    found: list[YMonomial] = []

    def walk(start: int, budget: int, acc: list[Word]) -> None:
        found.append(tuple(acc))
        for idx in range(start, len(gens)):
            d = len(gens[idx]) - 1
            if d > budget:
                break
            acc.append(gens[idx])
            walk(idx, budget - d, acc)
            acc.pop()

    walk(0, max_deg, [])
    return tuple(sorted(found, key=lambda m: (degree(m), [_word_key(w) for w in m])))


def basis_dimension(k: int, deg: int) -> int:
    """Dimension of the homogeneous component of degree ``deg``."""
    return sum(1 for m in basis(k, deg) if degree(m) == deg)


@dataclass(frozen=True, eq=False)
class YFunctional:
    """Linear functional on Y^(k), known on every monomial of degree at most ``degree``."""

    k: int
    degree: int
    values: Mapping[YMonomial, Fraction]

    def __post_init__(self) -> None:
        clean = {}
        for m, v in self.values.items():
            m = monomial(m)
            if degree(m) > self.degree:
                raise DomainError(f"monomial {m} beyond degree bound {self.degree}")
            clean[m] = Fraction(v)
        clean.setdefault(UNIT, Fraction(0))
        object.__setattr__(self, "values", clean)

    def __call__(self, m: Sequence[Sequence[int]]) -> Fraction:
        m = monomial(m)
        if degree(m) > self.degree:
            raise DomainError(f"monomial {m} beyond degree bound {self.degree}")
        return self.values.get(m, Fraction(0))

    def evaluate(self, p: YElement) -> Fraction:
        return sum((c * self(m) for m, c in p.items()), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, YFunctional):
            return NotImplemented
        if (self.k, self.degree) != (other.k, other.degree):
            return False
        keys = set(self.values) | set(other.values)
        return all(self.values.get(m, 0) == other.values.get(m, 0) for m in keys)

    def __add__(self, other: YFunctional) -> YFunctional:
        _check_compatible(self, other)
        keys = set(self.values) | set(other.values)
        return YFunctional(self.k, self.degree, {m: self(m) + other(m) for m in keys})

    def __neg__(self) -> YFunctional:
        return YFunctional(self.k, self.degree, {m: -v for m, v in self.values.items()})

    def __sub__(self, other: YFunctional) -> YFunctional:
        return self + (-other)

    def scale(self, c) -> YFunctional:
        c = Fraction(c)
        return YFunctional(self.k, self.degree, {m: c * v for m, v in self.values.items()})

    def __mul__(self, other: YFunctional) -> YFunctional:
        return convolve(self, other)

    def is_multiplicative(self) -> bool:
        """Degree-bounded character test: unit value 1 and products of generator values."""
        if self(UNIT) != 1:
            return False
        return all(
            self(m) == math.prod((self((w,)) for w in m), start=Fraction(1))
            for m in basis(self.k, self.degree)
            if len(m) >= 2
        )

    def is_infinitesimal(self) -> bool:
        """Vanishes on the unit and on every product of two or more generators."""
        return self(UNIT) == 0 and all(
            self(m) == 0 for m in basis(self.k, self.degree) if len(m) >= 2
        )


def _check_compatible(x: YFunctional, y: YFunctional) -> None:
    if (x.k, x.degree) != (y.k, y.degree):
        raise DomainError(
            f"functionals live on different truncations: (k={x.k}, D={x.degree}) vs (k={y.k}, D={y.degree})"
        )


def counit(p: YElement) -> Fraction:
    """The counit: the coefficient of the unit monomial."""
    return p[UNIT]


def epsilon(k: int, max_deg: int) -> YFunctional:
    return YFunctional(k, max_deg, {UNIT: 1})


def zero_functional(k: int, max_deg: int) -> YFunctional:
    return YFunctional(k, max_deg, {})


def convolve(x: YFunctional, y: YFunctional) -> YFunctional:
    """``(xy)(b) = sum x(b') y(b'')`` over the comultiplication of ``b``."""
    _check_compatible(x, y)
    xv, yv = x.values, y.values
    out = {}
    for m in basis(x.k, x.degree):
        s = Fraction(0)
        for (a, b), c in _delta_monomial(m).items():
            va = xv.get(a)
            if va:
                vb = yv.get(b)
                if vb:
                    s += c * va * vb
        if s:
            out[m] = s
    return YFunctional(x.k, x.degree, out)


def power(x: YFunctional, l: int) -> YFunctional:
    out = epsilon(x.k, x.degree)
    for _ in range(l):
        out = convolve(out, x)
    return out


def convolve_many(fs: Sequence[YFunctional]) -> YFunctional:
    """``Mult o (f_1 (x) ... (x) f_l) o Delta^l``, evaluated directly on iterated coproducts."""
    if not fs:
        raise DomainError("need at least one functional")
    k, deg = fs[0].k, fs[0].degree
    for f in fs[1:]:
        _check_compatible(fs[0], f)
    out = {}
    for m in basis(k, deg):
        s = Fraction(0)
        for key, c in delta_iter(YElement({m: 1}), len(fs)).items():
            term = c
            for f, leg in zip(fs, key):
                term *= f.values.get(leg, 0)
                if not term:
                    break
            s += term
        if s:
            out[m] = s
    return YFunctional(k, deg, out)


def character_from_r(r: NcSeries, max_deg: int | None = None) -> YFunctional:
    """The character with ``chi(Y_w) = Cf_w(R)``, extended multiplicatively."""
    bad = [i for i in range(1, r.k + 1) if r[(i,)] != 1]
    if bad:
        raise DomainError(f"linear coefficients of variables {bad} are not 1; not in the group")
    if max_deg is None:
        max_deg = r.degree - 1
    if max_deg > r.degree - 1:
        raise DomainError(f"series of degree {r.degree} only determines monomials of degree <= {r.degree - 1}")
    out = {}
    for m in basis(r.k, max_deg):
        v = Fraction(1)
        for w in m:
            v *= r[w]
            if not v:
                break
        if v:
            out[m] = v
    return YFunctional(r.k, max_deg, out)


def log_functional(e: YFunctional) -> YFunctional:
    """``-sum_{l>=1} (1/l) (eps - e)^l``; terminates in every degree."""
    if e(UNIT) != 1:
        raise DomainError(f"log needs value 1 on the unit, got {e(UNIT)}")
    d = epsilon(e.k, e.degree) - e
    out = zero_functional(e.k, e.degree)
    cur = epsilon(e.k, e.degree)
    for l in range(1, e.degree + 1):
        cur = convolve(cur, d)
        out = out - cur.scale(Fraction(1, l))
    return out


def exp_functional(x: YFunctional) -> YFunctional:
    """``sum_{l>=0} x^l / l!``; terminates in every degree."""
    if x(UNIT) != 0:
        raise DomainError(f"exp needs value 0 on the unit, got {x(UNIT)}")
    out = epsilon(x.k, x.degree)
    cur = epsilon(x.k, x.degree)
    for l in range(1, x.degree + 1):
        cur = convolve(cur, x)
        out = out + cur.scale(Fraction(1, math.factorial(l)))
    return out


def character_inverse(e: YFunctional) -> YFunctional:
    """Convolution inverse ``eps + sum_{l>=1} (eps - e)^l`` of a character."""
    if not e.is_multiplicative():
        raise DomainError("character_inverse needs a multiplicative functional (checked on the stored basis)")
    d = epsilon(e.k, e.degree) - e
    out = epsilon(e.k, e.degree)
    cur = epsilon(e.k, e.degree)
    for _ in range(1, e.degree + 1):
        cur = convolve(cur, d)
        out = out + cur
    return out


@lru_cache(maxsize=None)
def _eps_minus_id_power(l: int, m: YMonomial) -> YElement:
    # (eps - id)^l applied to a basis monomial, by convolution in End(Y).
    if not m:
        return YElement.one() if l == 0 else YElement()
    if l == 0:
        return YElement()
    if l == 1:
        return -YElement({m: 1})
    acc = YElement()
    for (a, b), c in _delta_monomial(m).items():
        if not a or not b:
            continue
        acc = acc + _eps_minus_id_power(l - 1, a) * YElement({b: -c})
    return acc


@lru_cache(maxsize=None)
def _antipode_monomial(m: YMonomial) -> YElement:
    if not m:
        return YElement.one()
    out = YElement()
    for l in range(1, degree(m) + 1):
        out = out + _eps_minus_id_power(l, m)
    return out


def antipode(p: YElement) -> YElement:
    """The antipode ``eps + sum_{l>=1} (eps - id)^l``, applied monomial by monomial."""
    out = YElement()
    for m, c in p.items():
        out = out + _antipode_monomial(m) * c
    return out


def antipode_table(k: int, max_deg: int) -> dict[YMonomial, YElement]:
    return {m: _antipode_monomial(m) for m in basis(k, max_deg)}


def endo_convolve_on(f: Callable[[YMonomial], YElement], g: Callable[[YMonomial], YElement], m: YMonomial) -> YElement:
    """``(f * g)(m) = sum f(m') g(m'')`` for linear maps given on monomials."""
    out = YElement()
    for (a, b), c in _delta_monomial(m).items():
        out = out + f(a) * g(b) * c
    return out


def functional_after_antipode(e: YFunctional) -> YFunctional:
    """``e o S`` on the basis."""
    out = {}
    for m in basis(e.k, e.degree):
        v = e.evaluate(_antipode_monomial(m))
        if v:
            out[m] = v
    return YFunctional(e.k, e.degree, out)


def is_cocommutative_on(w: Sequence[int]) -> bool:
    t = _delta_generator(tuple(w))
    return flip(t) == t


def check_cocommutative_k1(max_deg: int) -> bool:
    """Whether flip o Delta = Delta on every ``Y_n`` with ``n - 1 <= max_deg`` (k = 1)."""
    return all(is_cocommutative_on((1,) * n) for n in range(2, max_deg + 2))


def cocommutativity_witness(k: int, max_deg: int) -> Word | None:
    """First generator (by length, then lexicographically) whose coproduct is not symmetric."""
    for w in _generators(k, max_deg):
        if not is_cocommutative_on(w):
            return w
    return None


def contract_left(e: YFunctional | None, t: YTensor) -> YElement:
    """``(e (x) id)(t)``; ``None`` means the counit."""
    out: dict = {}
    for (a, b), c in t.items():
        v = (Fraction(1) if not a else Fraction(0)) if e is None else e(a)
        if v:
            out[b] = out.get(b, Fraction(0)) + c * v
    return YElement(out)


def contract_right(e: YFunctional | None, t: YTensor) -> YElement:
    """``(id (x) e)(t)``; ``None`` means the counit."""
    return contract_left(e, flip(t))


def coassociativity_sides(w: Sequence[int]) -> tuple[YTensor, YTensor]:
    """``(Delta (x) id) Delta(Y_w)`` and ``(id (x) Delta) Delta(Y_w)`` as 3-tensors."""
    t = _delta_generator(tuple(w))
    left: dict = {}
    right: dict = {}
    for (a, b), c in t.items():
        for (a1, a2), v in _delta_monomial(a).items():
            key = (a1, a2, b)
            left[key] = left.get(key, Fraction(0)) + c * v
        for (b1, b2), v in _delta_monomial(b).items():
            key = (a, b1, b2)
            right[key] = right.get(key, Fraction(0)) + c * v
    return ({k: v for k, v in left.items() if v}, {k: v for k, v in right.items() if v})


def iter_generators(k: int, max_deg: int) -> Iterator[Word]:
    yield from _generators(k, max_deg)


def functional_from_generators(k: int, max_deg: int, values: Callable[[Word], Fraction]) -> YFunctional:
    """Character with the given values on generators."""
    out = {}
    for m in basis(k, max_deg):
        out[m] = math.prod((Fraction(values(w)) for w in m), start=Fraction(1))
    return YFunctional(k, max_deg, out)


__all__ = [
    "YMonomial",
    "YElement",
    "YFunctional",
    "monomial",
    "degree",
    "y_pi",
    "delta_generator",
    "delta_monomial",
    "delta_element",
    "delta_relative",
    "delta_iter",
    "multichain_tensor",
    "basis",
    "basis_dimension",
    "convolve",
    "convolve_many",
    "power",
    "character_from_r",
    "log_functional",
    "exp_functional",
    "character_inverse",
    "antipode",
    "antipode_table",
    "functional_after_antipode",
    "check_cocommutative_k1",
    "cocommutativity_witness",
    "counit",
    "epsilon",
]
