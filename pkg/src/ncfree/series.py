"""Truncated power series over the rationals.

Two kinds of series live here:

* :class:`NcSeries`, a series in ``k`` non-commuting indeterminates with
  zero constant term, stored sparsely as ``word -> coefficient``;
* :class:`OneVarSeries`, a dense one-variable series ``c_0 + c_1 z + ...``.

Both carry their truncation degree; binary operations on mismatched
degrees truncate to the smaller one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import nclat
from .errors import DomainError
from .nclat import MultiChain, NcPartition

Word = tuple[int, ...]


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; floats are rejected to keep results exact."""
    if isinstance(text, bool) or isinstance(text, float):
        raise DomainError(f"expected an exact rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or "." in text or "e" in text.lower():
        raise DomainError(f"expected a rational string 'p/q', got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def words(k: int, n: int) -> Iterator[Word]:
    """All words of length ``n`` over ``1..k`` in lexicographic order."""
    return itertools.product(range(1, k + 1), repeat=n)


def restrict_word(w: Sequence[int], positions: Sequence[int]) -> Word:
    """The subword of ``w`` at the given 1-based positions."""
    if not positions:
        raise DomainError("restriction to an empty set of positions")
    if any(p < 1 or p > len(w) for p in positions):
        raise DomainError(f"positions {tuple(positions)} out of range for a word of length {len(w)}")
    return tuple(w[p - 1] for p in positions)


@dataclass(frozen=True, eq=False)
class NcSeries:
    """Series in ``z_1..z_k`` with coefficients for words of length ``1..degree``."""

    k: int
    degree: int
    coeffs: Mapping[Word, Fraction]

    def __post_init__(self) -> None:
        if self.k < 1 or self.degree < 1:
            raise DomainError(f"need k >= 1 and degree >= 1, got k={self.k}, degree={self.degree}")
        clean = {}
        for w, c in self.coeffs.items():
            w = tuple(w)
            if not w:
                raise DomainError("series must have zero constant term")
            if len(w) > self.degree:
                raise DomainError(f"word {w} exceeds truncation degree {self.degree}")
            if any(not 1 <= i <= self.k for i in w):
                raise DomainError(f"word {w} uses letters outside 1..{self.k}")
            c = Fraction(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, w: Sequence[int]) -> Fraction:
        w = tuple(w)
        if len(w) > self.degree:
            raise DomainError(f"coefficient of {w} is beyond truncation degree {self.degree}")
        return self.coeffs.get(w, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcSeries):
            return NotImplemented
        return (self.k, self.degree, self.coeffs) == (other.k, other.degree, other.coeffs)

    def __add__(self, other: NcSeries) -> NcSeries:
        self._compatible(other)
        deg = min(self.degree, other.degree)
        acc: dict[Word, Fraction] = {}
        for src in (self, other):
            for w, c in src.coeffs.items():
                if len(w) <= deg:
                    acc[w] = acc.get(w, Fraction(0)) + c
        return NcSeries(self.k, deg, acc)

    def __neg__(self) -> NcSeries:
        return NcSeries(self.k, self.degree, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: NcSeries) -> NcSeries:
        return self + (-other)

    def _compatible(self, other: NcSeries) -> None:
        if self.k != other.k:
            raise DomainError(f"series in different numbers of variables ({self.k} vs {other.k})")

    def truncate(self, degree: int) -> NcSeries:
        if degree > self.degree:
            raise DomainError(f"cannot extend a series of degree {self.degree} to {degree}")
        return NcSeries(self.k, degree, {w: c for w, c in self.coeffs.items() if len(w) <= degree})

    def is_mixed_free(self) -> bool:
        """True when every word with two distinct letters has coefficient 0."""
        return all(len(set(w)) == 1 for w in self.coeffs)

    def restrict_variable(self, i: int) -> OneVarSeries:
        """Set every variable except ``z_i`` to zero."""
        if not 1 <= i <= self.k:
            raise DomainError(f"variable index {i} out of range 1..{self.k}")
        return OneVarSeries([0] + [self.coeffs.get((i,) * n, 0) for n in range(1, self.degree + 1)])

    @classmethod
    def of_sum(cls, f: OneVarSeries, k: int) -> NcSeries:
        """``f(z_1 + ... + z_k)`` for ``f`` with zero constant term."""
        if f.coeffs[0] != 0:
            raise DomainError("substituted series must have zero constant term")
        return cls(k, f.degree, {w: f.coeffs[n] for n in range(1, f.degree + 1) for w in words(k, n)})

    def to_json(self) -> dict:
        items = sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {
            "k": self.k,
            "degree": self.degree,
            "coeffs": [{"word": list(w), "value": format_rational(c)} for w, c in items],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> NcSeries:
        try:
            k, degree, entries = int(data["k"]), int(data["degree"]), data["coeffs"]
            coeffs: dict[Word, Fraction] = {}
            for e in entries:
                w = tuple(int(i) for i in e["word"])
                if w in coeffs:
                    raise DomainError(f"duplicate word {w}")
                coeffs[w] = parse_rational(e["value"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed series JSON: {exc}") from exc
        return cls(k, degree, coeffs)


def cf_pi(f: NcSeries, w: Sequence[int], p: NcPartition) -> Fraction:
    """Product over blocks ``B`` of ``p`` of the coefficient of ``w|B`` in ``f``."""
    w = tuple(w)
    if p.n != len(w):
        raise DomainError(f"partition of {p.n} points does not fit a word of length {len(w)}")
    if len(w) > f.degree:
        raise DomainError(f"word length {len(w)} exceeds series degree {f.degree}")
    out = Fraction(1)
    get = f.coeffs.get
    for b in p.blocks:
        c = get(tuple(w[i - 1] for i in b))
        if not c:
            return Fraction(0)
        out *= c
    return out


def cf_chain(f: NcSeries, w: Sequence[int], g: MultiChain) -> Fraction:
    """Generalized coefficient: product of ``cf_pi`` over the chain's relative complements."""
    if g.n != len(w):
        raise DomainError(f"chain in NC({g.n}) does not fit a word of length {len(w)}")
    out = Fraction(1)
    for step in g.complements():
        out *= cf_pi(f, w, step)
        if not out:
            break
    return out


def chain_sums(f: NcSeries, w: Sequence[int]) -> list[Fraction]:
    """``sums[l]`` is the total generalized coefficient over chains of length ``l``.

    Entry 0 is always 0.  Computed by dynamic programming over the order
    relation: the weight of a chain is a product of per-step factors, so
    partial chains ending at the same partition can be merged.
    """
    w = tuple(w)
    n = len(w)
    if n > f.degree:
        raise DomainError(f"word length {n} exceeds series degree {f.degree}")
    if n < 2:
        return [Fraction(0)]
    lat = nclat._lattice(n)
    parts = lat.parts
    step_cache: dict[int, Fraction] = {}

    def step(j: int, i: int) -> Fraction:
        r = lat.rel(j, i)
        got = step_cache.get(r)
        if got is None:
            got = step_cache[r] = cf_pi(f, w, parts[r])
        return got

    sums = [Fraction(0)] * n
    frontier = {lat.bottom: Fraction(1)}
    for length in range(1, n):
        nxt: dict[int, Fraction] = {}
        for j, acc in frontier.items():
            for i in lat.above[j]:
                if i == j:
                    continue
                c = step(j, i)
                if c:
                    nxt[i] = nxt.get(i, Fraction(0)) + acc * c
        sums[length] = nxt.pop(lat.top, Fraction(0))
        frontier = nxt
    return sums


@dataclass(frozen=True, eq=False)
class OneVarSeries:
    """Dense truncated series ``sum_{n <= degree} coeffs[n] z^n``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable) -> None:
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise DomainError("a series needs at least a constant term")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OneVarSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"OneVarSeries([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def truncate(self, degree: int) -> OneVarSeries:
        if degree > self.degree:
            raise DomainError(f"cannot extend a series of degree {self.degree} to {degree}")
        return OneVarSeries(self.coeffs[: degree + 1])

    def __add__(self, other: OneVarSeries) -> OneVarSeries:
        d = min(self.degree, other.degree)
        return OneVarSeries(a + b for a, b in zip(self.coeffs[: d + 1], other.coeffs))

    def __neg__(self) -> OneVarSeries:
        return OneVarSeries(-c for c in self.coeffs)

    def __sub__(self, other: OneVarSeries) -> OneVarSeries:
        return self + (-other)

    def __mul__(self, other: OneVarSeries | int | Fraction) -> OneVarSeries:
        if isinstance(other, OneVarSeries):
            return onevar_mul(self, other)
        return OneVarSeries(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def shift(self, by: int) -> OneVarSeries:
        """Multiply by ``z**by`` (negative ``by`` divides, needs zero low terms)."""
        if by >= 0:
            return OneVarSeries((0,) * by + self.coeffs)
        if any(self.coeffs[:-by]):
            raise DomainError(f"series is not divisible by z^{-by}")
        return OneVarSeries(self.coeffs[-by:])

    def to_json(self) -> dict:
        entries = [{"word": [1] * n, "value": format_rational(c)} for n, c in enumerate(self.coeffs) if c]
        return {"k": 1, "degree": self.degree, "coeffs": entries}

    @classmethod
    def from_json(cls, data: Mapping) -> OneVarSeries:
        try:
            degree = int(data["degree"])
            cs = [Fraction(0)] * (degree + 1)
            for e in data["coeffs"]:
                w = list(e["word"])
                if any(i != 1 for i in w) or len(w) > degree:
                    raise DomainError(f"word {w} is not a power of z within degree {degree}")
                cs[len(w)] = parse_rational(e["value"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed series JSON: {exc}") from exc
        return cls(cs)


def onevar_mul(f: OneVarSeries, g: OneVarSeries) -> OneVarSeries:
    d = min(f.degree, g.degree)
    return OneVarSeries(
        sum((f.coeffs[i] * g.coeffs[n - i] for i in range(n + 1)), Fraction(0)) for n in range(d + 1)
    )


def onevar_reciprocal(f: OneVarSeries) -> OneVarSeries:
    """Multiplicative inverse ``1/f``; needs a nonzero constant term."""
    if f.coeffs[0] == 0:
        raise DomainError("reciprocal needs a nonzero constant term")
    inv = [1 / f.coeffs[0]]
    for n in range(1, f.degree + 1):
        s = sum((f.coeffs[i] * inv[n - i] for i in range(1, n + 1)), Fraction(0))
        inv.append(-s * inv[0])
    return OneVarSeries(inv)


def onevar_compose(f: OneVarSeries, g: OneVarSeries) -> OneVarSeries:
    """``f(g(z))``; the inner series must have zero constant term."""
    if g.coeffs[0] != 0:
        raise DomainError("inner series of a composition must have zero constant term")
    d = min(f.degree, g.degree)
    g = g.truncate(d)
    out = OneVarSeries([f.coeffs[d]] + [0] * d)
    for n in range(d - 1, -1, -1):
        out = onevar_mul(out, g)
        out = OneVarSeries((out.coeffs[0] + f.coeffs[n],) + out.coeffs[1:])
    return out


def onevar_comp_inverse(f: OneVarSeries) -> OneVarSeries:
    """Compositional inverse, solved one coefficient at a time."""
    if f.coeffs[0] != 0:
        raise DomainError("compositional inverse needs zero constant term")
    if f.degree < 1 or f.coeffs[1] == 0:
        raise DomainError("compositional inverse needs a nonzero linear term")
    d = f.degree
    lead = 1 / f.coeffs[1]
    h = [Fraction(0), lead] + [Fraction(0)] * (d - 1)
    for n in range(2, d + 1):
        # with h_n still 0, the z^n coefficient of f(h) is what f_1 h_n must cancel
        err = onevar_compose(f, OneVarSeries(h[: n + 1])).coeffs[n]
        h[n] = -err * lead
    return OneVarSeries(h)


def onevar_log(f: OneVarSeries) -> OneVarSeries:
    """``log f = -sum_{m >= 1} (1 - f)^m / m``; needs constant term 1."""
    if f.coeffs[0] != 1:
        raise DomainError("log needs constant term 1")
    u = OneVarSeries((0,) + tuple(-c for c in f.coeffs[1:]))
    out = [Fraction(0)] * (f.degree + 1)
    power = u
    for m in range(1, f.degree + 1):
        for n, c in enumerate(power.coeffs):
            out[n] -= c / m
        power = onevar_mul(power, u)
    return OneVarSeries(out)


def onevar_exp(f: OneVarSeries) -> OneVarSeries:
    """``exp f = sum_m f^m / m!``; needs zero constant term."""
    if f.coeffs[0] != 0:
        raise DomainError("exp needs zero constant term")
    out = [Fraction(1)] + [Fraction(0)] * f.degree
    power = OneVarSeries([1] + [0] * f.degree)
    for m in range(1, f.degree + 1):
        power = onevar_mul(power, f)
        for n, c in enumerate(power.coeffs):
            out[n] += c / math.factorial(m)
    return OneVarSeries(out)
