"""Distributions of k-tuples and their transforms under free multiplicative convolution.

A :class:`Distribution` holds the joint moments of a k-tuple up to a
truncation degree.  The R-transform (free cumulants), the LS-transform and
the one-variable S-transform are derived from it exactly; every identity
is meant "through the truncation degree" and nothing is extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import nclat
from .errors import DomainError, InvariantError
from .series import (
    NcSeries,
    OneVarSeries,
    Word,
    chain_sums,
    cf_pi,
    format_rational,
    onevar_comp_inverse,
    onevar_log,
    onevar_reciprocal,
    parse_rational,
    words,
)


@dataclass(frozen=True, eq=False)
class Distribution:
    """Moments ``mu(X_w)`` of a unital functional for all words of length ``1..degree``.

    Words that are absent have moment 0.  Membership in the group of
    distributions with all first moments equal to 1 is checked by
    :attr:`in_group`, not enforced.
    """

    k: int
    degree: int
    moments: Mapping[Word, Fraction]

    def __post_init__(self) -> None:
        if self.k < 1 or self.degree < 1:
            raise DomainError(f"need k >= 1 and degree >= 1, got k={self.k}, degree={self.degree}")
        clean = {}
        for w, c in self.moments.items():
            w = tuple(w)
            if not w or len(w) > self.degree or any(not 1 <= i <= self.k for i in w):
                raise DomainError(f"word {w} is not a word of length 1..{self.degree} over 1..{self.k}")
            c = Fraction(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "moments", clean)

    def moment(self, w: Sequence[int]) -> Fraction:
        w = tuple(w)
        if not w:
            return Fraction(1)
        if len(w) > self.degree:
            raise DomainError(f"moment of {w} is beyond truncation degree {self.degree}")
        return self.moments.get(w, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return (self.k, self.degree, self.moments) == (other.k, other.degree, other.moments)

    def __repr__(self) -> str:
        return f"Distribution(k={self.k}, degree={self.degree}, {len(self.moments)} nonzero moments)"

    @property
    def in_group(self) -> bool:
        return all(self.moment((i,)) == 1 for i in range(1, self.k + 1))

    def truncate(self, degree: int) -> Distribution:
        if degree > self.degree:
            raise DomainError(f"cannot extend a distribution of degree {self.degree} to {degree}")
        return Distribution(self.k, degree, {w: c for w, c in self.moments.items() if len(w) <= degree})

    @cached_property
    def r_transform(self) -> NcSeries:
        return moments_to_r(self)

    @cached_property
    def ls_transform(self) -> NcSeries:
        return ls_from_r(self.r_transform)

    @classmethod
    def from_r(cls, r: NcSeries) -> Distribution:
        return r_to_moments(r)

    def to_json(self) -> dict:
        items = sorted(self.moments.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {
            "k": self.k,
            "degree": self.degree,
            "moments": [{"word": list(w), "value": format_rational(c)} for w, c in items],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Distribution:
        try:
            k, degree, entries = int(data["k"]), int(data["degree"]), data["moments"]
            moments: dict[Word, Fraction] = {}
            for e in entries:
                w = tuple(int(i) for i in e["word"])
                if w in moments:
                    raise DomainError(f"duplicate word {w}")
                moments[w] = parse_rational(e["value"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed distribution JSON: {exc}") from exc
        return cls(k, degree, moments)


def unit_distribution(k: int, degree: int) -> Distribution:
    """The unit for the convolution: every moment equals 1."""
    return Distribution(k, degree, {w: 1 for n in range(1, degree + 1) for w in words(k, n)})


def free_poisson(degree: int) -> Distribution:
    """Free Poisson law of rate 1: all free cumulants 1, Catalan moments."""
    return r_to_moments(NcSeries(1, degree, {(1,) * n: 1 for n in range(1, degree + 1)}))


def from_cumulants(alphas: Sequence, k: int = 1) -> Distribution:
    """One-variable cumulants ``alphas[n-1] = Cf_{z^n}(R)`` lifted to ``R(z_1 + ... + z_k)``."""
    f = OneVarSeries([0, *alphas])
    return r_to_moments(NcSeries.of_sum(f, k))


def moments_to_r(d: Distribution) -> NcSeries:
    """Free cumulants by moment-cumulant inversion, shortest words first."""
    coeffs: dict[Word, Fraction] = {}
    for n in range(1, d.degree + 1):
        partial = NcSeries(d.k, n, coeffs)
        lower = [p for p in nclat.enumerate_nc(n) if len(p) > 1]
        for w in words(d.k, n):
            s = sum((cf_pi(partial, w, p) for p in lower), Fraction(0))
            value = d.moment(w) - s
            if value:
                coeffs[w] = value
    return NcSeries(d.k, d.degree, coeffs)


def r_to_moments(r: NcSeries) -> Distribution:
    """Moments as sums over NC(n) of block products of cumulants."""
    moments = {}
    for n in range(1, r.degree + 1):
        parts = nclat.enumerate_nc(n)
        for w in words(r.k, n):
            moments[w] = sum((cf_pi(r, w, p) for p in parts), Fraction(0))
    return Distribution(r.k, r.degree, moments)


def _check_pair(m: Distribution, n2: Distribution) -> None:
    if m.k != n2.k or m.degree != n2.degree:
        raise DomainError(
            f"distributions must share k and degree (got k={m.k}/{n2.k}, degree={m.degree}/{n2.degree})"
        )


def boxtimes_r(ra: NcSeries, rb: NcSeries) -> NcSeries:
    """Cumulants of the product: ``sum_p cf_p(ra) * cf_{K(p)}(rb)`` for each word."""
    if ra.k != rb.k:
        raise DomainError("series in different numbers of variables")
    deg = min(ra.degree, rb.degree)
    coeffs = {}
    for n in range(1, deg + 1):
        lat = nclat._lattice(n)
        pairs = [(lat.parts[j], lat.parts[lat.rel(j, lat.top)]) for j in range(len(lat.parts))]
        for w in words(ra.k, n):
            s = Fraction(0)
            for p, kp in pairs:
                a = cf_pi(ra, w, p)
                if a:
                    s += a * cf_pi(rb, w, kp)
            coeffs[w] = s
    return NcSeries(ra.k, deg, coeffs)


def boxtimes(m: Distribution, n2: Distribution) -> Distribution:
    """Free multiplicative convolution, computed on the cumulant side."""
    _check_pair(m, n2)
    return r_to_moments(boxtimes_r(m.r_transform, n2.r_transform))


def _require_group_r(r: NcSeries) -> None:
    bad = [i for i in range(1, r.k + 1) if r[(i,)] != 1]
    if bad:
        raise DomainError(f"linear coefficients of variables {bad} are not 1; not in the group")


def ls_from_r(r: NcSeries) -> NcSeries:
    """LS-transform: signed chain sums ``(-1)^(1+l)/l`` times generalized coefficients."""
    _require_group_r(r)
    coeffs = {}
    for n in range(2, r.degree + 1):
        for w in words(r.k, n):
            sums = chain_sums(r, w)
            coeffs[w] = sum((Fraction((-1) ** (1 + l), l) * s for l, s in enumerate(sums) if l), Fraction(0))
    return NcSeries(r.k, r.degree, coeffs)


def r_from_ls(ls: NcSeries) -> NcSeries:
    """Recover the R-transform from an LS-transform, shortest words first.

    Chains of length at least 2 only involve strictly shorter words, so
    each coefficient is the LS coefficient minus already known terms.
    """
    bad = [i for i in range(1, ls.k + 1) if ls[(i,)] != 0]
    if bad:
        raise DomainError(f"LS-transform must have zero linear coefficients (variables {bad})")
    coeffs: dict[Word, Fraction] = {(i,): Fraction(1) for i in range(1, ls.k + 1)}
    for n in range(2, ls.degree + 1):
        partial = NcSeries(ls.k, n, coeffs)
        new = {}
        for w in words(ls.k, n):
            sums = chain_sums(partial, w)
            higher = sum((Fraction((-1) ** (1 + l), l) * s for l, s in enumerate(sums) if l >= 2), Fraction(0))
            new[w] = ls[w] - higher
        coeffs.update(new)
    return NcSeries(ls.k, ls.degree, coeffs)


def inverse_r(r: NcSeries) -> NcSeries:
    """Cumulants of the convolution inverse: chain sums with sign ``(-1)^l``."""
    _require_group_r(r)
    coeffs: dict[Word, Fraction] = {(i,): Fraction(1) for i in range(1, r.k + 1)}
    for n in range(2, r.degree + 1):
        for w in words(r.k, n):
            sums = chain_sums(r, w)
            coeffs[w] = sum(((-1) ** l * s for l, s in enumerate(sums) if l), Fraction(0))
    return NcSeries(r.k, r.degree, coeffs)


def boxtimes_inverse(m: Distribution) -> Distribution:
    if not m.in_group:
        raise DomainError("only distributions with all first moments 1 are invertible here")
    return r_to_moments(inverse_r(m.r_transform))


def _one_variable_r(d: Distribution) -> OneVarSeries:
    if d.k != 1:
        raise DomainError(f"one-variable transform requested for k={d.k}")
    if d.moment((1,)) != 1:
        raise DomainError("one-variable transforms need first moment 1")
    r = d.r_transform
    return OneVarSeries([0] + [r[(1,) * n] for n in range(1, d.degree + 1)])


def s_transform(d: Distribution) -> OneVarSeries:
    """``S(z) = R^{<-1>}(z) / z``, known through degree ``N - 1``."""
    return onevar_comp_inverse(_one_variable_r(d)).shift(-1)


def t_transform(d: Distribution) -> OneVarSeries:
    """Reciprocal of the S-transform."""
    return onevar_reciprocal(s_transform(d))


def alpha_from_gamma(g: OneVarSeries) -> OneVarSeries:
    """R-transform ``z + sum alpha_n z^n`` from T-transform coefficients.

    ``alpha_n`` sums, over NC(n-1), the products of ``gamma`` at the block
    sizes; the constant term of ``g`` is ignored.
    """
    if g.coeffs[0] != 1:
        raise DomainError("T-transform must have constant term 1")
    out = [Fraction(0), Fraction(1)]
    for n in range(2, g.degree + 2):
        total = Fraction(0)
        for p in nclat.enumerate_nc(n - 1):
            term = Fraction(1)
            for size in p.block_sizes:
                term *= g.coeffs[size]
                if not term:
                    break
            total += term
        out.append(total)
    return OneVarSeries(out)


def ls_via_s(d: Distribution) -> OneVarSeries:
    """``-z log S(z)`` through degree ``N``."""
    if not d.in_group:
        raise DomainError("LS-transform needs first moment 1")
    return (-onevar_log(s_transform(d))).shift(1)


def ls_one_variable(d: Distribution) -> OneVarSeries:
    """The LS-transform of a one-variable distribution as a dense series."""
    if d.k != 1:
        raise DomainError(f"expected k=1, got k={d.k}")
    return d.ls_transform.restrict_variable(1)


def repeated_tuple(d1: Distribution, k: int) -> Distribution:
    """Distribution of ``(a, a, ..., a)``: every word of length ``n`` has moment ``mu_1(X^n)``."""
    if d1.k != 1:
        raise DomainError(f"expected a one-variable distribution, got k={d1.k}")
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    return Distribution(
        k, d1.degree, {w: d1.moment((1,) * n) for n in range(1, d1.degree + 1) for w in words(k, n)}
    )


def marginal(d: Distribution, i: int) -> Distribution:
    """One-variable distribution of the ``i``-th coordinate."""
    if not 1 <= i <= d.k:
        raise DomainError(f"coordinate {i} out of range 1..{d.k}")
    return Distribution(1, d.degree, {(1,) * n: d.moment((i,) * n) for n in range(1, d.degree + 1)})


def free_tuple(marginals: Sequence[Distribution]) -> Distribution:
    """Joint distribution of freely independent coordinates with the given laws."""
    if not marginals:
        raise DomainError("need at least one marginal")
    degree = marginals[0].degree
    coeffs = {}
    for i, m in enumerate(marginals, start=1):
        if m.k != 1 or m.degree != degree:
            raise DomainError("marginals must be one-variable and share a degree")
        r = m.r_transform
        for n in range(1, degree + 1):
            coeffs[(i,) * n] = r[(1,) * n]
    return r_to_moments(NcSeries(len(marginals), degree, coeffs))


def mixed_r_vanishes(d: Distribution) -> bool:
    return d.r_transform.is_mixed_free()


def mixed_ls_vanishes(d: Distribution) -> bool:
    return d.ls_transform.is_mixed_free()


def is_free(d: Distribution) -> bool:
    """Whether the coordinates are freely independent, read off the LS-transform.

    The answer is cross-checked against vanishing of mixed free cumulants;
    a disagreement raises :class:`InvariantError`.
    """
    if not d.in_group:
        raise DomainError("freeness test needs all first moments equal to 1")
    by_ls = mixed_ls_vanishes(d)
    by_r = mixed_r_vanishes(d)
    if by_ls != by_r:
        raise InvariantError(f"LS criterion says {by_ls} but cumulant criterion says {by_r}")
    return by_ls
