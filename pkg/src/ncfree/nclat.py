"""Lattice of non-crossing partitions.

Partitions of ``{1..n}`` are stored in canonical form: each block is an
ascending tuple and blocks are ordered by their minimum.  The order is
reversed refinement, ``p <= q`` meaning every block of ``q`` is a union of
blocks of ``p``.  Kreweras complements are computed from the cyclic
permutations attached to partitions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InvariantError

MAX_N = 9
MAX_CHAIN_N = 8

Block = tuple[int, ...]


def _crosses(a: Block, b: Block) -> bool:
    # a, b disjoint and ascending; look for x1 < y1 < x2 < y2 with x in a, y in b
    for x1, x2 in itertools.combinations(a, 2):
        inside = any(x1 < y < x2 for y in b)
        outside = any(y < x1 or y > x2 for y in b)
        if inside and outside:
            return True
    return False


@dataclass(frozen=True)
class NcPartition:
    """A non-crossing partition of ``{1..n}``."""

    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"ground set size must be positive, got {self.n}")
        seen = sorted(x for b in self.blocks for x in b)
        if seen != list(range(1, self.n + 1)):
            raise DomainError(f"blocks {self.blocks} do not partition 1..{self.n}")
        for b in self.blocks:
            if not b or list(b) != sorted(b):
                raise DomainError(f"block {b} is not strictly increasing")
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b[0]):
            raise DomainError("blocks must be ordered by their minimum")
        for a, b in itertools.combinations(self.blocks, 2):
            if _crosses(a, b):
                raise DomainError(f"blocks {a} and {b} cross")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> NcPartition:
        """Build a partition from blocks in any order, canonicalizing them."""
        bl = [tuple(sorted(b)) for b in blocks]
        bl.sort(key=lambda b: b[0] if b else 0)
        if n is None:
            n = max((x for b in bl for x in b), default=0)
        return cls(n, tuple(bl))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """Block index of each element; position 0 is unused."""
        lab = [-1] * (self.n + 1)
        for j, b in enumerate(self.blocks):
            for x in b:
                lab[x] = j
        return tuple(lab)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]], n: int | None = None) -> NcPartition:
        return cls.from_blocks(data, n)


@lru_cache(maxsize=None)
def zero(n: int) -> NcPartition:
    """The minimum ``0_n``: all singletons."""
    return NcPartition(n, tuple((i,) for i in range(1, n + 1)))


@lru_cache(maxsize=None)
def one(n: int) -> NcPartition:
    """The maximum ``1_n``: a single block."""
    return NcPartition(n, (tuple(range(1, n + 1)),))


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}``; ``images[i - 1]`` is the image of ``i``."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.n or sorted(self.images) != list(range(1, self.n + 1)):
            raise DomainError(f"{self.images} is not a permutation of 1..{self.n}")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # right-to-left composition: (self * other)(i) = self(other(i))
        if self.n != other.n:
            raise DomainError("permutations act on different sets")
        return Permutation(self.n, tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(self.n, tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out


def partition_permutation(p: NcPartition) -> Permutation:
    """Each block ``b_1 < ... < b_m`` becomes the cycle ``b_1 -> b_2 -> ... -> b_1``."""
    images = [0] * p.n
    for b in p.blocks:
        for x, y in zip(b, b[1:] + b[:1]):
            images[x - 1] = y
    return Permutation(p.n, tuple(images))


def _check_n(n: int, max_n: int, lo: int = 1) -> None:
    if not isinstance(n, int) or n < lo or n > max_n:
        raise DomainError(f"n must lie in {lo}..{max_n}, got {n!r}")


def _nc_blocks(elements: tuple[int, ...]) -> Iterator[list[Block]]:
    # The block of the smallest element splits the rest into independent gaps.
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for r in range(len(rest) + 1):
        for chosen in itertools.combinations(range(len(rest)), r):
            block = (first,) + tuple(rest[i] for i in chosen)
            cuts = list(chosen) + [len(rest)]
            gaps = []
            prev = 0
            for c in cuts:
                gaps.append(rest[prev:c])
                prev = c + 1
            for pieces in itertools.product(*(list(_nc_blocks(g)) for g in gaps)):
                yield [block] + [b for piece in pieces for b in piece]


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[NcPartition, ...]:
    parts = [NcPartition.from_blocks(bl, n) for bl in _nc_blocks(tuple(range(1, n + 1)))]
    parts.sort(key=lambda p: p.blocks)
    return tuple(parts)


def enumerate_nc(n: int, *, max_n: int = MAX_N) -> list[NcPartition]:
    """All of NC(n), sorted lexicographically by canonical block encoding."""
    _check_n(n, max_n)
    return list(_enumerate(n))


def leq(p: NcPartition, q: NcPartition) -> bool:
    """Reversed refinement: True iff each block of ``q`` is a union of blocks of ``p``."""
    if p.n != q.n:
        raise DomainError(f"partitions of different sets ({p.n} vs {q.n})")
    lab = q.labels
    return all(len({lab[x] for x in b}) == 1 for b in p.blocks)


def _from_permutation(perm: Permutation) -> NcPartition:
    try:
        result = NcPartition.from_blocks(perm.cycles(), perm.n)
    except DomainError as exc:
        raise InvariantError(f"permutation {perm.images} is not non-crossing: {exc}") from exc
    if partition_permutation(result) != perm:
        raise InvariantError(f"permutation {perm.images} has a non-increasing cycle")
    return result


def relative_kreweras(p: NcPartition, r: NcPartition) -> NcPartition:
    """Relative Kreweras complement of ``p`` in ``r``.

    Its permutation is ``P_p^{-1} P_r`` (right-to-left).  With ``r = 1_n``
    this is the ordinary Kreweras complement.
    """
    if not leq(p, r):
        raise DomainError(f"{p} is not below {r}")
    return _from_permutation(partition_permutation(p).inverse() * partition_permutation(r))


def kreweras(p: NcPartition) -> NcPartition:
    return relative_kreweras(p, one(p.n))


def inverse_kreweras(p: NcPartition) -> NcPartition:
    """Preimage of ``p`` under the Kreweras map, found by inverting the table."""
    lat = _lattice(p.n)
    return lat.parts[lat.kreweras_inverse[lat.index[p]]]


def restrict_to_blocks(p: NcPartition, r: NcPartition) -> tuple[NcPartition, ...]:
    """Split ``p <= r`` into one partition per block of ``r``, relabeled 1..|B|."""
    if not leq(p, r):
        raise DomainError(f"{p} is not below {r}")
    out = []
    for big in r.blocks:
        pos = {x: i for i, x in enumerate(big, start=1)}
        pieces = [tuple(pos[x] for x in b) for b in p.blocks if b[0] in pos]
        out.append(NcPartition.from_blocks(pieces, len(big)))
    return tuple(out)


class _Lattice:
    """Index tables for NC(n): order relations and relative complements."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.parts = _enumerate(n)
        self.index = {p: i for i, p in enumerate(self.parts)}
        self.bottom = self.index[zero(n)]
        self.top = self.index[one(n)]
        self._rel: dict[tuple[int, int], int] = {}

    @cached_property
    def below(self) -> tuple[tuple[int, ...], ...]:
        """``below[i]``: indices of all ``p <= parts[i]``, built block by block."""
        out = []
        for rho in self.parts:
            choices = []
            for big in rho.blocks:
                sub = _enumerate(len(big))
                choices.append([[tuple(big[x - 1] for x in b) for b in s.blocks] for s in sub])
            found = []
            for combo in itertools.product(*choices):
                blocks = [b for piece in combo for b in piece]
                found.append(self.index[NcPartition.from_blocks(blocks, self.n)])
            out.append(tuple(sorted(found)))
        return tuple(out)

    @cached_property
    def above(self) -> tuple[tuple[int, ...], ...]:
        up: list[list[int]] = [[] for _ in self.parts]
        for i, lows in enumerate(self.below):
            for j in lows:
                up[j].append(i)
        return tuple(tuple(u) for u in up)

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """All ``(j, i)`` with ``parts[j] <= parts[i]``."""
        return tuple((j, i) for i, lows in enumerate(self.below) for j in lows)

    def rel(self, j: int, i: int) -> int:
        """Index of the complement of ``parts[j]`` relative to ``parts[i]``."""
        key = (j, i)
        got = self._rel.get(key)
        if got is None:
            got = self.index[relative_kreweras(self.parts[j], self.parts[i])]
            self._rel[key] = got
        return got

    @cached_property
    def kreweras_inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.parts)
        for j in range(len(self.parts)):
            inv[self.rel(j, self.top)] = j
        return tuple(inv)


@lru_cache(maxsize=None)
def _lattice(n: int) -> _Lattice:
    _check_n(n, MAX_N)
    return _Lattice(n)


@dataclass(frozen=True)
class MultiChain:
    """A weakly increasing sequence ``0_n = p_0 <= ... <= p_l = 1_n``."""

    n: int
    elements: tuple[NcPartition, ...]

    def __post_init__(self) -> None:
        if len(self.elements) < 2:
            raise DomainError("a multi-chain needs at least two elements")
        if self.elements[0] != zero(self.n) or self.elements[-1] != one(self.n):
            raise DomainError("a multi-chain must run from 0_n to 1_n")
        for a, b in zip(self.elements, self.elements[1:]):
            if not leq(a, b) or not self._step_ok(a, b):
                raise DomainError(f"{a} -> {b} is not an allowed step")

    @staticmethod
    def _step_ok(a: NcPartition, b: NcPartition) -> bool:
        return True

    def __len__(self) -> int:
        return len(self.elements) - 1

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    def complements(self) -> tuple[NcPartition, ...]:
        """The relative complements of consecutive steps, in order."""
        return tuple(relative_kreweras(a, b) for a, b in zip(self.elements, self.elements[1:]))


@dataclass(frozen=True)
class Chain(MultiChain):
    """A strictly increasing multi-chain."""

    @staticmethod
    def _step_ok(a: NcPartition, b: NcPartition) -> bool:
        return a != b


def _chain_indices(n: int) -> Iterator[tuple[int, ...]]:
    lat = _lattice(n)
    path = [lat.bottom]

    def walk() -> Iterator[tuple[int, ...]]:
        for nxt in lat.above[path[-1]]:
            if nxt == path[-1]:
                continue
            path.append(nxt)
            if nxt == lat.top:
                yield tuple(path)
            else:
                yield from walk()
            path.pop()

    yield from walk()


def iter_chains(n: int, *, max_n: int = MAX_CHAIN_N) -> Iterator[Chain]:
    """Lazily yield the chains of NC(n) in depth-first order."""
    _check_n(n, max_n, lo=2)
    parts = _lattice(n).parts
    for idx in _chain_indices(n):
        yield Chain(n, tuple(parts[i] for i in idx))


def enumerate_chains(n: int, *, max_n: int = MAX_CHAIN_N) -> list[Chain]:
    """Every chain from ``0_n`` to ``1_n`` (not only saturated ones)."""
    return list(iter_chains(n, max_n=max_n))


def enumerate_multichains(n: int, l: int, *, max_n: int = MAX_N) -> list[MultiChain]:
    """Every multi-chain of length ``l`` in NC(n)."""
    _check_n(n, max_n)
    if not isinstance(l, int) or l < 1:
        raise DomainError(f"multi-chain length must be positive, got {l!r}")
    lat = _lattice(n)
    out = []

    def walk(path: list[int]) -> None:
        if len(path) == l:
            out.append(MultiChain(n, tuple(lat.parts[i] for i in path + [lat.top])))
            return
        for nxt in lat.above[path[-1]]:
            walk(path + [nxt])

    walk([lat.bottom])
    return out
