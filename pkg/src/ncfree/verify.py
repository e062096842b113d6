"""Verification suites: each check recomputes an identity by two independent routes.

A suite returns a report ``{"suite": name, "checks": [...]}`` where every
check carries a name, an anchor naming the identity, a pass flag and a
short detail string.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Callable, Iterator

from . import freeprob as fp
from . import hopfy as hy
from . import nclat
from . import symqsym as sq
from .sampling import random_group_distribution, random_group_r
from .series import cf_chain, chain_sums, onevar_log, words

SUITES = ("lattice", "hopf", "ls-oracle", "sym")
SEED = 20240611


class Report:
    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.checks: list[dict] = []

    def add(self, name: str, anchor: str, ok: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "anchor": anchor, "pass": bool(ok), "detail": detail})

    def run(self, name: str, anchor: str, fn: Callable[[], tuple[bool, str]]) -> None:
        ok, detail = fn()
        self.add(name, anchor, ok, detail)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "checks": self.checks}


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """All set partitions of ``1..n`` (no crossing filter)."""
    if n == 0:
        yield []
        return
    for rest in set_partitions(n - 1):
        for i in range(len(rest)):
            yield rest[:i] + [rest[i] + [n]] + rest[i + 1 :]
        yield rest + [[n]]


def is_noncrossing(blocks: list[list[int]]) -> bool:
    for a, b in itertools.permutations(blocks, 2):
        for i, j in itertools.combinations(a, 2):
            for x, y in itertools.combinations(b, 2):
                if i < x < j < y:
                    return False
    return True


def _catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


# -- lattice -------------------------------------------------------------


def lattice_suite(degree: int) -> Report:
    rep = Report("lattice")
    for n in range(1, degree + 1):
        lat = nclat._lattice(n)
        parts = lat.parts
        brute = sum(1 for b in set_partitions(n) if is_noncrossing(b))
        rep.add(
            f"count NC({n})",
            "Catalan count against a set-partition filter",
            len(parts) == brute == _catalan(n),
            f"{len(parts)} enumerated, {brute} by filtering",
        )
        pairs = lat.pairs

        def blocks_ok() -> tuple[bool, str]:
            bad = [
                (j, i)
                for j, i in pairs
                if len(parts[lat.rel(j, i)]) != n + len(parts[i]) - len(parts[j])
            ]
            return not bad, f"{len(pairs)} pairs, {len(bad)} failures"

        rep.run(f"relative complement block count n={n}", "block count of a relative complement", blocks_ok)

        def monotone() -> tuple[bool, str]:
            count = bad = 0
            for j, i1 in pairs:
                for i2 in lat.above[i1]:
                    count += 1
                    if not nclat.leq(parts[lat.rel(j, i1)], parts[lat.rel(j, i2)]):
                        bad += 1
            return bad == 0, f"{count} triples, {bad} failures"

        rep.run(f"monotone in the upper argument n={n}", "relative complement increases with the reference", monotone)

        def below_full() -> tuple[bool, str]:
            bad = sum(1 for j, i in pairs if not nclat.leq(parts[lat.rel(j, i)], parts[lat.rel(j, lat.top)]))
            return bad == 0, f"{len(pairs)} pairs, {bad} failures"

        rep.run(f"bounded by the full complement n={n}", "relative complement lies below the full complement", below_full)

        def inverse_rule() -> tuple[bool, str]:
            bad = 0
            for j, i in pairs:
                kp = lat.rel(j, lat.top)
                sigma = lat.rel(j, i)
                if not nclat.leq(parts[sigma], parts[kp]) or lat.rel(sigma, kp) != lat.rel(i, lat.top):
                    bad += 1
            return bad == 0, f"{len(pairs)} pairs, {bad} failures"

        rep.run(f"inverse of the bijection n={n}", "complement of the complement recovers K(rho)", inverse_rule)

        def consolidated() -> tuple[bool, str]:
            image = {(j, lat.rel(j, i)) for j, i in pairs}
            target = {(j, s) for j in range(len(parts)) for s in lat.below[lat.rel(j, lat.top)]}
            return image == target and len(image) == len(pairs), f"{len(pairs)} pairs mapped onto {len(target)}"

        rep.run(f"consolidated bijection n={n}", "pairs p<=rho correspond to pairs sigma<=K(p)", consolidated)

        def separate_blocks() -> tuple[bool, str]:
            bad = 0
            for j, i in pairs:
                pieces = nclat.restrict_to_blocks(parts[j], parts[i])
                comp = nclat.restrict_to_blocks(parts[lat.rel(j, i)], parts[i])
                if tuple(nclat.kreweras(q) for q in pieces) != comp:
                    bad += 1
            return bad == 0, f"{len(pairs)} pairs, {bad} failures"

        rep.run(f"blockwise complements n={n}", "relative complement is computed inside each block", separate_blocks)

        def reversing() -> tuple[bool, str]:
            ks = [lat.rel(j, lat.top) for j in range(len(parts))]
            bij = len(set(ks)) == len(parts)
            bad = sum(1 for j, i in pairs if not nclat.leq(parts[ks[i]], parts[ks[j]]))
            return bij and bad == 0, f"bijective={bij}, {bad} order failures"

        rep.run(f"complement reverses order n={n}", "Kreweras map is an order-reversing bijection", reversing)

    chains4 = [0] * 4
    for g in nclat.iter_chains(4):
        chains4[g.length] += 1
    rep.add(
        "chains of NC(4) by length",
        "1, 12 and 16 chains of lengths 1, 2, 3",
        chains4[1:] == [1, 12, 16],
        f"counts {chains4[1:]}",
    )
    return rep


# -- hopf ----------------------------------------------------------------


def _hopf_words(degree: int) -> Iterator[tuple[int, ...]]:
    for k in (1, 2):
        for n in range(2, degree + 1):
            yield from words(k, n)


def hopf_suite(degree: int) -> Report:
    """Hopf axioms for generators with ``|w| <= degree``; antipode and characters through grading ``degree - 1``."""
    rep = Report("hopf")
    ws = list(_hopf_words(degree))

    def coassoc() -> tuple[bool, str]:
        bad = []
        for w in ws:
            left, right = hy.coassociativity_sides(w)
            if left != right:
                bad.append(w)
        return not bad, f"{len(ws)} generators, first failure {bad[:1]}"

    rep.run("coassociativity", "(Delta x id) Delta = (id x Delta) Delta", coassoc)

    def counit_law() -> tuple[bool, str]:
        bad = 0
        for w in ws:
            t = hy.delta_generator(w)
            g = hy.YElement.gen(w)
            if hy.contract_left(None, t) != g or hy.contract_right(None, t) != g:
                bad += 1
        return bad == 0, f"{len(ws)} generators, {bad} failures"

    rep.run("counit law", "both counit contractions return Y_w", counit_law)

    def grading() -> tuple[bool, str]:
        bad = sum(
            1
            for w in ws
            for (a, b) in hy.delta_generator(w)
            if hy.degree(a) + hy.degree(b) != len(w) - 1
        )
        return bad == 0, f"{bad} off-degree terms"

    rep.run("grading", "Delta preserves the grading", grading)

    def relative() -> tuple[bool, str]:
        count = bad = 0
        for w in ws:
            for rho in nclat.enumerate_nc(len(w)):
                count += 1
                direct = hy.delta_relative(w, rho)
                via_mult = hy.delta_element(hy.YElement({hy.y_pi(w, rho): 1}))
                if direct != via_mult:
                    bad += 1
        return bad == 0, f"{count} pairs (w, rho), {bad} failures"

    rep.run("relative coproduct", "Delta(Y_{w;rho}) by relative complements", relative)

    def iterates() -> tuple[bool, str]:
        count = bad = 0
        for w in ws:
            if len(w) > 5:
                continue
            for l in range(1, 5):
                count += 1
                t, _ = hy.multichain_tensor(w, l)
                if hy.delta_iter(hy.YElement.gen(w), l) != t:
                    bad += 1
        return bad == 0, f"{count} (w, l) cases, {bad} failures"

    rep.run("iterated coproduct", "Delta^l(Y_w) as a multichain sum", iterates)

    grade = max(degree - 1, 1)

    def antipode_law() -> tuple[bool, str]:
        bad = 0
        checked = 0
        ident = lambda m: hy.YElement({m: 1})  # noqa: E731
        for k in (1, 2):
            top = grade if k == 1 else min(grade, 4)
            for m in hy.basis(k, top):
                checked += 1
                unit = hy.YElement.one() * (1 if not m else 0)
                left = hy.endo_convolve_on(hy._antipode_monomial, ident, m)
                right = hy.endo_convolve_on(ident, hy._antipode_monomial, m)
                if left != unit or right != unit:
                    bad += 1
        return bad == 0, f"{checked} basis monomials, {bad} failures"

    rep.run("antipode", "S * id = eps = id * S", antipode_law)

    def inverse_routes() -> tuple[bool, str]:
        rng = random.Random(SEED)
        bad = 0
        cases = [(1, hy.character_from_r(fp.free_poisson(grade + 1).r_transform))]
        for k in (1, 2):
            top = grade if k == 1 else min(grade, 4)
            cases.append((k, hy.character_from_r(random_group_r(rng, k, top + 1))))
        for _, chi in cases:
            if hy.functional_after_antipode(chi) != hy.character_inverse(chi):
                bad += 1
            if hy.convolve(chi, hy.character_inverse(chi)) != hy.epsilon(chi.k, chi.degree):
                bad += 1
        return bad == 0, f"{len(cases)} characters, {bad} failures"

    rep.run("character inverse", "eta o S = eta^{-1}", inverse_routes)

    rep.add(
        "cocommutative for k=1",
        "Y^(1) is cocommutative",
        hy.check_cocommutative_k1(grade),
        f"generators Y_2..Y_{grade + 1}",
    )
    witness = hy.cocommutativity_witness(2, min(grade, 4))
    rep.add(
        "not cocommutative for k=2",
        "witness search for an asymmetric coproduct",
        witness is not None,
        f"witness {list(witness) if witness else None}",
    )
    return rep


# -- ls-oracle -----------------------------------------------------------


def ls_oracle_suite(degree: int, samples: int = 3) -> Report:
    rep = Report("ls-oracle")
    rng = random.Random(SEED)
    for k in (1, 2):
        for s in range(samples):
            r = random_group_r(rng, k, degree)
            chi = hy.character_from_r(r)
            ls = fp.ls_from_r(r)
            log_chi = hy.log_functional(chi)
            gens = [w for n in range(2, degree + 1) for w in words(k, n)]
            bad = [w for w in gens if log_chi((w,)) != ls[w]]
            rep.add(
                f"chain LS equals Hopf log, k={k} sample {s}",
                "log of the character on Y_w is the chain sum",
                not bad,
                f"{len(gens)} generators, first failure {bad[:1]}",
            )
            diff = hy.character_from_r(r) - hy.epsilon(k, degree - 1)
            powers = [hy.epsilon(k, degree - 1)]
            for _ in range(degree):
                powers.append(hy.convolve(powers[-1], diff))
            bad = []
            for w in gens:
                sums = chain_sums(r, w)
                for l in range(1, degree + 1):
                    expect = sums[l] if l < len(w) else Fraction(0)
                    if powers[l]((w,)) != expect:
                        bad.append((w, l))
            rep.add(
                f"powers of chi - eps, k={k} sample {s}",
                "(chi - eps)^l(Y_w) is the length-l chain sum, zero for l >= |w|",
                not bad,
                f"first failure {bad[:1]}",
            )
    for s in range(samples):
        r = random_group_r(rng, 2, min(degree, 5))
        bad = []
        for n in range(2, min(degree, 5) + 1):
            for w in words(2, n):
                by_enum = [Fraction(0)] * n
                for g in nclat.iter_chains(n):
                    by_enum[g.length] += cf_chain(r, w, g)
                if by_enum != chain_sums(r, w):
                    bad.append(w)
        rep.add(
            f"chain sums by enumeration, sample {s}",
            "generalized coefficients summed over explicit chains",
            not bad,
            f"first failure {bad[:1]}",
        )
    for s in range(samples):
        d = random_group_distribution(rng, 1, degree + 1)
        a = fp.ls_one_variable(d)
        b = fp.ls_via_s(d)
        rep.add(
            f"LS = -z log S, sample {s}",
            "one-variable LS from the S-transform",
            a == b,
            f"through degree {degree + 1}",
        )
    return rep


# -- sym -----------------------------------------------------------------


def _sym_from(terms: dict) -> sq.SymPoly:
    return sq.SymPoly(terms)


REFERENCE_Y = {
    2: {(1,): 1},
    3: {(2,): 1, (1, 1): 1},
    4: {(3,): 1, (2, 1): 3, (1, 1, 1): 1},
    5: {(4,): 1, (3, 1): 4, (2, 2): 2, (2, 1, 1): 6, (1, 1, 1, 1): 1},
}


def sym_suite(degree: int, samples: int = 3) -> Report:
    """Checks for ``y_n`` with ``n <= degree + 1`` and functionals through ``degree``."""
    rep = Report("sym")
    top = degree + 1
    for n, terms in REFERENCE_Y.items():
        if n <= top:
            got = sq.y_elem(n)
            rep.add(f"y_{n} reference expansion", "y_n in the elementary basis", got == _sym_from(terms), repr(got))
    bad = [n for n in range(2, top + 1) if sq.y_elem(n) != sq.y_recursive(n)]
    rep.add("y_n recursion", "recursion in e_{m-1} and compositions", not bad, f"n=2..{top}, failures {bad}")

    y2, y3 = sq.y_elem(2), sq.y_elem(3)
    expect = sq.add_tensors(sq.sym_tensor(y3, sq.SymPoly.one()), sq.sym_tensor(y2, y2 * 3), sq.sym_tensor(sq.SymPoly.one(), y3))
    rep.add("coproduct of y_3", "Delta(y_3) = y_3 x 1 + 3 y_2 x y_2 + 1 x y_3", sq.delta_sym(y3) == expect, "")

    bad = []
    for n in range(2, min(top, 6) + 1):
        rhs = sq.add_tensors(
            *[sq.sym_tensor(sq.y_of_partition(p), sq.y_of_partition(nclat.kreweras(p))) for p in nclat.enumerate_nc(n)]
        )
        if sq.delta_sym(sq.y_elem(n)) != rhs:
            bad.append(n)
    rep.add("coproduct of y_n", "y_n comultiplies like Y_n", not bad, f"failures {bad}")

    newton_top = top
    ps = sq.p_from_e(newton_top)
    bad = []
    for n in range(1, newton_top + 1):
        lhs = sq.SymPoly()
        for i in range(1, n + 1):
            lhs = lhs + ps[i] * sq.e(n - i) * (-1) ** (i + 1)
        if lhs != sq.e(n) * n:
            bad.append(n)
    rep.add("Newton identity", "alternating p_i e_{n-i} sum equals n e_n", not bad, f"n=1..{newton_top}, failures {bad}")

    bad = [n for n in range(1, newton_top + 1) if sq.delta_sym(ps[n]) != sq.add_tensors(
        sq.sym_tensor(ps[n], sq.SymPoly.one()), sq.sym_tensor(sq.SymPoly.one(), ps[n]))]
    rep.add("power sums are primitive", "Delta(p_n) = p_n x 1 + 1 x p_n", not bad, f"failures {bad}")

    rng = random.Random(SEED)
    for s in range(samples):
        d = random_group_distribution(rng, 1, top)
        st = fp.s_transform(d)
        theta = sq.theta_from_s(st, degree)
        r, ls = d.r_transform, d.ls_transform
        bad = [n for n in range(2, top + 1) if theta(sq.y_elem(n)) != r[(1,) * n]]
        rep.add(f"theta o Phi = chi, sample {s}", "theta(y_n) is the n-th free cumulant", not bad, f"failures {bad}")
        lt = sq.sym_log(theta)
        bad = [n for n in range(2, top + 1) if lt(sq.y_elem(n)) != ls[(1,) * n]]
        rep.add(f"log theta on y_n is LS, sample {s}", "(log theta)(y_n) is the n-th LS coefficient", not bad, f"failures {bad}")
        ps_d = sq.p_from_e(degree)
        neg_log_s = -onevar_log(st)
        bad = [
            n
            for n in range(1, degree + 1)
            if theta(ps_d[n]) * Fraction((-1) ** (n + 1), n) != neg_log_s[n]
        ]
        rep.add(f"Theta(p) = -log S, sample {s}", "theta applied to the p-series gives -log S", not bad, f"failures {bad}")
        rep.add(
            f"LS = -z log S via Sym, sample {s}",
            "one-variable LS from the S-transform",
            fp.ls_one_variable(d) == fp.ls_via_s(d),
            "",
        )

    bad = [n for n in range(2, min(top, 7) + 1) if sq.sym_to_qsym(sq.y_elem(n)) != sq.y_via_chains(n)[0]]
    rep.add("chain expansion of y_n", "quasi-symmetric chain sum equals y_n", not bad, f"failures {bad}")
    q4, count = sq.y_via_chains(4)
    expect4 = sq.QSymPoly({(1, 1, 1): 16, (2, 1): 6, (1, 2): 6, (3,): 1})
    rep.add("y_4 in QSym", "16 M_111 + 6 M_21 + 6 M_12 + M_3 from 29 chains", q4 == expect4 and count == 29, f"{count} chains")
    rep.add("zeta_Sym o Phi = zeta_Y", "zeta_Sym(y_n) = 1", sq.zeta_check(degree), f"n=2..{top}")
    bad = [n for n in range(1, max(degree, 8) + 1) if hy.basis_dimension(1, n) != sq.sym_dimension(n)]
    rep.add("graded dimensions", "dim Y^(1)_n = p(n) = dim Sym_n", not bad, f"n=1..{max(degree, 8)}")
    return rep


_RUNNERS = {
    "lattice": lattice_suite,
    "hopf": hopf_suite,
    "ls-oracle": ls_oracle_suite,
    "sym": sym_suite,
}


def run_suite(suite: str, degree: int) -> Report:
    """Run one suite, or all of them merged under the name ``all``."""
    if suite == "all":
        rep = Report("all")
        for name in SUITES:
            for c in _RUNNERS[name](degree).checks:
                rep.checks.append(dict(c, name=f"{name}: {c['name']}"))
        return rep
    return _RUNNERS[suite](degree)
