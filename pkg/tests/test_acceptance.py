"""Acceptance criteria, one test per criterion; all comparisons are exact."""

import random
from fractions import Fraction as F

from ncfree import freeprob as fp
from ncfree import hopfy as hy
from ncfree import nclat
from ncfree import symqsym as sq
from ncfree.hopfy import YElement
from ncfree.sampling import random_distribution, random_group_distribution, random_group_r
from ncfree.series import NcSeries, chain_sums, words
from ncfree.symqsym import QSymPoly, SymPoly

import oracles

SEED = 31415


def test_criterion_01_lattice_counts():
    assert [len(nclat.enumerate_nc(n)) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]
    for n in range(1, 7):
        got = {frozenset(frozenset(b) for b in p.blocks) for p in nclat.enumerate_nc(n)}
        assert got == set(oracles.nc_brute(n))
    by_length = [0] * 4
    for g in nclat.enumerate_chains(4):
        by_length[g.length] += 1
    assert by_length[1:] == [1, 12, 16]


def test_criterion_02_kreweras_identities():
    for n in range(1, 7):
        parts = nclat.enumerate_nc(n)
        K = {p: nclat.kreweras(p) for p in parts}
        for p in parts:
            above = [r for r in parts if nclat.leq(p, r)]
            images = set()
            for r in above:
                s = nclat.relative_kreweras(p, r)
                # block count of a relative complement
                assert len(s) == n + len(r) - len(p)
                # bounded by the full complement
                assert nclat.leq(s, K[p])
                # complement of the complement
                assert nclat.relative_kreweras(s, K[p]) == K[r]
                images.add(s)
                # monotone in the upper argument
                for r2 in above:
                    if nclat.leq(r, r2):
                        assert nclat.leq(s, nclat.relative_kreweras(p, r2))
            # the map r -> K_r(p) is a bijection onto the interval below K(p)
            below_k = {s for s in parts if nclat.leq(s, K[p])}
            assert len(images) == len(above) and images == below_k


def test_criterion_03_moment_cumulant_round_trip():
    rng = random.Random(SEED)
    for i in range(25):
        d = random_distribution(rng, 1 + i % 2, 5)
        r = fp.moments_to_r(d)
        assert fp.r_to_moments(r) == d
        for n in range(1, 6):
            for w in words(d.k, n):
                assert oracles.moment_from_cumulants(r.__getitem__, w) == d.moment(w)


def test_criterion_04_group_laws():
    rng = random.Random(SEED + 4)
    for k in (1, 2):
        unit = fp.unit_distribution(k, 5)
        for _ in range(3):
            m = random_group_distribution(rng, k, 5)
            assert fp.boxtimes(m, unit) == m == fp.boxtimes(unit, m)
            inv = fp.boxtimes_inverse(m)
            assert fp.boxtimes(m, inv) == unit == fp.boxtimes(inv, m)
        for _ in range(2):
            a, b, c = (random_distribution(rng, k, 5) for _ in range(3))
            assert fp.boxtimes(fp.boxtimes(a, b), c) == fp.boxtimes(a, fp.boxtimes(b, c))
            ab = fp.boxtimes(a, b).r_transform
            for n in range(1, 6):
                for w in words(k, n):
                    assert ab[w] == oracles.boxtimes_cumulant(a.r_transform.__getitem__, b.r_transform.__getitem__, w)


def test_criterion_05_ls_linearization():
    rng = random.Random(SEED + 5)
    for _ in range(10):
        a = random_group_distribution(rng, 1, 6)
        b = random_group_distribution(rng, 1, 6)
        ab = fp.boxtimes(a, b)
        assert ab.ls_transform == NcSeries(1, 6, _ls_sum(a, b, 1, 6))
    for _ in range(5):
        a = random_group_distribution(rng, 2, 5)
        p1 = random_group_distribution(rng, 1, 5)
        p = fp.repeated_tuple(p1, 2)
        for prod in (fp.boxtimes(a, p), fp.boxtimes(p, a)):
            for n in range(2, 6):
                for w in words(2, n):
                    assert prod.ls_transform[w] == a.ls_transform[w] + p1.ls_transform[(1,) * n]


def _ls_sum(a, b, k, degree):
    return {
        w: a.ls_transform[w] + b.ls_transform[w] for n in range(2, degree + 1) for w in words(k, n)
    }


def test_criterion_06_dual_route_ls():
    rng = random.Random(SEED + 6)
    for k in (1, 2):
        for _ in range(3):
            r = random_group_r(rng, k, 6)
            ls = fp.ls_from_r(r)
            chi = hy.character_from_r(r)
            log_chi = hy.log_functional(chi)
            diff = chi - hy.epsilon(k, chi.degree)
            powers = {l: hy.power(diff, l) for l in range(1, 7)}
            for n in range(2, 6):
                for w in words(k, n):
                    assert log_chi((w,)) == ls[w]
                    sums = chain_sums(r, w)
                    for l in range(1, n):
                        assert powers[l]((w,)) == sums[l]
                    for l in range(n, 7):
                        assert powers[l]((w,)) == 0


def test_criterion_07_one_variable_bridge():
    rng = random.Random(SEED + 7)
    for _ in range(25):
        d = random_group_distribution(rng, 1, 7)
        ls = fp.ls_one_variable(d)
        moments = [d.moment((1,) * n) for n in range(1, 8)]
        s = oracles.s_from_moments(moments, 7)
        log_s = oracles.poly_log1p([F(0)] + s[1:], 6)
        expect = [F(0)] + [-c for c in log_s]
        assert list(ls.coeffs) == expect
        assert fp.ls_via_s(d) == ls
    pois = fp.ls_one_variable(fp.free_poisson(7))
    assert list(pois.coeffs) == [0, 0] + [F((-1) ** n, n - 1) for n in range(2, 8)]
    z_log = [F(0)] + oracles.poly_log1p([F(0), F(1)] + [F(0)] * 5, 6)
    assert list(pois.coeffs) == z_log


def test_criterion_08_closed_forms():
    rng = random.Random(SEED + 8)
    for _ in range(5):
        r = random_group_r(rng, 4, 4, density=1.0)
        ls = fp.ls_from_r(r)
        for n in range(2, 5):
            for w in words(4, n):
                assert ls[w] == oracles.ls_closed_form(r.__getitem__, w)


def test_criterion_09_freeness():
    rng = random.Random(SEED + 9)
    cases = []
    for _ in range(4):
        m1, m2 = random_group_distribution(rng, 1, 5), random_group_distribution(rng, 1, 5)
        free = fp.free_tuple([m1, m2])
        assert fp.is_free(free)
        cases.append(free)
        rep = fp.repeated_tuple(random_group_distribution(rng, 1, 5), 2)
        assert not fp.is_free(rep)
        cases.append(rep)
        cases.append(fp.boxtimes(free, rep))
        cases.append(random_group_distribution(rng, 2, 5))
    for d in cases:
        assert fp.mixed_r_vanishes(d) == fp.mixed_ls_vanishes(d)


def test_criterion_10_hopf_axioms():
    for k in (1, 2):
        for n in range(2, 6):
            for w in words(k, n):
                left, right = hy.coassociativity_sides(w)
                assert left == right
                t = hy.delta_generator(w)
                assert hy.contract_left(None, t) == YElement.gen(w) == hy.contract_right(None, t)
        ident = lambda m: YElement({m: 1})  # noqa: E731
        table = hy.antipode_table(k, 5)
        for m in hy.basis(k, 5):
            unit = YElement.one() if not m else YElement()
            assert hy.endo_convolve_on(table.__getitem__, ident, m) == unit
            assert hy.endo_convolve_on(ident, table.__getitem__, m) == unit
    rng = random.Random(SEED + 10)
    for k, deg in ((1, 5), (2, 4)):
        eta = hy.character_from_r(random_group_r(rng, k, deg + 1))
        eta_s = hy.functional_after_antipode(eta)
        assert eta_s == hy.character_inverse(eta)
        eps = hy.epsilon(k, deg)
        assert hy.convolve(eta, eta_s) == eps == hy.convolve(eta_s, eta)


def test_criterion_11_symmetric_functions():
    reference = {
        2: SymPoly({(1,): 1}),
        3: SymPoly({(2,): 1, (1, 1): 1}),
        4: SymPoly({(3,): 1, (2, 1): 3, (1, 1, 1): 1}),
        5: SymPoly({(4,): 1, (3, 1): 4, (2, 2): 2, (2, 1, 1): 6, (1, 1, 1, 1): 1}),
    }
    for n, y in reference.items():
        assert sq.y_elem(n) == y
    one = SymPoly.one()
    y2, y3 = sq.y_elem(2), sq.y_elem(3)
    assert sq.delta_sym(y3) == sq.add_tensors(sq.sym_tensor(y3, one), sq.sym_tensor(y2, y2 * 3), sq.sym_tensor(one, y3))
    for n in range(2, 6):
        rhs = sq.add_tensors(
            *[sq.sym_tensor(sq.y_of_partition(p), sq.y_of_partition(nclat.kreweras(p))) for p in nclat.enumerate_nc(n)]
        )
        assert sq.delta_sym(sq.y_elem(n)) == rhs
    p = sq.p_from_e(6)
    for n in range(1, 7):
        lhs = SymPoly()
        for i in range(1, n + 1):
            lhs = lhs + p[i] * sq.e(n - i) * (-1) ** (i + 1)
        assert lhs == sq.e(n) * n
    rng = random.Random(SEED + 11)
    for _ in range(3):
        d = random_group_distribution(rng, 1, 6)
        theta = sq.theta_from_s(fp.s_transform(d), 5)
        chi = hy.character_from_r(d.r_transform)
        for m in hy.basis(1, 5):
            assert theta(sq.phi(YElement({m: 1}))) == chi(m)
        log_theta = sq.sym_log(theta)
        for n in range(2, 7):
            assert log_theta(sq.y_elem(n)) == d.ls_transform[(1,) * n]
    q4, count = sq.y_via_chains(4)
    assert q4 == QSymPoly({(1, 1, 1): 16, (2, 1): 6, (1, 2): 6, (3,): 1}) and count == 29
    for n in range(2, 7):
        assert sq.y_via_chains(n)[0] == sq.sym_to_qsym(sq.y_elem(n))
    zeta = sq.zeta_sym(5)
    zeta_y = hy.character_from_r(fp.free_poisson(6).r_transform)
    for m in hy.basis(1, 5):
        assert zeta(sq.phi(YElement({m: 1}))) == zeta_y(m)
    assert [hy.basis_dimension(1, n) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
    assert all(hy.basis_dimension(1, n) == sq.sym_dimension(n) for n in range(1, 9))


def test_criterion_12_cocommutativity_k1():
    assert hy.check_cocommutative_k1(6)
    for m in hy.basis(1, 6):
        t = hy.delta_element(YElement({m: 1}))
        assert hy.flip(t) == t
