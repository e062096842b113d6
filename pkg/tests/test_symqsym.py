import random
from fractions import Fraction as F

import pytest

from ncfree import freeprob as fp
from ncfree import hopfy as hy
from ncfree import nclat
from ncfree import symqsym as sq
from ncfree.errors import DomainError
from ncfree.hopfy import YElement
from ncfree.sampling import random_group_distribution
from ncfree.series import OneVarSeries, onevar_log
from ncfree.symqsym import QSymPoly, SymPoly

import oracles

E = sq.e
ONE = SymPoly.one()

REFERENCE_Y = {
    2: SymPoly({(1,): 1}),
    3: SymPoly({(2,): 1, (1, 1): 1}),
    4: SymPoly({(3,): 1, (2, 1): 3, (1, 1, 1): 1}),
    5: SymPoly({(4,): 1, (3, 1): 4, (2, 2): 2, (2, 1, 1): 6, (1, 1, 1, 1): 1}),
}


def test_sym_arithmetic():
    assert sq.sym_mul(E(2), E(1)) == SymPoly({(2, 1): 1})
    assert E(1) * E(1) - E(1) * E(1) == SymPoly()
    assert E(0) == ONE
    with pytest.raises(DomainError):
        E(-1)
    with pytest.raises(DomainError):
        SymPoly({(0, 1): 1})


def test_partitions_and_dimensions():
    assert list(sq.partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [sq.sym_dimension(n) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert list(sq.compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]


def test_h_and_p_small_degrees():
    h = sq.h_from_e(3)
    assert h[0] == ONE and h[1] == E(1)
    assert h[2] == E(1) * E(1) - E(2)
    p = sq.p_from_e(3)
    assert p[1] == E(1)
    assert p[2] == E(1) * E(1) - E(2) * 2
    assert p[3] == E(1) * E(1) * E(1) - E(2) * E(1) * 3 + E(3) * 3


def test_h_generating_series():
    # e(z) * (1 + sum (-1)^n h_n z^n) = 1
    h = sq.h_from_e(6)
    for n in range(1, 7):
        acc = SymPoly()
        for i in range(n + 1):
            acc = acc + E(i) * h[n - i] * (-1) ** (n - i)
        assert acc == SymPoly()


@pytest.mark.parametrize("n", range(1, 7))
def test_newton_identity(n):
    p = sq.p_from_e(6)
    lhs = SymPoly()
    for i in range(1, n + 1):
        lhs = lhs + p[i] * E(n - i) * (-1) ** (i + 1)
    assert lhs == E(n) * n


def test_basis_round_trips():
    assert sq.e_from_h(sq.h_from_e(6)) == [E(n) for n in range(7)]
    assert sq.e_from_p(sq.p_from_e(6)) == [E(n) for n in range(7)]
    with pytest.raises(DomainError):
        sq.h_from_e(0)


@pytest.mark.parametrize("n", sorted(REFERENCE_Y))
def test_y_reference_expansions(n):
    assert sq.y_elem(n) == REFERENCE_Y[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_y_recursion(n):
    assert sq.y_recursive(n) == sq.y_elem(n)


def test_y_edge_cases():
    assert sq.y_elem(1) == ONE
    with pytest.raises(DomainError):
        sq.y_elem(0)
    p = nclat.NcPartition.from_blocks([[1, 2, 3], [4, 5]])
    assert sq.y_of_partition(p) == sq.y_elem(3) * sq.y_elem(2)


def test_quasi_shuffle_examples():
    m1 = QSymPoly({(1,): 1})
    assert sq.qsym_quasi_shuffle(m1, m1) == QSymPoly({(1, 1): 2, (2,): 1})
    prod = QSymPoly({(1,): 1}) * QSymPoly({(2,): 1})
    assert prod == QSymPoly({(1, 2): 1, (2, 1): 1, (3,): 1})
    prod = QSymPoly({(1, 2): 1}) * QSymPoly({(3,): 1})
    assert prod == QSymPoly({(1, 2, 3): 1, (1, 3, 2): 1, (3, 1, 2): 1, (4, 2): 1, (1, 5): 1})


@pytest.mark.parametrize("a,b", [((1,), (1, 1)), ((2, 1), (1,)), ((1, 2), (2, 1)), ((1, 1), (1, 1))])
def test_quasi_shuffle_against_polynomials(a, b):
    nvars = len(a) + len(b)
    prod = QSymPoly({a: 1}) * QSymPoly({b: 1})
    expect = oracles.poly_product(oracles.monomial_qsym_poly(a, nvars), oracles.monomial_qsym_poly(b, nvars))
    assert oracles.qsym_poly(prod.terms, nvars) == expect


def test_sym_to_qsym_examples():
    assert sq.sym_to_qsym(E(2)) == QSymPoly({(1, 1): 1})
    assert sq.sym_to_qsym(E(1) * E(1)) == QSymPoly({(1, 1): 2, (2,): 1})
    q4, count = sq.y_via_chains(4)
    assert q4 == QSymPoly({(1, 1, 1): 16, (2, 1): 6, (1, 2): 6, (3,): 1})
    assert count == 29
    with pytest.raises(DomainError):
        sq.y_via_chains(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_chain_expansion_equals_y(n):
    assert sq.y_via_chains(n)[0] == sq.sym_to_qsym(sq.y_elem(n))


def test_coproduct_examples():
    assert sq.delta_sym(E(1)) == sq.add_tensors(sq.sym_tensor(E(1), ONE), sq.sym_tensor(ONE, E(1)))
    y2, y3 = sq.y_elem(2), sq.y_elem(3)
    expect = sq.add_tensors(sq.sym_tensor(y3, ONE), sq.sym_tensor(y2, y2 * 3), sq.sym_tensor(ONE, y3))
    assert sq.delta_sym(y3) == expect


@pytest.mark.parametrize("n", range(1, 7))
def test_power_sums_primitive(n):
    p = sq.p_from_e(6)[n]
    assert sq.delta_sym(p) == sq.add_tensors(sq.sym_tensor(p, ONE), sq.sym_tensor(ONE, p))


@pytest.mark.parametrize("n", range(2, 6))
def test_y_comultiplies_like_generator(n):
    rhs = sq.add_tensors(
        *[sq.sym_tensor(sq.y_of_partition(p), sq.y_of_partition(nclat.kreweras(p))) for p in nclat.enumerate_nc(n)]
    )
    assert sq.delta_sym(sq.y_elem(n)) == rhs


def test_phi():
    assert sq.phi(YElement.one()) == ONE
    assert sq.phi(YElement.gen((1, 1, 1)) * YElement.gen((1, 1))) == sq.y_elem(3) * sq.y_elem(2)
    with pytest.raises(DomainError):
        sq.phi(YElement.gen((1, 2)))


def test_phi_respects_coproduct():
    # Phi applied on both legs of Delta(Y_w) matches Delta(Phi(Y_w))
    for n in range(2, 6):
        t = hy.delta_generator((1,) * n)
        mapped = sq.add_tensors(
            *[sq.sym_tensor(sq.phi(YElement({a: c})), sq.phi(YElement({b: 1}))) for (a, b), c in t.items()]
        )
        assert mapped == sq.delta_sym(sq.y_elem(n))


def test_theta_examples():
    pois = sq.theta_from_s(fp.s_transform(fp.free_poisson(5)))
    assert pois(E(1)) == 1 and all(pois(E(n)) == 0 for n in range(2, 5))
    assert pois == sq.zeta_sym(4)
    assert sq.theta_from_s(fp.s_transform(fp.unit_distribution(1, 4))) == sq.sym_epsilon(3)
    with pytest.raises(DomainError):
        sq.theta_from_s(OneVarSeries([2, 1]))
    with pytest.raises(DomainError):
        sq.theta_from_s(OneVarSeries([1, 1]), 3)


def test_theta_on_h():
    # h_n -> (-1)^n beta_n with S = 1 + sum beta_n z^n
    d = random_group_distribution(random.Random(1), 1, 6)
    s = fp.s_transform(d)
    theta = sq.theta_from_s(s)
    h = sq.h_from_e(5)
    assert all(theta(h[n]) == (-1) ** n * s[n] for n in range(1, 6))


@pytest.mark.parametrize("seed", range(3))
def test_theta_against_cumulants_and_ls(seed):
    d = random_group_distribution(random.Random(seed), 1, 7)
    s = fp.s_transform(d)
    theta = sq.theta_from_s(s, 6)
    assert theta.is_multiplicative()
    lt = sq.sym_log(theta)
    assert lt.is_infinitesimal()
    for n in range(2, 8):
        assert theta(sq.y_elem(n)) == d.r_transform[(1,) * n]
        assert lt(sq.y_elem(n)) == d.ls_transform[(1,) * n]
    p = sq.p_from_e(6)
    neg_log_s = -onevar_log(s)
    for n in range(1, 7):
        assert theta(p[n]) * F((-1) ** (n + 1), n) == neg_log_s[n]
        assert lt(p[n]) == theta(p[n])
    for n in range(2, 8):
        assert lt(sq.y_elem(n)) == F((-1) ** n, n - 1) * lt(p[n - 1])


def test_theta_multiplicative_under_boxtimes():
    rng = random.Random(4)
    a = random_group_distribution(rng, 1, 6)
    b = random_group_distribution(rng, 1, 6)
    ta, tb = sq.theta_from_s(fp.s_transform(a)), sq.theta_from_s(fp.s_transform(b))
    assert sq.sym_convolve(ta, tb) == sq.theta_from_s(fp.s_transform(fp.boxtimes(a, b)))


def test_functional_arithmetic():
    z = sq.zeta_sym(3)
    assert (z - z) == sq.SymFunctional(3, {})
    assert z + z == z.scale(2)
    assert sq.sym_log(sq.sym_epsilon(3)) == sq.SymFunctional(3, {})
    with pytest.raises(DomainError):
        sq.sym_convolve(z, sq.zeta_sym(4))
    with pytest.raises(DomainError):
        z(E(4))
    with pytest.raises(DomainError):
        sq.sym_log(sq.SymFunctional(3, {}))
    with pytest.raises(DomainError):
        sq.sym_character(3, [1, 0])


def test_zeta():
    assert sq.zeta_check(6)
    assert sq.zeta_sym(5).is_multiplicative()
