import random
from fractions import Fraction as F

import pytest

from ncfree import freeprob as fp
from ncfree import hopfy as hy
from ncfree import nclat
from ncfree._lincomb import tensor_mul
from ncfree.errors import DomainError
from ncfree.hopfy import YElement, YFunctional
from ncfree.sampling import random_group_r
from ncfree.series import words


def Y(*letters):
    return YElement.gen(letters)


def test_monomials_and_degree():
    assert hy.monomial([(2, 1, 1), (1,), (1, 2)]) == ((1, 2), (2, 1, 1))
    assert hy.degree(((1, 2), (2, 1, 1))) == 3
    assert Y(1) == 1
    assert Y(1, 2) * Y(1, 1) == Y(1, 1) * Y(1, 2)
    with pytest.raises(DomainError):
        Y()


def test_delta_small_generators():
    t = hy.delta_generator((1, 2))
    assert t == {(((1, 2),), ()): 1, ((), ((1, 2),)): 1}
    t3 = hy.delta_generator((1, 1, 1))
    assert t3 == {(((1, 1, 1),), ()): 1, (((1, 1),), ((1, 1),)): 3, ((), ((1, 1, 1),)): 1}
    with pytest.raises(DomainError):
        hy.delta_generator((1,))


def test_delta_unit_and_homomorphism():
    assert hy.delta_element(YElement.one()) == {((), ()): 1}
    rng = random.Random(0)
    for _ in range(10):
        u = tuple(rng.randint(1, 2) for _ in range(rng.randint(2, 4)))
        v = tuple(rng.randint(1, 2) for _ in range(rng.randint(2, 4)))
        lhs = hy.delta_element(Y(*u) * Y(*v))
        rhs = tensor_mul(hy.delta_generator(u), hy.delta_generator(v), lambda a, b: {hy.monomial(a + b): 1})
        assert lhs == rhs


@pytest.mark.parametrize("k,n", [(1, 4), (2, 4), (1, 5), (2, 5)])
def test_relative_coproduct_matches_multiplicativity(k, n):
    for w in words(k, n):
        for rho in nclat.enumerate_nc(n):
            via_mult = hy.delta_element(YElement({hy.y_pi(w, rho): 1}))
            assert hy.delta_relative(w, rho) == via_mult


@pytest.mark.parametrize("k,n", [(1, 5), (2, 4), (2, 5)])
def test_coassociativity_and_counit(k, n):
    for w in words(k, n):
        left, right = hy.coassociativity_sides(w)
        assert left == right
        t = hy.delta_generator(w)
        assert hy.contract_left(None, t) == Y(*w) == hy.contract_right(None, t)


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("l", range(1, 5))
def test_iterated_coproduct_is_multichain_sum(n, l):
    for w in list(words(2, n))[:6]:
        t, count = hy.multichain_tensor(w, l)
        got = hy.delta_iter(Y(*w), l)
        assert got == t
        assert sum(t.values()) == count


def test_iterated_coproduct_small_cases():
    assert hy.delta_iter(Y(1, 2, 1), 1) == {(((1, 2, 1),),): 1}
    assert hy.delta_iter(Y(1, 2, 1), 2) == hy.delta_generator((1, 2, 1))
    _, count = hy.multichain_tensor((1, 1, 1), 3)
    assert count == len(nclat.enumerate_multichains(3, 3))


def test_grading():
    for w in words(2, 5):
        for a, b in hy.delta_generator(w):
            assert hy.degree(a) + hy.degree(b) == 4


def test_basis_dimensions():
    assert [hy.basis_dimension(1, n) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
    assert hy.basis(1, 0) == ((),)
    assert hy.basis_dimension(2, 1) == 4


def test_functional_validation():
    with pytest.raises(DomainError):
        YFunctional(1, 1, {(((1, 1, 1),)): 1})
    x = hy.epsilon(1, 2)
    with pytest.raises(DomainError):
        hy.convolve(x, hy.epsilon(1, 3))
    with pytest.raises(DomainError):
        hy.log_functional(hy.zero_functional(1, 2))
    with pytest.raises(DomainError):
        hy.exp_functional(x)


def test_epsilon_is_unit():
    chi = hy.character_from_r(random_group_r(random.Random(2), 2, 5))
    eps = hy.epsilon(2, 4)
    assert hy.convolve(eps, chi) == chi == hy.convolve(chi, eps)


def test_character_examples():
    unit = hy.character_from_r(fp.unit_distribution(2, 4).r_transform)
    assert unit == hy.epsilon(2, 3)
    pois = hy.character_from_r(fp.free_poisson(6).r_transform)
    assert all(pois((((1,) * n),)) == 1 for n in range(2, 7))
    assert pois.is_multiplicative()
    with pytest.raises(DomainError):
        hy.character_from_r(fp.Distribution(1, 3, {(1,): 2}).r_transform)


@pytest.mark.parametrize("seed", range(3))
def test_character_homomorphism(seed):
    rng = random.Random(seed)
    a = fp.r_to_moments(random_group_r(rng, 2, 5))
    b = fp.r_to_moments(random_group_r(rng, 2, 5))
    lhs = hy.character_from_r(fp.boxtimes(a, b).r_transform)
    rhs = hy.convolve(hy.character_from_r(a.r_transform), hy.character_from_r(b.r_transform))
    assert lhs == rhs
    assert rhs.is_multiplicative()


def test_convolve_many_matches_iterated_convolution():
    rng = random.Random(7)
    fs = [hy.character_from_r(random_group_r(rng, 2, 4)) for _ in range(3)]
    assert hy.convolve_many(fs) == hy.convolve(hy.convolve(fs[0], fs[1]), fs[2])


@pytest.mark.parametrize("seed", range(3))
def test_log_exp(seed):
    chi = hy.character_from_r(random_group_r(random.Random(seed), 2, 5))
    lg = hy.log_functional(chi)
    assert lg.is_infinitesimal()
    assert hy.exp_functional(lg) == chi
    assert hy.log_functional(hy.epsilon(2, 3)) == hy.zero_functional(2, 3)
    assert hy.exp_functional(hy.zero_functional(2, 3)) == hy.epsilon(2, 3)


def test_log_additive_for_commuting_characters():
    rng = random.Random(8)
    mu = fp.r_to_moments(random_group_r(rng, 2, 5))
    p = fp.repeated_tuple(fp.r_to_moments(random_group_r(rng, 1, 5)), 2)
    a, b = hy.character_from_r(mu.r_transform), hy.character_from_r(p.r_transform)
    assert hy.convolve(a, b) == hy.convolve(b, a)
    assert hy.log_functional(hy.convolve(a, b)) == hy.log_functional(a) + hy.log_functional(b)


def test_antipode_examples():
    assert hy.antipode(YElement.one()) == 1
    assert hy.antipode(Y(1, 2)) == -Y(1, 2)
    # S(Y_3) = -Y_3 + 3 Y_2^2
    assert hy.antipode(Y(1, 1, 1)) == -Y(1, 1, 1) + Y(1, 1) * Y(1, 1) * 3


@pytest.mark.parametrize("k,deg", [(1, 5), (2, 3)])
def test_antipode_axiom_and_homomorphism(k, deg):
    ident = lambda m: YElement({m: 1})  # noqa: E731
    table = hy.antipode_table(k, deg)
    for m in hy.basis(k, deg):
        unit = YElement.one() if not m else YElement()
        assert hy.endo_convolve_on(table.__getitem__, ident, m) == unit
        assert hy.endo_convolve_on(ident, table.__getitem__, m) == unit
        prod = YElement.one()
        for w in m:
            prod = prod * table[(w,)]
        assert table[m] == prod


def test_character_inverse():
    pois = hy.character_from_r(fp.free_poisson(5).r_transform)
    inv = hy.character_inverse(pois)
    assert inv((((1, 1),))) == -1 and inv((((1, 1, 1),))) == 2
    assert hy.functional_after_antipode(pois) == inv
    assert hy.character_inverse(hy.epsilon(1, 3)) == hy.epsilon(1, 3)
    not_char = YFunctional(1, 2, {(): 1, (((1, 1),)): 1})
    with pytest.raises(DomainError):
        hy.character_inverse(not_char)


def test_high_powers_of_shifted_character_vanish():
    r = random_group_r(random.Random(3), 2, 5)
    diff = hy.character_from_r(r) - hy.epsilon(2, 4)
    p = hy.power(diff, 5)
    for n in range(2, 6):
        for w in words(2, n):
            assert p((w,)) == 0


def test_cocommutativity():
    assert hy.check_cocommutative_k1(2)
    assert hy.check_cocommutative_k1(6)
    assert hy.cocommutativity_witness(1, 5) is None
    assert hy.cocommutativity_witness(2, 4) == (1, 2, 1)
    assert not hy.is_cocommutative_on((1, 2, 1))


def test_tensor_json_is_deterministic():
    t = hy.delta_generator((1, 2, 2))
    a = hy.tensor_to_json(t)
    b = hy.tensor_to_json(dict(reversed(list(t.items()))))
    assert a == b
    assert {r["value"] for r in a} == {"1"}
    assert F(sum(F(r["value"]) for r in a)) == 5
