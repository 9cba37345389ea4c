"""Prepackaged worked examples."""

import pytest

from qcluster.errors import ConstructionFailed, HypothesisViolated
from qcluster.scenarios import (
    an_chain,
    chain_seed,
    markov_seed,
    rank1_images,
    ring_generators,
    sl2_coproduct,
    standard_cycle_seed,
    validate_chain,
)
from qcluster.seeds import make_seed, mutate_seed, quiver_edges
from qcluster.torus import generator, weyl_monomial
from qcluster.transport import transport, transport_step


def test_standard_cycle_shape(cycle):
    assert cycle.rank == 4
    assert sorted(cycle.unfrozen) == [1, 3]
    assert {(i, j) for i, j, _ in quiver_edges(cycle)} == {(0, 1), (1, 2), (2, 3), (3, 0)}
    assert standard_cycle_seed() == cycle


def test_ring_generators_terms(cycle):
    gens = ring_generators(cycle)
    assert [dict(sorted(g.terms.items())) for g in gens] == [
        {(1, 0, 0, 0): {0: 1}, (1, 1, 0, 0): {0: 1}},
        {(0, 0, 1, 0): {0: 1}, (0, 0, 1, 1): {0: 1}},
        {(1, 0, 1, 0): {0: 1}},
        {(1, 1, 1, 0): {0: 1}},
        {(1, 0, 1, 1): {0: 1}},
        {(1, 1, 1, 1): {0: 1}},
    ]


def test_rank1_images(cycle):
    got = rank1_images()
    assert got.seed == cycle
    assert got.passing == (
        ((0, 1), (2, 3)),
        ((0, 3), (2, 1)),
        ((2, 1), (0, 3)),
        ((2, 3), (0, 1)),
    )
    assert got.f_support == (0, 1) and got.e_support == (2, 3)
    assert dict(sorted(got.e.terms.items())) == {
        (0, 0, 1, 0): {0: 1},
        (0, 0, 1, 1): {0: 1},
    }
    assert dict(sorted(got.f.terms.items())) == {
        (1, 0, 0, 0): {0: 1},
        (1, 1, 0, 0): {0: 1},
    }
    assert got.k.terms == {(1, 0, 1, 1): {0: 1}}
    assert got.k_prime.terms == {(1, 1, 1, 0): {0: 1}}
    assert dict(sorted(got.casimir.terms.items())) == {
        (1, 0, 1, 0): {0: 1},
        (1, 1, 1, 1): {0: 1},
    }
    d = got.as_dict()
    assert set(d) == {"e", "f", "k", "k_prime", "casimir"}


def test_rank1_relations_hold(cycle):
    got = rank1_images()
    e, f, k, kp = got.e, got.f, got.k, got.k_prime
    D = cycle.q_den
    assert k * kp == kp * k
    assert k * e == (e * k).scale(2 * D)
    assert k * f == (f * k).scale(-2 * D)
    assert kp * e == (e * kp).scale(-2 * D)
    assert kp * f == (f * kp).scale(2 * D)
    comm = e * f - f * e
    gap = (kp - k).scale(D) - (kp - k).scale(-D)
    assert comm == gap
    # the central element commutes with everything
    for x in (e, f, k, kp):
        assert got.casimir * x == x * got.casimir


def test_rank1_rejects_seeds_without_telescopes(a2):
    with pytest.raises(ConstructionFailed):
        rank1_images(a2)


def test_chain_seed_shape():
    with pytest.raises(ValueError):
        chain_seed(1)
    s = chain_seed(5)
    assert s.rank == 5
    assert sorted(s.unfrozen) == [1, 2, 3]
    assert {(i, j) for i, j, _ in quiver_edges(s)} == {(0, 1), (1, 2), (2, 3), (3, 4)}


def test_an_chain_scenario():
    sc = an_chain(5)
    assert sc.chain == (0, 1, 2, 3, 4)
    assert sc.path == (1, 2, 3)
    assert dict(sorted(sc.telescoping.terms.items())) == {
        (1, 0, 0, 0, 0): {0: 1},
        (1, 1, 0, 0, 0): {0: 1},
        (1, 1, 1, 0, 0): {0: 1},
        (1, 1, 1, 1, 0): {0: 1},
    }
    assert sc.full_monomial.terms == {(1, 1, 1, 1, 1): {0: 1}}


@pytest.mark.parametrize("n", [3, 4])
def test_chain_collapse_small(n):
    sc = an_chain(n)
    assert transport(sc.telescoping, sc.path).terms == {
        tuple(1 if i == 0 else 0 for i in range(n)): {0: 1}
    }
    assert transport(sc.full_monomial, sc.path).terms == {
        tuple(1 if i in (0, n - 1) else 0 for i in range(n)): {0: 1}
    }


def test_validate_chain_bullets(cycle):
    s = chain_seed(4)
    validate_chain(s, (0, 1, 2, 3))
    validate_chain(cycle, (0, 1, 2))  # the extra vertex is covered
    with pytest.raises(HypothesisViolated) as err:
        validate_chain(s, (0, 1, 1, 3))  # repeated vertex
    assert err.value.bullet == 0
    with pytest.raises(HypothesisViolated) as err:
        validate_chain(s, (3, 2, 1, 0))  # arrows run against the order
    assert err.value.bullet == 0

    head_out = make_seed(
        [[0, 1, 0, 1], [-1, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
        unfrozen={1, 3},
    )
    with pytest.raises(HypothesisViolated) as err:
        validate_chain(head_out, (0, 1, 2))
    assert err.value.bullet == 1

    doubled = make_seed(
        [[0, 1, 0, 0], [-1, 0, 1, -2], [0, -1, 0, 0], [0, 2, 0, 0]],
        unfrozen={1, 3},
    )
    with pytest.raises(HypothesisViolated) as err:
        validate_chain(doubled, (0, 1, 2))
    assert err.value.bullet == 2

    uncovered = make_seed(
        [[0, 1, 0, 0], [-1, 0, 1, -1], [0, -1, 0, 0], [0, 1, 0, 0]],
        unfrozen={1, 3},
    )
    with pytest.raises(HypothesisViolated) as err:
        validate_chain(uncovered, (0, 1, 2))
    assert err.value.bullet == 3


def test_an_chain_needs_a_chain_for_custom_seeds():
    s = chain_seed(4)
    with pytest.raises(ValueError):
        an_chain(seed=s)
    sc = an_chain(seed=s, chain=(0, 1, 2, 3))
    assert sc.path == (1, 2)


def test_markov_invariant(markov):
    inv = weyl_monomial(markov, [0, 1, 2])
    assert markov_seed() == markov
    assert sorted(markov.unfrozen) == [0, 1, 2]
    prod = generator(markov, 0) * generator(markov, 1) * generator(markov, 2)
    assert prod == inv.scale(-4)
    # the invariant is fixed by every one-step transport
    for k in range(3):
        assert transport_step(inv, k).terms == inv.terms


def test_sl2_coproduct():
    cop = sl2_coproduct()
    assert cop.convention == "hopf"
    assert cop.matching == (2, 0)
    assert set(cop.passing) == {("hopf", (2, 0)), ("op", (0, 2))}
    glued = cop.amalgamation.seed
    assert glued.rank == 7
    assert sorted(glued.unfrozen) == [1, 3, 4, 6]
    g = cop.images
    assert dict(sorted(g.e.terms.items())) == {
        (0, 0, 0, 0, 0, 1, 0): {0: 1},
        (0, 0, 0, 0, 0, 1, 1): {0: 1},
        (0, 0, 1, 0, 0, 1, 1): {0: 1},
        (0, 0, 1, 1, 0, 1, 1): {0: 1},
    }
    assert dict(sorted(g.f.terms.items())) == {
        (1, 0, 0, 0, 0, 0, 0): {0: 1},
        (1, 1, 0, 0, 0, 0, 0): {0: 1},
        (1, 1, 1, 0, 0, 0, 0): {0: 1},
        (1, 1, 1, 0, 1, 0, 0): {0: 1},
    }
    assert g.k.terms == {(1, 0, 1, 1, 0, 1, 1): {0: 1}}
    assert g.k_prime.terms == {(1, 1, 1, 0, 1, 1, 0): {0: 1}}
    cas = g.casimir
    assert cas.term_count() == 13
    special = [c for c in cas.terms.values() if c != {0: 1}]
    assert special == [{2: 1, -2: 1}]  # exactly one q + 1/q coefficient
    for x in (g.e, g.f, g.k, g.k_prime):
        assert cas * x == x * cas
