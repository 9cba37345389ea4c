"""Exchange-graph enumeration and the two polynomiality certificates."""

import pytest

from qcluster.certify import (
    certify_by_transport,
    enumerate_seeds,
    frozen_sufficient,
    gmatrix_criterion,
    is_universally_monomial,
)
from qcluster.errors import NotAPolynomial
from qcluster.scenarios import ring_generators
from qcluster.torus import monomial, weyl_monomial


def test_labeled_seed_counts(a2, a3, b2, cycle):
    nodes, closed = enumerate_seeds(a2, 10)
    assert closed and len(nodes) == 10  # 5 clusters x 2! labelings
    nodes, closed = enumerate_seeds(a3, 16)
    assert closed and len(nodes) == 84  # 14 clusters x 3! labelings
    nodes, closed = enumerate_seeds(b2, 12)
    assert closed and len(nodes) == 6  # a single hexagon: labels never swap
    nodes, closed = enumerate_seeds(cycle, 8)
    assert closed and len(nodes) == 4


def test_markov_graph_never_closes(markov):
    for depth, count in ((3, 22), (4, 46)):
        nodes, closed = enumerate_seeds(markov, depth)
        assert not closed
        assert len(nodes) == count  # pure tree growth, no identifications


def test_parent_and_step_are_consistent(a3):
    nodes, _ = enumerate_seeds(a3, 5)
    assert nodes[0].parent == -1 and nodes[0].step_k is None
    assert [n.index for n in nodes] == list(range(len(nodes)))
    for n in nodes[1:]:
        assert nodes[n.parent].path + (n.step_k,) == n.path
        assert len(n.path) <= 5


def test_threaded_enumeration_is_identical(a3):
    n1, c1 = enumerate_seeds(a3, 16, threads=1)
    n2, c2 = enumerate_seeds(a3, 16, threads=2)
    assert c1 == c2 and len(n1) == len(n2)
    for x, y in zip(n1, n2):
        assert x.path == y.path and x.seed == y.seed and x.cg.c == y.cg.c


def test_universally_monomial_examples(cycle):
    assert is_universally_monomial(cycle, (1, 0, 1, 0))
    assert is_universally_monomial(cycle, (0, 0, 0, 0))
    # e_1 pairs to zero with both exchange directions: it stays a single
    # term forever (the term just picks up a negative exponent)
    assert is_universally_monomial(cycle, (0, 1, 0, 0))
    assert not is_universally_monomial(cycle, (1, 0, 0, 0))
    assert not is_universally_monomial(cycle, (0, 1, 1, 0))


def test_frozen_sufficient_examples(cycle):
    assert frozen_sufficient(cycle, (1, 0, 1, 0))
    assert not frozen_sufficient(cycle, (1, 0, 0, 0))  # pairs negatively somewhere
    assert not frozen_sufficient(cycle, (0, 1, 0, 0))  # unfrozen support
    assert not frozen_sufficient(cycle, (-1, 0, -1, 0))  # negative exponent


def test_verdict_statuses(cycle):
    nodes, closed = enumerate_seeds(cycle, 8)
    mono = weyl_monomial(cycle, [0, 2])
    for certify in (gmatrix_criterion, certify_by_transport):
        v = certify(ring_generators(cycle)[0], nodes, closed)
        assert v.status == "universally_polynomial" and v.ok
        v = certify(mono, nodes, closed)
        assert v.status == "universally_monomial" and v.ok
        v = certify(monomial(cycle, (0, 1, 0, 0)), nodes, closed)
        assert v.status == "fails_at" and not v.ok
        assert v.witness_path


def test_failure_witnesses(cycle):
    nodes, closed = enumerate_seeds(cycle, 8)
    v = certify_by_transport(monomial(cycle, (0, 1, 0, 0)), nodes, closed)
    assert v.status == "fails_at"
    assert v.witness_path in ((1,), (3,), (1, 3))


def test_open_enumeration_caps_the_claim(markov):
    nodes, closed = enumerate_seeds(markov, 3)
    assert not closed
    inv = weyl_monomial(markov, [0, 1, 2])
    for certify in (gmatrix_criterion, certify_by_transport):
        v = certify(inv, nodes, closed)
        assert v.status == "up_to_depth" and v.ok and v.depth == 3


def test_lone_frozen_divergence_is_intended(cycle):
    # a lone frozen generator passes the formal weight test but does not
    # survive actual rewriting: the two certificates answer different
    # questions outside the polynomial subalgebra
    nodes, closed = enumerate_seeds(cycle, 8)
    lone = monomial(cycle, (1, 0, 0, 0))
    assert gmatrix_criterion(lone, nodes, closed).ok
    v = certify_by_transport(lone, nodes, closed)
    assert v.status == "fails_at" and v.witness_path


def test_certificates_reject_bad_inputs(cycle, a2):
    nodes, closed = enumerate_seeds(cycle, 8)
    for certify in (gmatrix_criterion, certify_by_transport):
        with pytest.raises(NotAPolynomial):
            certify(monomial(cycle, (0, -1, 0, 0)), nodes, closed)
        with pytest.raises(NotAPolynomial):
            certify(monomial(a2, (1, 0)), nodes, closed)


def test_coefficient_status_is_tracked(cycle):
    nodes, closed = enumerate_seeds(cycle, 8)
    f = weyl_monomial(cycle, [0, 2]).scale(1)  # an odd half-power of q
    v = certify_by_transport(f, nodes, closed)
    assert v.ok and v.coefficient_status == "positive_fractional"
    g = weyl_monomial(cycle, [0, 2]).scale(coeff=-1)
    v = certify_by_transport(g, nodes, closed)
    assert v.coefficient_status == "has_negative"


def test_per_node_diagnostics(cycle):
    nodes, closed = enumerate_seeds(cycle, 8)
    v = certify_by_transport(ring_generators(cycle)[0], nodes, closed)
    assert len(v.per_node) == len(nodes)
    assert v.per_node[0] == {"path": [], "terms": 2, "coefficient_class": "positive_integral"}
    w = gmatrix_criterion(ring_generators(cycle)[0], nodes, closed)
    assert len(w.per_node) == len(nodes)
    assert w.per_node[0]["path"] == [] and w.per_node[0]["monomials"] == 2
