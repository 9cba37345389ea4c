"""Exchange-graph enumeration and polynomiality certificates.

An element of the root torus is *universally polynomial* when its expression
in every mutation-equivalent seed has only nonnegative exponents.  Two
independent certificates are implemented:

  * the weight criterion: apply each node's g_tilde matrix to every exponent
    vector and demand nonnegative results (valid for elements that are
    Laurent in every seed);
  * brute transport: rewrite the element in every node's coordinates and
    inspect the exponents (and coefficient signs) directly.

Both run over the same breadth-first enumeration keyed by the pair
(pairing matrix, c-matrix), which distinguishes relabeled copies of the same
cluster.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cgvectors import CGState, g_tilde, init_state, step
from .errors import NotAPolynomial, NotLaurent
from .seeds import Seed
from .torus import QElement, coefficient_class
from .transport import transport_step

__all__ = [
    "Node",
    "enumerate_seeds",
    "is_universally_monomial",
    "frozen_sufficient",
    "Verdict",
    "gmatrix_criterion",
    "certify_by_transport",
]


@dataclass(frozen=True)
class Node:
    index: int
    seed: Seed
    cg: CGState
    path: tuple[int, ...]
    parent: int
    step_k: int | None


def enumerate_seeds(seed: Seed, max_depth: int, threads: int = 1):
    """BFS over mutations, deduplicated by (form, c-matrix).

    Returns (nodes, closed); closed means the frontier emptied before the
    depth budget, so the node list is the whole exchange graph.  With
    threads > 1 each layer's expansions run on a pool; the merge stays
    sequential in (node, direction) order, so the result is identical.
    """
    root = init_state(seed)
    nodes = [Node(0, seed, root, (), -1, None)]
    seen = {(seed.form_num, root.c): 0}
    frontier = [0]
    depth = 0
    closed = False
    while frontier:
        if depth >= max_depth:
            break
        jobs = [(idx, k) for idx in frontier for k in sorted(nodes[idx].seed.unfrozen)]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                states = list(pool.map(lambda j: step(nodes[j[0]].cg, j[1]), jobs))
        else:
            states = [step(nodes[idx].cg, k) for idx, k in jobs]
        fresh = []
        for (idx, k), st in zip(jobs, states):
            key = (st.seed.form_num, st.c)
            if key not in seen:
                seen[key] = len(nodes)
                nodes.append(
                    Node(len(nodes), st.seed, st, nodes[idx].path + (k,), idx, k)
                )
                fresh.append(nodes[-1].index)
        frontier = fresh
        depth += 1
    else:
        closed = True
    return nodes, closed


def is_universally_monomial(seed: Seed, v) -> bool:
    """True when z^v pairs to zero with every unfrozen basis vector;
    such elements stay one-term in every seed."""
    B = seed.form_num
    return all(
        sum(B[i][j] * v[j] for j in range(seed.rank)) == 0 for i in seed.unfrozen
    )


def frozen_sufficient(seed: Seed, v) -> bool:
    """Nonnegative frozen support with nonnegative pairings against every
    unfrozen basis vector — a one-seed witness of universal polynomiality."""
    for j in range(seed.rank):
        if j in seed.unfrozen:
            if v[j] != 0:
                return False
        elif v[j] < 0:
            return False
    B = seed.form_num
    return all(
        sum(B[i][j] * v[j] for j in range(seed.rank)) >= 0 for i in seed.unfrozen
    )


@dataclass
class Verdict:
    status: str  # universally_polynomial | universally_monomial | up_to_depth | fails_at
    depth: int
    witness_path: tuple[int, ...] | None = None
    witness_monomial: tuple[int, ...] | None = None
    coefficient_status: str | None = None
    per_node: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != "fails_at"


def _max_depth(nodes) -> int:
    return max(len(n.path) for n in nodes)


def gmatrix_criterion(f: QElement, nodes, closed: bool) -> Verdict:
    """Weight-matrix certificate over an enumerated set of nodes."""
    if f.seed != nodes[0].seed:
        raise NotAPolynomial("element does not live over the enumeration root")
    exps = sorted(f.terms)
    for v in exps:
        if any(x < 0 for x in v):
            raise NotAPolynomial(f"exponent {v} is negative at the root")
    depth = _max_depth(nodes)
    per_node = []
    for node in nodes:
        gt = g_tilde(node.cg)
        n = len(gt)
        for v in exps:
            w = [sum(gt[i][j] * v[j] for j in range(n)) for i in range(n)]
            if any(x < 0 for x in w):
                return Verdict(
                    "fails_at",
                    depth,
                    witness_path=node.path,
                    witness_monomial=v,
                    coefficient_status=coefficient_class(f),
                )
        per_node.append({"path": list(node.path), "monomials": len(exps)})
    if not closed:
        status = "up_to_depth"
    elif len(exps) == 1 and is_universally_monomial(f.seed, exps[0]):
        status = "universally_monomial"
    else:
        status = "universally_polynomial"
    return Verdict(status, depth, coefficient_status=coefficient_class(f), per_node=per_node)


def certify_by_transport(f: QElement, nodes, closed: bool) -> Verdict:
    """Transport certificate: rewrite f at every node and inspect exponents.

    Expressions are computed incrementally along the BFS tree (each node from
    its parent), so the work per node is a single mutation step.
    """
    if f.seed != nodes[0].seed:
        raise NotAPolynomial("element does not live over the enumeration root")
    for v in f.terms:
        if any(x < 0 for x in v):
            raise NotAPolynomial(f"exponent {v} is negative at the root")
    depth = _max_depth(nodes)
    exprs: list[QElement | None] = [f]
    per_node = []
    worst = "positive_integral"
    rank_order = {"positive_integral": 0, "positive_fractional": 1, "has_negative": 2}
    all_single = True
    for node in nodes:
        if node.index == 0:
            expr = f
        else:
            parent = exprs[node.parent]
            try:
                expr = transport_step(parent, node.step_k, verify=False)
            except NotLaurent:
                return Verdict(
                    "fails_at",
                    depth,
                    witness_path=node.path,
                    coefficient_status=worst,
                    per_node=per_node,
                )
            exprs.append(expr)
        for v in expr.terms:
            if any(x < 0 for x in v):
                return Verdict(
                    "fails_at",
                    depth,
                    witness_path=node.path,
                    witness_monomial=v,
                    coefficient_status=worst,
                    per_node=per_node,
                )
        cls = coefficient_class(expr)
        if rank_order[cls] > rank_order[worst]:
            worst = cls
        all_single = all_single and expr.term_count() == 1
        per_node.append(
            {
                "path": list(node.path),
                "terms": expr.term_count(),
                "coefficient_class": cls,
            }
        )
    if closed:
        status = "universally_monomial" if all_single else "universally_polynomial"
    else:
        status = "up_to_depth"
    return Verdict(status, depth, coefficient_status=worst, per_node=per_node)
