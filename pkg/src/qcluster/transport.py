"""Moving torus elements between mutation-equivalent seeds.

The mutation at k acts on torus elements by conjugation with the quantum
dilogarithm of X_k composed with the basis change; on a single monomial with
exponent m (written in the mutated seed's basis) this collapses to an exact
closed form.  Let eps be the pairing of the seed the result lives in, let

    c   = sum_{i != k} m_i * eps_ki
    v_i = m_i (i != k),   v_k = -m_k + sum_{i != k} [eps_ki]_+ m_i

then the pulled-back monomial is, with no residual power of q,

    c <= 0 :  z^v * prod_{r=1..|c|} (1 + q_k^{2r-1} z^{e_k})
    c >= 0 :  z^(v - c e_k) * prod_{r=1..c} (1 + q_k^{2r-1} z^{-e_k})^{-1}.

Sums of monomials are handled over the common denominator
prod_{r=1..C}(1 + q_k^{2r-1} z^{-e_k}) with C = max(0, max_m c_m); those
binomials commute with one another, so the quotient (when it exists in the
torus) is obtained by C exact divisions.  When the division fails the element
is not a Laurent element of the target seed and NotLaurent is raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateExchange,
    NotDivisible,
    NotLaurent,
    NotSubtractionFree,
    SeedMismatch,
)
from .seeds import Seed, mutate_seed
from .torus import QElement, _guard, binomial, exact_div_binomial, monomial, one, zero

__all__ = [
    "pullback_element",
    "pullback_generator",
    "pullback_raw",
    "transport",
    "transport_step",
    "TrackedElement",
    "tropicalize",
    "Ratio",
    "ratio_step",
    "ratio_tropicalize",
    "classical_pullback",
    "classical_transport",
    "principal_weight",
]


def _unit(rank: int, k: int, sign: int = 1) -> tuple[int, ...]:
    return tuple(sign if i == k else 0 for i in range(rank))


def _monomial_data(eps_k, k: int, m):
    c = 0
    vk = 0
    for i, mi in enumerate(m):
        if i == k or not mi:
            continue
        e = eps_k[i]
        c += mi * e
        if e > 0:
            vk += mi * e
    v = list(m)
    v[k] = -m[k] + vk
    return v, c


def pullback_raw(seed: Seed, k: int, f: QElement) -> tuple[QElement, int]:
    """Numerator form of the pullback: returns (F, c) with value F * P_c^-1,

    where P_c = prod_{r=1..c} (1 + q_k^{2r-1} z^{-e_k}) over `seed`.
    No division is attempted, so this is total on all inputs.

    The binomial chains are shared: pieces needing r factors reuse the
    cumulative products, so the work per input term is one multiplication.
    """
    target = mutate_seed(seed, k)
    if not f.seed.same_torus(target):
        raise SeedMismatch("element does not live over the mutated seed")
    rank = seed.rank
    eps_k = seed.eps_row_int(k)
    uk = seed.q_units(k)
    ek = _unit(rank, k)
    mek = _unit(rank, k, -1)
    datas = []
    cmax = 0
    cmin = 0
    for m, coeff in f.terms.items():
        v, c = _monomial_data(eps_k, k, m)
        datas.append((v, c, coeff))
        if c > cmax:
            cmax = c
        if c < cmin:
            cmin = c
    # up[j] = prod_{r=1..j} (1 + q^(2r-1) z^{e_k});
    # down[c] = prod_{r=c+1..cmax} (1 + q^(2r-1) z^{-e_k}).  All factors lie
    # on one lattice line, so they commute and the products can be chained.
    up = [one(seed)]
    for r in range(1, -cmin + 1):
        up.append(up[-1] * binomial(seed, ek, (2 * r - 1) * uk))
    down = [one(seed)] * (cmax + 1)
    for c in range(cmax - 1, -1, -1):
        down[c] = down[c + 1] * binomial(seed, mek, (2 * c + 1) * uk)
    acc: dict = {}
    for v, c, coeff in datas:
        if c > 0:
            v = v.copy()
            v[k] -= c
        piece = QElement(seed, {tuple(v): dict(coeff)})
        if c < 0:
            piece = piece * up[-c]
        if c < cmax:
            piece = piece * down[max(c, 0)]
        for n, cf in piece.terms.items():
            slot = acc.get(n)
            if slot is None:
                acc[n] = cf
            else:
                for u, a in cf.items():
                    b = slot.get(u, 0) + a
                    if b:
                        slot[u] = b
                    else:
                        del slot[u]
                if not slot:
                    del acc[n]
        _guard(len(acc))
    return QElement(seed, acc), cmax


def pullback_element(seed: Seed, k: int, f: QElement) -> QElement:
    """Exact pullback of f (over mutate_seed(seed, k)) into seed's torus."""
    total, cmax = pullback_raw(seed, k, f)
    uk = seed.q_units(k)
    mek = _unit(seed.rank, k, -1)
    for r in range(1, cmax + 1):
        try:
            total = exact_div_binomial(total, mek, (2 * r - 1) * uk)
        except NotDivisible as exc:
            raise NotLaurent(
                f"pullback at index {k} does not close in the torus"
            ) from exc
    return total


def pullback_generator(seed: Seed, k: int, i: int):
    """Image of the mutated seed's generator X_i, as (numerator, inverse factors).

    The value is numerator * f1^-1 * f2^-1 * ... with the factors commuting
    binomials in z^{-e_k}; the factor list is empty exactly when the image is
    Laurent (eps_ki <= 0 or i == k).
    """
    rank = seed.rank
    uk = seed.q_units(k)
    if i == k:
        return monomial(seed, _unit(rank, k, -1)), []
    e = seed.eps_int(k, i)
    if e <= 0:
        out = monomial(seed, _unit(rank, i))
        for r in range(1, -e + 1):
            out = out * binomial(seed, _unit(rank, k), (2 * r - 1) * uk)
        return out, []
    factors = [binomial(seed, _unit(rank, k, -1), (2 * r - 1) * uk) for r in range(1, e + 1)]
    return monomial(seed, _unit(rank, i)), factors


def transport_step(f: QElement, k: int, verify: bool = True) -> QElement:
    """Rewrite f in the coordinates of mutate_seed(f.seed, k)."""
    target = mutate_seed(f.seed, k)
    out = pullback_element(target, k, f)
    if verify:
        back = pullback_element(f.seed, k, out)
        assert back == f, "transport round-trip failed"
    return out


def transport(f: QElement, path, verify: bool = True) -> QElement:
    """Rewrite f in the seed at the end of a mutation path."""
    done = []
    for k in path:
        try:
            f = transport_step(f, k, verify=verify)
        except NotLaurent as exc:
            raise NotLaurent(str(exc), path=tuple(done) + (k,)) from None
        done.append(k)
    return f


class TrackedElement:
    """An element carried along an evolving mutation path.

    Keeps one expression snapshot per visited seed so steps can be undone
    exactly.  Once a step fails to be Laurent the element stays in the failed
    state (with the witness path) until enough steps are retracted.
    """

    def __init__(self, expr: QElement):
        self.snapshots: list[QElement | None] = [expr]
        self.path: tuple[int, ...] = ()
        self.failed_at: tuple[int, ...] | None = None

    @property
    def current(self) -> QElement | None:
        return self.snapshots[-1]

    def extend(self, k: int):
        cur = self.snapshots[-1]
        self.path = self.path + (k,)
        if cur is None:
            self.snapshots.append(None)
            return
        try:
            self.snapshots.append(transport_step(cur, k, verify=False))
        except NotLaurent:
            self.snapshots.append(None)
            if self.failed_at is None:
                self.failed_at = self.path

    def retract(self):
        if len(self.snapshots) == 1:
            raise IndexError("nothing to retract")
        self.snapshots.pop()
        self.path = self.path[:-1]
        if self.failed_at is not None and len(self.failed_at) > len(self.path):
            self.failed_at = None


# -- tropicalization ---------------------------------------------------------


def tropicalize(f: QElement, i: int) -> int:
    """Evaluate the i-th basic tropical point: min of exponent coordinate i.

    Only defined for nonzero subtraction-free elements (all coefficient
    integers positive after dropping q powers).
    """
    if not f.terms:
        raise NotSubtractionFree("tropicalization of zero is undefined")
    for c in f.terms.values():
        if any(a < 0 for a in c.values()):
            raise NotSubtractionFree("element has negative coefficients")
    return min(n[i] for n in f.terms)


@dataclass
class Ratio:
    """A noncommutative fraction num * den^-1 over a single seed.

    Cluster generators pulled back across mutations are generally not Laurent,
    but both sides of the fraction stay subtraction-free, which is all the
    tropical evaluations need.
    """

    num: QElement
    den: QElement

    @staticmethod
    def of(f: QElement) -> "Ratio":
        return Ratio(f, one(f.seed))


def ratio_step(seed: Seed, k: int, ratio: Ratio) -> Ratio:
    """Pull a ratio over mutate_seed(seed, k) back into seed's torus."""
    fn, cn = pullback_raw(seed, k, ratio.num)
    fd, cd = pullback_raw(seed, k, ratio.den)
    uk = seed.q_units(k)
    mek = _unit(seed.rank, k, -1)
    if cd >= cn:
        for r in range(cn + 1, cd + 1):
            fn = fn * binomial(seed, mek, (2 * r - 1) * uk)
    else:
        for r in range(cd + 1, cn + 1):
            fd = fd * binomial(seed, mek, (2 * r - 1) * uk)
    return Ratio(fn, fd)


def ratio_tropicalize(ratio: Ratio, i: int) -> int:
    return tropicalize(ratio.num, i) - tropicalize(ratio.den, i)


# -- classical (q = 1) dual-side arithmetic ----------------------------------
#
# The dual cluster variables are tracked commutatively: a polynomial is a
# dict {exponent tuple: int}.  Mutation of a monomial with exponent m (in the
# mutated seed's dual basis) is
#
#     u_j = m_j + m_k [-eps_jk]_+ (j != k),  u_k = -m_k,
#     result = z^u * (1 + z^(col_k))^{m_k},
#
# where col_k is the k-th pairing column of the unmutated seed read as a dual
# exponent vector.  Negative m_k means exact division by the binomial.


def _cmul(p1: dict, p2: dict) -> dict:
    out: dict = {}
    for n1, c1 in p1.items():
        for n2, c2 in p2.items():
            n = tuple(a + b for a, b in zip(n1, n2))
            s = out.get(n, 0) + c1 * c2
            if s:
                out[n] = s
            else:
                del out[n]
    return out


def _cdiv_binomial(p: dict, v: tuple) -> dict:
    j = next((i for i, x in enumerate(v) if x), None)
    assert j is not None
    sgn = 1 if v[j] > 0 else -1
    if not p:
        return {}
    top = max(sgn * n[j] for n in p)
    rem = dict(p)
    g: dict = {}
    while rem:
        lo = min(sgn * n[j] for n in rem)
        if lo > top:
            raise NotDivisible("classical binomial division left a remainder")
        for n in [n for n in rem if sgn * n[j] == lo]:
            c = rem.pop(n)
            g[n] = c
            shifted = tuple(a + b for a, b in zip(n, v))
            s = rem.get(shifted, 0) - c
            if s:
                rem[shifted] = s
            else:
                rem.pop(shifted, None)
    return g


def classical_pullback(seed: Seed, k: int, poly: dict) -> dict:
    """Pull a dual-side polynomial over mutate_seed(seed, k) back to seed.

    Division by the exchange binomial is exact only for the element as a
    whole, never term by term, so all terms are brought to a common
    denominator first.
    """
    rank = seed.rank
    col = tuple(seed.eps_int(j, k) for j in range(rank))
    if not any(col) and any(m[k] for m in poly):
        raise DegenerateExchange(f"exchange column at {k} vanishes")
    need = max(0, -min((m[k] for m in poly), default=0))
    out: dict = {}
    for m, coeff in poly.items():
        mk = m[k]
        u = [m[j] + mk * max(-col[j], 0) for j in range(rank)]
        u[k] = -mk
        piece = {tuple(u): coeff}
        for _ in range(mk + need):
            piece = _cmul(piece, {(0,) * rank: 1, col: 1})
        for n, c in piece.items():
            s = out.get(n, 0) + c
            if s:
                out[n] = s
            else:
                del out[n]
    for _ in range(need):
        out = _cdiv_binomial(out, col)
    return out


def classical_transport(seed: Seed, path, j: int) -> dict:
    """Express the dual generator A_j of the path-end seed at the root seed."""
    seeds = [seed]
    for k in path:
        seeds.append(mutate_seed(seeds[-1], k))
    poly = {_unit(seeds[-1].rank, j): 1}
    for k, s in zip(reversed(path), reversed(seeds[:-1])):
        poly = classical_pullback(s, k, poly)
    return poly


def principal_weight(base: Seed, exp) -> tuple[Fraction, ...]:
    """Torus weight of a principal-seed dual monomial (a | b):

    w_i = a_i - sum_l eps_il(root) * b_l.  For an eigen element every
    monomial shares the same weight.
    """
    n = base.rank
    a, b = exp[:n], exp[n:]
    return tuple(
        Fraction(a[i]) - sum(base.eps(i, l) * b[l] for l in range(n)) for i in range(n)
    )
