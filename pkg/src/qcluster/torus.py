"""Quantum torus arithmetic over a seed.

Elements are finite sums  sum_n  c_n(q) * z^n  where n runs over exponent
vectors in Z^rank and each coefficient c_n is a Laurent polynomial in q^(1/D)
with integer coefficients (D = seed.q_den).  Everything is exact: coefficients
are dicts  {q-exponent-in-units-of-1/D: int}.

Multiplication uses the Weyl normalization
    z^n1 * z^n2 = q^(-{n1,n2}) * z^(n1+n2),
so z^n is fixed by the anti-involution transposing products and inverting q.
"""

from __future__ import annotations

import os

from .errors import NotDivisible, SeedMismatch, TermLimitExceeded
from .seeds import Seed

__all__ = [
    "QElement",
    "zero",
    "one",
    "monomial",
    "generator",
    "weyl_monomial",
    "q_scalar",
    "binomial",
    "coefficient_class",
    "specialize_q1",
]

Exp = tuple[int, ...]
QCoeff = dict[int, int]


def max_terms() -> int:
    return int(os.environ.get("QCLUSTER_MAX_TERMS", 10**7))


def _guard(n_terms: int):
    if n_terms > max_terms():
        raise TermLimitExceeded(f"{n_terms} terms exceeds QCLUSTER_MAX_TERMS")


class QElement:
    """Immutable-by-convention torus element; all operations return new ones."""

    __slots__ = ("seed", "terms")

    def __init__(self, seed: Seed, terms: dict[Exp, QCoeff]):
        self.seed = seed
        self.terms = terms

    # -- basics ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, QElement):
            return NotImplemented
        return self.seed.same_torus(other.seed) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("QElement is not hashable")

    def _check_mate(self, other: "QElement"):
        if not self.seed.same_torus(other.seed):
            raise SeedMismatch("elements live over different seeds")

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "QElement") -> "QElement":
        self._check_mate(other)
        out = {n: dict(c) for n, c in self.terms.items()}
        for n, c in other.terms.items():
            if n in out:
                tgt = out[n]
                for u, a in c.items():
                    b = tgt.get(u, 0) + a
                    if b:
                        tgt[u] = b
                    else:
                        tgt.pop(u, None)
                if not tgt:
                    del out[n]
            else:
                out[n] = dict(c)
        _guard(len(out))
        return QElement(self.seed, out)

    def __neg__(self) -> "QElement":
        return QElement(
            self.seed, {n: {u: -a for u, a in c.items()} for n, c in self.terms.items()}
        )

    def __sub__(self, other: "QElement") -> "QElement":
        return self + (-other)

    def scale(self, q_units: int = 0, coeff: int = 1) -> "QElement":
        """Multiply by the central scalar coeff * q^(q_units/D)."""
        if coeff == 0:
            return QElement(self.seed, {})
        return QElement(
            self.seed,
            {
                n: {u + q_units: coeff * a for u, a in c.items()}
                for n, c in self.terms.items()
            },
        )

    # -- multiplication ---------------------------------------------------

    def __mul__(self, other: "QElement") -> "QElement":
        self._check_mate(other)
        seed = self.seed
        B = seed.form_num
        s = seed.q_den // seed.form_den
        rank = seed.rank
        out: dict[Exp, QCoeff] = {}
        for n2, c2 in other.terms.items():
            col = [sum(B[i][j] * n2[j] for j in range(rank) if n2[j]) for i in range(rank)]
            for n1, c1 in self.terms.items():
                tw = -s * sum(n1[i] * col[i] for i in range(rank) if n1[i])
                n = tuple(a + b for a, b in zip(n1, n2))
                tgt = out.setdefault(n, {})
                for u1, a1 in c1.items():
                    for u2, a2 in c2.items():
                        u = u1 + u2 + tw
                        b = tgt.get(u, 0) + a1 * a2
                        if b:
                            tgt[u] = b
                        else:
                            del tgt[u]
                if not tgt:
                    del out[n]
        _guard(len(out))
        return QElement(seed, out)

    def __pow__(self, m: int) -> "QElement":
        if m < 0:
            return self.monomial_inverse() ** (-m)
        acc = one(self.seed)
        for _ in range(m):
            acc = acc * self
        return acc

    def monomial_inverse(self) -> "QElement":
        """Inverse of a one-term element with a unit coefficient."""
        if len(self.terms) != 1:
            raise NotDivisible("only single-term elements can be inverted")
        (n, c), = self.terms.items()
        if len(c) != 1:
            raise NotDivisible("coefficient is not a single q-power")
        (u, a), = c.items()
        if a not in (1, -1):
            raise NotDivisible("coefficient is not a unit")
        inv = tuple(-x for x in n)
        return QElement(self.seed, {inv: {-u: a}})

    # -- display ----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "QElement(0)"
        bits = []
        for n in sorted(self.terms):
            c = self.terms[n]
            cs = "+".join(f"{a}q^{u}" for u, a in sorted(c.items()))
            bits.append(f"({cs})z^{list(n)}")
        return "QElement(" + " + ".join(bits) + ")"


# -- constructors ----------------------------------------------------------


def zero(seed: Seed) -> QElement:
    return QElement(seed, {})


def one(seed: Seed) -> QElement:
    return QElement(seed, {(0,) * seed.rank: {0: 1}})


def monomial(seed: Seed, exp, coeff: int = 1, q_units: int = 0) -> QElement:
    if coeff == 0:
        return zero(seed)
    exp = tuple(int(x) for x in exp)
    if len(exp) != seed.rank:
        raise SeedMismatch("exponent length does not match seed rank")
    return QElement(seed, {exp: {q_units: coeff}})


def generator(seed: Seed, i: int, power: int = 1) -> QElement:
    """The torus generator X_i = z^{e_i} (or a power of it)."""
    exp = tuple(power if j == i else 0 for j in range(seed.rank))
    return monomial(seed, exp)


def weyl_monomial(seed: Seed, indices) -> QElement:
    """X_{i1,..,ik} = z^(e_i1 + .. + e_ik): the symmetrized product."""
    exp = [0] * seed.rank
    for i in indices:
        exp[i] += 1
    return monomial(seed, tuple(exp))


def q_scalar(seed: Seed, q_units: int, coeff: int = 1) -> QElement:
    return monomial(seed, (0,) * seed.rank, coeff=coeff, q_units=q_units)


def binomial(seed: Seed, v, q_units: int) -> QElement:
    """1 + q^(q_units/D) * z^v."""
    return one(seed) + monomial(seed, v, q_units=q_units)


def prod(factors, start: QElement) -> QElement:
    acc = start
    for f in factors:
        acc = acc * f
    return acc


# -- exact division ---------------------------------------------------------


def exact_div_binomial(f: QElement, v, q_units: int) -> QElement:
    """Solve g * (1 + q^(q_units/D) z^v) = f exactly, else raise NotDivisible.

    Grades exponents along the first coordinate where v is nonzero; the
    lowest-grade slice of the remainder must belong to g verbatim, so the
    quotient is peeled off slice by slice.
    """
    seed = f.seed
    v = tuple(int(x) for x in v)
    j = next((i for i, x in enumerate(v) if x), None)
    if j is None:
        raise ValueError("binomial direction must be a nonzero vector")
    sgn = 1 if v[j] > 0 else -1
    if not f.terms:
        return zero(seed)
    top = max(sgn * n[j] for n in f.terms)
    rem = {n: dict(c) for n, c in f.terms.items()}
    g: dict[Exp, QCoeff] = {}
    while rem:
        lo = min(sgn * n[j] for n in rem)
        if lo > top:
            raise NotDivisible("remainder escapes the grade range of the dividend")
        layer = [n for n in rem if sgn * n[j] == lo]
        for n in layer:
            c = rem.pop(n)
            g[n] = c
            shifted = tuple(a + b for a, b in zip(n, v))
            tw = q_units + seed.twist_units(n, v)
            tgt = rem.setdefault(shifted, {})
            for u, a in c.items():
                b = tgt.get(u + tw, 0) - a
                if b:
                    tgt[u + tw] = b
                else:
                    tgt.pop(u + tw, None)
            if not tgt:
                del rem[shifted]
        _guard(len(g) + len(rem))
    return QElement(seed, g)


# -- coefficient inspection --------------------------------------------------


def coefficient_class(f: QElement) -> str:
    """'positive_integral' | 'positive_fractional' | 'has_negative'.

    Integral means every q-exponent is a multiple of D, i.e. the coefficients
    lie in Z[q, q^-1]; zero counts as positive_integral.
    """
    D = f.seed.q_den
    fractional = False
    for c in f.terms.values():
        for u, a in c.items():
            if a < 0:
                return "has_negative"
            if u % D != 0:
                fractional = True
    return "positive_fractional" if fractional else "positive_integral"


def specialize_q1(f: QElement) -> dict[Exp, int]:
    """Set q = 1: collapse each coefficient to the sum of its integers."""
    out = {}
    for n, c in f.terms.items():
        s = sum(c.values())
        if s:
            out[n] = s
    return out
