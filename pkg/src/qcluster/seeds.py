"""Seeds: skew-symmetric forms with multipliers, and their mutations.

A seed is a finite index set {0, .., rank-1} split into unfrozen and frozen
indices, a positive rational multiplier d_i per index, and a skew-symmetric
rational form on the lattice Z^rank.  The form is stored exactly as an integer
numerator matrix over a fixed common denominator, so mutation is integer
arithmetic and never loses precision.

The pairing eps_ij = d_i * b_ij is required to be an integer whenever i or j
is unfrozen; that is what makes mutation and the quantum binomial factors
well defined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import FrozenMutation

__all__ = [
    "Seed",
    "make_seed",
    "seed_from_eps",
    "mutate_seed",
    "mutate_path",
    "principal_extension",
    "transpose_seed",
    "quiver_edges",
]

Matrix = tuple[tuple[int, ...], ...]


def _pos(x):
    """Positive part [x]_+ = max(x, 0); works for ints and Fractions."""
    return x if x > 0 else 0


@dataclass(frozen=True)
class Seed:
    """Immutable seed.

    Fields
    ------
    rank : int
        Size of the index set.
    unfrozen : frozenset[int]
        Indices where mutation is allowed.
    d : tuple[Fraction, ...]
        Positive multipliers (rational; folding produces non-integers).
    form_num : tuple[tuple[int, ...], ...]
        Numerators of the form: {e_i, e_j} = form_num[i][j] / form_den.
    form_den : int
        Common denominator, fixed along mutation paths (never reduced).
    q_den : int
        Denominator D of the q-exponent lattice: coefficients live in
        Z[q^(1/D), q^(-1/D)].  Divisible by form_den and by every 1/d_i
        denominator, so all twists and binomial exponents are integral in
        units of 1/D.  Fixed at creation, preserved by mutation.
    label : str | None
        Optional display name; ignored by equality.
    """

    rank: int
    unfrozen: frozenset[int]
    d: tuple[Fraction, ...]
    form_num: Matrix
    form_den: int
    q_den: int = field(default=0, compare=False)
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.rank
        if n < 1:
            raise ValueError("rank must be >= 1")
        if len(self.d) != n or len(self.form_num) != n:
            raise ValueError("d / form size does not match rank")
        if not all(0 <= i < n for i in self.unfrozen):
            raise ValueError("unfrozen indices out of range")
        if self.form_den < 1:
            raise ValueError("form_den must be positive")
        for di in self.d:
            if di <= 0:
                raise ValueError("multipliers d_i must be positive")
        B = self.form_num
        for i in range(n):
            if len(B[i]) != n:
                raise ValueError("form matrix is not square")
            for j in range(n):
                if B[i][j] != -B[j][i]:
                    raise ValueError("form numerator matrix is not skew-symmetric")
        # integrality of eps on pairs touching an unfrozen index
        for i in range(n):
            for j in range(n):
                if i in self.unfrozen or j in self.unfrozen:
                    e = self.d[i] * B[i][j]
                    if e % self.form_den != 0:
                        raise ValueError(
                            f"eps[{i}][{j}] = {self.d[i]}*{B[i][j]}/{self.form_den}"
                            " is not an integer"
                        )
        if self.q_den == 0:
            object.__setattr__(self, "q_den", default_q_den(self.d, self.form_den))
        if self.q_den % self.form_den != 0:
            raise ValueError("q_den must be a multiple of form_den")
        for di in self.d:
            if self.q_den % di.numerator != 0:
                raise ValueError("q_den must absorb every 1/d_i denominator")

    # -- form access -----------------------------------------------------

    def b(self, i: int, j: int) -> Fraction:
        """{e_i, e_j} as an exact rational."""
        return Fraction(self.form_num[i][j], self.form_den)

    def eps(self, i: int, j: int) -> Fraction:
        """d_i * {e_i, e_j}; integral whenever i or j is unfrozen."""
        return self.d[i] * self.form_num[i][j] / Fraction(self.form_den)

    def eps_int(self, i: int, j: int) -> int:
        e = self.d[i] * self.form_num[i][j]
        q, r = divmod(e, self.form_den)
        assert r == 0, f"eps[{i}][{j}] not integral"
        return int(q)

    def eps_row_int(self, k: int) -> tuple[int, ...]:
        """Integer row (eps_k0, .., eps_k,rank-1); k must be unfrozen."""
        return tuple(self.eps_int(k, j) for j in range(self.rank))

    def pairing_num(self, n1, n2) -> int:
        """form_den * {n1, n2} = n1 . form_num . n2 (always an integer)."""
        B = self.form_num
        tot = 0
        for i, a in enumerate(n1):
            if a:
                row = B[i]
                tot += a * sum(row[j] * c for j, c in enumerate(n2) if c)
        return tot

    # -- q bookkeeping (exponents in units of 1/q_den) -------------------

    def twist_units(self, n1, n2) -> int:
        """Exponent of the reordering twist z^n1 z^n2 = q^twist z^(n1+n2)."""
        return -self.pairing_num(n1, n2) * (self.q_den // self.form_den)

    def q_units(self, k: int) -> int:
        """Exponent units of q_k = q^(1/d_k)."""
        dk = self.d[k]
        u, r = divmod(self.q_den * dk.denominator, dk.numerator)
        assert r == 0
        return u

    def same_torus(self, other: "Seed") -> bool:
        return self == other and self.q_den == other.q_den

    def __repr__(self):
        name = self.label or f"seed(rank={self.rank})"
        return f"<{name} unfrozen={sorted(self.unfrozen)}>"


def default_q_den(d, form_den: int) -> int:
    """Default q-exponent denominator: 2 * form_den * lcm of d numerators."""
    return 2 * form_den * lcm(*(di.numerator for di in d))


def make_seed(b, d=1, unfrozen=None, label=None, q_den=0) -> Seed:
    """Build a seed from a rational form matrix.

    b may contain ints or Fractions; d is a scalar or a sequence; unfrozen
    defaults to every index.
    """
    n = len(b)
    rows = [[Fraction(x) for x in row] for row in b]
    den = lcm(*(x.denominator for row in rows for x in row)) if n else 1
    form_num = tuple(tuple(int(x * den) for x in row) for row in rows)
    if isinstance(d, (int, Fraction)):
        dd = tuple(Fraction(d) for _ in range(n))
    else:
        dd = tuple(Fraction(x) for x in d)
    uf = frozenset(range(n)) if unfrozen is None else frozenset(unfrozen)
    return Seed(n, uf, dd, form_num, den, q_den=q_den, label=label)


def seed_from_eps(eps, d, unfrozen=None, label=None, q_den=0) -> Seed:
    """Build a seed from the integer pairing matrix: b_ij = eps_ij / d_i."""
    dd = [Fraction(x) for x in d]
    b = [[Fraction(e, 1) / dd[i] for e in row] for i, row in enumerate(eps)]
    return make_seed(b, dd, unfrozen, label=label, q_den=q_den)


def check_mutable(seed: Seed, k: int):
    if not (0 <= k < seed.rank):
        raise FrozenMutation(f"index {k} out of range for rank {seed.rank}")
    if k not in seed.unfrozen:
        raise FrozenMutation(f"index {k} is frozen")


def mutate_seed(seed: Seed, k: int) -> Seed:
    """One seed mutation at the unfrozen index k (an exact involution).

    The basis change is e_i -> e_i + [eps_ki]_+ e_k (i != k), e_k -> -e_k,
    so the form numerators update by integer arithmetic and form_den is
    untouched.
    """
    check_mutable(seed, k)
    n = seed.rank
    B = seed.form_num
    ek = seed.eps_row_int(k)
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        if i == k:
            continue
        Bik = B[i][k]
        eki = _pos(ek[i])
        row = B[i]
        out = new[i]
        for j in range(n):
            if j == k:
                out[j] = -Bik
            else:
                out[j] = row[j] + _pos(ek[j]) * Bik + eki * B[k][j]
    for j in range(n):
        if j != k:
            new[k][j] = -B[k][j]
    return Seed(
        n,
        seed.unfrozen,
        seed.d,
        tuple(tuple(r) for r in new),
        seed.form_den,
        q_den=seed.q_den,
    )


def mutate_path(seed: Seed, path) -> Seed:
    for k in path:
        seed = mutate_seed(seed, k)
    return seed


def principal_extension(seed: Seed) -> Seed:
    """Doubled seed with one frozen partner i' = rank + i per index.

    The added block pairs {e_i', e_j} = delta_ij / d_i, so the pairing of a
    partner with its twin is exactly 1 and the partner block starts as the
    identity; mutating only original indices then tracks the c-matrix in the
    partner block.
    """
    n = seed.rank
    L = lcm(seed.form_den, *(di.numerator for di in seed.d))
    s = L // seed.form_den
    big = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            big[i][j] = seed.form_num[i][j] * s
    for i in range(n):
        inv = L * seed.d[i].denominator
        q, r = divmod(inv, seed.d[i].numerator)
        assert r == 0
        big[i][n + i] = -q
        big[n + i][i] = q
    return Seed(
        2 * n,
        seed.unfrozen,
        seed.d + seed.d,
        tuple(tuple(r) for r in big),
        L,
        label=(f"{seed.label}+principal" if seed.label else None),
    )


def transpose_seed(seed: Seed) -> Seed:
    """Seed whose pairing matrix is the transpose of this one's.

    Realized by d_i -> 1/d_i and b_ij -> -d_i d_j b_ij, which is again
    skew-symmetric, satisfies the integrality requirement, and is an exact
    involution.  For d = 1 this is plain form transposition.
    """
    n = seed.rank
    dT = tuple(1 / di for di in seed.d)
    b = [
        [-seed.d[i] * seed.d[j] * seed.b(i, j) for j in range(n)]
        for i in range(n)
    ]
    den = lcm(*(x.denominator for row in b for x in row))
    form_num = tuple(tuple(int(x * den) for x in row) for row in b)
    return Seed(
        n,
        seed.unfrozen,
        dT,
        form_num,
        den,
        label=(f"{seed.label}^T" if seed.label else None),
    )


def quiver_edges(seed: Seed) -> list[tuple[int, int, Fraction]]:
    """Arrows i -> j where {e_i, e_j} > 0, weighted by eps_ij."""
    out = []
    for i in range(seed.rank):
        for j in range(seed.rank):
            if seed.form_num[i][j] > 0:
                out.append((i, j, seed.eps(i, j)))
    return out
