"""Integer c- and g-vector tracking along mutation paths.

The state carries, besides the current seed, the c-matrix (pairings of the
first-copy basis with the added frozen basis of the principal extension) and
the g-matrix (dual-basis weights), both updated by integer recurrences; and
the same data for the transposed seed, updated in lockstep along the same
path.  The transposed g-matrix is what the polynomiality criterion needs:
its transpose is the "weight matrix" g_tilde applied to exponent vectors.

Two published forms of the g-column update (differing by which signs are
clipped) are both evaluated at every step and asserted equal; likewise the
transposed seed is asserted to stay the literal transpose of the current
seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .seeds import Seed, mutate_seed, transpose_seed

__all__ = [
    "CGState",
    "init_state",
    "step",
    "cg_along_path",
    "g_tilde",
    "c_matrix_via_principal",
    "check_sign_coherence",
    "det_fraction",
]

Matrix = tuple[tuple[int, ...], ...]


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _pos(x):
    return x if x > 0 else 0


@dataclass(frozen=True)
class CGState:
    seed: Seed
    seed_t: Seed
    root_eps: tuple[tuple[Fraction, ...], ...]
    root_eps_t: tuple[tuple[Fraction, ...], ...]
    c: Matrix
    g: Matrix
    c_t: Matrix
    g_t: Matrix
    path: tuple[int, ...]


def _eps_matrix(seed: Seed):
    n = seed.rank
    return tuple(tuple(seed.eps(i, j) for j in range(n)) for i in range(n))


def init_state(seed: Seed) -> CGState:
    n = seed.rank
    st = transpose_seed(seed)
    return CGState(
        seed=seed,
        seed_t=st,
        root_eps=_eps_matrix(seed),
        root_eps_t=_eps_matrix(st),
        c=_identity(n),
        g=_identity(n),
        c_t=_identity(n),
        g_t=_identity(n),
        path=(),
    )


def _step_matrices(seed: Seed, root_eps, c: Matrix, g: Matrix, k: int):
    n = seed.rank
    eps_k = seed.eps_row_int(k)  # row k of the current pairing
    eps_col_k = [seed.eps_int(l, k) for l in range(n)]  # column k
    new_c = []
    for i in range(n):
        row = c[i]
        cik = row[k]
        out = []
        for j in range(n):
            if j == k:
                out.append(-cik)
            else:
                out.append(row[j] + cik * _pos(eps_k[j]) + _pos(-cik) * eps_k[j])
        new_c.append(tuple(out))
    new_g = []
    for i in range(n):
        row = g[i]
        base = -row[k] + sum(row[l] * _pos(eps_col_k[l]) for l in range(n))
        corr = sum(root_eps[i][l] * _pos(c[l][k]) for l in range(n))
        val = Fraction(base) - corr
        # same update with the clipped signs flipped on both correction sums
        alt = (
            -row[k]
            + sum(row[l] * _pos(-eps_col_k[l]) for l in range(n))
            - sum(root_eps[i][l] * _pos(-c[l][k]) for l in range(n))
        )
        assert val == alt, "the two g-column updates disagree"
        assert val.denominator == 1, "g-entry escaped the integers"
        out = list(row)
        out[k] = int(val)
        new_g.append(tuple(out))
    return tuple(new_c), tuple(new_g)


def step(state: CGState, k: int) -> CGState:
    new_c, new_g = _step_matrices(state.seed, state.root_eps, state.c, state.g, k)
    new_ct, new_gt = _step_matrices(state.seed_t, state.root_eps_t, state.c_t, state.g_t, k)
    seed = mutate_seed(state.seed, k)
    seed_t = mutate_seed(state.seed_t, k)
    assert seed_t == transpose_seed(seed), "transposition stopped commuting with mutation"
    return CGState(
        seed=seed,
        seed_t=seed_t,
        root_eps=state.root_eps,
        root_eps_t=state.root_eps_t,
        c=new_c,
        g=new_g,
        c_t=new_ct,
        g_t=new_gt,
        path=state.path + (k,),
    )


def cg_along_path(seed: Seed, path) -> CGState:
    st = init_state(seed)
    for k in path:
        st = step(st, k)
    return st


def g_tilde(state: CGState) -> Matrix:
    """Weight matrix for exponent vectors: the transposed seed's g, transposed."""
    n = len(state.g_t)
    return tuple(tuple(state.g_t[j][i] for j in range(n)) for i in range(n))


def c_matrix_via_principal(seed: Seed, path) -> Matrix:
    """Independent c-matrix: mutate the principal extension, read the added block."""
    from .seeds import principal_extension

    n = seed.rank
    big = principal_extension(seed)
    for k in path:
        big = mutate_seed(big, k)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = big.d[n + i] * big.form_num[n + i][j]
            q, r = divmod(e, big.form_den)
            assert r == 0, "principal block pairing escaped the integers"
            row.append(int(q))
        out.append(tuple(row))
    return tuple(out)


def check_sign_coherence(state: CGState) -> dict:
    """Columns of c and rows of g must each have a single sign; det c = +-1."""
    n = len(state.c)
    violations = []
    for j in range(n):
        col = [state.c[i][j] for i in range(n)]
        if any(x > 0 for x in col) and any(x < 0 for x in col):
            violations.append({"kind": "c_column", "index": j, "vector": col})
    for i in range(n):
        row = list(state.g[i])
        if any(x > 0 for x in row) and any(x < 0 for x in row):
            violations.append({"kind": "g_row", "index": i, "vector": row})
    det = det_fraction(state.c)
    if det not in (1, -1):
        violations.append({"kind": "det_c", "value": str(det)})
    return {
        "path": list(state.path),
        "ok": not violations,
        "det_c": int(det) if det.denominator == 1 else str(det),
        "violations": violations,
    }


def det_fraction(m) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                for cc in range(col, n):
                    a[r][cc] -= f * a[col][cc]
    return det
