"""Gluing seeds along frozen indices.

The glued index set is the quotient of the disjoint union by the gluing
groups: each group of frozen, equal-multiplier indices (at most one per part)
becomes a single frozen index, everything else survives untouched.  The form
is induced from the direct sum: glued basis vectors are the sums of their
fiber, so glued pairings add up part by part.

Torus elements travel through the ambient direct-sum seed: a part element
embeds by padding its exponents, and an ambient element descends to the glued
torus exactly when every exponent is constant along each fiber (same pattern
as folding).  Pairings of fiber-constant vectors agree with the glued form,
so descending commutes with multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import InvalidGluing
from .seeds import Seed, make_seed
from .torus import QElement

__all__ = [
    "Amalgamation",
    "amalgamate",
    "embed_part",
    "inject",
    "to_glued",
    "to_ambient",
]


@dataclass(frozen=True)
class Amalgamation:
    parts: tuple[Seed, ...]
    fibers: tuple[tuple[tuple[int, int], ...], ...]
    seed: Seed
    ambient: Seed

    def glued_index(self, part: int, local: int) -> int:
        for gi, fiber in enumerate(self.fibers):
            if (part, local) in fiber:
                return gi
        raise IndexError((part, local))

    def ambient_index(self, part: int, local: int) -> int:
        return sum(p.rank for p in self.parts[:part]) + local


def amalgamate(parts, glue_groups=()) -> Amalgamation:
    """Glue the given seeds along groups of frozen indices.

    glue_groups: iterable of groups, each a sequence of (part, local) pairs;
    a group may touch each part at most once, all members must be frozen and
    share the same multiplier.
    """
    parts = tuple(parts)
    groups = [tuple(g) for g in glue_groups]
    seen: set[tuple[int, int]] = set()
    for g in groups:
        if len(g) < 2:
            raise InvalidGluing("a gluing group needs at least two members")
        partset = set()
        for p, i in g:
            if not (0 <= p < len(parts)) or not (0 <= i < parts[p].rank):
                raise InvalidGluing(f"({p},{i}) is out of range")
            if (p, i) in seen:
                raise InvalidGluing(f"({p},{i}) appears in two groups")
            if p in partset:
                raise InvalidGluing(f"group {g} touches part {p} twice")
            if i in parts[p].unfrozen:
                raise InvalidGluing(f"({p},{i}) is unfrozen; only frozen indices glue")
            seen.add((p, i))
            partset.add(p)
        if len({parts[p].d[i] for p, i in g}) > 1:
            raise InvalidGluing(f"group {g} mixes multipliers")

    grouped = {pi: gi for gi, g in enumerate(groups) for pi in g}
    fibers: list[tuple[tuple[int, int], ...]] = []
    placed: dict[int, int] = {}
    for p, part in enumerate(parts):
        for i in range(part.rank):
            key = grouped.get((p, i))
            if key is None:
                fibers.append(((p, i),))
            elif key not in placed:
                placed[key] = len(fibers)
                fibers.append(groups[key])

    m = len(fibers)
    d = [parts[f[0][0]].d[f[0][1]] for f in fibers]
    b = [
        [
            sum(
                parts[p].b(i, j)
                for p, i in fibers[x]
                for pp, j in fibers[y]
                if pp == p
            )
            for y in range(m)
        ]
        for x in range(m)
    ]
    unfrozen = frozenset(
        x for x, f in enumerate(fibers) if len(f) == 1 and f[0][1] in parts[f[0][0]].unfrozen
    )
    q_den = lcm(*(p.q_den for p in parts))
    glued = make_seed(b, d, unfrozen, label="glued", q_den=q_den)

    total = sum(p.rank for p in parts)
    big = [[0] * total for _ in range(total)]
    offs = [sum(p.rank for p in parts[:x]) for x in range(len(parts))]
    for p, part in enumerate(parts):
        for i in range(part.rank):
            for j in range(part.rank):
                big[offs[p] + i][offs[p] + j] = part.b(i, j)
    amb_unfrozen = frozenset(
        offs[p] + i for p, part in enumerate(parts) for i in part.unfrozen
    )
    amb_d = [x for part in parts for x in part.d]
    ambient = make_seed(big, amb_d, amb_unfrozen, label="ambient", q_den=q_den)
    return Amalgamation(parts, tuple(fibers), glued, ambient)


def embed_part(amal: Amalgamation, part: int, f: QElement) -> QElement:
    """A part element as an ambient element (exact algebra embedding)."""
    if f.seed != amal.parts[part]:
        raise InvalidGluing("element does not live over the named part")
    scale = amal.ambient.q_den // amal.parts[part].q_den
    off = amal.ambient_index(part, 0)
    rank = amal.ambient.rank
    out = {}
    for n, c in f.terms.items():
        big = [0] * rank
        big[off : off + len(n)] = n
        out[tuple(big)] = {u * scale: a for u, a in c.items()}
    return QElement(amal.ambient, out)


def inject(amal: Amalgamation, part: int, f: QElement) -> QElement:
    """A part element directly as a glued element (index relabeling).

    Sends z^{e_j} to z^{e_of(j's fiber)}.  That is an algebra map exactly when
    the glued pairings of this part's fibers agree with the part's own
    pairings, i.e. the lifted fiber-sums pick up nothing from the other parts
    (automatic when no two fibers meet another part in paired indices) —
    verified here, not assumed.
    """
    src = amal.parts[part]
    if f.seed != src:
        raise InvalidGluing("element does not live over the named part")
    where = {i: amal.glued_index(part, i) for i in range(src.rank)}
    for i in range(src.rank):
        for j in range(src.rank):
            gi, gj = where[i], where[j]
            if amal.seed.b(gi, gj) != src.b(i, j):
                raise InvalidGluing(
                    f"gluing twists the pairing of part {part} at ({i},{j}); "
                    "the part torus does not embed by relabeling"
                )
    scale = amal.seed.q_den // src.q_den
    rank = amal.seed.rank
    out = {}
    for n, c in f.terms.items():
        big = [0] * rank
        for i, a in enumerate(n):
            big[where[i]] = a
        out[tuple(big)] = {u * scale: x for u, x in c.items()}
    return QElement(amal.seed, out)


def to_glued(amal: Amalgamation, f: QElement) -> QElement:
    """Descend an ambient element to the glued torus.

    Raises InvalidGluing when some exponent is not constant along a fiber —
    that element does not come from the glued subalgebra.
    """
    if f.seed != amal.ambient:
        raise InvalidGluing("element does not live over the ambient seed")
    out = {}
    for n, c in f.terms.items():
        small = []
        for fiber in amal.fibers:
            vals = {n[amal.ambient_index(p, i)] for p, i in fiber}
            if len(vals) > 1:
                raise InvalidGluing(
                    f"exponent {n} is not constant along fiber {fiber}"
                )
            small.append(vals.pop())
        out[tuple(small)] = dict(c)
    return QElement(amal.seed, out)


def to_ambient(amal: Amalgamation, f: QElement) -> QElement:
    """Expand a glued element back to the ambient direct sum."""
    if f.seed != amal.seed:
        raise InvalidGluing("element does not live over the glued seed")
    rank = amal.ambient.rank
    out = {}
    for n, c in f.terms.items():
        big = [0] * rank
        for gi, fiber in enumerate(amal.fibers):
            for p, i in fiber:
                big[amal.ambient_index(p, i)] = n[gi]
        out[tuple(big)] = dict(c)
    return QElement(amal.ambient, out)
