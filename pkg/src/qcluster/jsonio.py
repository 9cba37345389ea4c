"""JSON encoding of seeds, torus elements, matrices, and verdicts.

Wire rules, chosen for byte-determinism and lossless interop:

* coefficient values are always decimal strings (they routinely exceed the
  53-bit range a JSON reader is guaranteed to preserve); parsers accept
  ints or strings,
* element terms are sorted lexicographically by exponent vector and each
  coefficient list by q-exponent,
* rational seed multipliers serialize as {"num": p, "den": r}, integral
  ones as plain ints,
* dumps() always uses sorted keys and fixed separators.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .certify import Verdict
from .errors import QClusterError
from .seeds import Seed, make_seed
from .torus import QElement

__all__ = [
    "seed_to_obj",
    "seed_from_obj",
    "element_to_obj",
    "element_from_obj",
    "elements_bundle",
    "parse_elements",
    "matrix_to_obj",
    "verdict_to_obj",
    "dumps",
]


class BadInput(QClusterError):
    """Malformed JSON artifact."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _d_entry(d: Fraction):
    if d.denominator == 1:
        return int(d)
    return {"num": d.numerator, "den": d.denominator}


def _parse_d(entry) -> Fraction:
    if isinstance(entry, dict):
        return Fraction(int(entry["num"]), int(entry["den"]))
    return Fraction(entry)


def seed_to_obj(seed: Seed) -> dict:
    obj = {
        "rank": seed.rank,
        "unfrozen": sorted(seed.unfrozen),
        "d": [_d_entry(x) for x in seed.d],
        "form_num": [list(row) for row in seed.form_num],
        "form_den": seed.form_den,
    }
    if seed.label is not None:
        obj["label"] = seed.label
    return obj


def seed_from_obj(obj, q_den: int = 0) -> Seed:
    try:
        rank = int(obj["rank"])
        form_num = obj["form_num"]
        form_den = int(obj["form_den"])
        d = [_parse_d(x) for x in obj["d"]]
        unfrozen = set(int(i) for i in obj["unfrozen"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad seed object: {exc}") from exc
    if len(d) != rank or len(form_num) != rank:
        raise BadInput("seed dimensions disagree with rank")
    b = [[Fraction(int(form_num[i][j]), form_den) for j in range(rank)] for i in range(rank)]
    return make_seed(
        b,
        d=d,
        unfrozen=unfrozen,
        label=obj.get("label"),
        q_den=int(obj.get("q_den", q_den)),
    )


def _coeff_str(c: int) -> str:
    return str(c)


def element_to_obj(f: QElement, inline_seed: bool = True) -> dict:
    seed = f.seed
    terms = []
    for exp in sorted(f.terms):
        coeff = [[u, _coeff_str(c)] for u, c in sorted(f.terms[exp].items())]
        terms.append({"exp": list(exp), "coeff": coeff})
    head = seed_to_obj(seed) if inline_seed or seed.label is None else seed.label
    return {"seed": head, "D": seed.q_den, "terms": terms}


def element_from_obj(obj, seed: Seed | None = None) -> QElement:
    try:
        head = obj["seed"]
        q_den = int(obj["D"])
        raw_terms = obj["terms"]
    except (KeyError, TypeError) as exc:
        raise BadInput(f"bad element object: {exc}") from exc
    if isinstance(head, str):
        if seed is None:
            raise BadInput(f"element references seed {head!r} but none was supplied")
    elif seed is None:
        seed = seed_from_obj(head, q_den=q_den)
    if seed.q_den != q_den:
        raise BadInput(f"element q-denominator {q_den} != seed's {seed.q_den}")
    terms = {}
    for t in raw_terms:
        try:
            exp = tuple(int(x) for x in t["exp"])
            coeff = {int(u): int(str(c)) for u, c in t["coeff"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"bad term record: {exc}") from exc
        if len(exp) != seed.rank:
            raise BadInput("term exponent length != seed rank")
        coeff = {u: c for u, c in coeff.items() if c != 0}
        if coeff:
            terms[exp] = coeff
    return QElement(seed, terms)


def elements_bundle(seed: Seed, named: dict[str, QElement]) -> dict:
    """Bundle {seed, elements: {name: element}} with label-referenced seeds."""
    return {
        "seed": seed_to_obj(seed),
        "elements": {
            name: element_to_obj(f, inline_seed=False) for name, f in sorted(named.items())
        },
    }


def parse_elements(obj, seed: Seed | None = None) -> tuple[Seed, dict[str, QElement]]:
    """Accept a bundle {seed, elements}, a single element, or a bare seed."""
    if not isinstance(obj, dict):
        raise BadInput("expected a JSON object")
    if "elements" in obj:
        seed = seed_from_obj(obj["seed"]) if "seed" in obj else seed
        if seed is None:
            raise BadInput("bundle lacks a seed")
        named = {
            name: element_from_obj(el, seed=seed) for name, el in sorted(obj["elements"].items())
        }
        return seed, named
    if "terms" in obj:
        f = element_from_obj(obj, seed=seed)
        return f.seed, {"element": f}
    if "form_num" in obj:
        return seed_from_obj(obj), {}
    raise BadInput("object is neither a seed, an element, nor a bundle")


def matrix_to_obj(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def verdict_to_obj(v: Verdict) -> dict:
    obj = {"status": v.status, "depth": v.depth, "per_node": v.per_node}
    if v.witness_path is not None:
        obj["witness_path"] = list(v.witness_path)
    if v.witness_monomial is not None:
        obj["witness_monomial"] = list(v.witness_monomial)
    if v.coefficient_status is not None:
        obj["coefficient_status"] = v.coefficient_status
    return obj
